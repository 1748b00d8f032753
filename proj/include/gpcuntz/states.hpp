#pragma once

// Closed-form GP states on normal words:
//   cycle z of length k:  omega(s_J s_K^*) = conj(z(J)) z(K)  if |J| = |K| mod k, else 0
//   chain z:              omega(s_J s_K^*) = delta_{|J|,|K|} conj(z(J)) z(K)
// with z(J) = z^{(1)}_{j_1} ... z^{(m)}_{j_m} and z(empty) = 1.

#include <Eigen/Eigenvalues>

#include "gpcuntz/algebra.hpp"
#include "gpcuntz/params.hpp"

namespace gpcuntz {

class GPState {
 public:
  explicit GPState(GPParam param) : param_(std::move(param)) {}
  explicit GPState(CycleParam z) : param_(std::move(z)) {}
  explicit GPState(ChainParam z) : param_(std::move(z)) {}

  int rank() const { return param_rank(param_); }
  const GPParam& param() const { return param_; }

  /// z(J), using the k-periodic extension for cycles.
  Complex z_of(const MultiIndex& j) const {
    Complex out{1.0, 0.0};
    if (const auto* c = std::get_if<CycleParam>(&param_)) {
      for (std::size_t t = 0; t < j.size(); ++t) out *= c->periodic_factor(static_cast<long>(t + 1))(j[t]);
    } else {
      const auto& ch = std::get<ChainParam>(param_);
      for (std::size_t t = 0; t < j.size(); ++t) out *= ch.factor(static_cast<long>(t + 1))(j[t]);
    }
    return out;
  }

 private:
  GPParam param_;
};

inline Complex state_eval_word(const GPState& st, const MultiIndex& j, const MultiIndex& k) {
  j.validate(st.rank());
  k.validate(st.rank());
  const long lj = static_cast<long>(j.size());
  const long lk = static_cast<long>(k.size());
  if (const auto* c = std::get_if<CycleParam>(&st.param())) {
    if ((lj - lk) % c->length() != 0) return 0.0;
  } else if (lj != lk) {
    return 0.0;
  }
  return std::conj(st.z_of(j)) * st.z_of(k);
}

inline Complex state_eval(const GPState& st, const AlgebraElement& a) {
  if (st.rank() != a.rank()) throw RankMismatch(st.rank(), a.rank());
  Complex s{};
  for (const auto& [w, c] : a.terms()) s += c * state_eval_word(st, w.left, w.right);
  return s;
}

/// G_{ab} = omega(a^* b).
inline Eigen::MatrixXcd gram_matrix(const GPState& st, std::span<const AlgebraElement> elems) {
  const auto n = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const AlgebraElement adj = adjoint(elems[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < n; ++b) g(a, b) = state_eval(st, multiply(adj, elems[static_cast<std::size_t>(b)]));
  }
  return g;
}

inline Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// omega(phi(a_n)^* phi(a_n)) in the given state. Zero exactly when the
/// state's GNS vector is annihilated by the CAR generator a_n.
inline double fock_annihilation_residual(int n, const GPState& st) {
  if (n < 1) throw DomainError("fock residual: n must be at least 1");
  if (st.rank() != 2) throw RankMismatch(2, st.rank());
  const AlgebraElement a = car_generator(n);
  return std::abs(state_eval(st, multiply(adjoint(a), a)));
}

/// Residual in the vacuum state: the cycle state of epsilon_1 on O_2.
inline double fock_annihilation_residual(int n) {
  return fock_annihilation_residual(n, GPState(CycleParam({UnitVector::basis(2, 1)})));
}

}  // namespace gpcuntz
