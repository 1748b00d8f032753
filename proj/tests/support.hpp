#pragma once

// Independent oracles and samplers for the test suites. Nothing here calls
// the decision procedures under test.

#include <Eigen/QR>

#include "gpcuntz.hpp"

namespace oracle {

using gpcuntz::Complex;
using gpcuntz::CycleParam;
using gpcuntz::UnitVector;

/// z^{(1)} (x) ... (x) z^{(k)} as a dense vector of length N^k.
inline Eigen::VectorXcd full_tensor(std::span<const UnitVector> f) {
  Eigen::VectorXcd t = Eigen::VectorXcd::Ones(1);
  for (const auto& v : f) {
    const Eigen::VectorXcd x = v.to_eigen();
    Eigen::VectorXcd next(t.size() * x.size());
    for (Eigen::Index a = 0; a < t.size(); ++a) next.segment(a * x.size(), x.size()) = t(a) * x;
    t = next;
  }
  return t;
}

inline Eigen::VectorXcd full_tensor(const CycleParam& z) { return full_tensor(z.factors()); }

inline bool tensors_equal_dense(const CycleParam& a, const CycleParam& b, double tol = 1e-9) {
  if (a.length() != b.length()) return false;
  return (full_tensor(a) - full_tensor(b)).norm() < tol;
}

/// Largest p such that the dense tensor of z is a p-th tensor power, found by
/// testing every divisor d of k: the first d factors to the power k/d must be
/// proportional to z (a phase can always be absorbed by a p-th root).
inline int brute_force_power(const CycleParam& z) {
  const int k = z.length();
  const Eigen::VectorXcd t = full_tensor(z);
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    std::vector<UnitVector> rep;
    for (int r = 0; r < k / d; ++r) rep.insert(rep.end(), z.factors().begin(), z.factors().begin() + d);
    if (std::abs(std::abs(full_tensor(rep).dot(t)) - 1.0) < 1e-9) return k / d;
  }
  return 1;
}

/// |<z(n)|z(n+p)>| = |cos 2 pi p theta| for every n, so S(p, M) = M (1 - |cos 2 pi p theta|).
inline double rotation_partial_sum(double theta, int p, long m) {
  return static_cast<double>(m) * (1.0 - std::abs(std::cos(2.0 * std::numbers::pi * p * theta)));
}

inline gpcuntz::UnitaryMatrix random_unitary(int n, gpcuntz::Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return gpcuntz::UnitaryMatrix(qr.householderQ() * Eigen::MatrixXcd::Identity(n, n));
}

inline gpcuntz::MultiIndex random_word(int n, std::size_t len, gpcuntz::Rng& rng) {
  std::uniform_int_distribution<int> u(1, n);
  std::vector<int> w(len);
  for (auto& c : w) c = u(rng);
  return gpcuntz::MultiIndex(std::move(w));
}

/// A few random terms c s_J s_K^* with |J|, |K| <= max_len.
inline gpcuntz::AlgebraElement random_element(int n, int terms, std::size_t max_len, gpcuntz::Rng& rng) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::normal_distribution<double> g;
  gpcuntz::AlgebraElement a(n);
  for (int t = 0; t < terms; ++t) {
    a.accumulate({random_word(n, len(rng), rng), random_word(n, len(rng), rng)}, Complex{g(rng), g(rng)});
  }
  a.prune();
  return a;
}

}  // namespace oracle
