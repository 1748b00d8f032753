#pragma once

// Scalar types, tolerances, error types and the small dense vocabulary
// (unit vectors, unitary matrices) shared by every gpcuntz module.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gpcuntz {

using Complex = std::complex<double>;

/// Coefficients with modulus at or below this are dropped from algebra elements.
inline constexpr double kPruneTol = 1e-12;
/// Symbolic identities (equality of algebra elements) are asserted at this level.
inline constexpr double kIdentityTol = 1e-9;
/// Norm tolerance for unit vectors and unit scalars.
inline constexpr double kUnitTol = 1e-10;
/// Tensor / factor comparisons in parameter decisions.
inline constexpr double kParamTol = 1e-9;

class RankMismatch : public std::invalid_argument {
 public:
  RankMismatch(int a, int b)
      : std::invalid_argument("rank mismatch: O_" + std::to_string(a) + " vs O_" + std::to_string(b)) {}
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a question cannot be decided from the finite data supplied.
class Undecidable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a vector's support escapes the part of a truncated
/// representation on which the generators are exact.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_unit_scalar(Complex c, double tol = kUnitTol) { return std::abs(std::abs(c) - 1.0) <= tol; }

inline void require_unit_scalar(Complex c, const char* what) {
  if (!is_unit_scalar(c)) {
    throw DomainError(std::string(what) + ": scalar is not of modulus one");
  }
}

/// c^n for integer n; for unit c a negative exponent uses the conjugate.
inline Complex int_pow(Complex c, long n) {
  Complex base = c;
  if (n < 0) {
    base = 1.0 / c;
    n = -n;
  }
  Complex out{1.0, 0.0};
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

/// Principal p-th root of a unit scalar.
inline Complex principal_root(Complex c, int p) {
  return std::polar(1.0, std::arg(c) / static_cast<double>(p));
}

/// e^{2 pi i j / p}
inline Complex root_of_unity(int j, int p) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p));
}

/// A unit vector in C^N. Components are indexed from 1 in the public
/// accessors to match the generator subscripts s_1..s_N.
class UnitVector {
 public:
  explicit UnitVector(std::vector<Complex> components) : c_(std::move(components)) {
    if (c_.size() < 2) throw DomainError("unit vector: dimension must be at least 2");
    double n2 = 0.0;
    for (const auto& x : c_) n2 += std::norm(x);
    if (std::abs(std::sqrt(n2) - 1.0) > kUnitTol) {
      throw DomainError("unit vector: norm " + std::to_string(std::sqrt(n2)) + " differs from 1");
    }
  }

  /// Rescales an arbitrary nonzero vector onto the unit sphere.
  static UnitVector normalized(std::vector<Complex> components) {
    double n2 = 0.0;
    for (const auto& x : components) n2 += std::norm(x);
    if (n2 <= 0.0) throw DomainError("unit vector: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& x : components) x *= inv;
    return UnitVector(std::move(components));
  }

  /// Canonical basis vector epsilon_i, i in 1..N.
  static UnitVector basis(int rank, int i) {
    if (i < 1 || i > rank) throw DomainError("basis vector index out of range");
    std::vector<Complex> c(static_cast<std::size_t>(rank), Complex{});
    c[static_cast<std::size_t>(i - 1)] = 1.0;
    return UnitVector(std::move(c));
  }

  int rank() const { return static_cast<int>(c_.size()); }
  /// 1-based component access.
  Complex operator()(int i) const { return c_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Complex>& components() const { return c_; }

  UnitVector scaled(Complex phase) const {
    require_unit_scalar(phase, "unit vector scaling");
    std::vector<Complex> c = c_;
    for (auto& x : c) x *= phase;
    return UnitVector::normalized(std::move(c));
  }

  Eigen::VectorXcd to_eigen() const {
    Eigen::VectorXcd v(rank());
    for (int i = 0; i < rank(); ++i) v(i) = c_[static_cast<std::size_t>(i)];
    return v;
  }

 private:
  std::vector<Complex> c_;
};

/// <a|b>, conjugate-linear in the first slot.
inline Complex inner(const UnitVector& a, const UnitVector& b) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
  Complex s{};
  for (int i = 1; i <= a.rank(); ++i) s += std::conj(a(i)) * b(i);
  return s;
}

/// Product of factorwise inner products: the inner product of two product tensors.
inline Complex tensor_inner(std::span<const UnitVector> a, std::span<const UnitVector> b) {
  if (a.size() != b.size()) throw DomainError("tensor inner product: lengths differ");
  Complex s{1.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s *= inner(a[i], b[i]);
  return s;
}

/// An N x N unitary matrix g; acts on O_N by s_i -> sum_j g_{ji} s_j.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Eigen::MatrixXcd g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() < 2) throw DomainError("unitary matrix: must be square, N >= 2");
    const Eigen::MatrixXcd defect = g_ * g_.adjoint() - Eigen::MatrixXcd::Identity(g_.rows(), g_.cols());
    if (defect.cwiseAbs().maxCoeff() > kUnitTol) throw DomainError("unitary matrix: g g* differs from I");
  }

  static UnitaryMatrix identity(int rank) { return UnitaryMatrix(Eigen::MatrixXcd::Identity(rank, rank)); }

  static UnitaryMatrix diagonal(std::span<const Complex> phases) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(phases.size()),
                                                static_cast<Eigen::Index>(phases.size()));
    for (std::size_t i = 0; i < phases.size(); ++i) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = phases[i];
    return UnitaryMatrix(std::move(g));
  }

  int rank() const { return static_cast<int>(g_.rows()); }
  /// 1-based entry g_{ij}.
  Complex operator()(int i, int j) const { return g_(i - 1, j - 1); }
  const Eigen::MatrixXcd& matrix() const { return g_; }

  /// Column j (1-based) as a unit vector.
  UnitVector column(int j) const {
    std::vector<Complex> c(static_cast<std::size_t>(rank()));
    for (int i = 0; i < rank(); ++i) c[static_cast<std::size_t>(i)] = g_(i, j - 1);
    return UnitVector::normalized(std::move(c));
  }

  UnitaryMatrix operator*(const UnitaryMatrix& o) const { return UnitaryMatrix(g_ * o.g_); }
  UnitaryMatrix adjoint() const { return UnitaryMatrix(g_.adjoint()); }

 private:
  Eigen::MatrixXcd g_;
};

/// Deterministic unitary whose first column is z: modified Gram-Schmidt over
/// (z, epsilon_1, ..., epsilon_N), skipping candidates whose residual norm is
/// below 1e-8.
inline UnitaryMatrix complete_unitary(const UnitVector& z) {
  const int n = z.rank();
  std::vector<Eigen::VectorXcd> cols;
  cols.reserve(static_cast<std::size_t>(n));
  cols.push_back(z.to_eigen());
  for (int i = 0; i < n && static_cast<int>(cols.size()) < n; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, i);
    // two sweeps keep near-parallel candidates orthogonal to working precision
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& q : cols) v -= q.dot(v) * q;  // dot conjugates the left operand
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    cols.push_back(v / norm);
  }
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = cols[static_cast<std::size_t>(j)];
  return UnitaryMatrix(std::move(g));
}

}  // namespace gpcuntz
