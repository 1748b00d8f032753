#pragma once

// Finite truncations of GP representations.
//
// Cycle of length k on l_2({1..k} x N), truncated to m <= N^D:
//   pi(s_i) e_{l,m} = sum_j conj(g(l-1)_{ij}) e_{l-1, N(m-1)+j},  l-1 taken mod k,
// with g(l) a unitary whose first column is z^{(l)}. Omega = e_{1,1}.
//
// Chain on l_2(Z x N), truncated to n in [-D-, D+] and m <= N^D:
//   pi(s_i) e_{n,m} = sum_j conj(g(n)_{ij}) e_{n-1, N(m-1)+j},
// with g(n) first column z^{(n)} for n >= 1 and g(n) = I for n <= 0. Omega = e_{0,1}.
//
// Generators are exact on columns with m <= N^{D-1} (and, for chains, n > -D-).
// Adjoints are exact on rows whose preimage column exists.

#include <Eigen/SVD>
#include <Eigen/SparseCore>

#include "gpcuntz/algebra.hpp"
#include "gpcuntz/params.hpp"

namespace gpcuntz {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

/// Supports below this are treated as empty when checking truncation overflow.
inline constexpr double kSupportTol = 1e-13;

enum class RepKind { cycle, chain, fiber, direct_sum };

inline const char* to_string(RepKind k) {
  switch (k) {
    case RepKind::cycle: return "cycle";
    case RepKind::chain: return "chain";
    case RepKind::fiber: return "fiber";
    case RepKind::direct_sum: return "direct_sum";
  }
  return "?";
}

inline long ipow(long base, int e) {
  long out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

class TruncatedRep {
 public:
  int rank() const { return rank_; }
  int depth() const { return depth_; }
  RepKind kind() const { return kind_; }
  /// k for cycle and fiber representations.
  int cycle_length() const { return k_; }
  int window_lo() const { return lo_; }
  int window_hi() const { return hi_; }
  /// N^D, the number of m labels per level.
  long block() const { return block_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(fwd_ok_.size()); }

  const SparseMatrix& generator(int i) const { return gens_.at(static_cast<std::size_t>(i - 1)); }
  const Vector& omega() const { return omega_; }

  bool column_exact(Eigen::Index c) const { return fwd_ok_[static_cast<std::size_t>(c)]; }
  bool row_exact(Eigen::Index r) const { return bwd_ok_[static_cast<std::size_t>(r)]; }
  bool interior(Eigen::Index c) const { return interior_[static_cast<std::size_t>(c)]; }

  std::vector<Eigen::Index> interior_indices() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index c = 0; c < dim(); ++c) {
      if (interior(c)) out.push_back(c);
    }
    return out;
  }

  /// Basis index of e_{l,m} (cycle, fiber) with 1-based l and m.
  Eigen::Index cycle_index(int l, long m) const { return static_cast<Eigen::Index>((l - 1) * block_ + (m - 1)); }
  /// Basis index of e_{n,m} (chain).
  Eigen::Index chain_index(int n, long m) const { return static_cast<Eigen::Index>((n - lo_) * block_ + (m - 1)); }

  Vector basis_vector(Eigen::Index idx) const { return Vector::Unit(dim(), idx); }

  std::string label(Eigen::Index idx) const { return labels_.at(static_cast<std::size_t>(idx)); }
  const std::vector<std::string>& labels() const { return labels_; }

  Vector apply_generator(int i, const Vector& v) const {
    check_support(v, fwd_ok_, "generator");
    return generator(i) * v;
  }

  Vector apply_generator_adjoint(int i, const Vector& v) const {
    check_support(v, bwd_ok_, "adjoint generator");
    return generator(i).adjoint() * v;
  }

  /// pi(s(y)) v
  Vector apply_s(const UnitVector& y, const Vector& v) const {
    check_rank(y);
    check_support(v, fwd_ok_, "s(y)");
    Vector out = Vector::Zero(dim());
    for (int i = 1; i <= rank_; ++i) {
      if (y(i) != Complex{}) out += y(i) * (generator(i) * v);
    }
    return out;
  }

  /// pi(s(y))^* v
  Vector apply_s_adjoint(const UnitVector& y, const Vector& v) const {
    check_rank(y);
    check_support(v, bwd_ok_, "s(y)^*");
    Vector out = Vector::Zero(dim());
    for (int i = 1; i <= rank_; ++i) {
      if (y(i) != Complex{}) out += std::conj(y(i)) * (generator(i).adjoint() * v);
    }
    return out;
  }

  /// pi(s(x^{(1)}) ... s(x^{(L)})) v
  Vector apply_s(std::span<const UnitVector> x, Vector v) const {
    for (auto it = x.rbegin(); it != x.rend(); ++it) v = apply_s(*it, v);
    return v;
  }

  /// pi(s(x^{(1)}) ... s(x^{(L)}))^* v
  Vector apply_s_adjoint(std::span<const UnitVector> x, Vector v) const {
    for (const auto& y : x) v = apply_s_adjoint(y, v);
    return v;
  }

  /// Sparse matrix of pi(s(y)).
  SparseMatrix s_matrix(const UnitVector& y) const {
    check_rank(y);
    SparseMatrix out(dim(), dim());
    for (int i = 1; i <= rank_; ++i) {
      if (y(i) != Complex{}) out += y(i) * generator(i);
    }
    return out;
  }

  /// Sparse matrix of pi(s(x^{(1)}) ... s(x^{(L)})). Only exact on columns
  /// for which the product stays inside the exact region; see exact_columns.
  SparseMatrix s_matrix(std::span<const UnitVector> x) const {
    SparseMatrix out(dim(), dim());
    out.setIdentity();
    for (const auto& y : x) out = (out * s_matrix(y)).pruned();
    return out;
  }

  /// Columns c such that applying a product of `length` generators to e_c never
  /// leaves the exact region.
  std::vector<bool> exact_columns(int length) const {
    std::vector<bool> ok(fwd_ok_.size(), true);
    for (int t = 0; t < length; ++t) {
      std::vector<bool> next(ok.size(), false);
      for (Eigen::Index c = 0; c < dim(); ++c) {
        if (!fwd_ok_[static_cast<std::size_t>(c)]) continue;
        bool good = true;
        for (int i = 1; i <= rank_ && good; ++i) {
          for (SparseMatrix::InnerIterator it(generator(i), c); it; ++it) {
            if (!ok[static_cast<std::size_t>(it.row())]) {
              good = false;
              break;
            }
          }
        }
        next[static_cast<std::size_t>(c)] = good;
      }
      ok = std::move(next);
    }
    return ok;
  }

  /// Copy with generator i replaced; used to build negative controls.
  TruncatedRep with_generator(int i, SparseMatrix m) const {
    if (m.rows() != dim() || m.cols() != dim()) throw DomainError("replacement generator has wrong shape");
    TruncatedRep out = *this;
    out.gens_.at(static_cast<std::size_t>(i - 1)) = std::move(m);
    return out;
  }

 private:
  int rank_ = 2;
  int depth_ = 2;
  RepKind kind_ = RepKind::cycle;
  int k_ = 1;
  int lo_ = 0;
  int hi_ = 0;
  long block_ = 1;
  std::vector<SparseMatrix> gens_;
  Vector omega_;
  std::vector<bool> fwd_ok_;
  std::vector<bool> bwd_ok_;
  std::vector<bool> interior_;
  std::vector<std::string> labels_;

  void check_rank(const UnitVector& y) const {
    if (y.rank() != rank_) throw RankMismatch(rank_, y.rank());
  }

  void check_support(const Vector& v, const std::vector<bool>& ok, const char* what) const {
    if (v.size() != dim()) throw DomainError("vector dimension does not match the representation");
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      if (!ok[static_cast<std::size_t>(c)] && std::abs(v(c)) > kSupportTol) {
        throw TruncationOverflow(std::string(what) + ": support reaches " + labels_[static_cast<std::size_t>(c)] +
                                 " outside the exact region of the depth-" + std::to_string(depth_) + " truncation");
      }
    }
  }

  friend TruncatedRep build_cycle_rep_impl(const CycleParam&, int, Complex, RepKind);
  friend TruncatedRep build_chain_rep(const ChainParam&, int, int, int);
  friend TruncatedRep direct_sum(const TruncatedRep&, const TruncatedRep&);
};

inline TruncatedRep build_cycle_rep_impl(const CycleParam& z, int depth, Complex fiber_phase, RepKind kind) {
  if (depth < 2) throw DomainError("truncation depth must be at least 2");
  require_unit_scalar(fiber_phase, "fiber phase");
  const int n = z.rank();
  const int k = z.length();
  TruncatedRep r;
  r.rank_ = n;
  r.depth_ = depth;
  r.kind_ = kind;
  r.k_ = k;
  r.lo_ = 1;
  r.hi_ = k;
  r.block_ = ipow(n, depth);
  const long inner = ipow(n, depth - 1);
  const auto dim = static_cast<Eigen::Index>(k * r.block_);

  std::vector<UnitaryMatrix> g;
  g.reserve(static_cast<std::size_t>(k));
  for (int l = 1; l <= k; ++l) g.push_back(complete_unitary(z.factor(l)));

  std::vector<std::vector<Eigen::Triplet<Complex>>> trip(static_cast<std::size_t>(n));
  r.fwd_ok_.assign(static_cast<std::size_t>(dim), false);
  r.bwd_ok_.assign(static_cast<std::size_t>(dim), true);
  r.interior_.assign(static_cast<std::size_t>(dim), false);
  r.labels_.resize(static_cast<std::size_t>(dim));
  for (int l = 1; l <= k; ++l) {
    const int prev = l == 1 ? k : l - 1;
    const UnitaryMatrix& gp = g[static_cast<std::size_t>(prev - 1)];
    const Complex scale = l == 1 ? std::conj(fiber_phase) : Complex{1.0, 0.0};
    for (long m = 1; m <= r.block_; ++m) {
      const Eigen::Index col = r.cycle_index(l, m);
      r.labels_[static_cast<std::size_t>(col)] = "(" + std::to_string(l) + "," + std::to_string(m) + ")";
      if (m > inner) continue;
      r.fwd_ok_[static_cast<std::size_t>(col)] = true;
      r.interior_[static_cast<std::size_t>(col)] = true;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const Complex v = scale * std::conj(gp(i, j));
          if (v == Complex{}) continue;
          trip[static_cast<std::size_t>(i - 1)].emplace_back(r.cycle_index(prev, n * (m - 1) + j), col, v);
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    SparseMatrix s(dim, dim);
    s.setFromTriplets(trip[static_cast<std::size_t>(i)].begin(), trip[static_cast<std::size_t>(i)].end());
    r.gens_.push_back(std::move(s));
  }
  r.omega_ = Vector::Unit(dim, r.cycle_index(1, 1));
  return r;
}

inline TruncatedRep build_cycle_rep(const CycleParam& z, int depth) {
  return build_cycle_rep_impl(z, depth, 1.0, RepKind::cycle);
}

/// pi_c on l_2({1..k} x N): the cycle construction for v with the generator
/// columns at l = 1 multiplied by conj(c). It is GP(c v) with GP vector e_{1,1}.
inline TruncatedRep build_fiber_rep(const CycleParam& v, Complex c, int depth) {
  require_unit_scalar(c, "fiber phase");
  return build_cycle_rep_impl(v, depth, c, RepKind::fiber);
}

inline TruncatedRep build_chain_rep(const ChainParam& z, int depth_minus, int depth_plus, int depth) {
  if (depth < 2 || depth_minus < 1 || depth_plus < 1) {
    throw DomainError("chain truncation requires D >= 2 and window depths >= 1");
  }
  const int n = z.rank();
  TruncatedRep r;
  r.rank_ = n;
  r.depth_ = depth;
  r.kind_ = RepKind::chain;
  r.k_ = 0;
  r.lo_ = -depth_minus;
  r.hi_ = depth_plus;
  r.block_ = ipow(n, depth);
  const long inner = ipow(n, depth - 1);
  const int levels = depth_minus + depth_plus + 1;
  const auto dim = static_cast<Eigen::Index>(levels * r.block_);

  std::vector<std::vector<Eigen::Triplet<Complex>>> trip(static_cast<std::size_t>(n));
  r.fwd_ok_.assign(static_cast<std::size_t>(dim), false);
  r.bwd_ok_.assign(static_cast<std::size_t>(dim), false);
  r.interior_.assign(static_cast<std::size_t>(dim), false);
  r.labels_.resize(static_cast<std::size_t>(dim));
  for (int lev = r.lo_; lev <= r.hi_; ++lev) {
    const UnitaryMatrix g = lev >= 1 ? complete_unitary(z.factor(lev)) : UnitaryMatrix::identity(n);
    for (long m = 1; m <= r.block_; ++m) {
      const Eigen::Index col = r.chain_index(lev, m);
      r.labels_[static_cast<std::size_t>(col)] = "(" + std::to_string(lev) + "," + std::to_string(m) + ")";
      r.bwd_ok_[static_cast<std::size_t>(col)] = lev + 1 <= r.hi_;
      r.interior_[static_cast<std::size_t>(col)] = lev > r.lo_ && lev < r.hi_ && m <= inner;
      if (lev - 1 < r.lo_ || m > inner) continue;
      r.fwd_ok_[static_cast<std::size_t>(col)] = true;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const Complex v = std::conj(g(i, j));
          if (v == Complex{}) continue;
          trip[static_cast<std::size_t>(i - 1)].emplace_back(r.chain_index(lev - 1, n * (m - 1) + j), col, v);
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    SparseMatrix s(dim, dim);
    s.setFromTriplets(trip[static_cast<std::size_t>(i)].begin(), trip[static_cast<std::size_t>(i)].end());
    r.gens_.push_back(std::move(s));
  }
  r.omega_ = Vector::Unit(dim, r.chain_index(0, 1));
  return r;
}

/// Chain truncation with the default window [-D, D].
inline TruncatedRep build_chain_rep(const ChainParam& z, int depth) { return build_chain_rep(z, depth, depth, depth); }

/// Block-diagonal sum; the GP vector of the result is that of `a`.
inline TruncatedRep direct_sum(const TruncatedRep& a, const TruncatedRep& b) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
  TruncatedRep r = a;
  r.kind_ = RepKind::direct_sum;
  const Eigen::Index da = a.dim();
  const Eigen::Index dim = da + b.dim();
  r.gens_.clear();
  for (int i = 1; i <= a.rank(); ++i) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (Eigen::Index c = 0; c < da; ++c) {
      for (SparseMatrix::InnerIterator it(a.generator(i), c); it; ++it) t.emplace_back(it.row(), c, it.value());
    }
    for (Eigen::Index c = 0; c < b.dim(); ++c) {
      for (SparseMatrix::InnerIterator it(b.generator(i), c); it; ++it) t.emplace_back(da + it.row(), da + c, it.value());
    }
    SparseMatrix s(dim, dim);
    s.setFromTriplets(t.begin(), t.end());
    r.gens_.push_back(std::move(s));
  }
  r.omega_ = Vector::Zero(dim);
  r.omega_.head(da) = a.omega();
  auto cat = [](std::vector<bool> x, const std::vector<bool>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  r.fwd_ok_ = cat(a.fwd_ok_, b.fwd_ok_);
  r.bwd_ok_ = cat(a.bwd_ok_, b.bwd_ok_);
  r.interior_ = cat(a.interior_, b.interior_);
  r.labels_.clear();
  for (const auto& s : a.labels_) r.labels_.push_back("A" + s);
  for (const auto& s : b.labels_) r.labels_.push_back("B" + s);
  return r;
}

/// Linear action of an algebra element: each c s_J s_K^* applies s_K^* and then s_J.
inline Vector apply_element(const TruncatedRep& rep, const AlgebraElement& a, const Vector& v) {
  if (rep.rank() != a.rank()) throw RankMismatch(rep.rank(), a.rank());
  Vector out = Vector::Zero(rep.dim());
  for (const auto& [w, c] : a.terms()) {
    Vector x = v;
    for (int k : w.right) x = rep.apply_generator_adjoint(k, x);
    for (auto it = w.left.letters().rbegin(); it != w.left.letters().rend(); ++it) x = rep.apply_generator(*it, x);
    out += c * x;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orthonormal bases E_x, x in Lambda(z)

struct BasisLabel {
  int level = 0;       // m: number of epsilon-prefix letters + 1, or 0 for the E_n family
  int position = 0;    // n
  MultiIndex prefix;   // J in the epsilon_J (x) ... part
  int column = 0;      // j >= 2 for labels built from the completed unitaries, 0 otherwise
  std::vector<UnitVector> tensor;  // x itself; empty for the chain vectors E_n

  std::string describe() const {
    std::string s = "m=" + std::to_string(level) + ",n=" + std::to_string(position);
    if (column > 0) s += ",j=" + std::to_string(column);
    if (!prefix.empty()) {
      s += ",J=";
      for (int c : prefix) s += std::to_string(c);
    }
    return s;
  }
};

struct BasisVector {
  BasisLabel label;
  Vector vec;
};

/// Count of cycle labels with level <= d: k N^d.
inline long cycle_basis_count(int k, int rank, int d) { return static_cast<long>(k) * ipow(rank, d); }

/// Lambda(z) for a cycle, levels m = 0..max_depth, with E_x = pi(s(x)) Omega.
/// Level 0: z^{(n)} (x) ... (x) z^{(k)}. Level 1: z^{(k,j)} for n = 1 and
/// z^{(n-1,j)} (x) z^{(n)} (x) ... (x) z^{(k)} otherwise, where z^{(l,j)} is
/// column j of the completed unitary of z^{(l)}. Level m: epsilon_J (x) x with
/// |J| = m - 1 and x of level 1.
inline std::vector<BasisVector> enumerate_basis(const TruncatedRep& rep, const CycleParam& z, int max_depth) {
  if (max_depth < 0) throw DomainError("enumerate_basis: negative depth");
  if (rep.depth() < max_depth + 1) {
    throw DomainError("enumerate_basis: representation depth " + std::to_string(rep.depth()) +
                      " insufficient for basis depth " + std::to_string(max_depth));
  }
  if (rep.rank() != z.rank()) throw RankMismatch(rep.rank(), z.rank());
  const int n = z.rank();
  const int k = z.length();
  std::vector<UnitaryMatrix> g;
  for (int l = 1; l <= k; ++l) g.push_back(complete_unitary(z.factor(l)));

  auto tail = [&](int from) {
    return std::vector<UnitVector>(z.factors().begin() + (from - 1), z.factors().end());
  };

  std::vector<BasisVector> out;
  for (int pos = 1; pos <= k; ++pos) {
    BasisLabel lab{0, pos, {}, 0, tail(pos)};
    Vector v = rep.apply_s(lab.tensor, rep.omega());
    out.push_back({std::move(lab), std::move(v)});
  }
  for (int m = 1; m <= max_depth; ++m) {
    for (int pos = 1; pos <= k; ++pos) {
      for (int j = 2; j <= n; ++j) {
        std::vector<UnitVector> base;
        if (pos == 1) {
          base.push_back(g[static_cast<std::size_t>(k - 1)].column(j));
        } else {
          base.push_back(g[static_cast<std::size_t>(pos - 2)].column(j));
          const auto t = tail(pos);
          base.insert(base.end(), t.begin(), t.end());
        }
        for (const auto& prefix : all_words(n, static_cast<std::size_t>(m - 1))) {
          std::vector<UnitVector> x;
          for (int c : prefix) x.push_back(UnitVector::basis(n, c));
          x.insert(x.end(), base.begin(), base.end());
          BasisLabel lab{m, pos, prefix, j, std::move(x)};
          Vector v = rep.apply_s(lab.tensor, rep.omega());
          out.push_back({std::move(lab), std::move(v)});
        }
      }
    }
  }
  return out;
}

/// E_n of a chain truncation: S_1^{|n|} Omega for n <= 0, and
/// pi(s(z^{(1)}) ... s(z^{(n)}))^* Omega for n >= 1.
inline Vector chain_vector(const TruncatedRep& rep, const ChainParam& z, int n) {
  Vector v = rep.omega();
  if (n <= 0) {
    for (int t = 0; t < -n; ++t) v = rep.apply_generator(1, v);
  } else {
    for (int t = 1; t <= n; ++t) v = rep.apply_s_adjoint(z.factor(t), v);
  }
  return v;
}

/// Lambda(z) for a chain: for each position n in [n_lo, n_hi], the labels
/// (n, 0) -> E_n, (n, z^{(n+1,j)}) -> pi(s(z^{(n+1,j)})) E_{n+1} and
/// (n, epsilon_J (x) z^{(n+m-1,j)}) -> pi(s(...)) E_{n+m-1} for |J| = m-2,
/// up to level m = max_depth + 1. Here z^{(l,j)} is column j of the completed
/// unitary of z^{(l)} (the identity for l <= 0).
inline std::vector<BasisVector> enumerate_basis(const TruncatedRep& rep, const ChainParam& z, int max_depth, int n_lo,
                                                int n_hi) {
  if (max_depth < 0) throw DomainError("enumerate_basis: negative depth");
  if (rep.kind() != RepKind::chain) throw DomainError("enumerate_basis: chain labels need a chain truncation");
  if (n_lo < rep.window_lo() || n_hi + max_depth > rep.window_hi() || rep.depth() < max_depth + 1) {
    throw DomainError("enumerate_basis: truncation window insufficient for requested labels");
  }
  const int n = z.rank();
  auto unitary = [&](int l) { return l >= 1 ? complete_unitary(z.factor(l)) : UnitaryMatrix::identity(n); };
  std::vector<BasisVector> out;
  for (int pos = n_lo; pos <= n_hi; ++pos) {
    out.push_back({BasisLabel{1, pos, {}, 0, {}}, chain_vector(rep, z, pos)});
    for (int m = 2; m <= max_depth + 1; ++m) {
      const UnitaryMatrix g = unitary(pos + m - 1);
      const Vector base = chain_vector(rep, z, pos + m - 1);
      for (int j = 2; j <= n; ++j) {
        for (const auto& prefix : all_words(n, static_cast<std::size_t>(m - 2))) {
          std::vector<UnitVector> y;
          for (int c : prefix) y.push_back(UnitVector::basis(n, c));
          y.push_back(g.column(j));
          BasisLabel lab{m, pos, prefix, j, std::move(y)};
          Vector v = rep.apply_s(lab.tensor, base);
          out.push_back({std::move(lab), std::move(v)});
        }
      }
    }
  }
  return out;
}

/// Count of chain labels for positions [n_lo, n_hi] up to level max_depth + 1.
inline long chain_basis_count(int rank, int max_depth, int n_lo, int n_hi) {
  return static_cast<long>(n_hi - n_lo + 1) * ipow(rank, max_depth);
}

inline Eigen::MatrixXcd gram_of(std::span<const BasisVector> family) {
  const auto n = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXcd m(family.empty() ? 0 : family.front().vec.size(), n);
  for (Eigen::Index i = 0; i < n; ++i) m.col(i) = family[static_cast<std::size_t>(i)].vec;
  return m.adjoint() * m;
}

inline Eigen::MatrixXcd gram_of(std::span<const Vector> family) {
  const auto n = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXcd m(family.empty() ? 0 : family.front().size(), n);
  for (Eigen::Index i = 0; i < n; ++i) m.col(i) = family[static_cast<std::size_t>(i)];
  return m.adjoint() * m;
}

inline double identity_defect(const Eigen::MatrixXcd& g) {
  if (g.size() == 0) return 0.0;
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  double isometry_residual = 0.0;    // max |S_i^* S_j - delta_ij I| on interior columns
  double cuntz_sum_residual = 0.0;   // max |sum_i S_i S_i^* - I| on interior columns
  double gp_vector_residual = 0.0;   // eigenequation (cycle) or chain step relation
  double family_residual = 0.0;      // orthonormality defect of the GP family
  double basis_residual = 0.0;       // orthonormality defect of the enumerated basis
  long cyclic_rank = 0;
  long cyclic_target = 0;
  double tolerance = 0.0;
  bool passed = false;

  double max_residual() const {
    return std::max({isometry_residual, cuntz_sum_residual, gp_vector_residual, family_residual, basis_residual});
  }
};

namespace detail {

inline double interior_defect(const TruncatedRep& rep, const SparseMatrix& m, bool subtract_identity) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < rep.dim(); ++c) {
    if (!rep.interior(c)) continue;
    bool diag_seen = false;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      Complex v = it.value();
      if (subtract_identity && it.row() == c) {
        v -= 1.0;
        diag_seen = true;
      }
      worst = std::max(worst, std::abs(v));
    }
    if (subtract_identity && !diag_seen) worst = std::max(worst, 1.0);
  }
  return worst;
}

inline long numeric_rank(const Eigen::MatrixXcd& gram) {
  if (gram.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  long r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r += es.eigenvalues()(i) > 0.5 ? 1 : 0;
  return r;
}

inline void check_relations(const TruncatedRep& rep, VerifyReport& out) {
  const int n = rep.rank();
  SparseMatrix sum(rep.dim(), rep.dim());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const SparseMatrix p = SparseMatrix(rep.generator(i).adjoint()) * rep.generator(j);
      out.isometry_residual = std::max(out.isometry_residual, interior_defect(rep, p, i == j));
    }
    sum += rep.generator(i) * SparseMatrix(rep.generator(i).adjoint());
  }
  out.cuntz_sum_residual = interior_defect(rep, sum, true);
}

inline void finish(VerifyReport& out, double tol) {
  out.tolerance = tol;
  out.passed = out.max_residual() <= tol && out.cyclic_rank == out.cyclic_target;
}

}  // namespace detail

/// Checks a cycle-type truncation (cycle or fiber) against GP(z).
inline VerifyReport verify_gp(const TruncatedRep& rep, const CycleParam& z, double tol = 1e-10) {
  if (rep.rank() != z.rank()) throw RankMismatch(rep.rank(), z.rank());
  VerifyReport out;
  detail::check_relations(rep, out);
  try {
    const Vector fixed = rep.apply_s(z.factors(), rep.omega());
    out.gp_vector_residual = (fixed - rep.omega()).norm();
    std::vector<Vector> family;
    for (int i = 1; i <= z.length(); ++i) {
      family.push_back(rep.apply_s(std::span(z.factors()).subspan(static_cast<std::size_t>(i - 1)), rep.omega()));
    }
    out.family_residual = identity_defect(gram_of(family));

    const int d = rep.depth() - 1;
    const auto basis = enumerate_basis(rep, z, d);
    const Eigen::MatrixXcd g = gram_of(basis);
    double leak = 0.0;
    for (const auto& b : basis) {
      for (Eigen::Index c = 0; c < rep.dim(); ++c) {
        if (!rep.interior(c)) leak = std::max(leak, std::abs(b.vec(c)));
      }
    }
    out.basis_residual = std::max(identity_defect(g), leak);
    out.cyclic_rank = detail::numeric_rank(g);
    out.cyclic_target = static_cast<long>(rep.interior_indices().size());
  } catch (const TruncationOverflow&) {
    out.gp_vector_residual = std::numeric_limits<double>::infinity();
  }
  detail::finish(out, tol);
  return out;
}

/// Checks a chain truncation against GP(z): relations, the step relation
/// pi(s(z^{(n)})) E_n = E_{n-1}, orthonormality of {E_n} and of the chain basis.
inline VerifyReport verify_gp(const TruncatedRep& rep, const ChainParam& z, double tol = 1e-10) {
  if (rep.rank() != z.rank()) throw RankMismatch(rep.rank(), z.rank());
  if (rep.kind() != RepKind::chain) throw DomainError("verify_gp: chain parameter needs a chain truncation");
  VerifyReport out;
  detail::check_relations(rep, out);
  try {
    std::vector<Vector> family;
    for (int n = rep.window_lo(); n <= rep.window_hi(); ++n) family.push_back(chain_vector(rep, z, n));
    out.family_residual = identity_defect(gram_of(family));
    for (int n = rep.window_lo() + 1; n <= rep.window_hi(); ++n) {
      const UnitVector zn = n >= 1 ? z.factor(n) : UnitVector::basis(z.rank(), 1);
      const Vector step = rep.apply_s(zn, family[static_cast<std::size_t>(n - rep.window_lo())]);
      out.gp_vector_residual =
          std::max(out.gp_vector_residual, (step - family[static_cast<std::size_t>(n - 1 - rep.window_lo())]).norm());
    }
    const int d = std::max(0, std::min(rep.depth() - 1, rep.window_hi()));
    const int n_lo = rep.window_lo() + 1;
    const int n_hi = rep.window_hi() - d;
    const auto basis = enumerate_basis(rep, z, d, n_lo, n_hi);
    const Eigen::MatrixXcd g = gram_of(basis);
    out.basis_residual = identity_defect(g);
    out.cyclic_rank = detail::numeric_rank(g);
    out.cyclic_target = chain_basis_count(rep.rank(), d, n_lo, n_hi);
  } catch (const TruncationOverflow&) {
    out.gp_vector_residual = std::numeric_limits<double>::infinity();
  }
  detail::finish(out, tol);
  return out;
}

inline VerifyReport verify_gp(const TruncatedRep& rep, const GPParam& p, double tol = 1e-10) {
  return std::visit([&](const auto& z) { return verify_gp(rep, z, tol); }, p);
}

/// ||(pi(s(z))^*)^m v|| for m = 0..m_max.
inline std::vector<double> power_vanish(const TruncatedRep& rep, const CycleParam& z, const Vector& v, int m_max) {
  std::vector<double> out;
  Vector x = v;
  out.push_back(x.norm());
  for (int m = 1; m <= m_max; ++m) {
    x = rep.apply_s_adjoint(z.factors(), x);
    out.push_back(x.norm());
  }
  return out;
}

struct FixedSpace {
  Eigen::MatrixXcd basis;           // columns: orthonormal fixed vectors
  Eigen::VectorXd singular_values;  // of (pi(s(x)) - I) on the exact columns, ascending
};

/// Fixed vectors of pi(s(x)) among vectors supported where the product is exact.
inline FixedSpace fixed_subspace(const TruncatedRep& rep, const CycleParam& x, double tol = 1e-8) {
  const auto ok = rep.exact_columns(x.length());
  std::vector<Eigen::Index> cols;
  for (Eigen::Index c = 0; c < rep.dim(); ++c) {
    if (ok[static_cast<std::size_t>(c)]) cols.push_back(c);
  }
  const Eigen::MatrixXcd s = Eigen::MatrixXcd(rep.s_matrix(x.factors()));
  Eigen::MatrixXcd a(rep.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) {
    a.col(static_cast<Eigen::Index>(t)) = s.col(cols[t]);
    a(cols[t], static_cast<Eigen::Index>(t)) -= 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  FixedSpace out;
  out.singular_values = sv.reverse();
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < tol) null_cols.push_back(i);
  }
  // columns of V beyond the number of singular values are also null directions
  for (Eigen::Index i = sv.size(); i < svd.matrixV().cols(); ++i) null_cols.push_back(i);
  out.basis = Eigen::MatrixXcd::Zero(rep.dim(), static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t t = 0; t < null_cols.size(); ++t) {
    const Vector vcol = svd.matrixV().col(null_cols[t]);
    for (std::size_t r = 0; r < cols.size(); ++r) out.basis(cols[r], static_cast<Eigen::Index>(t)) = vcol(static_cast<Eigen::Index>(r));
  }
  return out;
}

}  // namespace gpcuntz
