#pragma once

// Irreducibility, equivalence, decomposition and U(1)-branching of GP representations.

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "gpcuntz/reps.hpp"

namespace gpcuntz {

enum class Verdict { yes, no, unknown };
enum class Category { irreducible, finite_sum, direct_integral, gray_zone, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

inline const char* to_string(Category c) {
  switch (c) {
    case Category::irreducible: return "irreducible";
    case Category::finite_sum: return "finite_sum";
    case Category::direct_integral: return "direct_integral";
    case Category::gray_zone: return "gray_zone";
    case Category::unknown: return "unknown";
  }
  return "?";
}

struct ClassificationReport {
  Verdict irreducible = Verdict::unknown;
  Category category = Category::unknown;
  bool analytic_assumption = false;
  std::string reason;
  std::optional<CycleParam> root;  // primitive root (cycles) or direct-integral base (chains)
  int power = 1;                   // p with z = root^{(x)p}, cycles only
  int base_length = 0;             // length of root, when present
};

inline ClassificationReport classify(const CycleParam& z) {
  ClassificationReport r;
  auto [y, p] = primitive_root(z);
  r.power = p;
  r.base_length = y.length();
  r.root = std::move(y);
  if (p == 1) {
    r.irreducible = Verdict::yes;
    r.category = Category::irreducible;
    r.reason = "cycle is nonperiodic: GP(z) is irreducible";
  } else {
    r.irreducible = Verdict::no;
    r.category = Category::finite_sum;
    r.reason = "cycle is periodic, z = y^(x)p with p = " + std::to_string(p) + ": GP(z) splits into p inequivalent " +
               "irreducible summands GP(zeta_j y), zeta_j the p-th roots of unity";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Direct integrals for eventually periodic chains

struct DirectIntegralDescriptor {
  CycleParam base;
  std::string measure = "Haar measure on U(1)";
  std::string fiber = "c -> GP(c y)";
  std::string uniqueness = "base determined up to y -> c0 y (|c0| = 1) and cyclic rotation";

  TruncatedRep fiber_rep(Complex c, int depth) const { return build_fiber_rep(base, c, depth); }
};

/// Base y of the direct integral GP(z) ~ int GP(c y) d eta(c): the period
/// block with per-factor phases removed, reduced to its primitive root.
inline DirectIntegralDescriptor decompose_chain(const ChainParam& z) {
  const auto e = z.as_explicit();
  if (!e) throw DomainError("decompose_chain: chain is not known to be eventually periodic");
  const CanonicalCycle block = canonicalize_cycle(CycleParam(e->period));
  const PrimitiveRoot pr = primitive_root(CycleParam(block.factors));
  return DirectIntegralDescriptor{CycleParam(canonicalize_cycle(pr.root).factors)};
}

inline ClassificationReport classify(const ChainParam& z) {
  ClassificationReport r;
  const PeriodicityVerdict ev = is_eventually_periodic(z);
  using A = PeriodicityVerdict::Answer;
  if (ev.answer == A::yes) {
    const DirectIntegralDescriptor d = decompose_chain(z);
    r.irreducible = Verdict::no;
    r.category = Category::direct_integral;
    r.base_length = d.base.length();
    r.root = d.base;
    r.reason = "chain is eventually periodic, hence asymptotically periodic: GP(z) is a direct integral of GP(c y) over U(1)";
    return r;
  }
  if (std::holds_alternative<GrayZoneChain>(z.kind())) {
    r.irreducible = Verdict::unknown;
    r.category = Category::gray_zone;
    r.analytic_assumption = true;
    r.reason = "chain is asymptotically periodic (p = 1 series converges) but not eventually periodic: "
               "no verdict is available for this zone";
    return r;
  }
  if (ev.answer == A::no) {
    r.irreducible = Verdict::yes;
    r.category = Category::irreducible;
    r.analytic_assumption = true;
    r.reason = "irrational rotation is not asymptotically periodic: GP(z) is irreducible (theta assumed irrational)";
    return r;
  }
  r.reason = "finite prefix only: run diagnostics to inspect the series sum (1 - |<z(n)|z(n+p)>|)";
  return r;
}

inline ClassificationReport classify(const GPParam& p) {
  return std::visit([](const auto& z) { return classify(z); }, p);
}

/// GP(a) ~ GP(b). Cycles and chains are never equivalent.
inline bool equivalent(const GPParam& a, const GPParam& b) {
  if (param_rank(a) != param_rank(b)) throw RankMismatch(param_rank(a), param_rank(b));
  if (a.index() != b.index()) return false;
  if (const auto* ca = std::get_if<CycleParam>(&a)) return cycles_equivalent(*ca, std::get<CycleParam>(b));
  return chain_tail_equivalent(std::get<ChainParam>(a), std::get<ChainParam>(b));
}

/// Irreducible summands zeta_j y, j = 1..p, of GP(z) for z = y^{(x)p}.
inline std::vector<CycleParam> decompose_cycle(const CycleParam& z) {
  const auto [y, p] = primitive_root(z);
  if (p == 1) return {z};
  std::vector<CycleParam> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int j = 1; j <= p; ++j) out.push_back(y.scaled(root_of_unity(j - 1, p)));
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      if (cycles_equivalent(out[a], out[b])) throw std::logic_error("decompose_cycle: components not pairwise inequivalent");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction to the gauge-invariant subalgebra

struct BranchingReport {
  bool infinite = false;  // countably many components (chains)
  int count = 0;
  bool components_irreducible = false;
  std::vector<Vector> generators;  // e_i = pi(s(z^{(i)}) ... s(z^{(k)})) Omega
  double orthonormality_residual = 0.0;
};

inline BranchingReport branching_u1(const CycleParam& z, int depth = 0) {
  if (depth == 0) depth = z.length() + 1;
  BranchingReport out;
  out.count = z.length();
  out.components_irreducible = !is_periodic(z);
  const TruncatedRep rep = build_cycle_rep(z, depth);
  for (int i = 1; i <= z.length(); ++i) {
    out.generators.push_back(rep.apply_s(std::span(z.factors()).subspan(static_cast<std::size_t>(i - 1)), rep.omega()));
  }
  out.orthonormality_residual = identity_defect(gram_of(out.generators));
  return out;
}

inline BranchingReport branching_u1(const ChainParam&, int = 0) {
  BranchingReport out;
  out.infinite = true;
  out.components_irreducible = true;
  return out;
}

inline BranchingReport branching_u1(const GPParam& p, int depth = 0) {
  return std::visit([depth](const auto& z) { return branching_u1(z, depth); }, p);
}

/// Eigenvalues of pi(s(v)) on W = span{pi(s(v))^j Omega : j = 1..p} inside
/// GP(v^{(x)p}), sorted by argument in [0, 2 pi).
inline std::vector<Complex> numeric_cycle_eigencheck(const CycleParam& v, int p, int depth = 0) {
  if (p < 1) throw DomainError("eigencheck: p must be at least 1");
  if (depth == 0) depth = (p + 1) * v.length();
  const CycleParam z = v.power(p);
  const TruncatedRep rep = build_cycle_rep(z, depth);
  Eigen::MatrixXcd w(rep.dim(), p);
  Eigen::MatrixXcd aw(rep.dim(), p);
  try {
    Vector x = rep.omega();
    for (int j = 0; j < p; ++j) {
      x = rep.apply_s(v.factors(), x);
      w.col(j) = x;
    }
    for (int j = 0; j < p; ++j) aw.col(j) = rep.apply_s(v.factors(), w.col(j));
  } catch (const TruncationOverflow&) {
    throw DomainError("eigencheck: depth " + std::to_string(depth) + " insufficient for p = " + std::to_string(p));
  }
  const Eigen::MatrixXcd g = w.adjoint() * w;
  const Eigen::MatrixXcd m = g.fullPivLu().solve(w.adjoint() * aw);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + p);
  auto arg0 = [](Complex c) {
    double a = std::arg(c);
    if (a < -1e-12) a += 2.0 * std::numbers::pi;
    return std::max(a, 0.0);
  };
  std::sort(ev.begin(), ev.end(), [&](Complex a, Complex b) { return arg0(a) < arg0(b); });
  return ev;
}

}  // namespace gpcuntz
