#pragma once

// Parameters of generalized permutative representations: cycles (finite
// product tensors of unit vectors) and chains (infinite sequences of unit
// vectors), their canonical forms, periodicity tests and equivalence.

#include <algorithm>
#include <numeric>
#include <optional>
#include <type_traits>
#include <variant>

#include "gpcuntz/core.hpp"

namespace gpcuntz {

/// z = z^{(1)} (x) ... (x) z^{(k)}, k >= 1. Factors are a presentation of the
/// tensor; phases may be moved between factors without changing it.
class CycleParam {
 public:
  explicit CycleParam(std::vector<UnitVector> factors) : f_(std::move(factors)) {
    if (f_.empty()) throw DomainError("cycle: at least one factor required");
    for (const auto& v : f_) {
      if (v.rank() != f_.front().rank()) throw RankMismatch(f_.front().rank(), v.rank());
    }
  }

  int rank() const { return f_.front().rank(); }
  int length() const { return static_cast<int>(f_.size()); }
  const std::vector<UnitVector>& factors() const { return f_; }
  /// 1-based factor access.
  const UnitVector& factor(int l) const { return f_[static_cast<std::size_t>(l - 1)]; }
  /// Factor l with the k-periodic extension z^{(kn+l)} = z^{(l)}, any l >= 1.
  const UnitVector& periodic_factor(long l) const { return f_[static_cast<std::size_t>((l - 1) % length())]; }

  /// c * z, with the scalar placed in the first factor.
  CycleParam scaled(Complex c) const {
    auto f = f_;
    f.front() = f.front().scaled(c);
    return CycleParam(std::move(f));
  }

  /// z^{(r+1)} (x) ... (x) z^{(k)} (x) z^{(1)} (x) ... (x) z^{(r)}
  CycleParam rotated(int r) const {
    auto f = f_;
    std::rotate(f.begin(), f.begin() + ((r % length()) + length()) % length(), f.end());
    return CycleParam(std::move(f));
  }

  /// z^{(x) p}
  CycleParam power(int p) const {
    if (p < 1) throw DomainError("tensor power must be at least 1");
    std::vector<UnitVector> f;
    f.reserve(f_.size() * static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) f.insert(f.end(), f_.begin(), f_.end());
    return CycleParam(std::move(f));
  }

 private:
  std::vector<UnitVector> f_;
};

/// True when a and b are the same tensor (their inner product is 1).
inline bool tensors_equal(const CycleParam& a, const CycleParam& b, double tol = kParamTol) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
  if (a.length() != b.length()) return false;
  return std::abs(tensor_inner(a.factors(), b.factors()) - 1.0) <= tol;
}

/// Phase-normalized factors (first component above tolerance is real
/// positive) together with the product of the removed phases.
struct CanonicalCycle {
  std::vector<UnitVector> factors;
  Complex global_phase{1.0, 0.0};

  CycleParam reconstruct() const { return CycleParam(factors).scaled(global_phase); }
};

namespace detail {

/// Phase of the first component whose modulus exceeds the tolerance.
inline Complex anchor_phase(const UnitVector& v) {
  for (int i = 1; i <= v.rank(); ++i) {
    if (std::abs(v(i)) > kParamTol) return v(i) / std::abs(v(i));
  }
  return 1.0;  // unreachable for unit vectors
}

inline bool same_components(const UnitVector& a, const UnitVector& b, double tol = kParamTol) {
  for (int i = 1; i <= a.rank(); ++i) {
    if (std::abs(a(i) - b(i)) > tol) return false;
  }
  return true;
}

/// Factors agree up to a phase.
inline bool proportional(const UnitVector& a, const UnitVector& b, double tol = kParamTol) {
  return std::abs(std::abs(inner(a, b)) - 1.0) <= tol;
}

}  // namespace detail

inline CanonicalCycle canonicalize_cycle(const CycleParam& z) {
  CanonicalCycle out;
  out.factors.reserve(static_cast<std::size_t>(z.length()));
  for (const auto& f : z.factors()) {
    const Complex ph = detail::anchor_phase(f);
    out.factors.push_back(f.scaled(std::conj(ph)));
    out.global_phase *= ph;
  }
  out.global_phase /= std::abs(out.global_phase);
  return out;
}

struct PrimitiveRoot {
  CycleParam root;
  int power;
};

/// Largest p with z = y^{(x)p} as tensors, and a nonperiodic y. The global
/// phase of y is the principal p-th root of the global phase of z.
inline PrimitiveRoot primitive_root(const CycleParam& z) {
  const CanonicalCycle cz = canonicalize_cycle(z);
  const int k = z.length();
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < k && periodic; ++i) {
      periodic = detail::same_components(cz.factors[static_cast<std::size_t>(i)], cz.factors[static_cast<std::size_t>(i - d)]);
    }
    if (!periodic) continue;
    const int p = k / d;
    std::vector<UnitVector> block(cz.factors.begin(), cz.factors.begin() + d);
    return PrimitiveRoot{CycleParam(std::move(block)).scaled(principal_root(cz.global_phase, p)), p};
  }
  return PrimitiveRoot{z, 1};  // d = k always succeeds; kept for the compiler
}

inline bool is_periodic(const CycleParam& z) { return primitive_root(z).power > 1; }

/// z ~ y: equal length and y equals some cyclic rotation of z as a tensor.
inline bool cycles_equivalent(const CycleParam& z, const CycleParam& y) {
  if (z.rank() != y.rank()) throw RankMismatch(z.rank(), y.rank());
  if (z.length() != y.length()) return false;
  for (int r = 0; r < z.length(); ++r) {
    if (tensors_equal(z.rotated(r), y)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Chains

struct Rational {
  long num = 0;
  long den = 1;
};

/// Eventually periodic data: preperiod followed by the period repeated forever.
struct ExplicitChain {
  std::vector<UnitVector> preperiod;
  std::vector<UnitVector> period;
};

/// z^{(n)} = (cos 2 pi n theta, sin 2 pi n theta) in C^2.
struct RotationChain {
  std::variant<Rational, double> theta;
};

/// A finite prefix of an otherwise unknown chain. Usable for diagnostics only.
struct PrefixChain {
  std::vector<UnitVector> factors;
};

/// The real chain in C^2 with z^{(2n-1)} = (cos c_n, sin c_n),
/// z^{(2n)} = (cos d_n, sin d_n), c_n = pi/4 - Y_n, d_n = pi/4 + Y_n,
/// Y_n = arcsin(1/(sqrt(2) n)). It is asymptotically periodic but not
/// eventually periodic, and tends to (1/sqrt 2, 1/sqrt 2).
struct GrayZoneChain {};

class ChainParam {
 public:
  using Kind = std::variant<ExplicitChain, RotationChain, PrefixChain, GrayZoneChain>;

  static ChainParam explicit_chain(std::vector<UnitVector> preperiod, std::vector<UnitVector> period) {
    if (period.empty()) throw DomainError("chain: period must be nonempty");
    const int r = period.front().rank();
    for (const auto& v : preperiod) {
      if (v.rank() != r) throw RankMismatch(r, v.rank());
    }
    for (const auto& v : period) {
      if (v.rank() != r) throw RankMismatch(r, v.rank());
    }
    return ChainParam(ExplicitChain{std::move(preperiod), std::move(period)}, r);
  }

  static ChainParam rotation(long num, long den) {
    if (den <= 0) throw DomainError("rotation: denominator must be positive");
    if (num < 0 || num >= den) throw DomainError("rotation: theta must lie in [0, 1)");
    const long g = std::gcd(num, den);
    return ChainParam(RotationChain{Rational{num / g, den / g}}, 2);
  }

  static ChainParam rotation(double theta) {
    if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("rotation: theta must lie in [0, 1)");
    return ChainParam(RotationChain{theta}, 2);
  }

  static ChainParam prefix(std::vector<UnitVector> factors) {
    if (factors.empty()) throw DomainError("chain prefix must be nonempty");
    const int r = factors.front().rank();
    for (const auto& v : factors) {
      if (v.rank() != r) throw RankMismatch(r, v.rank());
    }
    return ChainParam(PrefixChain{std::move(factors)}, r);
  }

  static ChainParam gray_zone() { return ChainParam(GrayZoneChain{}, 2); }

  /// z^{(infinity)} = (z^{(1)}, ..., z^{(k)}, z^{(1)}, ...)
  static ChainParam repeat(const CycleParam& z) { return explicit_chain({}, z.factors()); }

  int rank() const { return rank_; }
  const Kind& kind() const { return kind_; }

  bool is_explicit() const { return std::holds_alternative<ExplicitChain>(kind_); }
  bool is_rational_rotation() const {
    const auto* r = std::get_if<RotationChain>(&kind_);
    return r != nullptr && std::holds_alternative<Rational>(r->theta);
  }

  /// Number of factors known, or -1 when the chain is fully determined.
  long known_length() const {
    if (const auto* p = std::get_if<PrefixChain>(&kind_)) return static_cast<long>(p->factors.size());
    return -1;
  }

  /// z^{(n)}, n >= 1.
  UnitVector factor(long n) const {
    if (n < 1) throw DomainError("chain factors are indexed from 1");
    return std::visit(
        [n](const auto& k) -> UnitVector {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ExplicitChain>) {
            const long pre = static_cast<long>(k.preperiod.size());
            if (n <= pre) return k.preperiod[static_cast<std::size_t>(n - 1)];
            return k.period[static_cast<std::size_t>((n - pre - 1) % static_cast<long>(k.period.size()))];
          } else if constexpr (std::is_same_v<T, RotationChain>) {
            double angle = 0.0;
            if (const auto* q = std::get_if<Rational>(&k.theta)) {
              angle = 2.0 * std::numbers::pi * static_cast<double>((n % q->den) * q->num % q->den) / static_cast<double>(q->den);
            } else {
              const double t = std::get<double>(k.theta);
              angle = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(n) * t, 1.0);
            }
            return UnitVector::normalized({std::cos(angle), std::sin(angle)});
          } else if constexpr (std::is_same_v<T, PrefixChain>) {
            if (n > static_cast<long>(k.factors.size())) {
              throw DomainError("chain prefix has only " + std::to_string(k.factors.size()) + " factors");
            }
            return k.factors[static_cast<std::size_t>(n - 1)];
          } else {
            const long m = (n + 1) / 2;
            const double y = std::asin(1.0 / (std::numbers::sqrt2 * static_cast<double>(m)));
            const double angle = (n % 2 == 1) ? std::numbers::pi / 4.0 - y : std::numbers::pi / 4.0 + y;
            return UnitVector::normalized({std::cos(angle), std::sin(angle)});
          }
        },
        kind_);
  }

  /// Rational rotations become explicit chains with the full denominator as period.
  std::optional<ExplicitChain> as_explicit() const {
    if (const auto* e = std::get_if<ExplicitChain>(&kind_)) return *e;
    if (is_rational_rotation()) {
      const long den = std::get<Rational>(std::get<RotationChain>(kind_).theta).den;
      ExplicitChain out;
      for (long n = 1; n <= den; ++n) out.period.push_back(factor(n));
      return out;
    }
    return std::nullopt;
  }

 private:
  ChainParam(Kind k, int rank) : kind_(std::move(k)), rank_(rank) {}
  Kind kind_;
  int rank_;
};

using GPParam = std::variant<CycleParam, ChainParam>;

inline int param_rank(const GPParam& p) {
  return std::visit([](const auto& x) { return x.rank(); }, p);
}

// ---------------------------------------------------------------------------
// Chain decisions

namespace detail {

/// Smallest d dividing the block length with block[i] ~ block[i+d] (cyclically, up to phase).
inline int minimal_cyclic_period(const std::vector<UnitVector>& block) {
  const int p = static_cast<int>(block.size());
  for (int d = 1; d <= p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      ok = proportional(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>((i + d) % p)]);
    }
    if (ok) return d;
  }
  return p;
}

}  // namespace detail

/// Decides z ~ y for chains whose tails are exactly periodic. The tail terms
/// 1 - |<z^{(n+p)}|y^{(n+q)}>| are then periodic, so the series converges iff
/// they vanish, i.e. the period blocks agree factorwise up to phase at some
/// relative offset.
inline bool chain_tail_equivalent(const ChainParam& z, const ChainParam& y) {
  if (z.rank() != y.rank()) throw RankMismatch(z.rank(), y.rank());
  const auto ez = z.as_explicit();
  const auto ey = y.as_explicit();
  if (!ez || !ey) {
    throw Undecidable("tail equivalence is only decidable for explicit or rational-rotation chains; use diagnostics");
  }
  const long pz = static_cast<long>(ez->period.size());
  const long py = static_cast<long>(ey->period.size());
  const long span = std::lcm(pz, py);
  for (long r = 0; r < py; ++r) {
    bool ok = true;
    for (long t = 0; t < span && ok; ++t) {
      ok = detail::proportional(ez->period[static_cast<std::size_t>(t % pz)], ey->period[static_cast<std::size_t>((t + r) % py)]);
    }
    if (ok) return true;
  }
  return false;
}

struct PeriodicityVerdict {
  enum class Answer { yes, no, unknown };
  Answer answer = Answer::unknown;
  int period = 0;  // minimal p when answer == yes
  bool analytic_assumption = false;
  std::string note;
};

/// Eventual periodicity z^{(n+p)} = c_n z^{(n)} for large n.
inline PeriodicityVerdict is_eventually_periodic(const ChainParam& z) {
  using A = PeriodicityVerdict::Answer;
  if (auto e = z.as_explicit()) {
    return {A::yes, detail::minimal_cyclic_period(e->period), false,
            z.is_explicit() ? "explicit period block" : "rational rotation"};
  }
  if (std::holds_alternative<RotationChain>(z.kind())) {
    return {A::no, 0, true, "floating-point theta is taken to be irrational (analytic assumption)"};
  }
  if (std::holds_alternative<GrayZoneChain>(z.kind())) {
    return {A::no, 0, true, "pairwise distinct real factors in the open positive quadrant: never eventually periodic"};
  }
  return {A::unknown, 0, false, "finite prefix: eventual periodicity cannot be decided"};
}

struct DiagnosticsRow {
  int p;
  long m;
  double partial_sum;
};

/// S(p, M) = sum_{n <= M} (1 - |<z^{(n)}|z^{(n+p)}>|) for p = 1..p_max.
inline std::vector<DiagnosticsRow> asymptotic_diagnostics(const ChainParam& z, int p_max, long m) {
  if (p_max < 1 || m < 1) throw DomainError("diagnostics: p_max and M must be at least 1");
  if (z.known_length() >= 0 && m + p_max > z.known_length()) {
    throw DomainError("diagnostics: prefix too short for requested p_max and M");
  }
  std::vector<UnitVector> f;
  f.reserve(static_cast<std::size_t>(m + p_max));
  for (long n = 1; n <= m + p_max; ++n) f.push_back(z.factor(n));
  std::vector<DiagnosticsRow> rows;
  for (int p = 1; p <= p_max; ++p) {
    double s = 0.0;
    for (long n = 0; n < m; ++n) {
      s += 1.0 - std::abs(inner(f[static_cast<std::size_t>(n)], f[static_cast<std::size_t>(n + p)]));
    }
    rows.push_back({p, m, s});
  }
  return rows;
}

/// sum_{n <= M} (1 - |<z^{(n)}|v>|): distance of the chain from the constant chain v.
inline double target_partial_sum(const ChainParam& z, const UnitVector& v, long m) {
  double s = 0.0;
  for (long n = 1; n <= m; ++n) s += 1.0 - std::abs(inner(z.factor(n), v));
  return s;
}

}  // namespace gpcuntz
