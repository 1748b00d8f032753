#pragma once

// Normal-form arithmetic for O_N. Elements are finite linear combinations of
// normal words s_J s_K^*; products are reduced with s_i^* s_j = delta_ij I.
// The relation sum_i s_i s_i^* = I is not used as a rewrite rule; equality
// modulo it is decided by expanding to a common depth (expand_identity).

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpcuntz/core.hpp"

namespace gpcuntz {

/// A word J = (j_1, ..., j_m) over {1, ..., N}. The empty word stands for I.
/// Ordered by length first, then lexicographically.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> letters) : letters_(letters) {}
  explicit MultiIndex(std::vector<int> letters) : letters_(std::move(letters)) {}

  /// The word i i ... i of length n.
  static MultiIndex repeated(int letter, std::size_t n) { return MultiIndex(std::vector<int>(n, letter)); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<int>& letters() const { return letters_; }

  MultiIndex concat(const MultiIndex& tail) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return MultiIndex(std::move(out));
  }

  bool is_prefix_of(const MultiIndex& other) const {
    return size() <= other.size() && std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
  }

  MultiIndex drop_front(std::size_t n) const {
    return MultiIndex(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end()));
  }

  void validate(int rank) const {
    for (int c : letters_) {
      if (c < 1 || c > rank) throw DomainError("multi-index letter " + std::to_string(c) + " outside 1.." + std::to_string(rank));
    }
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<int> letters_;
};

/// All words of length n over {1..rank}, in lexicographic order.
inline std::vector<MultiIndex> all_words(int rank, std::size_t n) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 1);
  while (true) {
    out.emplace_back(cur);
    std::size_t pos = n;
    while (pos > 0 && cur[pos - 1] == rank) {
      cur[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) break;
    ++cur[pos - 1];
  }
  return out;
}

/// s_J s_K^*. The defaulted ordering compares (|J|, J, |K|, K).
struct NormalWord {
  MultiIndex left;
  MultiIndex right;

  bool is_identity() const { return left.empty() && right.empty(); }
  /// |J| - |K|, the gauge degree.
  long degree() const { return static_cast<long>(left.size()) - static_cast<long>(right.size()); }
  std::size_t sandwich_depth() const { return std::min(left.size(), right.size()); }

  friend bool operator==(const NormalWord&, const NormalWord&) = default;
  friend std::strong_ordering operator<=>(const NormalWord&, const NormalWord&) = default;
};

/// Reduces s_J s_K^* s_L s_M^* to a single normal word, or nothing when K and
/// L are incomparable (the product vanishes).
inline std::optional<NormalWord> multiply_words(const NormalWord& a, const NormalWord& b) {
  const MultiIndex& k = a.right;
  const MultiIndex& l = b.left;
  if (k.is_prefix_of(l)) return NormalWord{a.left.concat(l.drop_front(k.size())), b.right};
  if (l.is_prefix_of(k)) return NormalWord{a.left, b.right.concat(k.drop_front(l.size()))};
  return std::nullopt;
}

class AlgebraElement {
 public:
  using TermMap = std::map<NormalWord, Complex>;

  explicit AlgebraElement(int rank) : rank_(rank) {
    if (rank < 2) throw DomainError("O_N requires N >= 2");
  }

  static AlgebraElement zero(int rank) { return AlgebraElement(rank); }
  static AlgebraElement identity(int rank) { return scalar(rank, 1.0); }
  static AlgebraElement scalar(int rank, Complex c) { return word(rank, {}, {}, c); }
  /// s_i
  static AlgebraElement generator(int rank, int i) { return word(rank, MultiIndex{i}, {}, 1.0); }
  /// c s_J s_K^*
  static AlgebraElement word(int rank, MultiIndex j, MultiIndex k, Complex c = 1.0) {
    AlgebraElement a(rank);
    j.validate(rank);
    k.validate(rank);
    a.accumulate(NormalWord{std::move(j), std::move(k)}, c);
    a.prune();
    return a;
  }

  int rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(const NormalWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// True when the element is a multiple of I (including zero).
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_identity()); }
  Complex scalar_value() const { return coefficient(NormalWord{}); }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Adds c to the coefficient of w. Callers finish with prune().
  void accumulate(const NormalWord& w, Complex c) { terms_[w] += c; }

  AlgebraElement& prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPruneTol; });
    return *this;
  }

 private:
  int rank_;
  TermMap terms_;
};

inline void require_same_rank(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
}

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_rank(a, b);
  AlgebraElement out(a.rank());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      if (auto w = multiply_words(wa, wb)) out.accumulate(*w, ca * cb);
    }
  }
  return std::move(out.prune());
}

inline AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement out(a.rank());
  for (const auto& [w, c] : a.terms()) out.accumulate(NormalWord{w.right, w.left}, std::conj(c));
  return std::move(out.prune());
}

inline AlgebraElement linear_combine(std::span<const std::pair<Complex, AlgebraElement>> pairs) {
  if (pairs.empty()) throw DomainError("linear_combine: empty input has no rank");
  AlgebraElement out(pairs.front().second.rank());
  for (const auto& [coef, el] : pairs) {
    require_same_rank(out, el);
    for (const auto& [w, c] : el.terms()) out.accumulate(w, coef * c);
  }
  return std::move(out.prune());
}

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  const std::pair<Complex, AlgebraElement> p[] = {{1.0, a}, {1.0, b}};
  return linear_combine(p);
}
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  const std::pair<Complex, AlgebraElement> p[] = {{1.0, a}, {-1.0, b}};
  return linear_combine(p);
}
inline AlgebraElement operator*(Complex c, const AlgebraElement& a) {
  const std::pair<Complex, AlgebraElement> p[] = {{c, a}};
  return linear_combine(p);
}
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

/// Rewrites every term c s_J s_K^* as sum_{|L|=e} c s_{JL} s_{KL}^*, with e
/// chosen so that min(|J|,|K|) reaches depth + (largest min(|J|,|K|) present).
/// Two elements agree modulo sum_i s_i s_i^* = I exactly when their
/// difference expands to zero.
inline AlgebraElement expand_identity(const AlgebraElement& a, std::size_t depth) {
  std::size_t base = 0;
  for (const auto& [w, c] : a.terms()) base = std::max(base, w.sandwich_depth());
  const std::size_t target = base + depth;
  AlgebraElement out(a.rank());
  for (const auto& [w, c] : a.terms()) {
    const std::size_t e = target - w.sandwich_depth();
    for (const auto& l : all_words(a.rank(), e)) {
      out.accumulate(NormalWord{w.left.concat(l), w.right.concat(l)}, c);
    }
  }
  return std::move(out.prune());
}

inline bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol = kIdentityTol) {
  require_same_rank(a, b);
  AlgebraElement d = a;
  for (const auto& [w, c] : b.terms()) d.accumulate(w, -c);
  return d.prune().max_abs_coefficient() <= tol;
}

/// Largest coefficient of a - b after common-depth expansion.
inline double cuntz_residual(const AlgebraElement& a, const AlgebraElement& b, std::size_t depth = 0) {
  return expand_identity(a - b, depth).max_abs_coefficient();
}

inline bool equal_modulo_cuntz(const AlgebraElement& a, const AlgebraElement& b, std::size_t depth = 0,
                               double tol = kIdentityTol) {
  return cuntz_residual(a, b, depth) <= tol;
}

/// gamma_c: s_J s_K^* -> c^{|J|-|K|} s_J s_K^*.
inline AlgebraElement gauge_action(Complex c, const AlgebraElement& a) {
  require_unit_scalar(c, "gauge action");
  AlgebraElement out(a.rank());
  for (const auto& [w, coef] : a.terms()) out.accumulate(w, coef * int_pow(c, w.degree()));
  return std::move(out.prune());
}

namespace detail {

/// Expansion of alpha_g(s_J) = prod_t (sum_l g_{l j_t} s_l) as (L, coefficient) pairs.
inline std::vector<std::pair<MultiIndex, Complex>> image_of_word(const UnitaryMatrix& g, const MultiIndex& j) {
  std::vector<std::pair<std::vector<int>, Complex>> acc{{{}, Complex{1.0, 0.0}}};
  for (int letter : j) {
    std::vector<std::pair<std::vector<int>, Complex>> next;
    next.reserve(acc.size() * static_cast<std::size_t>(g.rank()));
    for (const auto& [w, c] : acc) {
      for (int l = 1; l <= g.rank(); ++l) {
        const Complex gl = g(l, letter);
        if (gl == Complex{}) continue;
        auto w2 = w;
        w2.push_back(l);
        next.emplace_back(std::move(w2), c * gl);
      }
    }
    acc = std::move(next);
  }
  std::vector<std::pair<MultiIndex, Complex>> out;
  out.reserve(acc.size());
  for (auto& [w, c] : acc) out.emplace_back(MultiIndex(std::move(w)), c);
  return out;
}

}  // namespace detail

/// alpha_g: s_i -> sum_j g_{ji} s_j, extended multiplicatively and *-compatibly.
inline AlgebraElement unitary_action(const UnitaryMatrix& g, const AlgebraElement& a) {
  if (g.rank() != a.rank()) throw RankMismatch(g.rank(), a.rank());
  AlgebraElement out(a.rank());
  for (const auto& [w, coef] : a.terms()) {
    const auto left = detail::image_of_word(g, w.left);
    const auto right = detail::image_of_word(g, w.right);
    for (const auto& [l, cl] : left) {
      for (const auto& [r, cr] : right) out.accumulate(NormalWord{l, r}, coef * cl * std::conj(cr));
    }
  }
  return std::move(out.prune());
}

/// Gauge average onto the fixed-point subalgebra: keeps the |J| = |K| terms.
inline AlgebraElement conditional_expectation(const AlgebraElement& a) {
  AlgebraElement out(a.rank());
  for (const auto& [w, c] : a.terms()) {
    if (w.degree() == 0) out.accumulate(w, c);
  }
  return out;
}

/// s(z) = z_1 s_1 + ... + z_N s_N.
inline AlgebraElement s_of(const UnitVector& z) {
  AlgebraElement out(z.rank());
  for (int i = 1; i <= z.rank(); ++i) out.accumulate(NormalWord{MultiIndex{i}, {}}, z(i));
  return std::move(out.prune());
}

/// s(z^{(1)}) ... s(z^{(k)}) in normal form.
inline AlgebraElement s_of(std::span<const UnitVector> factors) {
  if (factors.empty()) throw DomainError("s_of: empty tensor");
  AlgebraElement out = s_of(factors.front());
  for (std::size_t t = 1; t < factors.size(); ++t) out = multiply(out, s_of(factors[t]));
  return out;
}

/// The automorphism beta_2 of O_2: s_1 -> s_1, s_2 -> -s_2.
inline UnitaryMatrix beta2() {
  const Complex d[] = {1.0, -1.0};
  return UnitaryMatrix::diagonal(d);
}

/// Image of the CAR generator a_n in O_2:
/// a_1 -> s_1 s_2^*, a_n -> sum_{|J|=n-1} s_J s_1 s_2^* beta_2(s_J^*).
inline AlgebraElement car_generator(int n) {
  if (n < 1) throw DomainError("car_generator: n must be at least 1");
  const AlgebraElement core = AlgebraElement::word(2, MultiIndex{1}, MultiIndex{2});
  if (n == 1) return core;
  const UnitaryMatrix b = beta2();
  AlgebraElement out = AlgebraElement::zero(2);
  for (const auto& j : all_words(2, static_cast<std::size_t>(n - 1))) {
    const AlgebraElement sj = AlgebraElement::word(2, j, {});
    const AlgebraElement term = multiply(multiply(sj, core), unitary_action(b, adjoint(sj)));
    out = out + term;
  }
  return out;
}


/// Largest residual of {a_n, a_m^*} = delta_nm I and {a_n, a_m} = 0 over
/// n, m <= n_max, compared modulo the Cuntz relations.
inline double car_relations_residual(int n_max) {
  std::vector<AlgebraElement> a;
  for (int n = 1; n <= n_max; ++n) a.push_back(car_generator(n));
  double worst = 0.0;
  for (int n = 0; n < n_max; ++n) {
    for (int m = 0; m < n_max; ++m) {
      const auto& an = a[static_cast<std::size_t>(n)];
      const auto& am = a[static_cast<std::size_t>(m)];
      const AlgebraElement am_star = adjoint(am);
      const AlgebraElement mixed = multiply(an, am_star) + multiply(am_star, an);
      const AlgebraElement target = n == m ? AlgebraElement::identity(2) : AlgebraElement::zero(2);
      worst = std::max(worst, cuntz_residual(mixed, target));
      worst = std::max(worst, cuntz_residual(multiply(an, am) + multiply(am, an), AlgebraElement::zero(2)));
    }
  }
  return worst;
}

}  // namespace gpcuntz
