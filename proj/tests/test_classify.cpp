#include <gtest/gtest.h>

#include "support.hpp"

using namespace gpcuntz;

namespace {

const UnitVector e1 = UnitVector::basis(2, 1);
const UnitVector e2 = UnitVector::basis(2, 2);

bool contains_root(const std::vector<Complex>& ev, Complex r, double tol = 1e-9) {
  return std::any_of(ev.begin(), ev.end(), [&](Complex c) { return std::abs(c - r) < tol; });
}

}  // namespace

TEST(Classify, CycleExamples) {
  const auto a = classify(CycleParam({e1, e2}));
  EXPECT_EQ(a.irreducible, Verdict::yes);
  EXPECT_EQ(a.category, Category::irreducible);
  EXPECT_EQ(a.power, 1);

  const auto b = classify(CycleParam({e1, e1}));
  EXPECT_EQ(b.irreducible, Verdict::no);
  EXPECT_EQ(b.category, Category::finite_sum);
  EXPECT_EQ(b.power, 2);
  ASSERT_TRUE(b.root);
  EXPECT_TRUE(oracle::tensors_equal_dense(*b.root, CycleParam({e1})));
  EXPECT_FALSE(b.analytic_assumption);
}

TEST(Classify, ChainExamples) {
  const auto r = classify(ChainParam::rotation(1, 3));
  EXPECT_EQ(r.irreducible, Verdict::no);
  EXPECT_EQ(r.category, Category::direct_integral);
  EXPECT_EQ(r.base_length, 3);

  const auto f = classify(ChainParam::rotation(std::numbers::sqrt2 - 1.0));
  EXPECT_EQ(f.irreducible, Verdict::yes);
  EXPECT_TRUE(f.analytic_assumption);

  const auto g = classify(ChainParam::gray_zone());
  EXPECT_EQ(g.irreducible, Verdict::unknown);
  EXPECT_EQ(g.category, Category::gray_zone);

  EXPECT_EQ(classify(ChainParam::prefix({e1, e2})).irreducible, Verdict::unknown);
  EXPECT_EQ(classify(ChainParam::explicit_chain({e2}, {e1})).base_length, 1);
}

TEST(Equivalent, Examples) {
  Rng rng(51);
  const UnitVector a = haar_unit_vector(2, rng);
  const UnitVector b = haar_unit_vector(2, rng);
  EXPECT_TRUE(equivalent(CycleParam({a, b}), CycleParam({b, a})));
  EXPECT_FALSE(equivalent(CycleParam({a, b}), CycleParam({a, a})));
  EXPECT_FALSE(equivalent(CycleParam({e1}), ChainParam::explicit_chain({}, {e1})));
  EXPECT_TRUE(equivalent(ChainParam::rotation(1, 2), ChainParam::explicit_chain({e2}, {e1})));
  EXPECT_THROW(equivalent(CycleParam({e1}), CycleParam({UnitVector::basis(3, 1)})), RankMismatch);
}

TEST(DecomposeCycle, Examples) {
  // (alpha^{1/2} e1) (x) (alpha^{1/2} e1) = alpha e1 (x) e1: the roots are +-alpha^{1/2} e1
  const Complex alpha = std::polar(1.0, 1.1);
  const UnitVector h = e1.scaled(std::sqrt(alpha));
  const auto parts = decompose_cycle(CycleParam({h, h}));
  ASSERT_EQ(parts.size(), 2u);
  for (const Complex sign : {Complex(1.0), Complex(-1.0)}) {
    const CycleParam want({h.scaled(sign)});
    EXPECT_TRUE(std::any_of(parts.begin(), parts.end(), [&](const CycleParam& c) { return cycles_equivalent(c, want); }));
  }

  const auto cube = decompose_cycle(CycleParam({e1, e1, e1}));
  ASSERT_EQ(cube.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    const CycleParam want({e1.scaled(std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0))});
    EXPECT_TRUE(std::any_of(cube.begin(), cube.end(), [&](const CycleParam& c) { return cycles_equivalent(c, want); }));
  }

  const CycleParam z({e1, e2});
  const auto one = decompose_cycle(z);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(cycles_equivalent(one.front(), z));
}

TEST(DecomposeCycle, RandomPowersSplitIntoInequivalentIrreducibles) {
  Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    const int p = 1 + t % 4;
    const CycleParam y = random_nonperiodic_cycle(2 + t % 2, 1 + t % 3, rng);
    const CycleParam z = y.power(p);
    EXPECT_EQ(primitive_root(z).power, oracle::brute_force_power(z));
    const auto parts = decompose_cycle(z);
    ASSERT_EQ(static_cast<int>(parts.size()), p);
    for (std::size_t a = 0; a < parts.size(); ++a) {
      EXPECT_EQ(classify(parts[a]).irreducible, Verdict::yes);
      for (std::size_t b = a + 1; b < parts.size(); ++b) EXPECT_FALSE(cycles_equivalent(parts[a], parts[b]));
    }
  }
}

TEST(DecomposeChain, Examples) {
  const auto a = decompose_chain(ChainParam::explicit_chain({}, {e1}));
  EXPECT_TRUE(cycles_equivalent(a.base, CycleParam({e1})));
  const auto b = decompose_chain(ChainParam::rotation(1, 2));
  EXPECT_EQ(b.base.length(), 1);
  EXPECT_TRUE(cycles_equivalent(b.base, CycleParam({e1})));
  EXPECT_EQ(decompose_chain(ChainParam::rotation(1, 3)).base.length(), 3);
  EXPECT_EQ(decompose_chain(ChainParam::explicit_chain({e2}, {e1, e2, e1, e2})).base.length(), 2);
  EXPECT_THROW(decompose_chain(ChainParam::gray_zone()), DomainError);
  EXPECT_THROW(decompose_chain(ChainParam::rotation(0.3)), DomainError);
}

TEST(DecomposeChain, ShiftedAndRephasedInputsGiveRelatedBases) {
  // the base is unique up to cyclic rotation and an overall phase
  Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    const CycleParam block = random_nonperiodic_cycle(3, 3, rng);
    std::vector<UnitVector> shifted = block.rotated(1 + t % 2).factors();
    for (auto& f : shifted) f = f.scaled(haar_phase(rng));
    const auto a = decompose_chain(ChainParam::explicit_chain({haar_unit_vector(3, rng)}, block.factors()));
    const auto b = decompose_chain(ChainParam::explicit_chain({}, shifted));
    ASSERT_EQ(a.base.length(), b.base.length());
    bool related = false;
    for (int r = 0; r < 3 && !related; ++r) {
      const Eigen::VectorXcd x = oracle::full_tensor(a.base.rotated(r));
      const Eigen::VectorXcd y = oracle::full_tensor(b.base);
      related = std::abs(std::abs(x.dot(y)) - 1.0) < 1e-9;
    }
    EXPECT_TRUE(related);
  }
}

TEST(Branching, CycleComponentsMatchLength) {
  Rng rng(54);
  for (int k = 1; k <= 3; ++k) {
    const CycleParam z = random_nonperiodic_cycle(2, k, rng);
    const auto r = branching_u1(z);
    EXPECT_FALSE(r.infinite);
    EXPECT_EQ(r.count, k);
    EXPECT_EQ(static_cast<int>(r.generators.size()), k);
    EXPECT_LT(r.orthonormality_residual, 1e-9);
    EXPECT_TRUE(r.components_irreducible);
  }
  EXPECT_FALSE(branching_u1(CycleParam({e1, e1})).components_irreducible);
  EXPECT_TRUE(branching_u1(ChainParam::rotation(1, 3)).infinite);
}

TEST(Eigencheck, RootsOfUnity) {
  const auto two = numeric_cycle_eigencheck(CycleParam({e1}), 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(std::abs(two[0] - 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(two[1] + 1.0), 0.0, 1e-9);

  const auto three = numeric_cycle_eigencheck(CycleParam({e1}), 3);
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(contains_root(three, std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0)));

  Rng rng(55);
  const CycleParam v = random_nonperiodic_cycle(2, 2, rng);
  const auto r = numeric_cycle_eigencheck(v, 2);
  EXPECT_TRUE(contains_root(r, 1.0));
  EXPECT_TRUE(contains_root(r, -1.0));

  const auto one = numeric_cycle_eigencheck(v, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(std::abs(one[0] - 1.0), 0.0, 1e-9);
}

TEST(Fiber, VerifiesAgainstScaledParameter) {
  Rng rng(56);
  for (int t = 0; t < 3; ++t) {
    const CycleParam y = random_nonperiodic_cycle(2, 1 + t, rng);
    for (int s = 0; s < 5; ++s) {
      const Complex c = haar_phase(rng);
      const VerifyReport r = verify_gp(build_fiber_rep(y, c, 4), y.scaled(c));
      EXPECT_TRUE(r.passed) << r.max_residual();
      EXPECT_LT(r.max_residual(), 1e-10);
    }
  }
}
