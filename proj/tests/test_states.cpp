#include <gtest/gtest.h>

#include "support.hpp"

using namespace gpcuntz;

namespace {

const UnitVector e1 = UnitVector::basis(2, 1);
const UnitVector e2 = UnitVector::basis(2, 2);

std::vector<AlgebraElement> words_up_to(int n, int len) {
  std::vector<AlgebraElement> out;
  for (int l = 0; l <= len; ++l) {
    for (const auto& w : all_words(n, static_cast<std::size_t>(l))) out.push_back(AlgebraElement::word(n, w, {}));
  }
  return out;
}

}  // namespace

TEST(StateEval, CycleExamples) {
  const GPState a(CycleParam({e1}));
  EXPECT_EQ(state_eval(a, AlgebraElement::generator(2, 1)), Complex(1.0));
  EXPECT_EQ(state_eval(a, AlgebraElement::generator(2, 2)), Complex(0.0));
  const GPState b(CycleParam({e1, e2}));
  EXPECT_EQ(state_eval(b, AlgebraElement::generator(2, 1)), Complex(0.0));
  EXPECT_EQ(state_eval(b, AlgebraElement::word(2, {1, 2}, {})), Complex(1.0));
  EXPECT_EQ(state_eval(b, AlgebraElement::identity(2)), Complex(1.0));
}

TEST(StateEval, ChainVanishesOffDiagonalDegrees) {
  Rng rng(41);
  const GPState st(random_explicit_chain(3, 1, 2, rng));
  for (int t = 0; t < 50; ++t) {
    const MultiIndex j = oracle::random_word(3, 1 + t % 3, rng);
    const MultiIndex k = oracle::random_word(3, 2 + t % 3, rng);
    if (j.size() != k.size()) EXPECT_EQ(state_eval_word(st, j, k), Complex(0.0));
  }
}

TEST(StateEval, CycleGivesOneOnSOfZ) {
  // omega_z(s(z)) = sum over |J| = k of |z(J)|^2 = 1
  Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    const CycleParam z = random_cycle(2 + t % 2, 1 + t % 3, rng);
    EXPECT_NEAR(std::abs(state_eval(GPState(z), s_of(z.factors())) - 1.0), 0.0, 1e-12);
  }
}

TEST(StateEval, ChainStateIsGaugeInvariant) {
  Rng rng(43);
  const GPState st(random_explicit_chain(2, 2, 1, rng));
  for (int t = 0; t < 20; ++t) {
    const AlgebraElement a = oracle::random_element(2, 5, 3, rng);
    EXPECT_NEAR(std::abs(state_eval(st, conditional_expectation(a)) - state_eval(st, a)), 0.0, 1e-12);
  }
}

TEST(StateEval, RankMismatch) {
  EXPECT_THROW(state_eval(GPState(CycleParam({e1})), AlgebraElement::identity(3)), RankMismatch);
}

TEST(StateEval, GaugeCovarianceForCycles) {
  // omega_{c z} = omega_z o gamma_{conj(c)^{1/k}}
  Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    const int k = 1 + t % 3;
    const CycleParam z = random_cycle(2, k, rng);
    const Complex c = haar_phase(rng);
    const GPState lhs(z.scaled(c));
    const GPState rhs(z);
    const Complex d = std::conj(principal_root(c, k));
    for (int s = 0; s < 20; ++s) {
      const AlgebraElement a = oracle::random_element(2, 4, 4, rng);
      EXPECT_NEAR(std::abs(state_eval(lhs, a) - state_eval(rhs, gauge_action(d, a))), 0.0, 1e-12);
    }
  }
}

TEST(Gram, Examples) {
  const std::vector<AlgebraElement> one{AlgebraElement::identity(2)};
  const auto g1 = gram_matrix(GPState(CycleParam({e1})), one);
  EXPECT_EQ(g1(0, 0), Complex(1.0));

  const auto w = words_up_to(2, 2);
  const Eigen::MatrixXcd g = gram_matrix(GPState(CycleParam({e1})), w);
  ASSERT_EQ(g.rows(), 7);
  // S_J Omega depends only on J with trailing 1s removed: classes {I,1,11}, {2,21}, {12}, {22}
  const Eigen::VectorXd ev = gram_eigenvalues(g);
  const double expected[] = {0, 0, 0, 1, 1, 2, 3};
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(ev(i), expected[i], 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXcd top = es.eigenvectors().col(6);
  // words in order I, 1, 2, 11, 12, 21, 22: the top eigenvector lives on I, s_1, s_1 s_1
  for (int i : {0, 1, 3}) EXPECT_NEAR(std::abs(top(i)), 1.0 / std::sqrt(3.0), 1e-12);
  for (int i : {2, 4, 5, 6}) EXPECT_NEAR(std::abs(top(i)), 0.0, 1e-12);
}

TEST(Gram, PositiveOnRandomParameters) {
  Rng rng(45);
  for (int t = 0; t < 20; ++t) {
    const GPParam p = t % 2 == 0 ? GPParam(random_cycle(2, 1 + t % 3, rng)) : GPParam(random_explicit_chain(2, t % 3, 1 + t % 2, rng));
    std::vector<AlgebraElement> w = words_up_to(2, 3);
    for (int s = 0; s < 5; ++s) w.push_back(oracle::random_element(2, 3, 2, rng));
    const Eigen::MatrixXcd g = gram_matrix(GPState(p), w);
    EXPECT_LT((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT(gram_eigenvalues(g).minCoeff(), -1e-8);
  }
}

TEST(Gram, GPFamilyIsOrthonormal) {
  // s(z^{(n)}) ... s(z^{(k)}) for n = 1..k: the GP family, orthonormal in the GNS space
  Rng rng(46);
  for (int t = 0; t < 10; ++t) {
    const CycleParam z = random_nonperiodic_cycle(2, 2 + t % 2, rng);
    std::vector<AlgebraElement> fam;
    for (int n = 1; n <= z.length(); ++n) fam.push_back(s_of(std::span(z.factors()).subspan(static_cast<std::size_t>(n - 1))));
    const Eigen::MatrixXcd g = gram_matrix(GPState(z), fam);
    EXPECT_LT((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Fock, VacuumIsAnnihilated) {
  for (int n = 1; n <= 4; ++n) EXPECT_LT(fock_annihilation_residual(n), 1e-10);
  EXPECT_LT(fock_annihilation_residual(3, GPState(ChainParam::explicit_chain({}, {e1}))), 1e-10);
  EXPECT_NEAR(fock_annihilation_residual(1, GPState(CycleParam({e2}))), 1.0, 1e-12);
  EXPECT_THROW(fock_annihilation_residual(0), DomainError);
}
