// Walk through the library on O_2: normal forms, a GP state, a truncated
// representation and the decomposition of a periodic cycle.

#include <iostream>

#include "gpcuntz.hpp"

using namespace gpcuntz;

int main() {
  const AlgebraElement a = parse("s1* s1 + s2 s1* s1 s2*", 2);
  std::cout << "normal form: " << format(a) << '\n';

  const double h = 1.0 / std::sqrt(2.0);
  const UnitVector plus({h, h});
  const CycleParam z({plus, UnitVector::basis(2, 2)});
  const GPState st(z);
  const Complex w = state_eval(st, parse("s1 s2 (s2)*", 2));
  std::cout << "omega(s1 s2 s2*) = " << w.real() << '\n';

  const TruncatedRep rep = build_cycle_rep(z, 4);
  const VerifyReport r = verify_gp(rep, z);
  std::cout << "dim " << rep.dim() << ", max residual " << r.max_residual() << ", rank " << r.cyclic_rank << '/'
            << r.cyclic_target << '\n';

  for (const auto& c : decompose_cycle(CycleParam({plus, plus, plus}))) {
    std::cout << "component: first entry " << c.factor(1)(1) << '\n';
  }

  const auto ev = numeric_cycle_eigencheck(CycleParam({plus}), 3);
  for (const auto& e : ev) std::cout << "eigenvalue " << e << '\n';
}
