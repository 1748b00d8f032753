#pragma once

// Samplers for parameters: Haar-random unit vectors and phases.

#include <random>

#include "gpcuntz/params.hpp"

namespace gpcuntz {

using Rng = std::mt19937_64;

inline UnitVector haar_unit_vector(int rank, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(static_cast<std::size_t>(rank));
  for (auto& x : v) x = {g(rng), g(rng)};
  return UnitVector::normalized(v);
}

inline Complex haar_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

inline CycleParam random_cycle(int rank, int length, Rng& rng) {
  std::vector<UnitVector> f;
  for (int l = 0; l < length; ++l) f.push_back(haar_unit_vector(rank, rng));
  return CycleParam(std::move(f));
}

/// Haar samples are nonperiodic almost surely; redraw on the null event anyway.
inline CycleParam random_nonperiodic_cycle(int rank, int length, Rng& rng) {
  while (true) {
    CycleParam z = random_cycle(rank, length, rng);
    if (!is_periodic(z)) return z;
  }
}

inline ChainParam random_explicit_chain(int rank, int preperiod, int period, Rng& rng) {
  std::vector<UnitVector> pre;
  std::vector<UnitVector> per;
  for (int i = 0; i < preperiod; ++i) pre.push_back(haar_unit_vector(rank, rng));
  for (int i = 0; i < period; ++i) per.push_back(haar_unit_vector(rank, rng));
  return ChainParam::explicit_chain(std::move(pre), std::move(per));
}

}  // namespace gpcuntz
