#pragma once

// Randomized verification sweep shared by the command-line tool.

#include <functional>
#include <future>
#include <map>

#include "gpcuntz/classify.hpp"
#include "gpcuntz/random.hpp"
#include "gpcuntz/states.hpp"

namespace gpcuntz {

/// max |omega_z(s_J s_K^*) - <Omega|pi(s_J s_K^*) Omega>| over |J|, |K| <= max_len,
/// using <Omega|S_J S_K^* Omega> = <S_J^* Omega|S_K^* Omega>.
inline double state_rep_residual(const GPParam& z, const TruncatedRep& rep, int max_len) {
  const GPState st(z);
  std::vector<std::pair<MultiIndex, Vector>> back;
  for (int len = 0; len <= max_len; ++len) {
    for (const auto& w : all_words(rep.rank(), static_cast<std::size_t>(len))) {
      Vector v = rep.omega();
      for (int letter : w) v = rep.apply_generator_adjoint(letter, v);
      back.emplace_back(w, std::move(v));
    }
  }
  double worst = 0.0;
  for (const auto& [j, vj] : back) {
    for (const auto& [k, vk] : back) {
      worst = std::max(worst, std::abs(state_eval_word(st, j, k) - vj.dot(vk)));
    }
  }
  return worst;
}

struct SuiteEntry {
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

/// Random cycles, chains, fibers and state agreement checks, run concurrently
/// and collected under sorted keys so the output does not depend on scheduling.
inline std::map<std::string, SuiteEntry> run_suite(std::uint64_t seed, double tol, int count = 3) {
  using Task = std::function<SuiteEntry()>;
  std::map<std::string, Task> tasks;
  auto key = [](const std::string& kind, int n, int i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s/N%d/%02d", kind.c_str(), n, i);
    return std::string(buf);
  };
  auto from_report = [tol](const VerifyReport& r) {
    return SuiteEntry{r.max_residual() <= tol && r.cyclic_rank == r.cyclic_target, r.max_residual(),
                      "rank " + std::to_string(r.cyclic_rank) + "/" + std::to_string(r.cyclic_target)};
  };
  for (int n : {2, 3}) {
    for (int i = 0; i < count; ++i) {
      const std::uint64_t s = seed * 1000003u + static_cast<std::uint64_t>(n * 100 + i);
      tasks[key("cycle", n, i)] = [=] {
        Rng rng(s);
        const CycleParam z = random_cycle(n, 1 + i % 3, rng);
        return from_report(verify_gp(build_cycle_rep(z, 4), z, tol));
      };
      tasks[key("chain", n, i)] = [=] {
        Rng rng(s);
        const ChainParam z = random_explicit_chain(n, i % 2, 1 + i % 3, rng);
        return from_report(verify_gp(build_chain_rep(z, 3, 3, 4), z, tol));
      };
      tasks[key("fiber", n, i)] = [=] {
        Rng rng(s);
        const CycleParam y = random_nonperiodic_cycle(n, 1 + i % 2, rng);
        const Complex c = haar_phase(rng);
        return from_report(verify_gp(build_fiber_rep(y, c, 4), y.scaled(c), tol));
      };
      tasks[key("state", n, i)] = [=] {
        Rng rng(s);
        const CycleParam z = random_cycle(n, 1 + i % 3, rng);
        const double r = state_rep_residual(z, build_cycle_rep(z, 4), 2);
        return SuiteEntry{r <= tol, r, "words of length <= 2"};
      };
    }
  }
  tasks["car"] = [tol] {
    const double r = car_relations_residual(3);
    return SuiteEntry{r <= tol, r, "n, m <= 3"};
  };

  std::map<std::string, std::future<SuiteEntry>> running;
  for (auto& [name, task] : tasks) running.emplace(name, std::async(std::launch::async, task));
  std::map<std::string, SuiteEntry> out;
  for (auto& [name, fut] : running) {
    try {
      out[name] = fut.get();
    } catch (const std::exception& e) {
      out[name] = SuiteEntry{false, std::numeric_limits<double>::infinity(), e.what()};
    }
  }
  return out;
}

}  // namespace gpcuntz
