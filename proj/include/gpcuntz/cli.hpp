#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success, 1 domain or input error, 2 usage error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "gpcuntz/expr.hpp"
#include "gpcuntz/io.hpp"
#include "gpcuntz/sweep.hpp"

namespace gpcuntz::cli {

inline constexpr double kDefaultTol = 1e-9;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::string param, inline_param, param2, inline_param2;
  std::string expr;
  std::string format;
  int expand = -1;
  int depth = 4;
  int depth_minus = 0;
  int depth_plus = 0;
  double fiber_angle = 0.0;
  bool fiber = false;
  bool suite = false;
  std::uint64_t seed = 1;
  int count = 3;
  std::string rotation;
  double theta = -1.0;
  std::string generator;
  std::string target;
  int p = 1;
  long m = 100;
  int n_max = 4;
};

/// GPCUNTZ_TOL, or the default 1e-9.
inline double tolerance_from_env() {
  const char* s = std::getenv("GPCUNTZ_TOL");
  if (s == nullptr || *s == '\0') return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0.0)) throw UsageError(std::string("GPCUNTZ_TOL is not a positive number: ") + s);
  return v;
}

namespace detail {

inline GPParam load(const std::string& path, const std::string& inline_json, const char* which) {
  if (!path.empty() && !inline_json.empty()) throw UsageError(std::string("give either a file or inline JSON for ") + which);
  if (!path.empty()) return load_param(path);
  if (!inline_json.empty()) return param_from_string(inline_json);
  throw UsageError(std::string("missing ") + which + " (use a parameter file or inline JSON)");
}

inline void check_rank(const Options& o, int rank) {
  if (o.n != 0 && o.n != rank) throw RankMismatch(o.n, rank);
}

inline std::string fmt(double v) { return gpcuntz::detail::format_double(v); }

inline ChainParam chain_from_flags(const Options& o) {
  int given = (!o.rotation.empty()) + (o.theta >= 0.0) + (!o.generator.empty()) + (!o.param.empty() || !o.inline_param.empty());
  if (given != 1) throw UsageError("diagnostics needs exactly one of --rotation, --theta, --generator, --param/--inline");
  if (!o.rotation.empty()) {
    const auto slash = o.rotation.find('/');
    if (slash == std::string::npos) throw UsageError("--rotation expects a/b");
    long a = 0;
    long b = 0;
    const std::string sa = o.rotation.substr(0, slash);
    const std::string sb = o.rotation.substr(slash + 1);
    const auto ra = std::from_chars(sa.data(), sa.data() + sa.size(), a);
    const auto rb = std::from_chars(sb.data(), sb.data() + sb.size(), b);
    if (ra.ec != std::errc{} || rb.ec != std::errc{} || ra.ptr != sa.data() + sa.size() || rb.ptr != sb.data() + sb.size()) {
      throw UsageError("--rotation expects integers a/b");
    }
    return ChainParam::rotation(a, b);
  }
  if (o.theta >= 0.0) return ChainParam::rotation(o.theta);
  if (!o.generator.empty()) {
    if (o.generator != "gray-zone") throw UsageError("unknown --generator '" + o.generator + "' (known: gray-zone)");
    return ChainParam::gray_zone();
  }
  const GPParam p = load(o.param, o.inline_param, "--param/--inline");
  if (!std::holds_alternative<ChainParam>(p)) throw DomainError("diagnostics needs a chain parameter");
  return std::get<ChainParam>(p);
}

inline TruncatedRep build_rep(const GPParam& p, const Options& o) {
  if (const auto* z = std::get_if<CycleParam>(&p)) {
    return o.fiber ? build_fiber_rep(*z, std::polar(1.0, 2.0 * std::numbers::pi * o.fiber_angle), o.depth)
                   : build_cycle_rep(*z, o.depth);
  }
  if (o.fiber) throw UsageError("--fiber-angle applies to cycle parameters only");
  return build_chain_rep(std::get<ChainParam>(p), o.depth_minus > 0 ? o.depth_minus : o.depth,
                         o.depth_plus > 0 ? o.depth_plus : o.depth, o.depth);
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

inline int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
  using namespace detail;
  const bool json = o.format == "json";
  const double tol = tolerance_from_env();

  if (cmd == "normalize") {
    if (o.n < 2) throw UsageError("normalize needs -N >= 2");
    AlgebraElement a = parse(o.expr, o.n);
    if (o.expand >= 0) a = expand_identity(a, static_cast<std::size_t>(o.expand));
    if (!json) {
      out << format(a) << '\n';
      return 0;
    }
    Json terms = Json::array();
    for (const auto& [w, c] : a.terms()) terms.push_back({{"left", w.left.letters()}, {"right", w.right.letters()}, {"coef", to_json(c)}});
    emit(out, {{"N", o.n}, {"normal_form", format(a)}, {"terms", terms}});
    return 0;
  }

  if (cmd == "state-eval") {
    const GPParam p = load(o.param, o.inline_param, "--param/--inline");
    check_rank(o, param_rank(p));
    const Complex v = state_eval(GPState(p), parse(o.expr, param_rank(p)));
    if (json) {
      emit(out, {{"re", v.real()}, {"im", v.imag()}});
    } else {
      out << fmt(v.real()) << ' ' << fmt(v.imag()) << '\n';
    }
    return 0;
  }

  if (cmd == "classify") {
    const GPParam p = load(o.param, o.inline_param, "--param/--inline");
    check_rank(o, param_rank(p));
    const ClassificationReport r = classify(p);
    if (json) {
      emit(out, to_json(r));
    } else {
      out << "irreducible: " << to_string(r.irreducible) << "\ncategory: " << to_string(r.category) << "\np: " << r.power
          << "\nreason: " << r.reason << '\n';
    }
    return 0;
  }

  if (cmd == "equivalent") {
    const GPParam a = load(o.param, o.inline_param, "--param/--inline");
    const GPParam b = load(o.param2, o.inline_param2, "--param2/--inline2");
    check_rank(o, param_rank(a));
    const bool eq = equivalent(a, b);
    if (json) {
      emit(out, {{"equivalent", eq}});
    } else {
      out << (eq ? "true" : "false") << '\n';
    }
    return 0;
  }

  if (cmd == "decompose") {
    const GPParam p = load(o.param, o.inline_param, "--param/--inline");
    check_rank(o, param_rank(p));
    Json j;
    if (const auto* z = std::get_if<CycleParam>(&p)) {
      const auto parts = decompose_cycle(*z);
      Json comps = Json::array();
      for (const auto& c : parts) comps.push_back(to_json(c));
      j = {{"kind", "finite_sum"}, {"p", static_cast<int>(parts.size())}, {"components", comps}};
    } else {
      j = to_json(decompose_chain(std::get<ChainParam>(p)));
      j["kind"] = "direct_integral";
    }
    emit(out, j);
    return 0;
  }

  if (cmd == "rep-build") {
    const GPParam p = load(o.param, o.inline_param, "--param/--inline");
    check_rank(o, param_rank(p));
    const TruncatedRep rep = build_rep(p, o);
    if (o.format == "matrix-coo") {
      write_coo(out, rep);
    } else if (json) {
      emit(out, to_json(rep));
    } else {
      out << "kind: " << to_string(rep.kind()) << "\ndim: " << rep.dim() << "\ninterior: " << rep.interior_indices().size()
          << '\n';
      for (int i = 1; i <= rep.rank(); ++i) out << "nnz(S" << i << "): " << rep.generator(i).nonZeros() << '\n';
    }
    return 0;
  }

  if (cmd == "verify") {
    if (o.suite) {
      const auto results = run_suite(o.seed, tol, o.count);
      Json entries = Json::object();
      bool all = true;
      for (const auto& [name, e] : results) {
        entries[name] = {{"passed", e.passed}, {"residual", std::isfinite(e.residual) ? Json(e.residual) : Json("error")},
                         {"detail", e.detail}};
        all = all && e.passed;
      }
      if (json) {
        emit(out, {{"entries", entries}, {"passed", all}, {"tolerance", tol}});
      } else {
        for (const auto& [name, e] : results) out << (e.passed ? "PASS " : "FAIL ") << name << ' ' << fmt(e.residual) << '\n';
      }
      return all ? 0 : 1;
    }
    const GPParam p = load(o.param, o.inline_param, "--param/--inline");
    check_rank(o, param_rank(p));
    const TruncatedRep rep = build_rep(p, o);
    const GPParam target = o.fiber ? GPParam(std::get<CycleParam>(p).scaled(std::polar(1.0, 2.0 * std::numbers::pi * o.fiber_angle)))
                                   : p;
    const VerifyReport r = verify_gp(rep, target, tol);
    if (json) {
      emit(out, to_json(r));
    } else {
      out << (r.passed ? "passed" : "FAILED") << " max residual " << fmt(r.max_residual()) << " rank " << r.cyclic_rank << '/'
          << r.cyclic_target << '\n';
    }
    return r.passed ? 0 : 1;
  }

  if (cmd == "diagnostics") {
    const ChainParam z = chain_from_flags(o);
    if (o.p < 1 || o.m < 1) throw UsageError("--p and --M must be at least 1");
    const auto rows = asymptotic_diagnostics(z, o.p, o.m);
    const double s = rows.back().partial_sum;
    Json j{{"p", o.p}, {"M", o.m}, {"S", s}, {"periodicity", to_json(is_eventually_periodic(z))}};
    if (!o.target.empty()) {
      UnitVector v = [&] {
        try {
          return gpcuntz::detail::vector_from_json(Json::parse(o.target));
        } catch (const Json::exception& e) {
          throw SchemaError(std::string("--target: ") + e.what());
        }
      }();
      j["target_sum"] = target_partial_sum(z, v, o.m);
    }
    if (json) {
      emit(out, j);
    } else {
      out << "S(" << o.p << ',' << o.m << ") = " << fmt(s) << '\n';
      if (j.contains("target_sum")) out << "target sum = " << fmt(j["target_sum"].get<double>()) << '\n';
    }
    return 0;
  }

  if (cmd == "car-check") {
    if (o.n_max < 1) throw UsageError("--n must be at least 1");
    const double car = car_relations_residual(o.n_max);
    double fock = 0.0;
    for (int k = 1; k <= o.n_max; ++k) fock = std::max(fock, fock_annihilation_residual(k));
    const bool ok = car <= tol && fock <= tol;
    if (json) {
      emit(out, {{"n_max", o.n_max}, {"car_residual", car}, {"fock_residual", fock}, {"passed", ok}, {"tolerance", tol}});
    } else {
      out << (ok ? "passed" : "FAILED") << " car " << fmt(car) << " fock " << fmt(fock) << '\n';
    }
    return ok ? 0 : 1;
  }

  throw UsageError("unknown subcommand " + cmd);
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized permutative representations of Cuntz algebras"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Options o;

  auto add_param = [&o](CLI::App* s) {
    s->add_option("--param", o.param, "parameter JSON file");
    s->add_option("--inline", o.inline_param, "parameter as inline JSON");
  };
  auto add_common = [&o](CLI::App* s, const char* default_format) {
    s->add_option("-N", o.n, "rank N of O_N");
    s->add_option("--format", o.format, "json, text or matrix-coo")
        ->check(CLI::IsMember({"json", "text", "matrix-coo"}))
        ->default_str(default_format);
  };
  auto add_depths = [&o](CLI::App* s) {
    s->add_option("--depth", o.depth, "truncation depth D (>= 2)");
    s->add_option("--depth-minus", o.depth_minus, "chain window below 0 (default D)");
    s->add_option("--depth-plus", o.depth_plus, "chain window above 0 (default D)");
    s->add_option("--fiber-angle", o.fiber_angle, "build the fiber representation for c = exp(2 pi i t)")
        ->each([&o](const std::string&) { o.fiber = true; });
  };

  auto* normalize = app.add_subcommand("normalize", "print the normal form of an expression");
  add_common(normalize, "text");
  normalize->add_option("expr", o.expr, "expression")->required();
  normalize->add_option("--expand", o.expand, "rewrite to common depth with sum_i s_i s_i^* = I");

  auto* state = app.add_subcommand("state-eval", "evaluate the GP state of a parameter on an expression");
  add_common(state, "text");
  add_param(state);
  state->add_option("expr", o.expr, "expression")->required();

  auto* cls = app.add_subcommand("classify", "irreducibility verdict");
  add_common(cls, "json");
  add_param(cls);

  auto* eq = app.add_subcommand("equivalent", "unitary equivalence of two GP representations");
  add_common(eq, "json");
  add_param(eq);
  eq->add_option("--param2", o.param2, "second parameter file");
  eq->add_option("--inline2", o.inline_param2, "second parameter as inline JSON");

  auto* dec = app.add_subcommand("decompose", "irreducible decomposition");
  add_common(dec, "json");
  add_param(dec);

  auto* rep = app.add_subcommand("rep-build", "build a truncated representation");
  add_common(rep, "json");
  add_param(rep);
  add_depths(rep);

  auto* ver = app.add_subcommand("verify", "check a truncation against its parameter, or run the random sweep");
  add_common(ver, "json");
  add_param(ver);
  add_depths(ver);
  ver->add_flag("--suite", o.suite, "run the randomized sweep");
  ver->add_option("--seed", o.seed, "sweep seed");
  ver->add_option("--count", o.count, "sweep samples per kind and N");

  auto* diag = app.add_subcommand("diagnostics", "partial sums S(p, M) = sum_{n<=M} (1 - |<z(n)|z(n+p)>|)");
  add_common(diag, "json");
  add_param(diag);
  diag->add_option("--rotation", o.rotation, "rational rotation a/b");
  diag->add_option("--theta", o.theta, "floating rotation angle in [0, 1)");
  diag->add_option("--generator", o.generator, "named chain: gray-zone");
  diag->add_option("--p", o.p, "shift p");
  diag->add_option("--M", o.m, "number of terms");
  diag->add_option("--target", o.target, "also sum 1 - |<z(n)|v>| for this unit vector (JSON)");

  auto* car = app.add_subcommand("car-check", "CAR relations and Fock vacuum inside O_2");
  add_common(car, "json");
  car->add_option("--n", o.n_max, "largest CAR index");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (o.format.empty()) o.format = (cmd == "normalize" || cmd == "state-eval") ? "text" : "json";
  if (o.format == "matrix-coo" && cmd != "rep-build") {
    err << "error: --format matrix-coo applies to rep-build only\n";
    return 2;
  }
  try {
    return dispatch(cmd, o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace gpcuntz::cli
