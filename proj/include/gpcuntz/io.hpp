#pragma once

// JSON parameter files, report serialization and coordinate-list matrix export.
//
//   {"N":2, "kind":"cycle", "factors":[[[re,im],[re,im]], ...]}
//   {"N":2, "kind":"chain", "preperiod":[...], "period":[...]}
//   {"kind":"chain", "rotation":{"num":1,"den":3}}   or {"rotation":{"theta":0.41}} or {"theta":0.41}
//   {"kind":"chain", "prefix":[...]}
//   {"kind":"chain", "generator":"gray-zone"}
//
// A complex entry is [re, im] or a plain number.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "gpcuntz/classify.hpp"

namespace gpcuntz {

using Json = nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw SchemaError("complex entry must be a number or [re, im], got " + j.dump());
}

inline UnitVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("unit vector must be an array of complex entries");
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  try {
    return UnitVector(std::move(c));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("bad unit vector ") + j.dump() + ": " + e.what());
  }
}

inline std::vector<UnitVector> vectors_from_json(const Json& j, const char* key) {
  if (!j.is_array()) throw SchemaError(std::string("'") + key + "' must be an array of unit vectors");
  std::vector<UnitVector> out;
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

inline ChainParam rotation_from_json(const Json& r) {
  if (r.is_number()) return ChainParam::rotation(r.get<double>());
  if (!r.is_object()) throw SchemaError("'rotation' must be {num, den} or {theta}");
  if (r.contains("theta")) return ChainParam::rotation(r.at("theta").get<double>());
  if (r.contains("num") && r.contains("den")) return ChainParam::rotation(r.at("num").get<long>(), r.at("den").get<long>());
  throw SchemaError("'rotation' must be {num, den} or {theta}");
}

}  // namespace detail

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const UnitVector& v) {
  Json out = Json::array();
  for (int i = 1; i <= v.rank(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline Json to_json(std::span<const UnitVector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

inline Json to_json(const CycleParam& z) {
  return {{"N", z.rank()}, {"kind", "cycle"}, {"factors", to_json(z.factors())}};
}

inline Json to_json(const ChainParam& z) {
  Json out{{"N", z.rank()}, {"kind", "chain"}};
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitChain>) {
          out["preperiod"] = to_json(k.preperiod);
          out["period"] = to_json(k.period);
        } else if constexpr (std::is_same_v<T, RotationChain>) {
          if (const auto* q = std::get_if<Rational>(&k.theta)) {
            out["rotation"] = {{"num", q->num}, {"den", q->den}};
          } else {
            out["rotation"] = {{"theta", std::get<double>(k.theta)}};
          }
        } else if constexpr (std::is_same_v<T, PrefixChain>) {
          out["prefix"] = to_json(k.factors);
        } else {
          out["generator"] = "gray-zone";
        }
      },
      z.kind());
  return out;
}

inline Json to_json(const GPParam& p) {
  return std::visit([](const auto& z) { return to_json(z); }, p);
}

inline GPParam param_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("parameter must be a JSON object");
  std::string kind = j.value("kind", "");
  if (kind.empty()) kind = j.contains("factors") ? "cycle" : "chain";
  GPParam out = [&]() -> GPParam {
    try {
      if (kind == "cycle") {
        if (!j.contains("factors")) throw SchemaError("cycle parameter needs 'factors'");
        const auto f = detail::vectors_from_json(j.at("factors"), "factors");
        if (f.empty()) throw SchemaError("cycle parameter needs at least one factor");
        return CycleParam(f);
      }
      if (kind != "chain") throw SchemaError("'kind' must be \"cycle\" or \"chain\"");
      if (j.contains("period")) {
        const auto pre = j.contains("preperiod") ? detail::vectors_from_json(j.at("preperiod"), "preperiod")
                                                 : std::vector<UnitVector>{};
        return ChainParam::explicit_chain(pre, detail::vectors_from_json(j.at("period"), "period"));
      }
      if (j.contains("rotation")) return detail::rotation_from_json(j.at("rotation"));
      if (j.contains("theta")) return ChainParam::rotation(j.at("theta").get<double>());
      if (j.contains("prefix")) return ChainParam::prefix(detail::vectors_from_json(j.at("prefix"), "prefix"));
      if (j.value("generator", "") == "gray-zone") return ChainParam::gray_zone();
      throw SchemaError("chain parameter needs 'period', 'rotation', 'theta', 'prefix' or \"generator\":\"gray-zone\"");
    } catch (const Json::exception& e) {
      throw SchemaError(std::string("malformed parameter: ") + e.what());
    } catch (const RankMismatch& e) {
      throw SchemaError(std::string("factors of different dimension: ") + e.what());
    }
  }();
  if (j.contains("N")) {
    if (!j.at("N").is_number_integer()) throw SchemaError("'N' must be an integer");
    const int n = j.at("N").get<int>();
    if (n != param_rank(out)) throw SchemaError("'N' = " + std::to_string(n) + " but factors have dimension " +
                                                std::to_string(param_rank(out)));
  }
  return out;
}

inline GPParam param_from_string(const std::string& text) {
  try {
    return param_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

inline GPParam load_param(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return param_from_string(ss.str());
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const ClassificationReport& r) {
  Json out{{"verdict", to_string(r.irreducible)},
           {"category", to_string(r.category)},
           {"analytic_assumption", r.analytic_assumption},
           {"reason", r.reason},
           {"p", r.power}};
  if (r.irreducible == Verdict::unknown) {
    out["irreducible"] = nullptr;
  } else {
    out["irreducible"] = r.irreducible == Verdict::yes;
  }
  if (r.root) {
    out["root"] = to_json(*r.root);
    out["base_length"] = r.base_length;
  }
  return out;
}

inline Json to_json(const DirectIntegralDescriptor& d) {
  return {{"base", to_json(d.base)},
          {"base_length", d.base.length()},
          {"measure", d.measure},
          {"fiber", d.fiber},
          {"uniqueness", d.uniqueness}};
}

inline Json to_json(const VerifyReport& r) {
  auto num = [](double x) -> Json { return std::isfinite(x) ? Json(x) : Json("overflow"); };
  return {{"isometry_residual", num(r.isometry_residual)},
          {"cuntz_sum_residual", num(r.cuntz_sum_residual)},
          {"gp_vector_residual", num(r.gp_vector_residual)},
          {"family_residual", num(r.family_residual)},
          {"basis_residual", num(r.basis_residual)},
          {"cyclic_rank", r.cyclic_rank},
          {"cyclic_target", r.cyclic_target},
          {"tolerance", r.tolerance},
          {"passed", r.passed}};
}

inline Json to_json(const PeriodicityVerdict& v) {
  const char* a = v.answer == PeriodicityVerdict::Answer::yes  ? "yes"
                  : v.answer == PeriodicityVerdict::Answer::no ? "no"
                                                               : "unknown";
  Json out{{"eventually_periodic", a}, {"analytic_assumption", v.analytic_assumption}, {"note", v.note}};
  if (v.period > 0) out["period"] = v.period;
  return out;
}

/// Nonzero coordinates of v as {label: [re, im]}.
inline Json sparse_vector_json(const TruncatedRep& rep, const Vector& v, double tol = kPruneTol) {
  Json out = Json::object();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) out[rep.label(i)] = to_json(v(i));
  }
  return out;
}

inline Json to_json(const BranchingReport& b, const TruncatedRep* rep = nullptr) {
  Json out{{"components_irreducible", b.components_irreducible}};
  if (b.infinite) {
    out["count"] = "infinite";
    return out;
  }
  out["count"] = b.count;
  out["orthonormality_residual"] = b.orthonormality_residual;
  if (rep != nullptr) {
    Json g = Json::array();
    for (const auto& v : b.generators) g.push_back(sparse_vector_json(*rep, v));
    out["generators"] = g;
  }
  return out;
}

inline Json to_json(const TruncatedRep& rep) {
  Json gens = Json::array();
  for (int i = 1; i <= rep.rank(); ++i) {
    Json entries = Json::array();
    const SparseMatrix& s = rep.generator(i);
    for (Eigen::Index c = 0; c < s.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(s, c); it; ++it) {
        entries.push_back({it.row(), c, it.value().real(), it.value().imag()});
      }
    }
    gens.push_back(entries);
  }
  Json interior = Json::array();
  for (auto c : rep.interior_indices()) interior.push_back(c);
  return {{"N", rep.rank()},
          {"kind", to_string(rep.kind())},
          {"depth", rep.depth()},
          {"dim", rep.dim()},
          {"labels", rep.labels()},
          {"omega", sparse_vector_json(rep, rep.omega())},
          {"interior", interior},
          {"generators", gens}};
}

/// One block per generator: "# generator i rows cols nnz" then "row col re im"
/// lines (0-based), followed by "# labels" and "index label" lines.
inline void write_coo(std::ostream& out, const TruncatedRep& rep) {
  char buf[128];
  for (int i = 1; i <= rep.rank(); ++i) {
    const SparseMatrix& s = rep.generator(i);
    out << "# generator " << i << ' ' << s.rows() << ' ' << s.cols() << ' ' << s.nonZeros() << '\n';
    for (Eigen::Index c = 0; c < s.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(s, c); it; ++it) {
        std::snprintf(buf, sizeof buf, "%ld %ld %.17g %.17g\n", static_cast<long>(it.row()), static_cast<long>(c),
                      it.value().real(), it.value().imag());
        out << buf;
      }
    }
  }
  out << "# labels " << rep.dim() << '\n';
  for (Eigen::Index i = 0; i < rep.dim(); ++i) out << i << ' ' << rep.label(i) << '\n';
}

}  // namespace gpcuntz
