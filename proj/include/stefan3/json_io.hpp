#pragma once

// JSON configuration files and JSON output of solutions, thresholds,
// equivalence reports and residual reports.
//
// Config schema (SI units):
//   { "k1": .., "k2": .., "k3": .., "c1": .., "c2": .., "c3": .., "rho": ..,
//     "l1": .., "l2": .., "B": .., "C": .., "D": ..,
//     "boundary": { "type": "robin",     "h0": .., "A_inf": .. }
//               | { "type": "dirichlet", "A": ..,  ["A_inf": ..] }
//               | { "type": "neumann",   "q0": .., ["A_inf": ..] } }
// A_inf is optional for the temperature and flux faces, where it only serves
// as the bulk temperature of a convective target.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stefan3/equivalence.hpp"
#include "stefan3/errors.hpp"
#include "stefan3/model.hpp"
#include "stefan3/solver.hpp"
#include "stefan3/verify.hpp"

namespace stefan3 {

using Json = nlohmann::ordered_json;

namespace codes {
inline constexpr std::string_view kConfigInvalid = "CONFIG_INVALID";
}  // namespace codes

struct Config {
  MaterialProperties props{};
  PhaseTemps temps{};
  BoundaryKind kind = BoundaryKind::robin;
  std::optional<double> h0, a, q0, a_inf;

  /// The face condition, or MissingBoundaryDatum / ValidationError(MISSING_A_INF)
  /// when a datum is absent.
  BoundarySpec boundary() const {
    switch (kind) {
      case BoundaryKind::robin:
        if (!a_inf) throw ValidationError(std::string(codes::kMissingAInf), "convective boundary needs A_inf");
        if (!h0) throw MissingBoundaryDatum("convective boundary needs h0");
        return Robin{*h0, *a_inf};
      case BoundaryKind::dirichlet:
        if (!a) throw MissingBoundaryDatum("temperature boundary needs A");
        return Dirichlet{*a};
      case BoundaryKind::neumann:
        if (!q0) throw MissingBoundaryDatum("flux boundary needs q0");
        return Neumann{*q0};
    }
    throw Error("unknown boundary kind");
  }

  /// Context with the face condition (throws as boundary() does).
  ProblemContext context() const { return ProblemContext::make(props, temps, boundary()); }

  /// Context without the face condition; always available for valid material data.
  ProblemContext material_context() const { return ProblemContext::make(props, temps); }
};

namespace detail {

inline double number(const Json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string(codes::kConfigInvalid), std::string("missing key ") + key);
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ValidationError(std::string(codes::kConfigInvalid), std::string(key) + " must be a number");
  }
  return v.get<double>();
}

inline std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return number(j, key);
}

}  // namespace detail

inline BoundaryKind parse_kind(std::string_view s) {
  if (s == "robin") return BoundaryKind::robin;
  if (s == "dirichlet") return BoundaryKind::dirichlet;
  if (s == "neumann") return BoundaryKind::neumann;
  throw ValidationError(std::string(codes::kConfigInvalid),
                        "boundary type must be robin, dirichlet or neumann, got '" + std::string(s) + "'");
}

inline Config parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError(std::string(codes::kConfigInvalid), "config must be a JSON object");
  Config c;
  c.props = {detail::number(j, "k1"), detail::number(j, "k2"), detail::number(j, "k3"),
             detail::number(j, "c1"), detail::number(j, "c2"), detail::number(j, "c3"),
             detail::number(j, "rho"), detail::number(j, "l1"), detail::number(j, "l2")};
  c.temps = {detail::number(j, "B"), detail::number(j, "C"), detail::number(j, "D")};
  if (!j.contains("boundary") || !j.at("boundary").is_object()) {
    throw ValidationError(std::string(codes::kConfigInvalid), "missing boundary object");
  }
  const auto& b = j.at("boundary");
  if (!b.contains("type") || !b.at("type").is_string()) {
    throw ValidationError(std::string(codes::kConfigInvalid), "boundary.type must be a string");
  }
  c.kind = parse_kind(b.at("type").get<std::string>());
  c.h0 = detail::optional_number(b, "h0");
  c.a = detail::optional_number(b, "A");
  c.q0 = detail::optional_number(b, "q0");
  c.a_inf = detail::optional_number(b, "A_inf");
  return c;
}

inline Config parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string(codes::kConfigInvalid), std::string("JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(std::string_view(buf.str()));
}

inline Json to_json(const BoundarySpec& bc) {
  return std::visit(
      [](const auto& b) -> Json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Robin>) return {{"type", "robin"}, {"h0", b.h0}, {"A_inf", b.a_inf}};
        if constexpr (std::is_same_v<T, Dirichlet>) return {{"type", "dirichlet"}, {"A", b.a}};
        if constexpr (std::is_same_v<T, Neumann>) return {{"type", "neumann"}, {"q0", b.q0}};
      },
      bc);
}

inline Json to_json(const MaterialProperties& p, const PhaseTemps& t) {
  return {{"k1", p.k1}, {"k2", p.k2}, {"k3", p.k3}, {"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3},
          {"rho", p.rho}, {"l1", p.l1}, {"l2", p.l2}, {"B", t.B}, {"C", t.C}, {"D", t.D}};
}

inline Json to_json(const Config& c) {
  Json j = to_json(c.props, c.temps);
  Json b{{"type", std::string(to_string(c.kind))}};
  if (c.h0) b["h0"] = *c.h0;
  if (c.a) b["A"] = *c.a;
  if (c.q0) b["q0"] = *c.q0;
  if (c.a_inf) b["A_inf"] = *c.a_inf;
  j["boundary"] = b;
  return j;
}

inline Json to_json(const Thresholds& th) {
  Json j{{"z0", th.z0}};
  if (th.h1) j["h1"] = *th.h1;
  if (th.h2) j["h2"] = *th.h2;
  j["q1"] = th.q1;
  j["q2"] = th.q2;
  return j;
}

inline Json to_json(const ThreePhaseSolution& s) {
  Json input = to_json(s.ctx.props(), s.ctx.temps());
  input["boundary"] = to_json(*s.ctx.boundary());
  const auto fronts = free_boundaries(s, 1.0);
  return {{"kind", std::string(to_string(s.kind))},
          {"regime", std::string(to_string(s.regime))},
          {"coef1", s.coef1},
          {"coef2", s.coef2},
          {"front_residual", s.front_residual},
          {"surface_temperature", s.surface_temperature},
          {"surface_flux_coefficient", s.surface_flux_coefficient},
          {"fronts_at_t1", {{"x2", fronts.x2}, {"x1", fronts.x1}}},
          {"thresholds", to_json(s.thresholds)},
          {"input", input}};
}

inline Json to_json(const InequalityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"holds", c.holds}};
}

inline Json to_json(const std::vector<InequalityCheck>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

inline std::string_view datum_name(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::robin: return "h0";
    case BoundaryKind::dirichlet: return "A";
    case BoundaryKind::neumann: return "q0";
  }
  return "datum";
}

inline Json to_json(const EquivalenceReport& r) {
  return {{"source", std::string(to_string(r.mapping.source_kind))},
          {"target", std::string(to_string(r.mapping.target_kind))},
          {"datum_name", std::string(datum_name(r.mapping.target_kind))},
          {"datum", r.mapping.datum},
          {"target_boundary", to_json(r.mapping.target)},
          {"hypotheses", to_json(r.mapping.hypotheses)},
          {"source_coefficients", {{"coef1", r.mapping.source.coef1}, {"coef2", r.mapping.source.coef2}}},
          {"target_coefficients", {{"coef1", r.target.coef1}, {"coef2", r.target.coef2}}},
          {"delta_coef1", r.delta_coef1},
          {"delta_coef2", r.delta_coef2},
          {"inverse_datum", r.inverse_datum},
          {"inverse_datum_delta", r.inverse_datum_delta}};
}

inline Json to_json(const ResidualReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures()) failures.push_back(f);
  return {{"kind", std::string(to_string(r.kind))},
          {"passed", r.passed()},
          {"failures", failures},
          {"heat", {{"phase1", r.heat[0]}, {"phase2", r.heat[1]}, {"phase3", r.heat[2]}, {"tolerance", tolerance::kHeat}}},
          {"interface", {{"inner", r.interface_inner}, {"outer", r.interface_outer}, {"tolerance", tolerance::kInterface}}},
          {"stefan", {{"inner", r.stefan_inner}, {"outer", r.stefan_outer}, {"tolerance", tolerance::kStefan}}},
          {"boundary", {{"residual", r.boundary}, {"tolerance", r.boundary_tolerance()}}},
          {"far_field", {{"deviation", r.far_field}, {"tolerance", tolerance::kFarField}}},
          {"points_per_phase", r.points_per_phase},
          {"n_times", r.n_times},
          {"rel_step", r.rel_step},
          {"far_field_factor", r.far_field_factor}};
}

}  // namespace stefan3
