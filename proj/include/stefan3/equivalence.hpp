#pragma once

// Data mappings between the convective (Robin), temperature (Dirichlet) and
// flux (Neumann) problems under which the three problems share one solution,
// plus the inequalities the mapped data must satisfy.
//
// Every mapping solves the source problem first: its front coefficients enter
// the mapped datum through E3 = erf(coef2 sqrt(a1/a3)).

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stefan3/errors.hpp"
#include "stefan3/model.hpp"
#include "stefan3/solver.hpp"
#include "stefan3/transcendental.hpp"

namespace stefan3 {

namespace codes {
inline constexpr std::string_view kSameKind = "EQUIV_SAME_KIND";
}  // namespace codes

/// One evaluated inequality `lhs relation rhs`, relation being "<" or ">".
struct InequalityCheck {
  std::string name;
  double lhs;
  std::string relation;
  double rhs;
  bool holds;
};

inline InequalityCheck greater(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, ">", rhs, lhs > rhs};
}

inline InequalityCheck less(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, "<", rhs, lhs < rhs};
}

/// Mapped datum for the target problem, together with the source solution it
/// was computed from and the hypotheses that were checked.
struct Mapping {
  BoundaryKind source_kind;
  BoundaryKind target_kind;
  BoundarySpec target;
  double datum;  // A, h0 or q0 depending on target_kind
  ThreePhaseSolution source;
  std::vector<InequalityCheck> hypotheses;
};

namespace detail {

inline double e0(const ProblemContext& ctx) { return specfun::erf(ctx.z0() * ctx.r12()); }

inline double e3(const ThreePhaseSolution& sol) { return specfun::erf(sol.coef2 * sol.ctx.r13()); }

inline double sqrt_pi_a3(const ProblemContext& ctx) {
  return std::sqrt(std::numbers::pi * ctx.alphas().alpha3);
}

inline void enforce(const std::vector<InequalityCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.holds) throw HypothesisError(c.name, c.lhs, c.rhs);
  }
}

inline double require_a_inf(const ThreePhaseSolution& src, std::optional<double> a_inf) {
  if (src.kind == BoundaryKind::robin) return src.ctx.robin().a_inf;
  if (!a_inf) {
    throw ValidationError(std::string(codes::kMissingAInf), "a convective target needs A_inf");
  }
  return *a_inf;
}

}  // namespace detail

/// Face temperature A of the equivalent temperature problem (the surface
/// temperature of the convective solution).
inline Mapping map_robin_to_dirichlet(const ThreePhaseSolution& src) {
  const auto& ctx = src.ctx;
  const auto& bc = ctx.robin();
  const double B = ctx.temps().B;
  const double resistance = ctx.props().k3 / (bc.h0 * detail::sqrt_pi_a3(ctx));
  const double E3 = detail::e3(src);
  const double a = (B * resistance + bc.a_inf * E3) / (resistance + E3);
  std::vector<InequalityCheck> checks{greater("A(h0) > B", a, B)};
  detail::enforce(checks);
  return {BoundaryKind::robin, BoundaryKind::dirichlet, Dirichlet{a}, a, src, checks};
}

/// Convective coefficient h0 of the equivalent convective problem with bulk
/// temperature a_inf > A.
inline Mapping map_dirichlet_to_robin(const ThreePhaseSolution& src, double a_inf) {
  const auto& ctx = src.ctx;
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  const double a = ctx.dirichlet().a;
  if (!(a_inf > a)) {
    throw ValidationError(std::string(codes::kAInfNotAboveA), "A_inf must be > A");
  }
  const double E3 = detail::e3(src);
  const double h0 = p.k3 / detail::sqrt_pi_a3(ctx) * (a - t.B) / ((a_inf - a) * E3);
  std::vector<InequalityCheck> checks{
      greater("h0(A) > h2", (a - t.B) / ((a_inf - a) * E3),
              (t.B - t.C) / (a_inf - t.B) * std::sqrt(p.k2 * p.c2 / (p.k3 * p.c3)) / detail::e0(ctx))};
  detail::enforce(checks);
  return {BoundaryKind::dirichlet, BoundaryKind::robin, Robin{h0, a_inf}, h0, src, checks};
}

/// Face temperature A = B + q0 sqrt(pi a3) E3 / k3 of the equivalent temperature problem.
inline Mapping map_neumann_to_dirichlet(const ThreePhaseSolution& src) {
  const auto& ctx = src.ctx;
  const double B = ctx.temps().B;
  const double a = B + ctx.neumann().q0 * detail::sqrt_pi_a3(ctx) * detail::e3(src) / ctx.props().k3;
  std::vector<InequalityCheck> checks{greater("A(q0) > B", a, B)};
  detail::enforce(checks);
  return {BoundaryKind::neumann, BoundaryKind::dirichlet, Dirichlet{a}, a, src, checks};
}

/// Face flux q0 = k3 (A - B) / (sqrt(pi a3) E3) of the equivalent flux problem.
inline Mapping map_dirichlet_to_neumann(const ThreePhaseSolution& src) {
  const auto& ctx = src.ctx;
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  const auto& al = ctx.alphas();
  const double a = ctx.dirichlet().a;
  const double E3 = detail::e3(src);
  const double q0 = p.k3 * (a - t.B) / (detail::sqrt_pi_a3(ctx) * E3);
  std::vector<InequalityCheck> checks{greater("q0(A) > q2", p.k3 * (a - t.B) / (std::sqrt(al.alpha3) * E3),
                                              p.k2 * (t.B - t.C) / (std::sqrt(al.alpha2) * detail::e0(ctx)))};
  detail::enforce(checks);
  return {BoundaryKind::dirichlet, BoundaryKind::neumann, Neumann{q0}, q0, src, checks};
}

/// Face flux q0 = (A_inf - B) h0 / (1 + h0 sqrt(pi a3) E3 / k3) of the equivalent flux problem.
inline Mapping map_robin_to_neumann(const ThreePhaseSolution& src) {
  const auto& ctx = src.ctx;
  const auto& bc = ctx.robin();
  const double q0 = (bc.a_inf - ctx.temps().B) * bc.h0 /
                    (1.0 + bc.h0 * detail::sqrt_pi_a3(ctx) * detail::e3(src) / ctx.props().k3);
  std::vector<InequalityCheck> checks{greater("q0(h0) > q2", q0, q2_threshold(ctx))};
  detail::enforce(checks);
  return {BoundaryKind::robin, BoundaryKind::neumann, Neumann{q0}, q0, src, checks};
}

/// Convective coefficient h0 = q0 / ((A_inf - B) - q0 sqrt(pi a3) E3 / k3) of
/// the equivalent convective problem. The denominator is A_inf minus the
/// surface temperature of the flux solution and must be positive.
inline Mapping map_neumann_to_robin(const ThreePhaseSolution& src, double a_inf) {
  const auto& ctx = src.ctx;
  const double B = ctx.temps().B;
  if (!(a_inf > B)) {
    throw ValidationError(std::string(codes::kRobinAInf), "A_inf must be > B");
  }
  const double q0 = ctx.neumann().q0;
  const double denominator = (a_inf - B) - q0 * detail::sqrt_pi_a3(ctx) * detail::e3(src) / ctx.props().k3;
  if (!(denominator > 0)) {
    throw ValidationError(std::string(codes::kAInfNotAboveA),
                          "A_inf must be above the face temperature of the flux solution");
  }
  const double h0 = q0 / denominator;
  std::vector<InequalityCheck> checks{greater("h0(q0) > h2", h0, h2_threshold(ctx, a_inf))};
  detail::enforce(checks);
  return {BoundaryKind::neumann, BoundaryKind::robin, Robin{h0, a_inf}, h0, src, checks};
}

/// Mapping from an already solved source problem to `target`. A_inf is taken
/// from a convective source, otherwise from `a_inf` (required for a
/// convective target).
inline Mapping map_to(const ThreePhaseSolution& src, BoundaryKind target, std::optional<double> a_inf = {}) {
  if (src.kind == target) {
    throw ValidationError(std::string(codes::kSameKind), "source and target face conditions coincide");
  }
  switch (src.kind) {
    case BoundaryKind::robin:
      return target == BoundaryKind::dirichlet ? map_robin_to_dirichlet(src) : map_robin_to_neumann(src);
    case BoundaryKind::dirichlet:
      return target == BoundaryKind::robin ? map_dirichlet_to_robin(src, detail::require_a_inf(src, a_inf))
                                           : map_dirichlet_to_neumann(src);
    case BoundaryKind::neumann:
      return target == BoundaryKind::robin ? map_neumann_to_robin(src, detail::require_a_inf(src, a_inf))
                                           : map_neumann_to_dirichlet(src);
  }
  throw Error("unknown boundary kind");
}

// Datum-level entry points: solve the source problem on `ctx`'s material and
// temperatures, then map. RegimeError / RootFailure propagate from the solve.

inline double robin_to_dirichlet(const ProblemContext& ctx, double h0, double a_inf) {
  return map_robin_to_dirichlet(solve_robin(ctx.with_boundary(Robin{h0, a_inf}))).datum;
}

inline double dirichlet_to_robin(const ProblemContext& ctx, double a, double a_inf) {
  return map_dirichlet_to_robin(solve_dirichlet(ctx.with_boundary(Dirichlet{a})), a_inf).datum;
}

inline double neumann_to_dirichlet(const ProblemContext& ctx, double q0) {
  return map_neumann_to_dirichlet(solve_neumann(ctx.with_boundary(Neumann{q0}))).datum;
}

inline double dirichlet_to_neumann(const ProblemContext& ctx, double a) {
  return map_dirichlet_to_neumann(solve_dirichlet(ctx.with_boundary(Dirichlet{a}))).datum;
}

inline double robin_to_neumann(const ProblemContext& ctx, double h0, double a_inf) {
  return map_robin_to_neumann(solve_robin(ctx.with_boundary(Robin{h0, a_inf}))).datum;
}

inline double neumann_to_robin(const ProblemContext& ctx, double q0, double a_inf) {
  return map_neumann_to_robin(solve_neumann(ctx.with_boundary(Neumann{q0})), a_inf).datum;
}

struct EquivalenceReport {
  Mapping mapping;
  ThreePhaseSolution target;  // solution of the mapped problem
  double delta_coef1;         // |target.coef1 - source.coef1|
  double delta_coef2;
  double inverse_datum;        // source datum recovered by mapping the target back
  double inverse_datum_delta;  // relative difference to the original source datum

  double max_delta() const { return std::max(delta_coef1, delta_coef2); }
};

namespace detail {

inline double datum_of(const BoundarySpec& bc) {
  if (const auto* r = std::get_if<Robin>(&bc)) return r->h0;
  if (const auto* d = std::get_if<Dirichlet>(&bc)) return d->a;
  return std::get<Neumann>(bc).q0;
}

}  // namespace detail

/// Maps `src` to `target`, solves the mapped problem, compares front
/// coefficients, and maps back to recover the source datum.
inline EquivalenceReport equivalence_report(const ThreePhaseSolution& src, BoundaryKind target,
                                            std::optional<double> a_inf = {}) {
  Mapping m = map_to(src, target, a_inf);
  ThreePhaseSolution solved = solve(src.ctx.with_boundary(m.target));
  std::optional<double> back_a_inf;
  if (src.kind == BoundaryKind::robin) back_a_inf = src.ctx.robin().a_inf;
  const Mapping back = map_to(solved, src.kind, back_a_inf);
  const double original = detail::datum_of(*src.ctx.boundary());
  return {std::move(m),
          solved,
          std::abs(solved.coef1 - src.coef1),
          std::abs(solved.coef2 - src.coef2),
          back.datum,
          std::abs(back.datum - original) / std::abs(original)};
}

/// Inequalities every three-phase solution satisfies, evaluated with the
/// solution's surface temperature as the face temperature A. The bounds
/// involving A_inf are included only when A_inf is known (own convective
/// datum or `a_inf`) and lies above A.
inline std::vector<InequalityCheck> corollary_checks(const ThreePhaseSolution& sol,
                                                     std::optional<double> a_inf = {}) {
  const auto& ctx = sol.ctx;
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  if (sol.kind == BoundaryKind::robin) a_inf = ctx.robin().a_inf;
  const double a = sol.surface_temperature;
  const double E3 = detail::e3(sol);
  const double base = std::sqrt(p.k3 * p.c3 / (p.k2 * p.c2)) * (a - t.B) / (t.B - t.C) * detail::e0(ctx);
  const double flux_form = p.k3 / p.k2 * std::sqrt(ctx.alphas().alpha2 / ctx.alphas().alpha3) * (a - t.B) /
                           (t.B - t.C) * detail::e0(ctx);

  std::vector<InequalityCheck> out;
  out.push_back(greater("face temperature above B", a, t.B));
  if (a_inf && *a_inf > a) {
    out.push_back(less("inner front bound at finite A_inf", E3, base * (*a_inf - t.B) / (*a_inf - a)));
  }
  out.push_back(less("inner front bound as A_inf -> inf", E3, base));
  out.push_back(less("inner front bound from the flux threshold", E3, flux_form));
  if (a_inf) out.push_back(less("face temperature below A_inf", a, *a_inf));
  return out;
}

/// Lower bound on A_inf above which h2* exists:
/// B + sqrt(a3/a2) (k2/k3) (B - C) / erf(z0 sqrt(a1/a2)).
inline double automatic_a_inf_bound(const ProblemContext& ctx) {
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  return t.B + std::sqrt(ctx.alphas().alpha3 / ctx.alphas().alpha2) * p.k2 / p.k3 * (t.B - t.C) / detail::e0(ctx);
}

/// F(z) = k3 (A_inf - B) sqrt(pi a2) erf(z0 sqrt(a1/a2)) z / (k2 (B - C) (k3 + z sqrt(pi a3))).
inline double automatic_ratio(const ProblemContext& ctx, double a_inf, double z) {
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  return p.k3 * (a_inf - t.B) * std::sqrt(std::numbers::pi * ctx.alphas().alpha2) * detail::e0(ctx) * z /
         (p.k2 * (t.B - t.C) * (p.k3 + z * detail::sqrt_pi_a3(ctx)));
}

/// h2*: the convective coefficient above which F exceeds 1, so that the
/// convective-to-flux hypothesis holds for every h0 > max(h2, h2*). Empty when
/// A_inf does not exceed automatic_a_inf_bound (F stays below 1).
inline std::optional<double> h2_star(const ProblemContext& ctx, double a_inf) {
  if (!(a_inf > automatic_a_inf_bound(ctx))) return std::nullopt;
  RootOptions opts;
  opts.width_tol = 0;
  opts.residual_tol = 1e-12;
  const auto root = find_root_monotone([&](double z) { return automatic_ratio(ctx, a_inf, z) - 1.0; }, 0.0, 1.0, opts);
  return root.root;
}

/// Flux above which the flux-to-convective hypothesis holds for every A_inf
/// above the surface temperature of the flux solution:
/// (B - C) sqrt(k2 k3 c2 / (pi a3 c3)) / erf(z0 sqrt(a1/a2)).
inline double sufficient_q0_for_robin(const ProblemContext& ctx) {
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  return (t.B - t.C) * std::sqrt(p.k2 * p.k3 * p.c2 / (std::numbers::pi * ctx.alphas().alpha3 * p.c3)) /
         detail::e0(ctx);
}

/// Face temperature above which the temperature-to-flux hypothesis holds:
/// B + q2 sqrt(pi a3) / k3.
inline double sufficient_a_for_neumann(const ProblemContext& ctx) {
  return ctx.temps().B + q2_threshold(ctx) * detail::sqrt_pi_a3(ctx) / ctx.props().k3;
}

}  // namespace stefan3
