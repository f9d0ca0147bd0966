#pragma once

// Regime thresholds and the explicit three-phase solutions for the convective,
// temperature and flux face conditions.
//
// Every solution has the similarity form
//   phase 3 (0 < x < x2):  u = a3 + b3 erf(x / (2 sqrt(alpha3 t)))
//   phase 2 (x2 < x < x1): u = a2 + b2 erf(x / (2 sqrt(alpha2 t)))
//   phase 1 (x > x1):      u = D  + b1 erfc(x / (2 sqrt(alpha1 t)))
// with fronts x_i = 2 coef_i sqrt(alpha1 t).

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "stefan3/errors.hpp"
#include "stefan3/model.hpp"
#include "stefan3/specfun.hpp"
#include "stefan3/transcendental.hpp"

namespace stefan3 {

enum class Regime { single_phase, two_phase, three_phase };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::single_phase: return "single_phase";
    case Regime::two_phase: return "two_phase";
    case Regime::three_phase: return "three_phase";
  }
  return "unknown";
}

/// The face datum is too weak for three phases to appear.
class RegimeError : public Error {
 public:
  RegimeError(Regime regime, const std::string& what) : Error(what), regime_(regime) {}
  Regime regime() const noexcept { return regime_; }

 private:
  Regime regime_;
};

struct Thresholds {
  double z0;
  std::optional<double> h1, h2;  // present only with a convective datum
  double q1, q2;
};

/// h1 = k1 (C - D) / (sqrt(pi alpha1) (A_inf - C)).
inline double h1_threshold(const ProblemContext& ctx, double a_inf) {
  const auto& t = ctx.temps();
  return ctx.props().k1 / std::sqrt(std::numbers::pi * ctx.alphas().alpha1) * (t.C - t.D) / (a_inf - t.C);
}

/// h2 = (B - C)/(A_inf - B) sqrt(k2 k3 c2 / (pi c3 alpha3)) / erf(z0 sqrt(a1/a2)).
inline double h2_threshold(const ProblemContext& ctx, double a_inf) {
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  return (t.B - t.C) / (a_inf - t.B) *
         std::sqrt(p.k2 * p.k3 * p.c2 / (std::numbers::pi * p.c3 * ctx.alphas().alpha3)) /
         specfun::erf(ctx.z0() * ctx.r12());
}

/// q1 = k1 (C - D) / sqrt(pi alpha1).
inline double q1_threshold(const ProblemContext& ctx) {
  const auto& t = ctx.temps();
  return ctx.props().k1 * (t.C - t.D) / std::sqrt(std::numbers::pi * ctx.alphas().alpha1);
}

/// q2 = k2 (B - C) / (sqrt(pi alpha2) erf(z0 sqrt(a1/a2))).
inline double q2_threshold(const ProblemContext& ctx) {
  const auto& t = ctx.temps();
  return ctx.props().k2 * (t.B - t.C) /
         (std::sqrt(std::numbers::pi * ctx.alphas().alpha2) * specfun::erf(ctx.z0() * ctx.r12()));
}

/// Thresholds available for the context; h1/h2 only when it carries a convective datum.
inline Thresholds thresholds(const ProblemContext& ctx) {
  Thresholds out{ctx.z0(), std::nullopt, std::nullopt, q1_threshold(ctx), q2_threshold(ctx)};
  if (ctx.boundary() && kind_of(*ctx.boundary()) == BoundaryKind::robin) {
    out.h1 = h1_threshold(ctx, ctx.robin().a_inf);
    out.h2 = h2_threshold(ctx, ctx.robin().a_inf);
  }
  return out;
}

/// Convective thresholds (h1, h2); throws MissingBoundaryDatum without A_inf.
inline std::pair<double, double> robin_thresholds(const ProblemContext& ctx) {
  const double a_inf = ctx.robin().a_inf;
  return {h1_threshold(ctx, a_inf), h2_threshold(ctx, a_inf)};
}

inline Regime classify_regime(const ProblemContext& ctx, const BoundarySpec& bc) {
  if (const auto* r = std::get_if<Robin>(&bc)) {
    if (r->h0 <= h1_threshold(ctx, r->a_inf)) return Regime::single_phase;
    if (r->h0 <= h2_threshold(ctx, r->a_inf)) return Regime::two_phase;
    return Regime::three_phase;
  }
  if (const auto* n = std::get_if<Neumann>(&bc)) {
    if (n->q0 <= q1_threshold(ctx)) return Regime::single_phase;
    if (n->q0 <= q2_threshold(ctx)) return Regime::two_phase;
    return Regime::three_phase;
  }
  const auto& d = std::get<Dirichlet>(bc);
  if (!(d.a > ctx.temps().B)) {
    throw ValidationError(std::string(codes::kDirichletA), "A must be > B");
  }
  return Regime::three_phase;
}

inline Regime classify_regime(const ProblemContext& ctx) {
  if (!ctx.boundary()) throw MissingBoundaryDatum("problem context has no boundary datum");
  return classify_regime(ctx, *ctx.boundary());
}

/// One phase of the similarity solution: offset + scale * erf(eta), or
/// offset + scale * erfc(eta) when `complementary`, eta = x / (2 sqrt(alpha t)).
struct PhaseField {
  double offset;
  double scale;
  double alpha;
  bool complementary;

  template <std::floating_point R>
  R value(R x, R t) const {
    const R eta = x / (R(2) * std::sqrt(R(alpha) * t));
    return R(offset) + R(scale) * (complementary ? specfun::erfc(eta) : specfun::erf(eta));
  }

  /// d/dx of value().
  template <std::floating_point R>
  R gradient(R x, R t) const {
    const R width = R(2) * std::sqrt(R(alpha) * t);
    const R eta = x / width;
    const R d = R(2) * std::numbers::inv_sqrtpi_v<R> * std::exp(-eta * eta) / width;
    return complementary ? -R(scale) * d : R(scale) * d;
  }
};

struct ThreePhaseSolution {
  BoundaryKind kind;
  double coef1;  // outer front x1 = 2 coef1 sqrt(alpha1 t)
  double coef2;  // inner front x2 = 2 coef2 sqrt(alpha1 t)
  ProblemContext ctx;
  Thresholds thresholds;
  Regime regime;
  std::array<PhaseField, 3> fields;  // phases 1, 2, 3
  double surface_temperature;        // u(0, t), constant in t
  double surface_flux_coefficient;   // k3 u_x(0, t) = -coefficient / sqrt(t)
  double front_residual;             // relative residual of the scalar front equation

  const PhaseField& field(int phase) const { return fields.at(static_cast<std::size_t>(phase - 1)); }
};

struct Fronts {
  double x2;  // inner (phase 3 | phase 2)
  double x1;  // outer (phase 2 | phase 1)
};

inline Fronts free_boundaries(const ThreePhaseSolution& sol, double t) {
  const double root = std::sqrt(sol.ctx.alphas().alpha1 * t);
  return {2.0 * sol.coef2 * root, 2.0 * sol.coef1 * root};
}

/// Closed-form fields for given front coefficients; the face condition is
/// taken from the context. Does not check that the coefficients solve the
/// front equations (see verify.hpp for that).
inline ThreePhaseSolution build_solution(const ProblemContext& ctx, double coef1, double coef2) {
  if (!ctx.boundary()) throw MissingBoundaryDatum("problem context has no boundary datum");
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  const auto& a = ctx.alphas();
  const BoundaryKind kind = kind_of(*ctx.boundary());

  const double e1 = specfun::erf(coef1 * ctx.r12());
  const double e2 = specfun::erf(coef2 * ctx.r12());
  const double e3 = specfun::erf(coef2 * ctx.r13());
  const double sqrt_pi_a3 = std::sqrt(std::numbers::pi * a.alpha3);

  PhaseField phase1{t.D, (t.C - t.D) / specfun::erfc(coef1), a.alpha1, true};
  PhaseField phase2{(t.B * e1 - t.C * e2) / (e1 - e2), -(t.B - t.C) / (e1 - e2), a.alpha2, false};
  PhaseField phase3{};
  switch (kind) {
    case BoundaryKind::robin: {
      const auto& bc = ctx.robin();
      const double resistance = p.k3 / (bc.h0 * sqrt_pi_a3);
      phase3 = {(t.B * resistance + bc.a_inf * e3) / (resistance + e3), -(bc.a_inf - t.B) / (resistance + e3),
                a.alpha3, false};
      break;
    }
    case BoundaryKind::dirichlet: {
      const double face = ctx.dirichlet().a;
      phase3 = {face, -(face - t.B) / e3, a.alpha3, false};
      break;
    }
    case BoundaryKind::neumann: {
      const double slope = ctx.neumann().q0 * sqrt_pi_a3 / p.k3;
      phase3 = {t.B + slope * e3, -slope, a.alpha3, false};
      break;
    }
  }

  // Residual of the front equation for the pair as given, so it does not
  // inherit the conditioning of z2(z) near z0.
  auto pair_residual = [](double z, double z2, const ProblemContext& c) {
    const double q = q_func(z, c);
    return (q - front_rhs(z2, c)) / std::max(1.0, std::abs(q));
  };
  Thresholds th = thresholds(ctx);
  return ThreePhaseSolution{kind,
                            coef1,
                            coef2,
                            ctx,
                            th,
                            Regime::three_phase,
                            {phase1, phase2, phase3},
                            phase3.offset,
                            -p.k3 * phase3.scale / sqrt_pi_a3,
                            pair_residual(coef1, coef2, ctx)};
}

namespace detail {

inline ThreePhaseSolution solve_fronts(const ProblemContext& ctx) {
  const Regime regime = classify_regime(ctx);
  if (regime != Regime::three_phase) {
    throw RegimeError(regime, std::string("face datum gives a ") + std::string(to_string(regime)) +
                                  " problem, not three phases");
  }
  const double z0 = ctx.z0();
  RootOptions opts;
  opts.residual_tol = 1e-12;
  if (kind_of(*ctx.boundary()) == BoundaryKind::dirichlet) {
    // V has a pole at z2 = 0, which sits at z = z0. Near A = B the root in z
    // crowds z0 and V(z2(z)) cannot be resolved in z, so bisect on z2 instead
    // and recover z by inverting H, which is well conditioned.
    RootOptions inner;
    inner.width_tol = 0;
    auto outer_of = [&](double z2) {
      const double target = specfun::erf(z2 * ctx.r12());
      return find_root_monotone([&](double z) { return h_func(z, ctx) - target; }, 0.0, std::max(z0, 1.0), inner)
          .root;
    };
    auto residual = [&](double z2) {
      const double q = q_func(outer_of(z2), ctx);
      return (q - v_func(z2, ctx)) / std::max(1.0, std::abs(q));
    };
    RootOptions outer = opts;
    outer.width_tol = 0;
    const auto root = find_root_monotone(residual, std::numeric_limits<double>::min(), 1.0, outer);
    return build_solution(ctx, outer_of(root.root), root.root);
  }
  const auto root =
      find_root_monotone([&](double z) { return front_residual(z, ctx); }, z0 + 1e-12, std::max(z0, 1.0), opts);
  return build_solution(ctx, root.root, inner_coefficient(root.root, ctx));
}

template <class T>
const ProblemContext& require(const ProblemContext& ctx, const char* name) {
  if (!ctx.boundary() || !std::holds_alternative<T>(*ctx.boundary())) {
    throw MissingBoundaryDatum(std::string("context does not carry a ") + name + " datum");
  }
  return ctx;
}

}  // namespace detail

/// Convective face: outer coefficient solves Q(z) = U(z) on (z0, inf).
inline ThreePhaseSolution solve_robin(const ProblemContext& ctx) {
  return detail::solve_fronts(detail::require<Robin>(ctx, "convective"));
}

/// Temperature face: outer coefficient solves Q(z) = V(z2(z)) on (z0, inf).
inline ThreePhaseSolution solve_dirichlet(const ProblemContext& ctx) {
  return detail::solve_fronts(detail::require<Dirichlet>(ctx, "temperature"));
}

/// Flux face: outer coefficient solves Q(z) = P(z2(z)) on (z0, inf).
inline ThreePhaseSolution solve_neumann(const ProblemContext& ctx) {
  return detail::solve_fronts(detail::require<Neumann>(ctx, "flux"));
}

/// Dispatches on the context's face condition.
inline ThreePhaseSolution solve(const ProblemContext& ctx) { return detail::solve_fronts(ctx); }

/// Phase index (1, 2 or 3) containing x at time t. Points within a relative
/// 1e-14 band above a front are assigned to the phase on the face side.
template <std::floating_point R>
int phase_at(const ThreePhaseSolution& sol, R x, R t) {
  const R root = std::sqrt(R(sol.ctx.alphas().alpha1) * t);
  const R x2 = R(2) * R(sol.coef2) * root;
  const R x1 = R(2) * R(sol.coef1) * root;
  constexpr R band = R(1) + R(1e-14);
  if (x <= x2 * band) return 3;
  if (x <= x1 * band) return 2;
  return 1;
}

/// Temperature (K) at depth x >= 0 and time t > 0.
template <std::floating_point R = double>
R evaluate_temperature(const ThreePhaseSolution& sol, R x, R t) {
  const int phase = phase_at(sol, x, t);
  if (phase == 1 && x / (R(2) * std::sqrt(R(sol.ctx.alphas().alpha1) * t)) > R(38)) {
    return R(sol.ctx.temps().D);
  }
  return sol.field(phase).value(x, t);
}

struct SurfaceValues {
  double temperature;       // u(0, t)
  double flux;              // k3 u_x(0, t)
  double flux_coefficient;  // flux = -flux_coefficient / sqrt(t)
};

inline SurfaceValues surface_values(const ThreePhaseSolution& sol, double t) {
  return {sol.surface_temperature, -sol.surface_flux_coefficient / std::sqrt(t), sol.surface_flux_coefficient};
}

/// Copy with the front coefficients shifted while the field constants are
/// kept; the result is no longer a solution. Used for negative controls.
inline ThreePhaseSolution perturb_fronts(ThreePhaseSolution sol, double delta1, double delta2) {
  sol.coef1 += delta1;
  sol.coef2 += delta2;
  return sol;
}

}  // namespace stefan3
