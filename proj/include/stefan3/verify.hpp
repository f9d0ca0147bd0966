#pragma once

// Residual checks of a candidate solution against the governing system:
// heat equation in each phase (central finite differences in long double),
// interface temperatures, Stefan conditions and the face condition (exact
// derivatives of the closed forms), and the far-field value D.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "stefan3/errors.hpp"
#include "stefan3/solver.hpp"

namespace stefan3 {

namespace tolerance {
inline constexpr double kHeat = 1e-6;
inline constexpr double kInterface = 1e-10;  // relative to B - D
inline constexpr double kStefan = 1e-10;
inline constexpr double kBoundary = 1e-10;           // convective and flux faces
inline constexpr double kDirichletBoundary = 1e-12;  // relative to A - B
inline constexpr double kFarField = 1e-8;            // relative to C - D
}  // namespace tolerance

struct VerifyOptions {
  std::vector<double> times{0.1, 1.0, 10.0};
  std::size_t points_per_phase = 100;
  double rel_step = 1e-4;
  double far_field_factor = 20.0;
};

struct ResidualReport {
  BoundaryKind kind;
  std::array<double, 3> heat{};  // max relative heat-equation residual, phases 1, 2, 3
  double interface_inner = 0;    // max |u - B| at x2 from both sides, / (B - D)
  double interface_outer = 0;    // max |u - C| at x1 from both sides, / (B - D)
  double stefan_inner = 0;       // relative residual of the energy balance at x2
  double stefan_outer = 0;       // same at x1
  double boundary = 0;           // relative residual of the face condition
  double far_field = 0;          // |u - D| / (C - D) at the far-field point
  std::size_t points_per_phase = 0;
  std::size_t n_times = 0;
  double rel_step = 0;
  double far_field_factor = 0;

  double boundary_tolerance() const {
    return kind == BoundaryKind::dirichlet ? tolerance::kDirichletBoundary : tolerance::kBoundary;
  }

  double heat_max() const { return *std::max_element(heat.begin(), heat.end()); }

  /// Names of the checks above tolerance; empty when the report passes.
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!(heat_max() <= tolerance::kHeat)) out.emplace_back("heat");
    if (!(std::max(interface_inner, interface_outer) <= tolerance::kInterface)) out.emplace_back("interface");
    if (!(std::max(stefan_inner, stefan_outer) <= tolerance::kStefan)) out.emplace_back("stefan");
    if (!(boundary <= boundary_tolerance())) out.emplace_back("boundary");
    if (!(far_field <= tolerance::kFarField)) out.emplace_back("far_field");
    return out;
  }

  bool passed() const { return failures().empty(); }
};

namespace detail {

inline double relative(double a, double b, double scale) {
  return scale > 0 ? std::abs(a - b) / scale : std::abs(a - b);
}

struct PhaseBand {
  long double lo, hi;
};

// Sampled extent of a phase at time t; phase 1 is cut at eta1 = coef1 + 2.
inline PhaseBand phase_band(const ThreePhaseSolution& sol, int phase, long double t) {
  const long double root = std::sqrt((long double)sol.ctx.alphas().alpha1 * t);
  const long double x2 = 2 * (long double)sol.coef2 * root;
  const long double x1 = 2 * (long double)sol.coef1 * root;
  switch (phase) {
    case 3: return {0, x2};
    case 2: return {x2, x1};
    default: return {x1, 2 * ((long double)sol.coef1 + 2) * root};
  }
}

}  // namespace detail

/// Relative residual |u_t - alpha u_xx| / max(|u_t|, alpha |u_xx|, floor) of
/// phase `phase` at (x, t), with central differences of steps
/// h_x = rel_step 2 sqrt(alpha t) and h_t = rel_step t. Throws
/// StencilCrossesFront if a stencil point lies outside the phase.
inline double heat_residual_at(const ThreePhaseSolution& sol, int phase, double x, double t, double rel_step) {
  using R = long double;
  const PhaseField& f = sol.field(phase);
  const R xs = x;
  const R ts = t;
  const R hx = R(rel_step) * 2 * std::sqrt(R(f.alpha) * ts);
  const R ht = R(rel_step) * ts;

  const std::array<std::array<R, 2>, 5> stencil{{{xs, ts}, {xs - hx, ts}, {xs + hx, ts}, {xs, ts - ht}, {xs, ts + ht}}};
  for (const auto& [sx, st] : stencil) {
    if (sx < 0 || phase_at(sol, sx, st) != phase) {
      throw StencilCrossesFront("heat stencil at x=" + std::to_string(x) + ", t=" + std::to_string(t) +
                                " leaves phase " + std::to_string(phase));
    }
  }

  const R u0 = f.value(xs, ts);
  const R u_t = (f.value(xs, ts + ht) - f.value(xs, ts - ht)) / (2 * ht);
  const R u_xx = (f.value(xs + hx, ts) - 2 * u0 + f.value(xs - hx, ts)) / (hx * hx);
  const R alpha_u_xx = R(f.alpha) * u_xx;
  const auto& temps = sol.ctx.temps();
  const R floor = std::numeric_limits<R>::epsilon() * R(temps.B - temps.D) / ts;
  const R scale = std::max({std::abs(u_t), std::abs(alpha_u_xx), floor});
  return static_cast<double>(std::abs(u_t - alpha_u_xx) / scale);
}

/// Max relative heat residual per phase (index 0 = phase 1) over `n_points`
/// geometrically spaced points in each phase at each time. Points keep a
/// distance max(3 stencil widths, 2% of the band) from the band ends.
inline std::array<double, 3> heat_residual(const ThreePhaseSolution& sol, std::size_t n_points, double rel_step,
                                           const std::vector<double>& times = {0.1, 1.0, 10.0}) {
  using R = long double;
  std::array<double, 3> out{};
  if (n_points < 2) throw Error("heat_residual needs at least two points per phase");
  for (double t : times) {
    for (int phase = 1; phase <= 3; ++phase) {
      const auto band = detail::phase_band(sol, phase, t);
      const R hx = R(rel_step) * 2 * std::sqrt(R(sol.field(phase).alpha) * R(t));
      const R margin = std::max(3 * hx, R(0.02) * (band.hi - band.lo));
      const R lo = band.lo + margin;
      const R hi = band.hi - margin;
      if (!(hi > lo)) {
        throw StencilCrossesFront("phase " + std::to_string(phase) + " is too thin for the stencil at t=" +
                                  std::to_string(t));
      }
      const R ratio = hi / lo;
      double& worst = out[static_cast<std::size_t>(phase - 1)];
      for (std::size_t j = 0; j < n_points; ++j) {
        const R x = lo * std::pow(ratio, R(j) / R(n_points - 1));
        worst = std::max(worst, heat_residual_at(sol, phase, static_cast<double>(x), t, rel_step));
      }
    }
  }
  return out;
}

/// Max deviation of the temperature at each front from B (inner) and C
/// (outer), evaluated with the fields on both sides, relative to B - D.
inline std::pair<double, double> interface_residual(const ThreePhaseSolution& sol, const std::vector<double>& times) {
  const auto& tp = sol.ctx.temps();
  const double scale = tp.B - tp.D;
  double inner = 0, outer = 0;
  for (double t : times) {
    const auto fr = free_boundaries(sol, t);
    inner = std::max({inner, detail::relative(sol.field(3).value(fr.x2, t), tp.B, scale),
                      detail::relative(sol.field(2).value(fr.x2, t), tp.B, scale)});
    outer = std::max({outer, detail::relative(sol.field(2).value(fr.x1, t), tp.C, scale),
                      detail::relative(sol.field(1).value(fr.x1, t), tp.C, scale)});
  }
  return {inner, outer};
}

/// Relative residuals of the energy balances
///   k2 u2_x - k3 u3_x = rho l2 dx2/dt at x2 and k1 u1_x - k2 u2_x = rho l1 dx1/dt at x1,
/// normalized by the largest term of each balance.
inline std::pair<double, double> stefan_residual(const ThreePhaseSolution& sol, const std::vector<double>& times) {
  const auto& p = sol.ctx.props();
  const double alpha1 = sol.ctx.alphas().alpha1;
  double inner = 0, outer = 0;
  for (double t : times) {
    const auto fr = free_boundaries(sol, t);
    const double speed = std::sqrt(alpha1 / t);  // d/dt (2 c sqrt(alpha1 t)) = c * speed

    const double g3 = p.k3 * sol.field(3).gradient(fr.x2, t);
    const double g2i = p.k2 * sol.field(2).gradient(fr.x2, t);
    const double rhs2 = p.rho * p.l2 * sol.coef2 * speed;
    inner = std::max(inner, detail::relative(g2i - g3, rhs2, std::max({std::abs(g3), std::abs(g2i), std::abs(rhs2)})));

    const double g2o = p.k2 * sol.field(2).gradient(fr.x1, t);
    const double g1 = p.k1 * sol.field(1).gradient(fr.x1, t);
    const double rhs1 = p.rho * p.l1 * sol.coef1 * speed;
    outer = std::max(outer, detail::relative(g1 - g2o, rhs1, std::max({std::abs(g1), std::abs(g2o), std::abs(rhs1)})));
  }
  return {inner, outer};
}

/// Relative residual of the face condition: convective
/// |k3 u_x - h0 (u - A_inf)/sqrt(t)| / max of the two terms, temperature
/// |u - A| / (A - B), flux |k3 u_x sqrt(t) + q0| / q0; maximum over `times`.
inline double boundary_residual(const ThreePhaseSolution& sol, const std::vector<double>& times) {
  const auto& ctx = sol.ctx;
  const double k3 = ctx.props().k3;
  const PhaseField& f3 = sol.field(3);
  double worst = 0;
  for (double t : times) {
    const double u = f3.value(0.0, t);
    const double flux = k3 * f3.gradient(0.0, t);
    double r = 0;
    switch (sol.kind) {
      case BoundaryKind::robin: {
        const auto& bc = ctx.robin();
        const double rhs = bc.h0 / std::sqrt(t) * (u - bc.a_inf);
        r = detail::relative(flux, rhs, std::max(std::abs(flux), std::abs(rhs)));
        break;
      }
      case BoundaryKind::dirichlet: {
        const double a = ctx.dirichlet().a;
        r = detail::relative(u, a, a - ctx.temps().B);
        break;
      }
      case BoundaryKind::neumann: {
        const double q0 = ctx.neumann().q0;
        r = std::abs(flux * std::sqrt(t) + q0) / q0;
        break;
      }
    }
    worst = std::max(worst, r);
  }
  return worst;
}

/// |u - D| / (C - D) at x = x_factor * max(x1(t), 2 sqrt(alpha1 t)), the
/// larger of the outer front and the phase-1 diffusion length. Computed as
/// |b1| erfc(eta) so it stays meaningful after u - D underflows in double.
inline double far_field_residual(const ThreePhaseSolution& sol, const std::vector<double>& times, double x_factor) {
  const auto& tp = sol.ctx.temps();
  const PhaseField& f1 = sol.field(1);
  double worst = 0;
  for (double t : times) {
    const double length = 2.0 * std::sqrt(sol.ctx.alphas().alpha1 * t);
    const double x = x_factor * std::max(free_boundaries(sol, t).x1, length);
    const double deviation = std::abs(f1.scale) * specfun::erfc(x / length);
    worst = std::max(worst, deviation / (tp.C - tp.D));
  }
  return worst;
}

/// Every residual check with the given options.
inline ResidualReport verify(const ThreePhaseSolution& sol, const VerifyOptions& opts = {}) {
  ResidualReport r;
  r.kind = sol.kind;
  r.heat = heat_residual(sol, opts.points_per_phase, opts.rel_step, opts.times);
  std::tie(r.interface_inner, r.interface_outer) = interface_residual(sol, opts.times);
  std::tie(r.stefan_inner, r.stefan_outer) = stefan_residual(sol, opts.times);
  r.boundary = boundary_residual(sol, opts.times);
  r.far_field = far_field_residual(sol, opts.times, opts.far_field_factor);
  r.points_per_phase = opts.points_per_phase;
  r.n_times = opts.times.size();
  r.rel_step = opts.rel_step;
  r.far_field_factor = opts.far_field_factor;
  return r;
}

}  // namespace stefan3
