#pragma once

// Scalar functions of the similarity reduction and the bracketed root finder.
//
// With eta = x / (2 sqrt(alpha1 t)) the outer front is x1 = 2 z sqrt(alpha1 t).
// The Stefan condition at x1 fixes the inner coefficient as a function of z,
//   erf(z2 sqrt(a1/a2)) = H(z),
// and the condition at x2 reduces to a scalar equation Q(z) = R(z2(z)) whose
// right-hand side R depends on the face condition: T (convective),
// V (temperature) or P (flux).

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "stefan3/errors.hpp"
#include "stefan3/model.hpp"
#include "stefan3/specfun.hpp"

namespace stefan3 {

struct RootOptions {
  double width_tol = 1e-14;
  double residual_tol = std::numeric_limits<double>::infinity();
  int max_doublings = 200;
};

struct RootResult {
  double root;
  double residual;
  double bracket_width;
  int evaluations;
};

/// Bisection on a continuous function with a single sign change above `lo`.
///
/// The upper end starts at `hi_start` and is doubled (moving the lower end up
/// behind it) until the sign differs from f(lo). Bisection then runs until the
/// bracket is narrower than `width_tol` or no double lies strictly inside it.
/// Throws RootFailure when no sign change appears within `max_doublings`, when
/// f is NaN at a bracket end or non-finite strictly inside the bracket, or when
/// |f(root)| exceeds `residual_tol`.
template <class F>
RootResult find_root_monotone(F&& f, double lo, double hi_start, const RootOptions& opts = {}) {
  int evaluations = 0;
  auto eval = [&](double z) {
    ++evaluations;
    return static_cast<double>(f(z));
  };
  auto sign = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };

  double flo = eval(lo);
  if (std::isnan(flo)) {
    throw RootFailure(RootFailure::Reason::NonFinite, "root finder: f(lo) is NaN");
  }
  if (flo == 0) return {lo, 0.0, 0.0, evaluations};

  double hi = hi_start > lo ? hi_start : lo + std::max(1.0, std::abs(lo));
  double fhi = eval(hi);
  int doublings = 0;
  while (sign(fhi) == sign(flo)) {
    if (std::isnan(fhi)) break;
    if (++doublings > opts.max_doublings) {
      throw RootFailure(RootFailure::Reason::NoSignChange,
                        "root finder: no sign change after " + std::to_string(opts.max_doublings) +
                            " doublings");
    }
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = eval(hi);
  }
  if (std::isnan(fhi)) {
    throw RootFailure(RootFailure::Reason::NonFinite, "root finder: f is NaN at the upper bracket end");
  }
  if (fhi == 0) return {hi, 0.0, 0.0, evaluations};

  while (hi - lo > opts.width_tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (!(mid > lo && mid < hi)) break;
    const double fm = eval(mid);
    if (!std::isfinite(fm)) {
      throw RootFailure(RootFailure::Reason::NonFinite,
                        "root finder: f is not finite inside the bracket at z=" + std::to_string(mid));
    }
    if (fm == 0) return {mid, 0.0, hi - lo, evaluations};
    if (sign(fm) == sign(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }

  const bool take_lo = std::abs(flo) <= std::abs(fhi);
  RootResult result{take_lo ? lo : hi, take_lo ? flo : fhi, hi - lo, evaluations};
  if (!(std::abs(result.residual) <= opts.residual_tol)) {
    throw RootFailure(RootFailure::Reason::ResidualTooLarge,
                      "root finder: residual " + std::to_string(result.residual) +
                          " above tolerance at z=" + std::to_string(result.root));
  }
  return result;
}

/// Immutable bundle of the problem data and every derived constant used by the
/// transcendental functions. Holds z0, the positive zero of H.
class ProblemContext {
 public:
  /// Validates the data (throws ValidationError) and solves for z0.
  static ProblemContext make(const MaterialProperties& props, const PhaseTemps& temps,
                             std::optional<BoundarySpec> boundary = std::nullopt);

  static ProblemContext make(const ProblemData& data) {
    return make(data.props, data.temps, data.boundary);
  }

  /// Same material and temperatures with a different face condition; z0 is reused.
  ProblemContext with_boundary(const BoundarySpec& bc) const;

  const MaterialProperties& props() const noexcept { return props_; }
  const PhaseTemps& temps() const noexcept { return temps_; }
  const Diffusivities& alphas() const noexcept { return alphas_; }
  const StefanNumbers& ste() const noexcept { return ste_; }
  const std::optional<BoundarySpec>& boundary() const noexcept { return boundary_; }
  double z0() const noexcept { return z0_; }

  const Robin& robin() const { return datum<Robin>("convective (h0, A_inf)"); }
  const Dirichlet& dirichlet() const { return datum<Dirichlet>("face temperature A"); }
  const Neumann& neumann() const { return datum<Neumann>("face flux q0"); }

  // sqrt(a1/a2), sqrt(a2/a1), sqrt(a1/a3)
  double r12() const noexcept { return r12_; }
  double r21() const noexcept { return r21_; }
  double r13() const noexcept { return r13_; }
  // a1/a2, a1/a3 and a1/a3 - a1/a2 (exponent rates in Q, T, V, P)
  double a12() const noexcept { return a12_; }
  double a13() const noexcept { return a13_; }
  double a13_minus_a12() const noexcept { return a13_minus_a12_; }
  /// (Ste2/sqrt(pi)) (l2/l1) sqrt(k2 c1 / (k1 c2)), the weight of the second term of H.
  double h_weight() const noexcept { return h_weight_; }

 private:
  ProblemContext() = default;

  template <class T>
  const T& datum(const char* what) const {
    if (boundary_) {
      if (const auto* p = std::get_if<T>(&*boundary_)) return *p;
    }
    throw MissingBoundaryDatum(std::string("problem context has no ") + what + " datum");
  }

  MaterialProperties props_{};
  PhaseTemps temps_{};
  std::optional<BoundarySpec> boundary_;
  Diffusivities alphas_{};
  StefanNumbers ste_{};
  double r12_ = 0, r21_ = 0, r13_ = 0, a12_ = 0, a13_ = 0, a13_minus_a12_ = 0, h_weight_ = 0;
  double z0_ = 0;
};

/// phi(z) = z + (Ste1/sqrt(pi)) exp(-z^2)/erfc(z), z >= 0.
inline double phi(double z, const ProblemContext& ctx) {
  return z + ctx.ste().ste1 * std::numbers::inv_sqrtpi / specfun::erfcx(z);
}

/// H(z) = erf(z sqrt(a1/a2)) - h_weight exp(-z^2 a1/a2) / phi(z), z >= 0.
inline double h_func(double z, const ProblemContext& ctx) {
  return specfun::erf(z * ctx.r12()) - ctx.h_weight() * std::exp(-z * z * ctx.a12()) / phi(z, ctx);
}

/// 1 - H(z), formed without cancellation for large z.
inline double h_complement(double z, const ProblemContext& ctx) {
  return specfun::erfc(z * ctx.r12()) + ctx.h_weight() * std::exp(-z * z * ctx.a12()) / phi(z, ctx);
}

/// Inner front coefficient z2(z) = sqrt(a2/a1) erf^-1(H(z)) paired with outer coefficient z.
inline double inner_coefficient(double z, const ProblemContext& ctx) {
  const double h = h_func(z, ctx);
  const double inv = h <= 0.5 ? specfun::erf_inv(h) : specfun::erfc_inv(h_complement(z, ctx));
  return ctx.r21() * inv;
}

/// Q(z) = (l1/l2) phi(z) exp(z^2 a1/a2).
inline double q_func(double z, const ProblemContext& ctx) {
  return ctx.props().l1 / ctx.props().l2 * phi(z, ctx) * std::exp(z * z * ctx.a12());
}

/// Convective right-hand side T(z) (needs the Robin datum).
inline double t_func(double z, const ProblemContext& ctx) {
  const auto& p = ctx.props();
  const auto& t = ctx.temps();
  const auto& bc = ctx.robin();
  const double weight = ctx.ste().ste2 * std::numbers::inv_sqrtpi / p.c2 * (bc.a_inf - t.B) /
                        (t.B - t.C) * std::sqrt(p.k3 * p.c1 * p.c3 / p.k1);
  const double resistance = p.k3 / (bc.h0 * std::sqrt(std::numbers::pi * ctx.alphas().alpha3));
  return weight * std::exp(-z * z * ctx.a13_minus_a12()) / (resistance + specfun::erf(z * ctx.r13())) -
         z * std::exp(z * z * ctx.a12());
}

/// U(z) = T(z2(z)), defined for z > z0.
inline double u_func(double z, const ProblemContext& ctx) {
  if (!(z > ctx.z0())) throw DomainError("U is defined only for z > z0");
  return t_func(inner_coefficient(z, ctx), ctx);
}

/// Temperature right-hand side V(z), z > 0 (needs the Dirichlet datum).
inline double v_func(double z, const ProblemContext& ctx) {
  const auto& p = ctx.props();
  const double weight = (ctx.dirichlet().a - ctx.temps().B) / p.l2 *
                        std::sqrt(p.c1 * p.c3 * p.k3 / (std::numbers::pi * p.k1));
  return weight * std::exp(-z * z * ctx.a13_minus_a12()) / specfun::erf(z * ctx.r13()) -
         z * std::exp(z * z * ctx.a12());
}

/// Flux right-hand side P(z), z >= 0 (needs the Neumann datum).
inline double p_func(double z, const ProblemContext& ctx) {
  const auto& p = ctx.props();
  const double weight = ctx.neumann().q0 / p.l2 * std::sqrt(p.c1 / (p.rho * p.k1));
  return std::exp(z * z * ctx.a12()) * (-z + weight * std::exp(-z * z * ctx.a13()));
}

/// Right-hand side of the scalar front equation for the context's face
/// condition, evaluated at the inner coefficient z2.
inline double front_rhs(double z2, const ProblemContext& ctx) {
  if (!ctx.boundary()) throw MissingBoundaryDatum("problem context has no boundary datum");
  switch (kind_of(*ctx.boundary())) {
    case BoundaryKind::robin: return t_func(z2, ctx);
    case BoundaryKind::dirichlet: return v_func(z2, ctx);
    case BoundaryKind::neumann: return p_func(z2, ctx);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// Relative residual (Q(z) - RHS(z2(z))) / max(1, |Q(z)|); same sign as Q - RHS.
inline double front_residual(double z, const ProblemContext& ctx) {
  const double q = q_func(z, ctx);
  return (q - front_rhs(inner_coefficient(z, ctx), ctx)) / std::max(1.0, std::abs(q));
}

/// The unique z0 > 0 with H(z0) = 0.
inline double solve_z0(const ProblemContext& ctx) {
  auto h = [&](double z) { return h_func(z, ctx); };
  if (!(h(0.0) < 0)) {
    throw RootFailure(RootFailure::Reason::NoSignChange, "H(0) is not negative; z0 does not exist");
  }
  RootOptions opts;
  opts.residual_tol = 1e-13;
  return find_root_monotone(h, 0.0, 1.0, opts).root;
}

inline ProblemContext ProblemContext::make(const MaterialProperties& props, const PhaseTemps& temps,
                                           std::optional<BoundarySpec> boundary) {
  auto violations = boundary ? validate(props, temps, *boundary) : validate(props, temps);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  ProblemContext ctx;
  ctx.props_ = props;
  ctx.temps_ = temps;
  ctx.boundary_ = boundary;
  ctx.alphas_ = diffusivities(props);
  ctx.ste_ = stefan_numbers(props, temps);
  const auto& a = ctx.alphas_;
  ctx.r12_ = std::sqrt(a.alpha1 / a.alpha2);
  ctx.r21_ = std::sqrt(a.alpha2 / a.alpha1);
  ctx.r13_ = std::sqrt(a.alpha1 / a.alpha3);
  ctx.a12_ = a.alpha1 / a.alpha2;
  ctx.a13_ = a.alpha1 / a.alpha3;
  ctx.a13_minus_a12_ = ctx.a13_ - ctx.a12_;
  ctx.h_weight_ = ctx.ste_.ste2 * std::numbers::inv_sqrtpi * props.l2 / props.l1 *
                  std::sqrt(props.k2 * props.c1 / (props.k1 * props.c2));
  ctx.z0_ = solve_z0(ctx);
  return ctx;
}

inline ProblemContext ProblemContext::with_boundary(const BoundarySpec& bc) const {
  auto violations = validate(props_, temps_, bc);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  ProblemContext copy = *this;
  copy.boundary_ = bc;
  return copy;
}

}  // namespace stefan3
