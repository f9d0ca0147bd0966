#pragma once

// Error function family: erf, erfc and their inverses.
//
// All routines are templates over the floating type so the same code serves
// double (library surface) and long double (finite-difference verification).
//
//   |x| < 2 : erf from the positive-term series
//             erf(x) = 2/sqrt(pi) exp(-x^2) sum_n (2x^2)^n x / (1*3*...*(2n+1))
//   x >= 2  : erfc from the even contraction of the Laplace continued fraction,
//             evaluated with the modified Lentz algorithm
//   |x| > 38: saturated (erf = +-1, erfc = 0 or 2)
//
// erfcx (exp(x^2) erfc(x)) reuses the continued fraction without the
// exponential so it never overflows.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#include "stefan3/errors.hpp"

namespace stefan3::specfun {

namespace detail {

template <std::floating_point R>
inline constexpr R kSaturation = R(38);

template <std::floating_point R>
inline constexpr R kSeriesLimit = R(2);

template <std::floating_point R>
constexpr R two_over_sqrt_pi() {
  return R(2) * std::numbers::inv_sqrtpi_v<R>;
}

// erf(x) for 0 <= x < kSeriesLimit.
template <std::floating_point R>
R erf_series(R x) {
  const R x2 = x * x;
  R term = x;
  R sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= R(2) * x2 / R(2 * n + 1);
    sum += term;
    if (term <= std::numeric_limits<R>::epsilon() * sum * R(0.25)) break;
  }
  return two_over_sqrt_pi<R>() * std::exp(-x2) * sum;
}

// Denominator f of the even contraction of the Laplace continued fraction,
//   erfc(x) = x exp(-x^2)/sqrt(pi) / f,
//   f = x^2 + 1/2 - (1*2/4)/(x^2 + 5/2 - (3*4/4)/(x^2 + 9/2 - ...)),
// evaluated with the modified Lentz algorithm. Used for x >= kSeriesLimit.
template <std::floating_point R>
R erfc_fraction(R x) {
  const R tiny = std::numeric_limits<R>::min() / std::numeric_limits<R>::epsilon();
  const R z = x * x;
  R f = z + R(0.5);
  R c = f;
  R d = 0;
  for (int n = 1; n < 500; ++n) {
    const R a = -R((2 * n - 1) * (2 * n)) / R(4);
    const R b = z + R(4 * n + 1) / R(2);
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    d = R(1) / d;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const R delta = c * d;
    f *= delta;
    if (std::abs(delta - R(1)) <= std::numeric_limits<R>::epsilon()) break;
  }
  return f;
}

template <std::floating_point R>
R erfc_continued_fraction(R x) {
  return x * std::exp(-x * x) * std::numbers::inv_sqrtpi_v<R> / erfc_fraction(x);
}

// Winitzki's closed-form approximation of erf^-1, relative error ~2e-3.
// `one_minus_p2` is 1 - p^2, passed separately so callers near |p| = 1 can
// supply it without cancellation.
template <std::floating_point R>
R erf_inv_guess(R p, R one_minus_p2) {
  constexpr R a = R(0.147);
  const R ln = std::log(one_minus_p2);
  const R t = R(2) / (std::numbers::pi_v<R> * a) + ln / R(2);
  const R v = std::sqrt(std::sqrt(t * t - ln / a) - t);
  return std::copysign(v, p);
}

template <std::floating_point R>
R newton_tolerance(R x) {
  return R(4) * std::numeric_limits<R>::epsilon() * std::max(R(1), std::abs(x));
}

}  // namespace detail

template <std::floating_point R>
R erf(R x) {
  if (x < 0) return -erf(-x);
  if (x > detail::kSaturation<R>) return R(1);
  if (x < detail::kSeriesLimit<R>) return detail::erf_series(x);
  return R(1) - detail::erfc_continued_fraction(x);
}

template <std::floating_point R>
R erfc(R x) {
  if (x < 0) return R(1) + erf(-x);
  if (x > detail::kSaturation<R>) return R(0);
  if (x < detail::kSeriesLimit<R>) return R(1) - detail::erf_series(x);
  return detail::erfc_continued_fraction(x);
}

/// Scaled complementary error function exp(x^2) erfc(x) for x >= 0; finite
/// for every finite x, behaves like 1/(x sqrt(pi)) for large x.
template <std::floating_point R>
R erfcx(R x) {
  if (x < 0) throw DomainError("erfcx: argument must be >= 0");
  if (x < detail::kSeriesLimit<R>) return std::exp(x * x) * (R(1) - detail::erf_series(x));
  return x * std::numbers::inv_sqrtpi_v<R> / detail::erfc_fraction(x);
}

/// Inverse error function on (-1, 1).
///
/// Safeguarded Newton iteration started from a closed-form guess; at most 50
/// steps. For p > 1/2 the residual is formed from erfc so the iteration keeps
/// full relative accuracy as p approaches 1.
template <std::floating_point R>
R erf_inv(R p) {
  if (!(std::abs(p) < R(1))) throw DomainError("erf_inv: argument must lie in (-1, 1)");
  if (p == 0) return R(0);
  if (p < 0) return -erf_inv(-p);

  const bool tail = p > R(0.5);
  const R q = R(1) - p;  // exact for p in [1/2, 1)
  R x = detail::erf_inv_guess(p, tail ? q * (R(2) - q) : (R(1) - p) * (R(1) + p));

  // Bracket kept so a wild Newton step falls back to bisection.
  R lo = 0;
  R hi = R(10);
  for (int it = 0; it < 50; ++it) {
    const R residual = tail ? q - erfc(x) : erf(x) - p;
    if (residual == 0) return x;
    if (residual < 0) {
      lo = std::max(lo, x);
    } else {
      hi = std::min(hi, x);
    }
    const R slope = detail::two_over_sqrt_pi<R>() * std::exp(-x * x);
    R next = x - residual / slope;
    if (!(next > lo && next < hi)) next = (lo + hi) / R(2);
    const R step = next - x;
    x = next;
    if (std::abs(step) <= detail::newton_tolerance(x)) break;
  }
  return x;
}

/// Inverse complementary error function on (0, 2).
template <std::floating_point R>
R erfc_inv(R q) {
  if (!(q > R(0) && q < R(2))) throw DomainError("erfc_inv: argument must lie in (0, 2)");
  if (q >= R(0.5)) return erf_inv(R(1) - q);

  R x = detail::erf_inv_guess(R(1) - q, q * (R(2) - q));
  R lo = 0;
  R hi = R(110);
  for (int it = 0; it < 100; ++it) {
    const R value = erfc(x);
    // erfc is decreasing: value > q means x is still too small.
    const R residual = value - q;
    if (residual == 0) return x;
    if (residual > 0) {
      lo = std::max(lo, x);
    } else {
      hi = std::min(hi, x);
    }
    const R slope = -detail::two_over_sqrt_pi<R>() * std::exp(-x * x);
    R next = slope != 0 ? x - residual / slope : (lo + hi) / R(2);
    if (!(next > lo && next < hi)) next = (lo + hi) / R(2);
    const R step = next - x;
    x = next;
    if (std::abs(step) <= detail::newton_tolerance(x)) break;
  }
  return x;
}

}  // namespace stefan3::specfun
