#pragma once

// Problem data for the three-phase melting problem on x >= 0:
// phase 3 (hottest) next to the fixed face, phase 2 in the middle, phase 1
// the initial material at temperature D. Phase changes happen at B (3|2) and
// C (2|1) with B > C > D.

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "stefan3/errors.hpp"

namespace stefan3 {

/// Thermal properties of the three phases (SI units).
struct MaterialProperties {
  double k1, k2, k3;  // conductivity  W/(m K)
  double c1, c2, c3;  // specific heat J/(kg K)
  double rho;         // common density kg/m^3
  double l1, l2;      // latent heats J/kg: phase 1 -> 2 and phase 2 -> 3
};

/// Phase-change temperatures B (3|2), C (2|1) and the initial temperature D, in kelvin.
struct PhaseTemps {
  double B, C, D;
};

/// Convective face: k3 u_x(0,t) = h0/sqrt(t) (u(0,t) - a_inf).
struct Robin {
  double h0;     // kg/(K s^(5/2))
  double a_inf;  // bulk temperature K
};

/// Prescribed face temperature u(0,t) = a.
struct Dirichlet {
  double a;
};

/// Prescribed face flux k3 u_x(0,t) = -q0/sqrt(t).
struct Neumann {
  double q0;  // kg/s^(5/2)
};

using BoundarySpec = std::variant<Robin, Dirichlet, Neumann>;

enum class BoundaryKind { robin, dirichlet, neumann };

inline BoundaryKind kind_of(const BoundarySpec& bc) {
  return static_cast<BoundaryKind>(bc.index());
}

inline std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::robin: return "robin";
    case BoundaryKind::dirichlet: return "dirichlet";
    case BoundaryKind::neumann: return "neumann";
  }
  return "unknown";
}

struct Diffusivities {
  double alpha1, alpha2, alpha3;
};

struct StefanNumbers {
  double ste1, ste2;
};

/// alpha_i = k_i / (rho c_i).
inline Diffusivities diffusivities(const MaterialProperties& p) {
  return {p.k1 / (p.rho * p.c1), p.k2 / (p.rho * p.c2), p.k3 / (p.rho * p.c3)};
}

/// Ste1 = c1 (C - D) / l1, Ste2 = c2 (B - C) / l2.
inline StefanNumbers stefan_numbers(const MaterialProperties& p, const PhaseTemps& t) {
  return {p.c1 * (t.C - t.D) / p.l1, p.c2 * (t.B - t.C) / p.l2};
}

namespace codes {
inline constexpr std::string_view kNonFinite = "NON_FINITE";
inline constexpr std::string_view kNonPositiveProperty = "NON_POSITIVE_PROPERTY";
inline constexpr std::string_view kTempsNotStrict = "TEMPS_NOT_STRICT";
inline constexpr std::string_view kDiffusivityOrder = "DIFFUSIVITY_ORDER";
inline constexpr std::string_view kDiffusivityEqual = "DIFFUSIVITY_EQUAL";
inline constexpr std::string_view kRobinH0 = "ROBIN_H0_NOT_POSITIVE";
inline constexpr std::string_view kRobinAInf = "ROBIN_A_INF_NOT_ABOVE_B";
inline constexpr std::string_view kDirichletA = "DIRICHLET_A_NOT_ABOVE_B";
inline constexpr std::string_view kNeumannQ0 = "NEUMANN_Q0_NOT_POSITIVE";
inline constexpr std::string_view kMissingAInf = "MISSING_A_INF";
inline constexpr std::string_view kAInfNotAboveA = "A_INF_NOT_ABOVE_A";
}  // namespace codes

// alpha2 and alpha3 are compared with this relative slack so that data with
// identical diffusivities written in different units are not rejected.
inline constexpr double kDiffusivityRelTol = 1e-12;

namespace detail {

inline void check_positive(std::vector<Violation>& out, std::string_view name, double v) {
  if (!std::isfinite(v)) {
    out.push_back({std::string(codes::kNonFinite), std::string(name) + " is not finite"});
  } else if (!(v > 0)) {
    out.push_back({std::string(codes::kNonPositiveProperty), std::string(name) + " must be > 0"});
  }
}

}  // namespace detail

/// Every violated invariant of the material, temperature and boundary data.
/// Never throws; the result is empty iff the data is admissible.
inline std::vector<Violation> validate(const MaterialProperties& p, const PhaseTemps& t) {
  std::vector<Violation> out;
  detail::check_positive(out, "k1", p.k1);
  detail::check_positive(out, "k2", p.k2);
  detail::check_positive(out, "k3", p.k3);
  detail::check_positive(out, "c1", p.c1);
  detail::check_positive(out, "c2", p.c2);
  detail::check_positive(out, "c3", p.c3);
  detail::check_positive(out, "rho", p.rho);
  detail::check_positive(out, "l1", p.l1);
  detail::check_positive(out, "l2", p.l2);

  const bool temps_finite = std::isfinite(t.B) && std::isfinite(t.C) && std::isfinite(t.D);
  if (!temps_finite) {
    out.push_back({std::string(codes::kNonFinite), "B, C and D must be finite"});
  } else if (!(t.B > t.C && t.C > t.D)) {
    out.push_back({std::string(codes::kTempsNotStrict), "phase temperatures must satisfy B > C > D"});
  }

  if (out.empty()) {
    const auto a = diffusivities(p);
    if (a.alpha2 < a.alpha3 * (1.0 - kDiffusivityRelTol)) {
      out.push_back({std::string(codes::kDiffusivityOrder), "diffusivities must satisfy alpha2 >= alpha3"});
    }
  }
  return out;
}

inline std::vector<Violation> validate(const MaterialProperties& p, const PhaseTemps& t,
                                       const BoundarySpec& bc) {
  auto out = validate(p, t);
  const bool b_finite = std::isfinite(t.B);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Robin>) {
          if (!std::isfinite(b.h0) || !std::isfinite(b.a_inf)) {
            out.push_back({std::string(codes::kNonFinite), "h0 and A_inf must be finite"});
            return;
          }
          if (!(b.h0 > 0)) out.push_back({std::string(codes::kRobinH0), "h0 must be > 0"});
          if (b_finite && !(b.a_inf > t.B)) {
            out.push_back({std::string(codes::kRobinAInf), "A_inf must be > B"});
          }
        } else if constexpr (std::is_same_v<T, Dirichlet>) {
          if (!std::isfinite(b.a)) {
            out.push_back({std::string(codes::kNonFinite), "A must be finite"});
          } else if (b_finite && !(b.a > t.B)) {
            out.push_back({std::string(codes::kDirichletA), "A must be > B"});
          }
        } else {
          if (!std::isfinite(b.q0)) {
            out.push_back({std::string(codes::kNonFinite), "q0 must be finite"});
          } else if (!(b.q0 > 0)) {
            out.push_back({std::string(codes::kNeumannQ0), "q0 must be > 0"});
          }
        }
      },
      bc);
  return out;
}

/// Non-fatal diagnostics, currently only alpha2 == alpha3 (the admissible edge
/// of the diffusivity ordering).
inline std::vector<Violation> warnings(const MaterialProperties& p) {
  std::vector<Violation> out;
  const auto a = diffusivities(p);
  if (std::abs(a.alpha2 - a.alpha3) <= kDiffusivityRelTol * a.alpha3) {
    out.push_back({std::string(codes::kDiffusivityEqual),
                   "alpha2 == alpha3: uniqueness relies on the non-strict ordering"});
  }
  return out;
}

/// A full problem instance: material, temperatures and the face condition.
struct ProblemData {
  MaterialProperties props;
  PhaseTemps temps;
  BoundarySpec boundary;
};

}  // namespace stefan3
