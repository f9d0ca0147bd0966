#pragma once

// Shared fixtures: the sample parameter sets and a seeded generator of random
// admissible three-phase problems.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "stefan3/stefan3.hpp"

namespace stefan3::testing {

inline MaterialProperties sample_props() { return {0.2, 0.2, 0.2, 2, 2, 2, 770, 160, 150}; }
inline PhaseTemps sample_temps() { return {328, 324, 320}; }

inline ProblemContext figure1() { return ProblemContext::make(sample_props(), sample_temps(), Robin{100, 334}); }
inline ProblemContext figure2() { return ProblemContext::make(sample_props(), sample_temps(), Dirichlet{331}); }
inline ProblemContext figure3() { return ProblemContext::make(sample_props(), sample_temps(), Neumann{300}); }

/// One random material with a three-phase datum of each kind and a bulk
/// temperature a_inf that lies above every face temperature.
struct RandomCase {
  MaterialProperties props;
  PhaseTemps temps;
  Robin robin;
  Dirichlet dirichlet;
  Neumann neumann;
  double a_inf;  // for temperature/flux sources mapped to convective targets
};

/// Draws B - C, C - D in [1, 10] K, k in [0.05, 1], c in [0.5, 5],
/// rho in [100, 2000], l in [50, 500]; h0, q0 log-uniform and A - B uniform.
/// Draws failing validation or the three-phase regime are discarded.
inline std::vector<RandomCase> random_cases(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto logu = [&](double lo, double hi) { return std::exp(uni(std::log(lo), std::log(hi))); };

  std::vector<RandomCase> out;
  while (out.size() < n) {
    RandomCase rc{};
    rc.props = {uni(0.05, 1), uni(0.05, 1), uni(0.05, 1), uni(0.5, 5), uni(0.5, 5),
                uni(0.5, 5),  uni(100, 2000), uni(50, 500), uni(50, 500)};
    const double D = uni(250, 300);
    const double C = D + uni(1, 10);
    const double B = C + uni(1, 10);
    rc.temps = {B, C, D};
    if (!validate(rc.props, rc.temps).empty()) continue;

    const double a_inf = B + uni(2, 40);
    rc.robin = {logu(1, 2000), a_inf};
    rc.dirichlet = {B + uni(0.5, 30)};
    rc.neumann = {logu(10, 20000)};

    const auto ctx = ProblemContext::make(rc.props, rc.temps);
    if (classify_regime(ctx, rc.robin) != Regime::three_phase) continue;
    if (classify_regime(ctx, rc.neumann) != Regime::three_phase) continue;

    // Bulk temperature above the temperature face and the flux solution's face.
    const auto flux = solve(ctx.with_boundary(rc.neumann));
    rc.a_inf = std::max(rc.dirichlet.a, flux.surface_temperature) + uni(1, 20);
    out.push_back(rc);
  }
  return out;
}

inline constexpr std::uint64_t kSeed = 20240601;

}  // namespace stefan3::testing
