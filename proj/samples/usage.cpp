// Solves the convective sample problem, prints the fronts and a few
// temperatures, and maps it to the equivalent temperature problem.

#include <cstdio>

#include "stefan3/stefan3.hpp"

int main() {
  using namespace stefan3;
  const MaterialProperties props{0.2, 0.2, 0.2, 2, 2, 2, 770, 160, 150};
  const PhaseTemps temps{328, 324, 320};
  const auto ctx = ProblemContext::make(props, temps, Robin{100, 334});

  const auto th = thresholds(ctx);
  std::printf("z0 = %.6f  h1 = %.4f  h2 = %.4f\n", th.z0, *th.h1, *th.h2);

  const auto sol = solve_robin(ctx);
  std::printf("xi1 = %.12f  xi2 = %.12f\n", sol.coef1, sol.coef2);

  const double t = 100.0;
  const auto fr = free_boundaries(sol, t);
  std::printf("t = %g s: x2 = %.6e m, x1 = %.6e m\n", t, fr.x2, fr.x1);
  for (double x : {0.0, 0.5 * fr.x2, fr.x2, fr.x1, 2.0 * fr.x1}) {
    std::printf("  u(%.4e) = %.6f K\n", x, evaluate_temperature(sol, x, t));
  }

  const auto m = map_robin_to_dirichlet(sol);
  std::printf("equivalent face temperature A = %.10f K\n", m.datum);
  std::printf("verification %s\n", verify(sol).passed() ? "passed" : "failed");
}
