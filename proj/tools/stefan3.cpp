// stefan3: command-line front end.
//
//   stefan3 solve      --config cfg.json
//   stefan3 thresholds --config cfg.json
//   stefan3 equiv      --config cfg.json --to robin|dirichlet|neumann [--a-inf K]
//   stefan3 map        --config cfg.json [--xmax m] [--tmax s] [--nx N] [--nt N] --out field.csv
//   stefan3 verify     --config cfg.json [--rel-step r]
//
// Exit codes: 0 ok, 1 validation, 2 regime, 3 root finding, 4 hypothesis,
// 5 I/O, 6 verification. STEFAN3_LOG=quiet|info|debug sets stderr verbosity.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stefan3/stefan3.hpp"

namespace {

using namespace stefan3;

enum Exit { kOk = 0, kValidation = 1, kRegime = 2, kRoot = 3, kHypothesis = 4, kIo = 5, kVerify = 6 };

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
  const char* env = std::getenv("STEFAN3_LOG");
  if (!env) return LogLevel::info;
  const std::string v = env;
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log(LogLevel level, const std::string& msg) {
  if (level <= log_level() && level != LogLevel::quiet) std::cerr << msg << '\n';
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct Options {
  std::string config;
  std::string to;
  std::optional<double> a_inf;
  double xmax = 0, tmax = 1;
  std::size_t nx = 200, nt = 200;
  std::string out;
  double rel_step = 1e-4;
  double perturb = 0;
};

ThreePhaseSolution solve_config(const Config& cfg) {
  const ProblemContext ctx = cfg.context();
  log(LogLevel::debug, "z0 = " + std::to_string(ctx.z0()));
  const Regime regime = classify_regime(ctx);
  if (regime != Regime::three_phase) {
    Json j{{"regime", std::string(to_string(regime))}, {"thresholds", to_json(thresholds(ctx))}};
    print(j);
  }
  auto sol = solve(ctx);
  log(LogLevel::debug, "coef1 = " + std::to_string(sol.coef1) + ", coef2 = " + std::to_string(sol.coef2));
  return sol;
}

int cmd_solve(const Options& o) {
  print(to_json(solve_config(load_config(o.config))));
  return kOk;
}

int cmd_thresholds(const Options& o) {
  const Config cfg = load_config(o.config);
  const ProblemContext ctx = cfg.material_context();
  Thresholds th = thresholds(ctx);
  if (cfg.a_inf) {
    if (!(*cfg.a_inf > cfg.temps.B)) throw ValidationError(std::string(codes::kRobinAInf), "A_inf must be > B");
    th.h1 = h1_threshold(ctx, *cfg.a_inf);
    th.h2 = h2_threshold(ctx, *cfg.a_inf);
  }
  print(to_json(th));
  return kOk;
}

int cmd_equiv(const Options& o) {
  const Config cfg = load_config(o.config);
  const BoundaryKind target = parse_kind(o.to);
  std::optional<double> a_inf = o.a_inf ? o.a_inf : cfg.a_inf;
  if (target == BoundaryKind::robin && cfg.kind != BoundaryKind::robin && !a_inf) {
    throw ValidationError(std::string(codes::kMissingAInf), "--to robin needs --a-inf (or boundary.A_inf)");
  }
  ThreePhaseSolution src = solve_config(cfg);
  if (o.perturb != 0) src = perturb_fronts(src, 0.0, o.perturb);
  const EquivalenceReport report = equivalence_report(src, target, a_inf);
  log(LogLevel::info, std::string(datum_name(target)) + " = " + std::to_string(report.mapping.datum) +
                          ", max coefficient delta = " + std::to_string(report.max_delta()));
  print(to_json(report));
  return kOk;
}

int cmd_map(const Options& o) {
  if (o.out.empty()) throw ValidationError(std::string(codes::kConfigInvalid), "map needs --out");
  const ThreePhaseSolution sol = solve_config(load_config(o.config));
  const double xmax = o.xmax > 0 ? o.xmax : 2.0 * free_boundaries(sol, o.tmax).x1;
  const FieldGrid grid = field_map(sol, xmax, o.tmax, o.nx, o.nt);
  const std::string fronts = write_field_map(grid, o.out);
  log(LogLevel::info, "wrote " + o.out + " and " + fronts);
  return kOk;
}

int cmd_verify(const Options& o) {
  ThreePhaseSolution sol = solve_config(load_config(o.config));
  if (o.perturb != 0) sol = perturb_fronts(sol, o.perturb, o.perturb);
  VerifyOptions vo;
  vo.rel_step = o.rel_step;
  const ResidualReport report = verify(sol, vo);
  print(to_json(report));
  if (log_level() != LogLevel::quiet) {
    char line[128];
    auto row = [&](const char* name, double value, double tol) {
      std::snprintf(line, sizeof line, "%-10s %12.3e %12.3e  %s", name, value, tol, value <= tol ? "pass" : "FAIL");
      std::cerr << line << '\n';
    };
    row("heat", report.heat_max(), tolerance::kHeat);
    row("interface", std::max(report.interface_inner, report.interface_outer), tolerance::kInterface);
    row("stefan", std::max(report.stefan_inner, report.stefan_outer), tolerance::kStefan);
    row("boundary", report.boundary, report.boundary_tolerance());
    row("far_field", report.far_field, tolerance::kFarField);
  }
  return report.passed() ? kOk : kVerify;
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << "error: " << code << ": " << message << '\n';
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) report_error(v.code, v.message);
    return kValidation;
  } catch (const MissingBoundaryDatum& e) {
    report_error("MISSING_DATUM", e.what());
    return kValidation;
  } catch (const RegimeError& e) {
    report_error("REGIME", e.what());
    return kRegime;
  } catch (const RootFailure& e) {
    report_error("ROOT", e.what());
    return kRoot;
  } catch (const HypothesisError& e) {
    std::cerr << "error: HYPOTHESIS: " << e.inequality() << " fails (lhs " << Json(e.lhs()).dump() << ", rhs "
              << Json(e.rhs()).dump() << ")\n";
    return kHypothesis;
  } catch (const IoError& e) {
    report_error("IO", e.what());
    return kIo;
  } catch (const StencilCrossesFront& e) {
    report_error("STENCIL", e.what());
    return kVerify;
  } catch (const Error& e) {
    report_error("ERROR", e.what());
    return kRoot;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit three-phase Stefan problem solutions"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub) { sub->add_option("--config", o.config, "JSON configuration")->required(); };

  auto* solve_cmd = app.add_subcommand("solve", "solve the configured problem");
  add_config(solve_cmd);

  auto* thresholds_cmd = app.add_subcommand("thresholds", "print z0 and the regime thresholds");
  add_config(thresholds_cmd);

  auto* equiv_cmd = app.add_subcommand("equiv", "map the configured problem to an equivalent one");
  add_config(equiv_cmd);
  equiv_cmd->add_option("--to", o.to, "target face condition")
      ->required()
      ->check(CLI::IsMember({"robin", "dirichlet", "neumann"}));
  equiv_cmd->add_option("--a-inf", o.a_inf, "bulk temperature for a convective target");
  equiv_cmd->add_option("--perturb", o.perturb)->group("");

  auto* map_cmd = app.add_subcommand("map", "write the temperature field and fronts as CSV");
  add_config(map_cmd);
  map_cmd->add_option("--xmax", o.xmax, "largest depth (default: twice the outer front at tmax)");
  map_cmd->add_option("--tmax", o.tmax, "largest time")->capture_default_str();
  map_cmd->add_option("--nx", o.nx, "depth samples")->capture_default_str();
  map_cmd->add_option("--nt", o.nt, "time samples")->capture_default_str();
  map_cmd->add_option("--out", o.out, "field CSV path; fronts go to <name>.fronts.csv")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check the solution against the governing equations");
  add_config(verify_cmd);
  verify_cmd->add_option("--rel-step", o.rel_step, "relative finite-difference step")->capture_default_str();
  verify_cmd->add_option("--perturb", o.perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  if (*solve_cmd) return guarded([&] { return cmd_solve(o); });
  if (*thresholds_cmd) return guarded([&] { return cmd_thresholds(o); });
  if (*equiv_cmd) return guarded([&] { return cmd_equiv(o); });
  if (*map_cmd) return guarded([&] { return cmd_map(o); });
  return guarded([&] { return cmd_verify(o); });
}
