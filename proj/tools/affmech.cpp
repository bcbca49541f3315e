// affmech: property suites, scenario simulation and small demos.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affmech/affine_calculus.hpp"
#include "affmech/canonical_iso.hpp"
#include "affmech/dynamics.hpp"
#include "affmech/io.hpp"
#include "affmech/special_affine.hpp"
#include "affmech/verify.hpp"

using namespace affmech;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw UsageError("--tol value '" + value + "' is not a number");
    out[item.substr(0, eq)] = tol;
  }
  return out;
}

Eigen::VectorXd parse_vector(const std::string& text, const std::string& flag) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      vals.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || tok.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError(flag + ": '" + tok + "' is not a number");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
}

Json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int cmd_verify(const std::string& suite, std::size_t cases, std::uint64_t seed, const std::vector<std::string>& tols,
               const std::string& report_path) {
  VerifyConfig config;
  config.suite = suite;
  config.cases = cases;
  config.seed = seed;
  config.tolerances = parse_tolerances(tols);
  VerifyReport report;
  try {
    report = run_verify(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string text = report_to_json(report).dump(2) + "\n";
  if (report_path.empty()) std::cout << text;
  else write_text(report_path, text);

  for (const InvariantReport& r : report.invariants) {
    std::fprintf(stderr, "%-6s %-28s %zu/%zu worst %.3e tol %.1e\n", r.failures ? "FAIL" : "ok", r.name.c_str(),
                 r.cases - r.failures, r.cases, r.worst_residual, r.tolerance);
    if (r.first_failure) {
      std::fprintf(stderr, "       case %zu: %s\n", r.first_failure->index, r.first_failure->message.c_str());
    }
  }
  std::fprintf(stderr, "%zu failures in %.2fs\n", report.failures, report.wall_time);
  return report.failures == 0 ? kOk : kFailed;
}

int cmd_simulate(const std::string& scenario_path, std::size_t steps, double dt, const std::string& out_path) {
  if (!(dt > 0.0)) throw UsageError("--dt must be positive");
  Scenario s;
  try {
    s = load_scenario(scenario_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  Trajectory traj;
  try {
    traj = integrate(s, steps, dt);
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "error: integration aborted at %s\n", e.what());
    return kFailed;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    write_trajectory_csv(out, traj);
  }
  const Sample& last = traj.samples.back();
  const Json summary = {{"steps", steps},
                        {"dt", dt},
                        {"tau", last.tau},
                        {"x", vec_json(last.x)},
                        {"v", vec_json(last.v)},
                        {"p", vec_json(last.p)},
                        {"max_shell_drift", traj.max_shell_drift},
                        {"max_el_residual", traj.max_el_residual}};
  std::cout << summary.dump(2) << "\n";
  return kOk;
}

int cmd_legendre(const std::string& path) {
  Json j;
  try {
    j = load_json(path);
    if (!j.is_object()) throw FormatError("", "expected an object");
    if (j.contains("F")) {
      const SpecialMorphism Phi = morphism_from_json(j);
      const SpecialMorphism D = dual_morphism(Phi);
      const SpecialMorphism DD = dual_morphism(D);
      double err = std::abs(DD.t - Phi.t);
      if (Phi.F.size()) err = std::max(err, (DD.F - Phi.F).cwiseAbs().maxCoeff());
      if (Phi.f.size()) err = std::max(err, (DD.f - Phi.f).cwiseAbs().maxCoeff());
      if (Phi.g.size()) err = std::max(err, (DD.g - Phi.g).cwiseAbs().maxCoeff());
      std::cout << Json{{"dual", to_json(D)}, {"involution_error", err}}.dump(2) << "\n";
      return kOk;
    }
    if (j.contains("chi")) {
      const ContactPointADual d = dual_contact_point_from_json(j);
      std::cout << Json{{"inverse", to_json(legendre_psi_inverse(d))}}.dump(2) << "\n";
      return kOk;
    }
    const ContactPointA c = contact_point_from_json(j);
    const ContactPointADual d = legendre_psi(c);
    const ContactPointA back = legendre_psi_inverse(d);
    double err = std::abs(back.r - c.r);
    for (const auto& [a, b] : {std::pair{&back.x, &c.x}, {&back.y, &c.y}, {&back.p, &c.p}, {&back.pi, &c.pi}}) {
      if (a->size()) err = std::max(err, (*a - *b).cwiseAbs().maxCoeff());
    }
    std::cout << Json{{"image", to_json(d)}, {"graph_residual", graph_equations_residual(c, d)}, {"roundtrip_error", err}}
                     .dump(2)
              << "\n";
    return kOk;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
}

int cmd_lift(const std::string& sigma_text, const std::string& at, const std::string& vel) {
  const Eigen::VectorXd x = parse_vector(at, "--at");
  const Eigen::VectorXd v = parse_vector(vel, "--vel");
  if (x.size() != v.size()) throw UsageError("--at and --vel have different lengths");
  try {
    const ScalarField sigma = ScalarField::parse(sigma_text);
    if (sigma.arity() > x.size()) {
      throw UsageError("sigma uses x" + std::to_string(sigma.arity() - 1) + " but --at has " + std::to_string(x.size()) +
                       " coordinates");
    }
    const TangentLifts lifts = section_tangent_lifts(sigma, x, v);
    std::cout << Json{{"sigma", sigma.to_string()}, {"x", vec_json(x)},          {"v", vec_json(v)},
                      {"value", sigma.value(x)},    {"tilde", lifts.tilde},      {"bar", lifts.bar}}
                     .dump(2)
              << "\n";
    return kOk;
  } catch (const ExpressionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Special affine geometry and charged-particle mechanics"};
  app.require_subcommand(1);

  std::string suite = "all", report_path;
  std::size_t cases = 100;
  std::uint64_t seed = 42;
  std::vector<std::string> tols;
  auto* verify = app.add_subcommand("verify", "Run the seeded property suites");
  verify->add_option("--suite", suite, "special_affine, calculus, canonical, dynamics or all")->capture_default_str();
  verify->add_option("--cases", cases, "Cases per invariant")->capture_default_str();
  verify->add_option("--seed", seed, "Master seed")->capture_default_str();
  verify->add_option("--tol", tols, "Tolerance override name=value (repeatable)");
  verify->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  std::string scenario_path, out_path;
  std::size_t steps = 1000;
  double dt = 1e-3;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario file");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  simulate->add_option("--steps", steps, "Number of RK4 steps")->capture_default_str();
  simulate->add_option("--dt", dt, "Proper-time step")->capture_default_str();
  simulate->add_option("--out", out_path, "Trajectory CSV");

  std::string input_path;
  auto* legendre = app.add_subcommand("legendre", "Legendre map of a contact point, or the dual of a morphism");
  legendre->add_option("input", input_path, "JSON file")->required();

  std::string sigma_text, at, vel;
  auto* lift = app.add_subcommand("lift", "Tilde and bar tangent lifts of a section");
  lift->add_option("--sigma", sigma_text, "Section, e.g. \"x0^2 + sin(x1)\"")->required();
  lift->add_option("--at", at, "Base point, comma separated")->required();
  lift->add_option("--vel", vel, "Velocity, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(suite, cases, seed, tols, report_path);
    if (*simulate) return cmd_simulate(scenario_path, steps, dt, out_path);
    if (*legendre) return cmd_legendre(input_path);
    if (*lift) return cmd_lift(sigma_text, at, vel);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailed;
  }
  return kUsage;
}
