// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <sys/wait.h>

#include "affmech/expression.hpp"
#include "affmech/io.hpp"
#include "affmech/verify.hpp"

using namespace affmech;
using Eigen::VectorXd;

namespace {

struct Check {
  std::string what;
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;

  void add(const std::string& what, bool ok, const std::string& detail) { checks.push_back({what, ok, detail}); }
  bool ok() const {
    for (const Check& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const Invariant& find(const std::string& name) {
  for (const Invariant& inv : invariant_registry())
    if (inv.name == name) return inv;
  throw std::runtime_error("no invariant " + name);
}

void suite_check(Criterion& c, const std::string& name, std::size_t cases, double tol) {
  const InvariantReport r = run_invariant_parallel(find(name), cases, 42, tol);
  std::string detail = std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases) + " worst " +
                       fmt("%.2e tol %.0e", r.worst_residual, tol);
  if (r.first_failure) detail += " (case " + std::to_string(r.first_failure->index) + ": " + r.first_failure->message + ")";
  c.add(name, r.failures == 0, detail);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Turn {
  double radius = 0, period = 0;
  bool ok = false;
};

Turn measure_turn(const std::vector<double>& t, const std::vector<double>& xs, const std::vector<double>& ys) {
  Turn out;
  const CircleFit fit = fit_circle(xs, ys);
  const auto period = first_turn_time(t, xs, ys, fit.cx, fit.cy);
  out.radius = fit.radius;
  if (period) {
    out.period = *period;
    out.ok = true;
  }
  return out;
}

Turn measure_turn(const Trajectory& traj) {
  std::vector<double> t, xs, ys;
  for (const Sample& s : traj.samples) {
    t.push_back(s.x[0]);
    xs.push_back(s.x[1]);
    ys.push_back(s.x[2]);
  }
  return measure_turn(t, xs, ys);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& stdout_path) {
  const std::string cmd = std::string("\"") + AFFMECH_CLI + "\" " + args + " > \"" + stdout_path + "\" 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

CsvTable load_csv(const std::string& path) {
  std::ifstream in(path);
  return read_csv(in);
}

// ---------------------------------------------------------------------------

Criterion duality() {
  Criterion c{1, "duality involution", {}};
  suite_check(c, "dual_involution", 500, 1e-12);
  return c;
}

Criterion self_dual() {
  Criterion c{2, "self-dual lift", {}};
  suite_check(c, "self_dual_lift", 200, 1e-12);
  suite_check(c, "self_dual_uniqueness", 200, 0.0);
  return c;
}

Criterion legendre() {
  Criterion c{3, "Legendre isomorphism", {}};
  suite_check(c, "legendre_roundtrip", 200, 1e-12);
  suite_check(c, "liouville", 200, 1e-12);
  suite_check(c, "symplectic_graph", 200, 1e-12);
  suite_check(c, "projection_to_dual", 200, 1e-12);
  return c;
}

Criterion cartan() {
  Criterion c{4, "Cartan-calculus coherence", {}};
  suite_check(c, "omega_gauge_invariance", 200, 1e-9);
  suite_check(c, "dtheta_omega", 200, 1e-6);
  suite_check(c, "tangent_lifts", 200, 1e-12);
  const TangentLifts hand = section_tangent_lifts(ScalarField::parse("x0^2"), VectorXd::Constant(1, 1.0),
                                                  VectorXd::Constant(1, 3.0));
  c.add("lift hand value", hand.tilde == 6.0 && hand.bar == 7.0, fmt("tilde %g bar %g", hand.tilde, hand.bar));
  suite_check(c, "tangent_lift_two_form", 200, 1e-6);
  suite_check(c, "alpha_pullbacks", 200, 1e-9);
  return c;
}

Criterion flips() {
  Criterion c{5, "reduced flips", {}};
  suite_check(c, "kappa_homomorphisms", 1000, 0.0);
  suite_check(c, "kappa_diagrams", 1000, 0.0);
  return c;
}

Criterion dynamics() {
  Criterion c{6, "charged-particle dynamics", {}};
  suite_check(c, "free_particle", 100, 1e-12);

  // (b) cyclotron at h = 1e-4 over a little more than one turn.
  const double B = 2, e = 1, m = 1, u = 0.75;
  const double gamma = std::sqrt(1 + u * u);
  const double R = gamma * m * (u / gamma) / (std::abs(e) * B);
  const double T = 2 * std::numbers::pi * gamma * m / (std::abs(e) * B);
  const double h = 1e-4;
  const std::size_t steps = std::size_t(std::ceil(1.05 * T / gamma / h));
  const Trajectory cyc = integrate(cyclotron_scenario(B, e, m, u), steps, h, {1e-6, 1e-12, false});
  const Turn turn = measure_turn(cyc);
  c.add("cyclotron radius", turn.ok && rel(turn.radius, R) <= 1e-6, fmt("rel err %.2e (R = %.6f)", rel(turn.radius, R), R));
  c.add("cyclotron period", turn.ok && rel(turn.period, T) <= 1e-6, fmt("rel err %.2e (T = %.6f)", rel(turn.period, T), T));

  // (c) RK4 order: errors against successively halved steps.
  {
    const Scenario s = cyclotron_scenario(2.0, 1.0, 1.0, 0.75, 0.3);
    const double tau = 2.0;
    std::vector<VectorXd> ends;
    for (const double hk : {0.1, 0.05, 0.025}) {
      const Trajectory tr = integrate(s, std::size_t(std::lround(tau / hk)), hk, {1e-2, 1e-12, false});
      ends.push_back(tr.samples.back().x);
    }
    const double ratio = (ends[0] - ends[1]).norm() / (ends[1] - ends[2]).norm();
    c.add("step-halving ratio", ratio >= 12 && ratio <= 20, fmt("%.3f", ratio));
  }

  // (d) mass shell over 1e4 steps.
  {
    double worst = 0;
    for (const auto& [Bk, ek, mk, uk, upar] : std::vector<std::tuple<double, double, double, double, double>>{
             {2, 1, 1, 0.75, 0}, {1, -1.5, 0.7, 1.2, 0.4}, {3, 0.5, 2, 0.3, -0.8}}) {
      const Trajectory tr = integrate(cyclotron_scenario(Bk, ek, mk, uk, upar), 10000, 1e-3, {1e-6, 1e-12, false});
      worst = std::max(worst, tr.max_shell_drift);
    }
    c.add("mass-shell drift", worst <= 1e-8, fmt("%.2e over 1e4 steps", worst));
  }

  suite_check(c, "gauge_invariance", 100, 1e-8);
  suite_check(c, "shell_conservation", 100, 1e-8);
  suite_check(c, "charge_action", 100, 0.0);
  suite_check(c, "ke_membership", 100, 0.0);
  return c;
}

Criterion morse() {
  Criterion c{7, "Morse-family reduction", {}};
  suite_check(c, "morse_legendre", 100, 1e-10);
  const MorseResult toy = morse_reduce({ScalarField::parse("x0*x1 - x1^2/2"), 1, 1}, VectorXd::Constant(1, 0.7),
                                       {VectorXd::Constant(1, -2.0), VectorXd::Constant(1, 5.0)});
  const bool toy_ok = toy.points.size() == 1 && std::abs(toy.points[0].point.p[0] - 0.7) <= 1e-12;
  c.add("toy family p = x", toy_ok, toy_ok ? fmt("p = %.15g at x = %g", toy.points[0].point.p[0], 0.7) : "no point");
  suite_check(c, "morse_reduce", 100, 1e-10);
  return c;
}

Criterion cli() {
  Criterion c{8, "CLI determinism and end-to-end simulate", {}};
  const std::string work = AFFMECH_WORK_DIR;
  std::filesystem::create_directories(work);
  const std::string scen = AFFMECH_SCENARIO_DIR;

  const int rc1 = run_cli("verify --seed 42 --suite all --report \"" + work + "/r1.json\"", work + "/v1.out");
  const int rc2 = run_cli("verify --seed 42 --suite all --report \"" + work + "/r2.json\"", work + "/v2.out");
  Json r1 = Json::parse(slurp(work + "/r1.json"), nullptr, false), r2 = Json::parse(slurp(work + "/r2.json"), nullptr, false);
  bool same = !r1.is_discarded() && !r2.is_discarded();
  std::size_t failures = 0;
  if (same) {
    failures = r1.value("failures", std::size_t(1));
    r1.erase("wall_time");
    r2.erase("wall_time");
    same = r1.dump() == r2.dump();
  }
  c.add("verify reports identical", same && rc1 == 0 && rc2 == 0,
        "exit " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " + std::to_string(failures) + " failures");

  // 6(a) from the packaged free-particle scenario.
  {
    const double h = 0.1;
    const int rc = run_cli("simulate --scenario \"" + scen + "/free_particle.json\" --steps 100 --dt 0.1 --out \"" + work +
                               "/free.csv\"",
                           work + "/free.out");
    const CsvTable t = load_csv(work + "/free.csv");
    const Scenario s = load_scenario(scen + "/free_particle.json");
    double worst = rc == 0 && t.rows.size() == 101 ? 0.0 : INFINITY;
    for (std::size_t k = 1; k < t.rows.size() && std::isfinite(worst); ++k) {
      for (int i = 0; i < s.dim; ++i) {
        const double expect = s.x0[i] + t.rows[k][t.column("tau")] * s.v0[i];
        worst = std::max(worst, std::abs(t.rows[k][t.column("x" + std::to_string(i))] - expect) / double(k));
      }
      worst = std::max(worst, std::abs(t.rows[k][t.column("tau")] - h * double(k)));
    }
    c.add("free particle CSV", worst <= 1e-12, fmt("%.2e per step", worst));
  }

  // 6(b) from the packaged cyclotron scenario: B = 2, e = m = 1, u_perp = 0.75.
  {
    const int rc = run_cli("simulate --scenario \"" + scen + "/cyclotron.json\" --steps 33000 --dt 1e-4 --out \"" + work +
                               "/cyclotron.csv\"",
                           work + "/cyclotron.out");
    const CsvTable t = load_csv(work + "/cyclotron.csv");
    std::vector<double> ts, xs, ys;
    for (const auto& row : t.rows) {
      ts.push_back(row[t.column("x0")]);
      xs.push_back(row[t.column("x1")]);
      ys.push_back(row[t.column("x2")]);
    }
    const Turn turn = measure_turn(ts, xs, ys);
    const double R = 0.375, T = 1.25 * std::numbers::pi;
    const bool ok = rc == 0 && turn.ok && rel(turn.radius, R) <= 1e-6 && rel(turn.period, T) <= 1e-6;
    c.add("cyclotron CSV", ok, fmt("radius rel %.2e, period rel %.2e", rel(turn.radius, R), rel(turn.period, T)));

    const int rcg = run_cli("simulate --scenario \"" + scen + "/cyclotron_gauge.json\" --steps 33000 --dt 1e-4 --out \"" +
                                work + "/cyclotron_gauge.csv\"",
                            work + "/cyclotron_gauge.out");
    const CsvTable g = load_csv(work + "/cyclotron_gauge.csv");
    double worst = rcg == 0 && g.rows.size() == t.rows.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < t.rows.size() && std::isfinite(worst); ++k) {
      for (int i = 0; i < 4; ++i) {
        for (const char* col : {"x", "v"}) {
          const std::size_t j = t.column(col + std::to_string(i));
          worst = std::max(worst, std::abs(t.rows[k][j] - g.rows[k][j]));
        }
      }
    }
    c.add("gauge-shifted CSV x,v", worst <= 1e-8, fmt("max diff %.2e", worst));

    // p moves by -e grad(lambda), e = 1.
    const ScalarField lambda = ScalarField::parse("0.1*exp(0.7*x1)*sin(x2) + 0.05*x0*x1");
    double pworst = std::isfinite(worst) ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < t.rows.size() && std::isfinite(pworst); ++k) {
      VectorXd x(4);
      for (int i = 0; i < 4; ++i) x[i] = t.rows[k][t.column("x" + std::to_string(i))];
      const VectorXd grad = lambda.gradient(x).gradient;
      for (int i = 0; i < 4; ++i) {
        const std::size_t j = t.column("p" + std::to_string(i));
        pworst = std::max(pworst, std::abs(g.rows[k][j] - t.rows[k][j] + grad[i]));
      }
    }
    c.add("gauge-shifted CSV p", pworst <= 1e-8, fmt("max |dp + grad lambda| %.2e", pworst));
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> criteria = {duality, self_dual, legendre, cartan,
                                                            flips,   dynamics,  morse,    cli};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c{int(i + 1), "", {}};
    try {
      c = criteria[i]();
    } catch (const std::exception& e) {
      c.add("exception", false, e.what());
    }
    std::printf("%s  %d  %s\n", c.ok() ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const Check& k : c.checks) std::printf("        %-4s %-24s %s\n", k.ok ? "ok" : "FAIL", k.what.c_str(), k.detail.c_str());
    if (!c.ok()) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
