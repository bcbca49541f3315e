#include "affmech/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace affmech {
namespace {

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(child(where, key), "missing field");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where, "expected a number");
  return j.get<double>();
}

Eigen::VectorXd vec(const Json& j, const std::string& where, long expected = -1) {
  if (!j.is_array()) throw FormatError(where, "expected an array of numbers");
  if (expected >= 0 && long(j.size()) != expected) {
    throw FormatError(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  }
  Eigen::VectorXd v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[Eigen::Index(i)] = number(j[i], child(where, std::to_string(i)));
  return v;
}

Json to_array(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ScalarField expression(const Json& j, const std::string& where) {
  if (j.is_number()) return ScalarField::constant(j.get<double>());
  if (!j.is_string()) throw FormatError(where, "expected an expression string");
  try {
    return ScalarField::parse(j.get<std::string>());
  } catch (const ExpressionError& e) {
    throw FormatError(where, e.what());
  }
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Json to_json(const SpaceDesc& s) { return {{"n", s.n}, {"frame", s.frame}, {"dual_level", s.dual_level}}; }

Json to_json(const SpecialAffinePoint& a) { return {{"space", to_json(a.space)}, {"v", to_array(a.v)}, {"r", a.r}}; }

Json to_json(const DualPoint& phi) { return {{"space", to_json(phi.space)}, {"f", to_array(phi.f)}, {"t", phi.t}}; }

Json to_json(const SpecialMorphism& Phi) {
  Json F = Json::array();
  for (Eigen::Index i = 0; i < Phi.F.rows(); ++i) F.push_back(to_array(Phi.F.row(i).transpose()));
  return {{"domain", to_json(Phi.domain)}, {"codomain", to_json(Phi.codomain)}, {"F", F},
          {"f", to_array(Phi.f)}, {"g", to_array(Phi.g)}, {"t", Phi.t}};
}

Json to_json(const ContactPointA& c) {
  return {{"x", to_array(c.x)}, {"y", to_array(c.y)}, {"p", to_array(c.p)}, {"pi", to_array(c.pi)}, {"r", c.r}};
}

Json to_json(const ContactPointADual& d) {
  return {{"x", to_array(d.x)}, {"f", to_array(d.f)}, {"q", to_array(d.q)}, {"chi", to_array(d.chi)}, {"t", d.t}};
}

Json to_json(const Scenario& s) {
  Json out;
  out["dim"] = s.dim;
  if (s.metric.is_minkowski()) {
    out["metric"] = "minkowski";
  } else {
    Json rows = Json::array();
    for (const auto& row : s.metric.components) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(c.to_string());
      rows.push_back(r);
    }
    out["metric"] = {{"components", rows}};
  }
  Json pot = Json::array();
  for (const auto& a : s.potential) pot.push_back(a.to_string());
  out["potential"] = pot;
  out["mass"] = s.params.mass;
  out["charge"] = s.params.charge;
  out["gauge"] = s.gauge.sigma.to_string();
  out["x0"] = to_array(s.x0);
  out["v0"] = to_array(s.v0);
  return out;
}

SpaceDesc space_from_json(const Json& j, const std::string& where) {
  SpaceDesc s;
  const double n = number(field(j, "n", where), child(where, "n"));
  if (n < 0 || n != double(long(n))) throw FormatError(child(where, "n"), "expected a nonnegative integer");
  s.n = int(n);
  if (j.contains("frame")) {
    if (!j["frame"].is_string()) throw FormatError(child(where, "frame"), "expected a string");
    s.frame = j["frame"].get<std::string>();
  }
  if (j.contains("dual_level")) {
    if (!j["dual_level"].is_boolean()) throw FormatError(child(where, "dual_level"), "expected a boolean");
    s.dual_level = j["dual_level"].get<bool>();
  }
  return s;
}

SpecialAffinePoint point_from_json(const Json& j, const std::string& where) {
  const SpaceDesc s = space_from_json(field(j, "space", where), child(where, "space"));
  return {s, vec(field(j, "v", where), child(where, "v"), s.n), number(field(j, "r", where), child(where, "r"))};
}

DualPoint dual_point_from_json(const Json& j, const std::string& where) {
  const SpaceDesc s = space_from_json(field(j, "space", where), child(where, "space"));
  return {s, vec(field(j, "f", where), child(where, "f"), s.n), number(field(j, "t", where), child(where, "t"))};
}

SpecialMorphism morphism_from_json(const Json& j, const std::string& where) {
  SpecialMorphism Phi;
  Phi.domain = space_from_json(field(j, "domain", where), child(where, "domain"));
  Phi.codomain = space_from_json(field(j, "codomain", where), child(where, "codomain"));
  const Json& F = field(j, "F", where);
  const std::string fw = child(where, "F");
  if (!F.is_array() || long(F.size()) != Phi.codomain.n) {
    throw FormatError(fw, "expected " + std::to_string(Phi.codomain.n) + " rows");
  }
  Phi.F.resize(Phi.codomain.n, Phi.domain.n);
  for (int i = 0; i < Phi.codomain.n; ++i) {
    Phi.F.row(i) = vec(F[std::size_t(i)], child(fw, std::to_string(i)), Phi.domain.n).transpose();
  }
  Phi.f = vec(field(j, "f", where), child(where, "f"), Phi.codomain.n);
  Phi.g = vec(field(j, "g", where), child(where, "g"), Phi.domain.n);
  Phi.t = number(field(j, "t", where), child(where, "t"));
  return Phi;
}

ContactPointA contact_point_from_json(const Json& j, const std::string& where) {
  ContactPointA c;
  c.x = vec(field(j, "x", where), child(where, "x"));
  c.y = vec(field(j, "y", where), child(where, "y"));
  c.p = vec(field(j, "p", where), child(where, "p"), c.x.size());
  c.pi = vec(field(j, "pi", where), child(where, "pi"), c.y.size());
  c.r = number(field(j, "r", where), child(where, "r"));
  return c;
}

ContactPointADual dual_contact_point_from_json(const Json& j, const std::string& where) {
  ContactPointADual d;
  d.x = vec(field(j, "x", where), child(where, "x"));
  d.f = vec(field(j, "f", where), child(where, "f"));
  d.q = vec(field(j, "q", where), child(where, "q"), d.x.size());
  d.chi = vec(field(j, "chi", where), child(where, "chi"), d.f.size());
  d.t = number(field(j, "t", where), child(where, "t"));
  return d;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  const double dim = number(field(j, "dim", ""), "/dim");
  if (dim < 1 || dim != double(long(dim))) throw FormatError("/dim", "expected a positive integer");
  s.dim = int(dim);
  const long m = s.dim;

  const Json& metric = field(j, "metric", "");
  if (metric.is_string()) {
    if (metric.get<std::string>() != "minkowski") throw FormatError("/metric", "unknown metric name");
    s.metric = Metric::minkowski(s.dim);
  } else {
    const Json& rows = field(metric, "components", "/metric");
    if (!rows.is_array() || long(rows.size()) != m) {
      throw FormatError("/metric/components", "expected " + std::to_string(m) + " rows");
    }
    s.metric.m = s.dim;
    for (long i = 0; i < m; ++i) {
      const std::string rw = "/metric/components/" + std::to_string(i);
      const Json& row = rows[std::size_t(i)];
      if (!row.is_array() || long(row.size()) != m) throw FormatError(rw, "expected " + std::to_string(m) + " entries");
      std::vector<ScalarField> r;
      for (long k = 0; k < m; ++k) r.push_back(expression(row[std::size_t(k)], child(rw, std::to_string(k))));
      s.metric.components.push_back(std::move(r));
    }
  }

  const Json& pot = field(j, "potential", "");
  if (!pot.is_array() || long(pot.size()) != m) throw FormatError("/potential", "expected " + std::to_string(m) + " entries");
  for (long i = 0; i < m; ++i) s.potential.push_back(expression(pot[std::size_t(i)], "/potential/" + std::to_string(i)));

  s.params.mass = number(field(j, "mass", ""), "/mass");
  if (!(s.params.mass > 0.0)) throw FormatError("/mass", "mass must be positive");
  s.params.charge = number(field(j, "charge", ""), "/charge");
  if (j.contains("gauge")) s.gauge.sigma = expression(j["gauge"], "/gauge");
  s.x0 = vec(field(j, "x0", ""), "/x0", m);
  s.v0 = vec(field(j, "v0", ""), "/v0", m);

  auto check_arity = [&](const ScalarField& f, const std::string& where) {
    if (f.arity() > s.dim) throw FormatError(where, "uses a coordinate beyond x" + std::to_string(s.dim - 1));
  };
  for (long i = 0; i < m; ++i) check_arity(s.potential[std::size_t(i)], "/potential/" + std::to_string(i));
  for (long i = 0; i < long(s.metric.components.size()); ++i)
    for (long k = 0; k < m; ++k)
      check_arity(s.metric.components[std::size_t(i)][std::size_t(k)],
                  "/metric/components/" + std::to_string(i) + "/" + std::to_string(k));
  check_arity(s.gauge.sigma, "/gauge");
  try {
    s.validate();
  } catch (const Error& e) {
    throw FormatError("", e.what());
  }
  return s;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("", path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(load_json(path)); }

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const auto m = traj.samples.empty() ? 0 : traj.samples.front().x.size();
  out << "tau";
  for (const char* block : {"x", "v", "p"})
    for (Eigen::Index i = 0; i < m; ++i) out << ',' << block << i;
  out << ",shell,el_residual\n";
  for (const Sample& s : traj.samples) {
    out << fmt17(s.tau);
    for (const Eigen::VectorXd* block : {&s.x, &s.v, &s.p})
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << fmt17((*block)[i]);
    out << ',' << fmt17(s.shell) << ',' << fmt17(s.el_residual) << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw FormatError("", "no column named " + name);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("", "empty CSV");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    for (std::string cell; std::getline(rs, cell, ',');) row.push_back(std::stod(cell));
    if (row.size() != t.header.size()) throw FormatError("", "row " + std::to_string(t.rows.size() + 1) + " has the wrong width");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace affmech
