#include "affmech/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <set>
#include <stdexcept>

namespace affmech {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct CaseResult {
  double residual = 0.0;
  bool failed = false;
  std::string message;
};

CaseResult run_case(const Invariant& inv, std::uint64_t seed, std::size_t index, double tolerance) {
  CaseResult out;
  try {
    auto rng = case_rng(seed, inv.name, index);
    out.residual = inv.kernel(rng);
    if (!std::isfinite(out.residual)) {
      out.failed = true;
      out.message = "non-finite residual";
    } else if (out.residual > tolerance) {
      out.failed = true;
      char buf[96];
      std::snprintf(buf, sizeof buf, "residual %.3e exceeds %.3e", out.residual, tolerance);
      out.message = buf;
    }
  } catch (const std::exception& e) {
    out.failed = true;
    out.residual = std::numeric_limits<double>::quiet_NaN();
    out.message = std::string("exception: ") + e.what();
  }
  return out;
}

InvariantReport reduce(const Invariant& inv, double tolerance, const std::vector<CaseResult>& results) {
  InvariantReport rep;
  rep.name = inv.name;
  rep.tolerance = tolerance;
  rep.cases = results.size();
  bool any_finite = results.empty();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CaseResult& r = results[i];
    if (std::isfinite(r.residual)) {
      any_finite = true;
      rep.worst_residual = std::max(rep.worst_residual, r.residual);
    }
    if (r.failed) {
      ++rep.failures;
      if (!rep.first_failure) rep.first_failure = CaseFailure{i, r.message};
    }
  }
  if (!any_finite) rep.worst_residual = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() { return {"special_affine", "calculus", "canonical", "dynamics"}; }

std::mt19937_64 case_rng(std::uint64_t seed, const std::string& name, std::size_t index) {
  const std::uint64_t h = fnv1a(name);
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32),
                    std::uint32_t(index), std::uint32_t(std::uint64_t(index) >> 32)};
  return std::mt19937_64(seq);
}

InvariantReport run_invariant_serial(const Invariant& inv, std::size_t cases, std::uint64_t seed, double tolerance) {
  std::vector<CaseResult> results(cases);
  for (std::size_t i = 0; i < cases; ++i) results[i] = run_case(inv, seed, i, tolerance);
  return reduce(inv, tolerance, results);
}

InvariantReport run_invariant_parallel(const Invariant& inv, std::size_t cases, std::uint64_t seed, double tolerance) {
  std::vector<CaseResult> results(cases);
  const long long n = static_cast<long long>(cases);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) results[std::size_t(i)] = run_case(inv, seed, std::size_t(i), tolerance);
  return reduce(inv, tolerance, results);
}

VerifyReport run_verify(const VerifyConfig& config, bool parallel) {
  const auto suites = suite_names();
  if (config.suite != "all" && std::find(suites.begin(), suites.end(), config.suite) == suites.end()) {
    throw std::invalid_argument("unknown suite '" + config.suite + "'");
  }
  std::set<std::string> known;
  for (const Invariant& inv : invariant_registry()) known.insert(inv.name);
  for (const auto& [name, tol] : config.tolerances) {
    if (!known.count(name)) throw std::invalid_argument("unknown invariant '" + name + "'");
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance for '" + name + "' must be nonnegative");
  }

  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = config.suite;
  report.seed = config.seed;
  report.cases = config.cases;
  for (const Invariant& inv : invariant_registry()) {
    if (config.suite != "all" && inv.suite != config.suite) continue;
    const auto it = config.tolerances.find(inv.name);
    const double tol = it == config.tolerances.end() ? inv.tolerance : it->second;
    InvariantReport r = parallel ? run_invariant_parallel(inv, config.cases, config.seed, tol)
                                 : run_invariant_serial(inv, config.cases, config.seed, tol);
    report.failures += r.failures;
    report.invariants.push_back(std::move(r));
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json inv = nlohmann::json::array();
  for (const InvariantReport& r : report.invariants) {
    nlohmann::json j = {{"name", r.name},         {"tolerance", r.tolerance}, {"cases", r.cases},
                        {"failures", r.failures}, {"worst_residual", nullptr}, {"first_failure", nullptr}};
    if (std::isfinite(r.worst_residual)) j["worst_residual"] = r.worst_residual;
    if (r.first_failure) j["first_failure"] = {{"index", r.first_failure->index}, {"message", r.first_failure->message}};
    inv.push_back(std::move(j));
  }
  return {{"suite", report.suite},       {"seed", report.seed},         {"cases", report.cases},
          {"failures", report.failures}, {"wall_time", report.wall_time}, {"invariants", std::move(inv)}};
}

VerifyReport report_from_json(const nlohmann::json& j) {
  VerifyReport report;
  report.suite = j.at("suite").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.cases = j.at("cases").get<std::size_t>();
  report.failures = j.at("failures").get<std::size_t>();
  report.wall_time = j.value("wall_time", 0.0);
  for (const auto& e : j.at("invariants")) {
    InvariantReport r;
    r.name = e.at("name").get<std::string>();
    r.tolerance = e.at("tolerance").get<double>();
    r.cases = e.at("cases").get<std::size_t>();
    r.failures = e.at("failures").get<std::size_t>();
    r.worst_residual = e.at("worst_residual").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                        : e.at("worst_residual").get<double>();
    if (!e.at("first_failure").is_null()) {
      r.first_failure = CaseFailure{e["first_failure"].at("index").get<std::size_t>(),
                                    e["first_failure"].at("message").get<std::string>()};
    }
    report.invariants.push_back(std::move(r));
  }
  return report;
}

}  // namespace affmech
