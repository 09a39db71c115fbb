#include <cmath>
#include <cstdio>
#include <sstream>

#include "expcomm/funcalc.hpp"
#include "expcomm/suites.hpp"

namespace expcomm {
namespace {

Json counts_json(const VerdictCounts& c) {
  return Json{{"confirmed", c.confirmed}, {"vacuous", c.vacuous}, {"violated", c.violated},
              {"total", c.total()}};
}

Json suite_json(const SuiteReport& s) {
  Json failures = Json::array();
  for (const auto& f : s.property_failures) {
    failures.push_back(
        {{"property", f.property}, {"trial", f.trial}, {"value", f.value}, {"threshold", f.threshold}});
  }
  Json records = Json::array();
  for (const auto& r : s.counterexamples) records.push_back(r);
  return Json{{"suite", s.suite},
              {"generator", s.base},
              {"trials", s.trials},
              {"counts", counts_json(s.counts)},
              {"statistics", s.statistics},
              {"property_failures", std::move(failures)},
              {"counterexamples_found", s.counterexamples_found},
              {"counterexamples", std::move(records)}};
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    if (j.empty()) out << path << " = {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << " = []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << j.dump() << "\n";
  }
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string format_matrix(const Json& m) {
  std::ostringstream out;
  const std::size_t n = m.at("dim").get<std::size_t>();
  for (std::size_t r = 0; r < n; ++r) {
    out << "    [";
    for (std::size_t c = 0; c < n; ++c) {
      const double re = m["re"][r][c].get<double>();
      const double im = m["im"][r][c].get<double>();
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%9.5f%+9.5fi", c ? "  " : "", re, im);
      out << buf;
    }
    out << " ]\n";
  }
  return out.str();
}

Json demo_2pi(const ToleranceConfig& tol) {
  const CounterexampleRecord rec = counterexample_2pi(1, tol);
  return Json{{"case", "2pi"},
              {"record", rec},
              {"illustrates",
               "e^M = I commutes with everything, yet M and N do not commute: the window "
               "(0, pi) on the imaginary parts of the spectra cannot be dropped"}};
}

Json demo_noncramped(const ToleranceConfig& tol) {
  const CounterexampleRecord rec = noncramped_berberian_example(tol);
  return Json{{"case", "noncramped-berberian"},
              {"record", rec},
              {"hermitian_defect_expected", 2.0 * std::sqrt(2.0)},
              {"illustrates",
               "U X U* = X* holds with X skew, so X is not Hermitian: without crampedness the "
               "solutions of U X U* = X* need not be Hermitian"}};
}

Json demo_block_exponential(const ToleranceConfig& tol) {
  const ComplexMatrix a{{std::log(2.0)}};
  const ComplexMatrix closed = exp_tilde_closed_form(a, tol);
  const ComplexMatrix tilde = build_tilde(a, a, a, tol).first;
  const ComplexMatrix expected{{1.25, 0.75}, {0.75, 1.25}};

  Rng rng(0);
  const ComplexMatrix h = random_hermitian_sample(rng, 3, kDefaultHermitianWindow, tol).matrix;
  const ComplexMatrix h_closed = exp_tilde_closed_form(h, tol);
  const ComplexMatrix h_taylor = taylor_exp(build_tilde(h, h, h, tol).first);

  auto rel = [](const ComplexMatrix& x, const ComplexMatrix& y) {
    return frobenius_distance(x, y) / std::max(frobenius_norm(y), kEpsFloor);
  };
  return Json{
      {"case", "block-exponential"},
      {"A", a},
      {"closed_form", closed},
      {"expected", expected},
      {"residuals",
       {{"closed_form_vs_expected", rel(closed, expected)},
        {"closed_form_vs_taylor", rel(closed, taylor_exp(tilde))},
        {"random_hermitian_dim3_seed0_closed_form_vs_taylor", rel(h_closed, h_taylor)}}},
      {"illustrates",
       "exp [[0, A], [A, 0]] = [[cosh A, sinh A], [sinh A, cosh A]]; for A = ln 2 this is "
       "[[5/4, 3/4], [3/4, 5/4]]"}};
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"2pi", "noncramped-berberian", "block-exponential"};
  return names;
}

Json run_demo(const std::string& name, const ToleranceConfig& tol) {
  tol.validate();
  if (name == "2pi") return demo_2pi(tol);
  if (name == "noncramped-berberian") return demo_noncramped(tol);
  if (name == "block-exponential") return demo_block_exponential(tol);
  throw PreconditionError("unknown demo case: " + name);
}

std::string render_demo_text(const Json& demo) {
  std::ostringstream out;
  out << "demo " << demo.at("case").get<std::string>() << "\n";
  if (demo.contains("record")) {
    const Json& rec = demo["record"];
    out << rec.at("description").get<std::string>() << "\n";
    for (const auto& [name, m] : rec.at("matrices").items()) out << "  " << name << " =\n" << format_matrix(m);
    for (const auto& [name, v] : rec.at("hypothesis_residuals").items())
      out << "  hypothesis residual " << name << " = " << format_number(v.get<double>()) << "\n";
    out << "  conclusion residual = " << format_number(rec.at("conclusion_residual").get<double>()) << "\n";
    for (const auto& [name, v] : rec.at("diagnostics").items())
      out << "  " << name << " = " << format_number(v.get<double>()) << "\n";
    out << "  violated hypothesis: " << rec.at("violated_hypothesis").get<std::string>() << "\n";
  } else {
    for (const char* key : {"A", "closed_form", "expected"}) out << "  " << key << " =\n" << format_matrix(demo.at(key));
    for (const auto& [name, v] : demo.at("residuals").items())
      out << "  " << name << " = " << format_number(v.get<double>()) << "\n";
  }
  out << "  " << demo.at("illustrates").get<std::string>() << "\n";
  return out.str();
}

Json to_json(const RunReport& report) {
  Json config{{"tolerances", report.tol},
              {"generator_algorithm", Rng::kAlgorithm},
              {"seed_rule", "trial t of each suite uses seed generator.seed + t"}};
  if (!report.suites.empty()) {
    config["dim"] = report.suites.front().base.dim;
    config["trials"] = report.suites.front().trials;
    config["seed"] = report.suites.front().base.seed;
  }
  for (const auto& [k, v] : report.extra.items()) config[k] = v;

  Json suites = Json::array();
  for (const auto& s : report.suites) suites.push_back(suite_json(s));
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;
  j["command"] = report.command;
  j["suite"] = report.suite;
  j["config"] = std::move(config);
  j["counts"] = counts_json(report.counts());
  j["property_failures"] = report.property_failure_count();
  j["passed"] = report.passed();
  j["suites"] = std::move(suites);
  j["wall_time"] = report.wall_time;
  return j;
}

Json without_wall_time(Json report) {
  report.erase("wall_time");
  return report;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace expcomm
