// expcomm: verification suites, boundary search, demos and single-instance
// checks for commutativity of matrix exponentials.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "expcomm/json_io.hpp"
#include "expcomm/suites.hpp"

namespace {

using expcomm::Json;

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t checked_count(long long value, const char* flag, long long lo, long long hi) {
  if (value < lo || value > hi) {
    throw UsageError(std::string(flag) + " must be in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(value);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw UsageError("cannot open output file: " + output);
  f << text;
}

std::string render(const Json& j, const std::string& format) {
  return format == "text" ? expcomm::render_text(j) : j.dump(2) + "\n";
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open input file: " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

expcomm::ComplexMatrix matrix_arg(const Json& input, const char* name) {
  if (!input.contains(name)) throw UsageError(std::string("input is missing matrix \"") + name + "\"");
  return input.at(name).get<expcomm::ComplexMatrix>();
}

expcomm::ImplicationResult run_check(const std::string& theorem, const Json& input,
                                     const expcomm::ToleranceConfig& tol) {
  using namespace expcomm;
  if (theorem == "wermuth") return check_wermuth(matrix_arg(input, "A"), matrix_arg(input, "B"), tol);
  if (theorem == "berberian") return check_berberian(matrix_arg(input, "U"), tol);
  if (theorem == "fuglede") return check_fuglede(matrix_arg(input, "N"), matrix_arg(input, "X"), tol);
  if (theorem == "proposition")
    return check_proposition_SN(matrix_arg(input, "S"), matrix_arg(input, "N"), tol);
  if (theorem == "main") return check_main_MN(matrix_arg(input, "M"), matrix_arg(input, "N"), tol);
  if (theorem == "three-operator")
    return check_three_operator(matrix_arg(input, "A"), matrix_arg(input, "B"), matrix_arg(input, "C"), tol);
  if (theorem == "powers-commute")
    return check_powers_commute(matrix_arg(input, "A"), matrix_arg(input, "B"), tol);
  if (theorem == "power-of-unitary-exp") return check_power_of_unitary_exp(matrix_arg(input, "A"), tol);
  throw UsageError("unknown theorem: " + theorem);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of commutativity theorems for matrix exponentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", expcomm::kVersion);

  double tol_flag = expcomm::ToleranceConfig{}.tol_flag;
  double tol_conclude = expcomm::ToleranceConfig{}.tol_conclude;
  std::string format = "json";
  std::string output;
  long long dim = 4;
  long long trials = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol-flag", tol_flag, "residual at or below which a hypothesis equation holds");
    sub->add_option("--tol-conclude", tol_conclude, "residual above which a conclusion fails");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", output, "write the report here instead of standard output");
  };

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name or all");
  verify->add_option("--dim", dim, "matrix dimension, 1 to 16");
  verify->add_option("--trials", trials, "trials per suite");
  verify->add_option("--seed", seed, "base seed; trial t uses seed + t");
  verify->add_option("--jobs", jobs, "worker threads");
  add_common(verify);

  std::string region = "all";
  double perturbation = 0.0;
  CLI::App* search = app.add_subcommand("search", "sample pairs near the hypothesis boundaries");
  search->add_option("--region", region, "2pi, straddle, inside, hermitian or all");
  CLI::Option* perturbation_opt = search->add_option("--perturbation", perturbation, "fixed perturbation size for the 2pi family");
  search->add_option("--dim", dim, "matrix dimension, 1 to 16");
  search->add_option("--trials", trials, "number of sampled pairs");
  search->add_option("--seed", seed, "base seed; trial t uses seed + t");
  search->add_option("--jobs", jobs, "worker threads");
  add_common(search);

  std::string demo_case;
  CLI::App* demo = app.add_subcommand("demo", "print a worked counterexample or identity");
  demo->add_option("case", demo_case, "2pi, noncramped-berberian or block-exponential")->required();
  add_common(demo);

  std::string theorem;
  std::string input_path;
  CLI::App* check = app.add_subcommand("check", "check one instance read from a JSON file");
  check->add_option("--theorem", theorem,
                    "wermuth, berberian, fuglede, proposition, main, three-operator, "
                    "powers-commute or power-of-unitary-exp")
      ->required();
  check->add_option("--input", input_path, "JSON object mapping matrix names to matrices")->required();
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    expcomm::ToleranceConfig tol;
    tol.tol_flag = tol_flag;
    tol.tol_conclude = tol_conclude;
    try {
      tol.validate();
    } catch (const expcomm::PreconditionError& e) {
      throw UsageError(e.what());
    }

    if (*verify) {
      expcomm::VerifyOptions opt;
      opt.suite = suite;
      opt.dim = checked_count(dim, "--dim", 1, 16);
      opt.trials = checked_count(trials, "--trials", 1, 100000000);
      opt.seed = seed;
      opt.tol = tol;
      opt.jobs = jobs;
      const auto& names = expcomm::suite_names();
      if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError("unknown suite: " + suite);
      }
      const expcomm::RunReport report = expcomm::run_verify(opt);
      emit(render(expcomm::to_json(report), format), output);
      return expcomm::exit_code(report);
    }
    if (*search) {
      expcomm::SearchRunOptions opt;
      const auto parsed = expcomm::parse_search_region(region);
      if (!parsed) throw UsageError("unknown region: " + region);
      opt.search.region = *parsed;
      if (perturbation_opt->count() > 0) opt.search.perturbation = perturbation;
      opt.search.jobs = jobs;
      opt.dim = checked_count(dim, "--dim", 1, 16);
      opt.trials = checked_count(trials, "--trials", 1, 100000000);
      opt.seed = seed;
      opt.tol = tol;
      const expcomm::RunReport report = expcomm::run_search(opt);
      emit(render(expcomm::to_json(report), format), output);
      return expcomm::exit_code(report);
    }
    if (*demo) {
      const auto& names = expcomm::demo_names();
      if (std::find(names.begin(), names.end(), demo_case) == names.end()) {
        throw UsageError("unknown demo case: " + demo_case);
      }
      const Json result = expcomm::run_demo(demo_case, tol);
      emit(format == "text" ? expcomm::render_demo_text(result) : result.dump(2) + "\n", output);
      return 0;
    }
    const Json input = read_json_file(input_path);
    expcomm::ImplicationResult result;
    try {
      result = run_check(theorem, input, tol);
    } catch (const expcomm::PreconditionError& e) {
      throw UsageError(e.what());
    } catch (const Json::exception& e) {
      throw UsageError(std::string("malformed matrix: ") + e.what());
    }
    emit(render(Json(result), format), output);
    return result.verdict == expcomm::Verdict::Violated ? 1 : 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
