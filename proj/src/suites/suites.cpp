#include "expcomm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "expcomm/funcalc.hpp"
#include "expcomm/parallel.hpp"

namespace expcomm {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

struct TrialResult {
  ImplicationResult result;
  std::vector<PropertyFailure> failures;
  std::optional<CounterexampleRecord> record;
  std::map<std::string, double> stats;
};

struct TrialContext {
  std::size_t dim;
  std::size_t trial;
  std::uint64_t seed;
  const ToleranceConfig& tol;
  Rng rng;
  TrialResult out;

  void expect_le(const std::string& property, double value, double threshold) {
    auto& s = out.stats[property];
    s = std::max(s, value);
    if (!(value <= threshold)) out.failures.push_back({property, trial, value, threshold});
  }
  void expect(const std::string& property, bool ok) { expect_le(property, ok ? 0.0 : 1.0, 0.0); }
  void expect_confirmed(const std::string& property) {
    expect(property, out.result.verdict == Verdict::Confirmed);
  }

  // Keeps an instance whose operator equations hold while the conclusion
  // fails because some spectral condition is not met.
  void maybe_record(std::string description, std::map<std::string, ComplexMatrix> matrices) {
    const ImplicationResult& r = out.result;
    const bool equations_hold =
        std::all_of(r.hypothesis_residuals.begin(), r.hypothesis_residuals.end(),
                    [&](const auto& kv) { return kv.second <= tol.tol_flag; });
    if (!equations_hold || r.conclusion_satisfied) return;
    std::string violated;
    for (const auto& [name, ok] : r.hypothesis_conditions) {
      if (ok) continue;
      if (!violated.empty()) violated += "; ";
      violated += name + " fails";
    }
    if (violated.empty()) return;  // a VIOLATED verdict, counted separately
    CounterexampleRecord rec;
    rec.description = std::move(description);
    rec.seed = seed;
    rec.matrices = std::move(matrices);
    rec.violated_hypothesis = violated;
    rec.hypothesis_residuals = r.hypothesis_residuals;
    rec.conclusion_residual = r.conclusion_residual;
    rec.diagnostics = r.diagnostics;
    out.record = std::move(rec);
  }
};

double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_distance(a, b) / std::max(frobenius_norm(b), kEpsFloor);
}

ComplexMatrix hermitian_sample(TrialContext& ctx, Interval window = kDefaultHermitianWindow) {
  return random_hermitian_sample(ctx.rng, ctx.dim, window, ctx.tol).matrix;
}

ComplexMatrix normal_sample(TrialContext& ctx, Interval re, Interval im) {
  return random_normal_sample(ctx.rng, ctx.dim, re, im, ctx.tol).matrix;
}

// Matrix V diag(levels[random]) V*: spectrum with repeated values.
ComplexMatrix degenerate_normal(TrialContext& ctx, bool hermitian) {
  const ComplexMatrix v = random_unitary(ctx.rng, ctx.dim);
  const std::size_t distinct = std::max<std::size_t>(1, ctx.dim / 2);
  std::vector<Complex> levels(distinct);
  for (auto& x : levels) {
    const double re = ctx.rng.uniform(-1.0, 1.0);
    x = hermitian ? Complex(re) : Complex(re, ctx.rng.uniform(-1.0, 1.0));
  }
  std::vector<Complex> spectrum(ctx.dim);
  for (auto& x : spectrum) x = levels[ctx.rng.below(distinct)];
  ComplexMatrix m = SpectralDecomposition{v, spectrum}.reconstruct();
  return hermitian ? hermitian_part(m) : m;
}

void check_consistency(TrialContext& ctx) {
  ctx.expect("result_consistent", ctx.out.result.consistent(ctx.tol));
}

void wermuth_trial(TrialContext& ctx) {
  ComplexMatrix a;
  ComplexMatrix b;
  const std::size_t family = ctx.trial % 4;
  switch (family) {
    case 0:
      std::tie(a, b) = random_commuting_pair(ctx.rng, ctx.dim, PairKind::Hermitian,
                                             {kDefaultHermitianWindow}, ctx.tol);
      break;
    case 1:
      a = hermitian_sample(ctx);
      b = hermitian_sample(ctx);
      break;
    case 2:
      a = hermitian_sample(ctx);
      b = a;
      break;
    default:
      a = degenerate_normal(ctx, true);
      b = hermitian_part(commutant_element(ctx.rng, a, ctx.tol));
      break;
  }
  ctx.out.result = check_wermuth(a, b, ctx.tol);
  const auto& d = ctx.out.result.diagnostics;
  if (d.at("forward_hypothesis") <= ctx.tol.tol_flag) {
    ctx.expect_le("forward_exp_commutator", d.at("forward_conclusion"), ctx.tol.tol_conclude);
  }
  if (family != 1) ctx.expect_confirmed("commuting_construction_confirmed");
  check_consistency(ctx);
}

void berberian_trial(TrialContext& ctx) {
  const std::size_t n = ctx.dim;
  std::size_t family = ctx.trial % 3;
  if (n == 1 && family == 2) family = 0;

  ComplexMatrix u;
  if (family == 0) {
    const double center = ctx.rng.uniform(0.0, 2.0 * kPi);
    const double width = ctx.rng.uniform(0.1 * kPi, 0.9 * kPi);
    u = random_cramped_unitary(ctx.rng, n, {center, width}, ctx.tol);
  } else if (family == 1) {
    u = std::polar(1.0, ctx.rng.uniform(0.0, 2.0 * kPi)) * ComplexMatrix::identity(n);
  } else {
    const ComplexMatrix v = random_unitary(ctx.rng, n);
    std::vector<Complex> spectrum(n);
    const double theta = ctx.rng.uniform(0.0, 2.0 * kPi);
    spectrum[0] = std::polar(1.0, theta);
    spectrum[1] = -spectrum[0];
    for (std::size_t j = 2; j < n; ++j) spectrum[j] = std::polar(1.0, ctx.rng.uniform(0.0, 2.0 * kPi));
    u = SpectralDecomposition{v, spectrum}.reconstruct();
  }

  ctx.out.result = check_berberian(u, ctx.tol);
  const ImplicationResult& r = ctx.out.result;
  const double null_dim = r.diagnostics.at("nullspace_dim");
  ctx.expect_le("nullspace_dim_at_most_n2", null_dim, static_cast<double>(n * n));
  if (family == 0) {
    ctx.expect_le("cramped_hermitian_defect", r.conclusion_residual, 1e-8);
    ctx.expect_le("cramped_phase_normalized_defect", r.diagnostics.at("max_phase_normalized_defect"), 1e-8);
    ctx.expect_confirmed("cramped_confirmed");
  } else if (family == 1) {
    ctx.expect_le("scalar_nullspace_dim_matches_hermitian_space",
                  std::abs(null_dim - static_cast<double>(n * n)), 0.0);
    ctx.expect_confirmed("scalar_confirmed");
  } else {
    ctx.expect("antipodal_not_cramped", !r.hypothesis_conditions.at("cramped"));
    const std::vector<ComplexMatrix> basis = berberian_solution_space(u, ctx.tol);
    const ComplexMatrix* worst = nullptr;
    double worst_defect = -1.0;
    for (const ComplexMatrix& x : basis) {
      const double defect = hermitian_defect(x);
      if (defect > worst_defect) {
        worst_defect = defect;
        worst = &x;
      }
    }
    if (worst != nullptr && worst_defect > ctx.tol.tol_conclude) {
      CounterexampleRecord rec;
      rec.description = "non-cramped unitary with an antipodal eigenvalue pair";
      rec.seed = ctx.seed;
      rec.matrices = {{"U", u}, {"X", *worst}};
      rec.violated_hypothesis = "cramped fails";
      rec.hypothesis_residuals["UXUstar_minus_Xstar"] =
          frobenius_distance(u * (*worst) * adjoint(u), adjoint(*worst)) / frobenius_norm(*worst);
      rec.conclusion_residual = worst_defect;
      rec.diagnostics = r.diagnostics;
      if (rec.valid(ctx.tol)) ctx.out.record = std::move(rec);
    }
  }
  check_consistency(ctx);
}

void fuglede_trial(TrialContext& ctx) {
  ComplexMatrix n;
  ComplexMatrix x;
  switch (ctx.trial % 3) {
    case 0:
      n = normal_sample(ctx, kDefaultReWindow, kDefaultReWindow);
      x = commutant_element(ctx.rng, n, ctx.tol);
      break;
    case 1:
      n = degenerate_normal(ctx, false);
      x = commutant_element(ctx.rng, n, ctx.tol);
      break;
    default:
      n = normal_sample(ctx, kDefaultReWindow, kDefaultReWindow);
      x = ComplexMatrix(ctx.dim);
      for (std::size_t i = 0; i < ctx.dim; ++i)
        for (std::size_t j = 0; j < ctx.dim; ++j) x(i, j) = ctx.rng.complex_normal();
      break;
  }
  ctx.out.result = check_fuglede(n, x, ctx.tol);
  const ImplicationResult& r = ctx.out.result;
  const double hyp = r.hypothesis_residuals.at("NX_commutator");
  ctx.expect_le("fuglede_bound_excess", r.conclusion_residual - (10.0 * hyp + 1e-10), 0.0);
  if (ctx.trial % 3 != 2) ctx.expect_confirmed("commutant_confirmed");
  check_consistency(ctx);
}

void proposition_trial(TrialContext& ctx) {
  std::size_t family = ctx.trial % 4;
  if (ctx.dim < 2 && family == 3) family = 0;
  ComplexMatrix s;
  ComplexMatrix n;
  switch (family) {
    case 0: {
      // S Hermitian and N normal on one eigenbasis.
      const ComplexMatrix v = random_unitary(ctx.rng, ctx.dim);
      std::vector<Complex> ss(ctx.dim);
      std::vector<Complex> ns(ctx.dim);
      for (std::size_t j = 0; j < ctx.dim; ++j) {
        ss[j] = ctx.rng.uniform(-2.0, 2.0);
        const double re = ctx.rng.uniform(-1.0, 1.0);
        ns[j] = Complex(re, ctx.rng.uniform(0.1, 3.0));
      }
      s = hermitian_part(SpectralDecomposition{v, ss}.reconstruct());
      n = SpectralDecomposition{v, ns}.reconstruct();
      break;
    }
    case 1:
      s = hermitian_sample(ctx);
      n = normal_sample(ctx, kDefaultReWindow, kInsideImWindow);
      break;
    case 2:
      s = ComplexMatrix::identity(ctx.dim);
      n = normal_sample(ctx, kDefaultReWindow, kInsideImWindow);
      break;
    default: {
      auto [m2pi, mixing] = two_pi_family_pair(ctx.rng, ctx.dim, 0.0, kInsideImWindow, ctx.tol);
      n = std::move(m2pi);
      s = hermitian_part(mixing);
      break;
    }
  }
  ctx.out.result = check_proposition_SN(s, n, ctx.tol);
  const ImplicationResult& r = ctx.out.result;
  if (r.verdict == Verdict::Confirmed) {
    for (const char* key : {"AS", "BS", "expS_expA"}) {
      ctx.expect_le(std::string("proof_chain_") + key, r.diagnostics.at(key), ctx.tol.tol_conclude);
    }
  }
  if (family == 0 || family == 2) ctx.expect_confirmed("commuting_construction_confirmed");
  if (family == 3) {
    ctx.maybe_record("2pi i family: N with eigenvalue pairs lambda, lambda + 2pi i; S mixing each pair",
                     {{"S", s}, {"N", n}});
  }
  check_consistency(ctx);
}

void main_trial(TrialContext& ctx) {
  std::size_t family = ctx.trial % 5;
  if (ctx.dim < 2 && (family == 3 || family == 4)) family = 0;
  ComplexMatrix m;
  ComplexMatrix n;
  switch (family) {
    case 0:
      std::tie(m, n) = random_commuting_pair(ctx.rng, ctx.dim, PairKind::Normal, {}, ctx.tol);
      break;
    case 1:
      m = normal_sample(ctx, kDefaultReWindow, kInsideImWindow);
      n = normal_sample(ctx, kDefaultReWindow, kInsideImWindow);
      break;
    case 2:
      n = normal_sample(ctx, kDefaultReWindow, kInsideImWindow);
      m = n;
      break;
    case 3:
      std::tie(m, n) = two_pi_family_pair(ctx.rng, ctx.dim, 0.0, kInsideImWindow, ctx.tol);
      break;
    default: {
      constexpr std::array<double, 3> kGaps{1e-13, 1e-10, 1e-7};
      std::tie(m, n) = near_degenerate_pair(ctx.rng, ctx.dim, kGaps[(ctx.trial / 5) % kGaps.size()],
                                            kInsideImWindow, ctx.tol);
      break;
    }
  }
  ctx.out.result = check_main_MN(m, n, ctx.tol);
  const ImplicationResult& r = ctx.out.result;
  if (r.verdict == Verdict::Confirmed) {
    for (const char* key : {"CN", "AM", "AC", "BC", "AD", "BD", "fuglede_expMstar_expN", "expiB_expiD"}) {
      ctx.expect_le(std::string("proof_chain_") + key, r.diagnostics.at(key), ctx.tol.tol_conclude);
    }
  }
  if (family == 0 || family == 2) ctx.expect_confirmed("commuting_construction_confirmed");
  if (family == 3) {
    ctx.maybe_record("2pi i family: M with eigenvalue pairs lambda, lambda + 2pi i; N mixing each pair",
                     {{"M", m}, {"N", n}});
  }
  check_consistency(ctx);
}

void three_operator_trial(TrialContext& ctx) {
  const std::size_t n = ctx.dim;
  const std::size_t family = ctx.trial % 4;
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  switch (family) {
    case 0:
      a = hermitian_sample(ctx);
      b = hermitian_sample(ctx);
      c = hermitian_sample(ctx);
      break;
    case 1:
      std::tie(a, b) = random_commuting_pair(ctx.rng, n, PairKind::Hermitian,
                                             {kDefaultHermitianWindow}, ctx.tol);
      c = b;
      break;
    case 2:
      a = ComplexMatrix::zero(n);
      b = hermitian_sample(ctx);
      c = hermitian_sample(ctx);
      break;
    default: {
      // spec(A) = {+-a_j}: A^2 is scalar on each pair, so any B commuting
      // with A^2 gives a Hermitian C = A^-1 B A with AC = BA.
      const ComplexMatrix v = random_unitary(ctx.rng, n);
      ComplexMatrix ai(n);
      ComplexMatrix bi(n);
      ComplexMatrix ci(n);
      for (std::size_t j = 0; j < n; j += 2) {
        const double level = ctx.rng.uniform(0.2, 1.5);
        if (j + 1 < n) {
          ai(j, j) = level;
          ai(j + 1, j + 1) = -level;
          const ComplexMatrix blk = random_hermitian_sample(ctx.rng, 2, kDefaultHermitianWindow, ctx.tol).matrix;
          for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t s = 0; s < 2; ++s) {
              bi(j + r, j + s) = blk(r, s);
              ci(j + r, j + s) = (r == s ? 1.0 : -1.0) * blk(r, s);
            }
        } else {
          ai(j, j) = level;
          const double x = ctx.rng.uniform(-1.5, 1.5);
          bi(j, j) = x;
          ci(j, j) = x;
        }
      }
      const ComplexMatrix vh = adjoint(v);
      a = hermitian_part(v * ai * vh);
      b = hermitian_part(v * bi * vh);
      c = hermitian_part(v * ci * vh);
      break;
    }
  }
  ctx.out.result = check_three_operator(a, b, c, ctx.tol);
  const ImplicationResult& r = ctx.out.result;

  const auto tilde = build_tilde(a, b, c, ctx.tol);
  ctx.expect_le("closed_form_block_exponential",
                relative_distance(exp_tilde_closed_form(a, ctx.tol), taylor_exp(tilde.first)), 1e-9);

  const double eq = r.diagnostics.at("max_equation_residual");
  const double blk = r.diagnostics.at("block_exp_commutator");
  const double lo = ctx.tol.tol_flag / 10.0;
  const double hi = ctx.tol.tol_flag * 10.0;
  auto outside_band = [&](double x) { return x < lo || x > hi; };
  if (outside_band(eq) && outside_band(blk)) {
    ctx.expect("block_equivalence", (eq <= ctx.tol.tol_flag) == (blk <= ctx.tol.tol_flag));
  }
  if (family != 0) ctx.expect_confirmed("specialization_confirmed");
  check_consistency(ctx);
}

// Largest distance between matched eigenvalues, each expected value paired
// greedily with the nearest unused computed one, relative to the largest modulus.
double multiset_distance(std::vector<Complex> computed, const std::vector<Complex>& expected) {
  double scale = 1.0;
  for (const Complex& z : expected) scale = std::max(scale, std::abs(z));
  double worst = 0.0;
  for (const Complex& e : expected) {
    auto best = std::min_element(computed.begin(), computed.end(), [&](Complex x, Complex y) {
      return std::abs(x - e) < std::abs(y - e);
    });
    worst = std::max(worst, std::abs(*best - e));
    computed.erase(best);
  }
  return worst / scale;
}

void funcalc_trial(TrialContext& ctx) {
  const std::size_t n = ctx.dim;
  const ToleranceConfig& tol = ctx.tol;
  if (ctx.trial % 2 == 0) {
    const ComplexMatrix a = hermitian_sample(ctx, {0.05, kPi - 0.05});
    ctx.out.result = check_power_of_unitary_exp(a, tol);
    ctx.expect_le("power_of_unitary_exp_identity", ctx.out.result.conclusion_residual, 1e-8);
  } else {
    auto [a, b] = random_commuting_pair(ctx.rng, n, PairKind::Normal, {{0.2, 2.0}, {-1.5, 1.5}}, tol);
    ctx.out.result = check_powers_commute(a, b, tol);
    ctx.expect_le("powers_commute", ctx.out.result.conclusion_residual, 1e-8);
  }
  ctx.expect_confirmed("identity_confirmed");

  const SpectralSample ns = random_normal_sample(ctx.rng, n, kDefaultReWindow, {-2.0, 2.0}, tol);
  const ComplexMatrix exp_n = mat_exp(ns.matrix, tol);
  ctx.expect_le("exp_oracle_agreement", relative_distance(exp_n, taylor_exp(ns.matrix)), 1e-9);

  std::vector<Complex> mapped;
  for (const Complex& z : ns.construction.eigenvalues) mapped.push_back(std::exp(z));
  ctx.expect_le("spectral_mapping", multiset_distance(normal_eig(exp_n, tol).eigenvalues, mapped), 1e-8);

  const ComplexMatrix rh = normal_sample(ctx, {0.2, 2.0}, {-1.5, 1.5});
  ctx.expect_le("exp_log_roundtrip", relative_distance(mat_exp(mat_log(rh, tol), tol), rh), 1e-9);

  const ComplexMatrix h = hermitian_sample(ctx);
  const auto [ch, sh] = cosh_sinh(h, tol);
  const ComplexMatrix ch2 = ch * ch;
  ctx.expect_le("hyperbolic_identity",
                frobenius_distance(ch2 - sh * sh, ComplexMatrix::identity(n)) / frobenius_norm(ch2), 1e-9);
  const ComplexMatrix from_exp = Complex(0.5) * (mat_exp(h, tol) + mat_exp(Complex(-1.0) * h, tol));
  ctx.expect_le("cosh_from_exponentials", relative_distance(ch, from_exp), tol.tol_recon);

  auto [p, q] = random_commuting_pair(ctx.rng, n, PairKind::Normal, {kDefaultReWindow, {-1.0, 1.0}}, tol);
  ctx.expect_le("exp_of_commuting_sum",
                relative_distance(mat_exp(p + q, tol), mat_exp(p, tol) * mat_exp(q, tol)), 1e-9);

  ComplexMatrix u;
  if (n >= 2 && ctx.rng.below(2) == 1) {
    const ComplexMatrix v = random_unitary(ctx.rng, n);
    std::vector<Complex> spectrum(n);
    for (std::size_t j = 0; j < n; ++j) spectrum[j] = std::polar(1.0, ctx.rng.uniform(0.0, 2.0 * kPi));
    spectrum[1] = -spectrum[0];
    u = SpectralDecomposition{v, spectrum}.reconstruct();
  } else {
    const double center = ctx.rng.uniform(0.0, 2.0 * kPi);
    u = random_cramped_unitary(ctx.rng, n, {center, ctx.rng.uniform(0.1 * kPi, 0.9 * kPi)}, tol);
  }
  const double theta = ctx.rng.uniform(0.0, 2.0 * kPi);
  ctx.expect("cramped_phase_invariance", is_cramped(u, tol) == is_cramped(std::polar(1.0, theta) * u, tol));
  check_consistency(ctx);
}

using TrialFn = std::function<void(TrialContext&)>;

const std::map<std::string, TrialFn>& trial_table() {
  static const std::map<std::string, TrialFn> table{
      {"wermuth", wermuth_trial},         {"berberian", berberian_trial},
      {"fuglede", fuglede_trial},         {"proposition", proposition_trial},
      {"main", main_trial},               {"three-operator", three_operator_trial},
      {"funcalc", funcalc_trial},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wermuth", "berberian",      "fuglede", "proposition",
                                              "main",    "three-operator", "funcalc"};
  return names;
}

void VerdictCounts::add(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: ++confirmed; break;
    case Verdict::Vacuous: ++vacuous; break;
    case Verdict::Violated: ++violated; break;
  }
}

VerdictCounts& VerdictCounts::operator+=(const VerdictCounts& o) {
  confirmed += o.confirmed;
  vacuous += o.vacuous;
  violated += o.violated;
  return *this;
}

VerdictCounts RunReport::counts() const {
  VerdictCounts total;
  for (const auto& s : suites) total += s.counts;
  return total;
}

std::size_t RunReport::property_failure_count() const {
  std::size_t total = 0;
  for (const auto& s : suites) total += s.property_failures.size();
  return total;
}

bool RunReport::passed() const { return counts().violated == 0 && property_failure_count() == 0; }

int exit_code(const RunReport& report) { return report.passed() ? 0 : 1; }

SuiteReport run_suite(const std::string& suite, std::size_t dim, std::size_t trials,
                      std::uint64_t seed, const ToleranceConfig& tol, unsigned jobs) {
  const auto& table = trial_table();
  const auto it = table.find(suite);
  if (it == table.end()) throw PreconditionError("unknown suite: " + suite);
  if (dim == 0) throw PreconditionError("dim must be positive");
  if (trials == 0) throw PreconditionError("trials must be at least 1");
  tol.validate();

  std::vector<TrialResult> results(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    TrialContext ctx{dim, t, seed + t, tol, Rng(seed + t), {}};
    it->second(ctx);
    results[t] = std::move(ctx.out);
  });

  SuiteReport report;
  report.suite = suite;
  report.base = GenSpec{dim, seed, std::nullopt, std::nullopt};
  report.trials = trials;
  for (auto& r : results) {
    report.counts.add(r.result.verdict);
    for (const auto& [k, v] : r.stats) {
      auto [pos, inserted] = report.statistics.emplace(k, v);
      if (!inserted) pos->second = std::max(pos->second, v);
    }
    if (r.result.verdict == Verdict::Confirmed) {
      auto& s = report.statistics["max_conclusion_residual_confirmed"];
      s = std::max(s, r.result.conclusion_residual);
    }
    for (auto& f : r.failures) report.property_failures.push_back(std::move(f));
    if (r.record) {
      ++report.counterexamples_found;
      if (report.counterexamples.size() < kMaxRecordedCounterexamples) {
        report.counterexamples.push_back(std::move(*r.record));
      }
    }
  }
  return report;
}

RunReport run_verify(const VerifyOptions& options) {
  if (options.dim < 1 || options.dim > 16) throw PreconditionError("dim must be in [1, 16]");
  if (options.trials < 1) throw PreconditionError("trials must be at least 1");
  std::vector<std::string> suites;
  if (options.suite == "all") {
    suites = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), options.suite) !=
             suite_names().end()) {
    suites = {options.suite};
  } else {
    throw PreconditionError("unknown suite: " + options.suite);
  }
  options.tol.validate();

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = "verify";
  report.suite = options.suite;
  report.tol = options.tol;
  for (const auto& s : suites) {
    report.suites.push_back(run_suite(s, options.dim, options.trials, options.seed, options.tol, options.jobs));
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RunReport run_search(const SearchRunOptions& options) {
  if (options.dim < 1 || options.dim > 16) throw PreconditionError("dim must be in [1, 16]");
  if (options.trials < 1) throw PreconditionError("trials must be at least 1");
  options.tol.validate();

  const auto start = std::chrono::steady_clock::now();
  const GenSpec spec{options.dim, options.seed, std::nullopt, std::nullopt};
  SearchResult found = boundary_search(spec, options.trials, options.tol, options.search);

  SuiteReport s;
  s.suite = std::string("search/") + to_string(options.search.region);
  s.base = spec;
  s.trials = options.trials;
  s.counts = {found.confirmed, found.vacuous, found.violated};
  s.counterexamples_found = found.records.size();
  s.statistics["hypothesis_satisfying_records"] = static_cast<double>(found.hypothesis_satisfying_records);
  for (auto& rec : found.records) {
    if (rec.violated_hypothesis.rfind("none", 0) == 0) {
      s.property_failures.push_back({"record_satisfies_all_hypotheses",
                                     static_cast<std::size_t>(rec.seed.value_or(spec.seed) - spec.seed),
                                     1.0, 0.0});
    }
    if (!rec.valid(options.tol)) {
      s.property_failures.push_back({"record_invariant",
                                     static_cast<std::size_t>(rec.seed.value_or(spec.seed) - spec.seed),
                                     1.0, 0.0});
    }
  }
  constexpr std::size_t kMaxSearchRecords = 20;
  if (found.records.size() > kMaxSearchRecords) found.records.resize(kMaxSearchRecords);
  s.counterexamples = std::move(found.records);

  RunReport report;
  report.command = "search";
  report.suite = s.suite;
  report.tol = options.tol;
  report.extra["region"] = to_string(options.search.region);
  report.extra["perturbation"] =
      options.search.perturbation ? Json(*options.search.perturbation) : Json(nullptr);
  report.suites.push_back(std::move(s));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace expcomm
