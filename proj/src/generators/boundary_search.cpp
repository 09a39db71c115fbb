#include <array>
#include <numbers>

#include "expcomm/funcalc.hpp"
#include "expcomm/generators.hpp"
#include "expcomm/parallel.hpp"

namespace expcomm {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 6> kTwoPiPerturbations{0.0, 1e-14, 1e-12, 1e-9, 1e-6, 1e-3};
constexpr std::array<Interval, 3> kStraddleWindows{
    Interval{-0.5, 0.5}, Interval{kPi - 0.5, kPi + 0.5}, Interval{2.0 * kPi - 0.5, 2.0 * kPi + 0.5}};
constexpr std::array<double, 3> kNearDegenerateGaps{1e-13, 1e-10, 1e-7};
constexpr std::array<double, 5> kHermitianPerturbations{0.0, 1e-13, 1e-11, 1e-9, 1e-6};
constexpr std::array<double, 3> kHermitianGaps{1e-12, 1e-9, 1e-6};

struct Instance {
  std::string family;
  ComplexMatrix first;
  ComplexMatrix second;
  bool hermitian = false;
  double parameter = 0.0;
};

ComplexMatrix random_hermitian_unit(Rng& rng, std::size_t dim, const ToleranceConfig& tol) {
  ComplexMatrix g = random_hermitian_sample(rng, dim, kDefaultHermitianWindow, tol).matrix;
  return Complex(1.0 / std::max(frobenius_norm(g), kEpsFloor)) * g;
}

Instance two_pi_instance(Rng& rng, std::size_t dim, std::size_t index, const SearchOptions& opt,
                         const ToleranceConfig& tol) {
  const double pert = opt.perturbation.value_or(kTwoPiPerturbations[index % kTwoPiPerturbations.size()]);
  auto [m, n] = two_pi_family_pair(rng, std::max<std::size_t>(dim, 2), pert, kInsideImWindow, tol);
  return {"2pi-family", std::move(m), std::move(n), false, pert};
}

Instance straddle_instance(Rng& rng, std::size_t dim, std::size_t index, const ToleranceConfig& tol) {
  const Interval window = kStraddleWindows[rng.below(kStraddleWindows.size())];
  switch (index % 3) {
    case 0: {
      ComplexMatrix m = random_normal_sample(rng, dim, kDefaultReWindow, window, tol).matrix;
      ComplexMatrix n = random_normal_sample(rng, dim, kDefaultReWindow, window, tol).matrix;
      return {"straddle-independent", std::move(m), std::move(n), false, window.lo};
    }
    case 1: {
      auto [m, n] = random_commuting_pair(rng, dim, PairKind::Normal, {kDefaultReWindow, window}, tol);
      return {"straddle-commuting", std::move(m), std::move(n), false, window.lo};
    }
    default: {
      auto [m, n] = two_pi_family_pair(rng, std::max<std::size_t>(dim, 2), 0.0, window, tol);
      return {"straddle-2pi", std::move(m), std::move(n), false, window.lo};
    }
  }
}

Instance inside_instance(Rng& rng, std::size_t dim, std::size_t index, const ToleranceConfig& tol) {
  switch (index % 3) {
    case 0: {
      ComplexMatrix m = random_normal_sample(rng, dim, kDefaultReWindow, kInsideImWindow, tol).matrix;
      ComplexMatrix n = random_normal_sample(rng, dim, kDefaultReWindow, kInsideImWindow, tol).matrix;
      return {"inside-independent", std::move(m), std::move(n), false, 0.0};
    }
    case 1: {
      auto [m, n] = random_commuting_pair(rng, dim, PairKind::Normal, {}, tol);
      return {"inside-commuting", std::move(m), std::move(n), false, 0.0};
    }
    default: {
      if (dim < 2) {
        auto [m, n] = random_commuting_pair(rng, dim, PairKind::Normal, {}, tol);
        return {"inside-commuting", std::move(m), std::move(n), false, 0.0};
      }
      const double gap = kNearDegenerateGaps[(index / 3) % kNearDegenerateGaps.size()];
      auto [m, n] = near_degenerate_pair(rng, dim, gap, kInsideImWindow, tol);
      return {"inside-near-degenerate", std::move(m), std::move(n), false, gap};
    }
  }
}

Instance hermitian_instance(Rng& rng, std::size_t dim, std::size_t index, const ToleranceConfig& tol) {
  switch (index % 4) {
    case 0: {
      ComplexMatrix a = random_hermitian_sample(rng, dim, kDefaultHermitianWindow, tol).matrix;
      ComplexMatrix b = random_hermitian_sample(rng, dim, kDefaultHermitianWindow, tol).matrix;
      return {"hermitian-independent", std::move(a), std::move(b), true, 0.0};
    }
    case 1: {
      const double eps = kHermitianPerturbations[(index / 4) % kHermitianPerturbations.size()];
      auto [a, b] = random_commuting_pair(rng, dim, PairKind::Hermitian, {kDefaultHermitianWindow}, tol);
      b = hermitian_part(b + Complex(eps * frobenius_norm(b)) * random_hermitian_unit(rng, dim, tol));
      return {"hermitian-perturbed-commuting", std::move(a), std::move(b), true, eps};
    }
    case 2: {
      // A with repeated eigenvalues, B Hermitian in A's commutant.
      const ComplexMatrix v = random_unitary(rng, dim);
      const std::size_t distinct = std::max<std::size_t>(1, dim / 2);
      std::vector<double> levels(distinct);
      for (auto& x : levels) x = rng.uniform(kDefaultHermitianWindow.lo, kDefaultHermitianWindow.hi);
      std::vector<Complex> spectrum(dim);
      for (auto& x : spectrum) x = levels[rng.below(distinct)];
      ComplexMatrix a = hermitian_part(SpectralDecomposition{v, spectrum}.reconstruct());
      ComplexMatrix b = hermitian_part(commutant_element(rng, a, tol));
      return {"hermitian-degenerate-commutant", std::move(a), std::move(b), true, 0.0};
    }
    default: {
      // A with eigenvalue pairs (x, x + gap), B mixing each pair.
      const double gap = kHermitianGaps[(index / 4) % kHermitianGaps.size()];
      const ComplexMatrix v = random_unitary(rng, dim);
      std::vector<Complex> spectrum(dim);
      ComplexMatrix inner(dim);
      for (std::size_t j = 0; j < dim; j += 2) {
        const double x = rng.uniform(-1.5, 1.5);
        spectrum[j] = x;
        if (j + 1 < dim) {
          spectrum[j + 1] = x + gap;
          const ComplexMatrix block = random_hermitian_sample(rng, 2, kDefaultHermitianWindow, tol).matrix;
          for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) inner(j + r, j + c) = block(r, c);
        } else {
          inner(j, j) = rng.uniform(-1.5, 1.5);
        }
      }
      ComplexMatrix a = hermitian_part(SpectralDecomposition{v, spectrum}.reconstruct());
      ComplexMatrix b = hermitian_part(v * inner * adjoint(v));
      return {"hermitian-near-degenerate", std::move(a), std::move(b), true, gap};
    }
  }
}

struct TrialOutcome {
  Verdict verdict = Verdict::Vacuous;
  std::optional<CounterexampleRecord> record;
  bool record_satisfies_hypotheses = false;
};

TrialOutcome run_trial(const GenSpec& spec, std::size_t t, const ToleranceConfig& tol,
                       const SearchOptions& opt) {
  const std::uint64_t seed = spec.seed + t;
  Rng rng(seed);
  SearchRegion region = opt.region;
  std::size_t index = t;
  if (region == SearchRegion::All) {
    constexpr std::array<SearchRegion, 4> kCycle{SearchRegion::TwoPi, SearchRegion::Straddle,
                                                 SearchRegion::Inside, SearchRegion::Hermitian};
    region = kCycle[t % kCycle.size()];
    index = t / kCycle.size();
  }

  Instance inst;
  switch (region) {
    case SearchRegion::TwoPi: inst = two_pi_instance(rng, spec.dim, index, opt, tol); break;
    case SearchRegion::Straddle: inst = straddle_instance(rng, spec.dim, index, tol); break;
    case SearchRegion::Inside: inst = inside_instance(rng, spec.dim, index, tol); break;
    default: inst = hermitian_instance(rng, spec.dim, index, tol); break;
  }

  const ImplicationResult res = inst.hermitian ? check_wermuth(inst.first, inst.second, tol)
                                               : check_main_MN(inst.first, inst.second, tol);
  TrialOutcome out;
  out.verdict = res.verdict;
  const double exp_comm = res.hypothesis_residuals.at("exp_commutator");
  if (exp_comm <= tol.tol_flag && res.conclusion_residual > tol.tol_conclude) {
    CounterexampleRecord rec;
    rec.description = std::string(to_string(region)) + "/" + inst.family;
    rec.seed = seed;
    rec.matrices = inst.hermitian
                       ? std::map<std::string, ComplexMatrix>{{"A", inst.first}, {"B", inst.second}}
                       : std::map<std::string, ComplexMatrix>{{"M", inst.first}, {"N", inst.second}};
    std::string violated;
    for (const auto& [name, ok] : res.hypothesis_conditions) {
      if (ok) continue;
      if (!violated.empty()) violated += "; ";
      violated += name + " fails";
    }
    out.record_satisfies_hypotheses = violated.empty();
    rec.violated_hypothesis = violated.empty() ? "none: every stated hypothesis holds" : violated;
    rec.hypothesis_residuals = res.hypothesis_residuals;
    rec.conclusion_residual = res.conclusion_residual;
    rec.diagnostics = res.diagnostics;
    rec.diagnostics["family_parameter"] = inst.parameter;
    out.record = std::move(rec);
  }
  return out;
}

}  // namespace

std::optional<SearchRegion> parse_search_region(const std::string& name) {
  if (name == "2pi") return SearchRegion::TwoPi;
  if (name == "straddle") return SearchRegion::Straddle;
  if (name == "inside") return SearchRegion::Inside;
  if (name == "hermitian") return SearchRegion::Hermitian;
  if (name == "all") return SearchRegion::All;
  return std::nullopt;
}

const char* to_string(SearchRegion region) {
  switch (region) {
    case SearchRegion::TwoPi: return "2pi";
    case SearchRegion::Straddle: return "straddle";
    case SearchRegion::Inside: return "inside";
    case SearchRegion::Hermitian: return "hermitian";
    case SearchRegion::All: return "all";
  }
  return "unknown";
}

SearchResult boundary_search(const GenSpec& spec, std::size_t trials, const ToleranceConfig& tol,
                             const SearchOptions& options) {
  if (trials == 0) throw PreconditionError("boundary_search: trials must be at least 1");
  if (spec.dim == 0) throw PreconditionError("boundary_search: dim must be positive");

  std::vector<TrialOutcome> outcomes(trials);
  parallel_for(trials, options.jobs,
               [&](std::size_t t) { outcomes[t] = run_trial(spec, t, tol, options); });

  SearchResult result;
  for (auto& o : outcomes) {
    switch (o.verdict) {
      case Verdict::Confirmed: ++result.confirmed; break;
      case Verdict::Vacuous: ++result.vacuous; break;
      case Verdict::Violated: ++result.violated; break;
    }
    if (o.record) {
      if (o.record_satisfies_hypotheses) ++result.hypothesis_satisfying_records;
      result.records.push_back(std::move(*o.record));
    }
  }
  return result;
}

}  // namespace expcomm
