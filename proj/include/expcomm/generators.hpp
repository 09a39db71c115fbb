#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expcomm/matrix.hpp"
#include "expcomm/rng.hpp"
#include "expcomm/spectral.hpp"
#include "expcomm/theorems.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Arc of the unit circle {e^{it} : |t - center| < width / 2}.
struct Arc {
  double center = 0.0;
  double width = 0.0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Everything a generator needs to reproduce its output bit for bit.
struct GenSpec {
  std::size_t dim = 1;
  std::uint64_t seed = 0;
  std::optional<Interval> spectral_window;
  std::optional<Arc> arc;
  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// A generated matrix together with the eigenbasis and spectrum it was built from.
struct SpectralSample {
  ComplexMatrix matrix;
  SpectralDecomposition construction;
};

inline constexpr Interval kDefaultHermitianWindow{-2.0, 2.0};
inline constexpr Interval kDefaultReWindow{-1.0, 1.0};
inline constexpr Interval kInsideImWindow{0.1, 3.0};

// Variants taking an Rng& draw from a caller-owned stream; the GenSpec
// variants seed a fresh Rng from spec.seed.

ComplexMatrix random_unitary(Rng& rng, std::size_t dim);
/// Haar unitary: Gram-Schmidt QR of a complex Gaussian matrix, R with
/// positive real diagonal.
ComplexMatrix random_unitary(const GenSpec& spec);

/// Spectrum drawn uniformly from the window shrunk by spectral_margin
/// (default window [-2, 2]).
SpectralSample random_hermitian_sample(Rng& rng, std::size_t dim, Interval window,
                                       const ToleranceConfig& tol = {});
ComplexMatrix random_hermitian_in(const GenSpec& spec, const ToleranceConfig& tol = {});

SpectralSample random_normal_sample(Rng& rng, std::size_t dim, Interval re_window,
                                    Interval im_window, const ToleranceConfig& tol = {});
ComplexMatrix random_normal_im_window(const GenSpec& spec, Interval re_window, Interval im_window,
                                      const ToleranceConfig& tol = {});

enum class PairKind { Hermitian, Normal };

struct PairWindows {
  Interval re = kDefaultReWindow;
  Interval im = kInsideImWindow;
};

/// Two matrices on one shared random eigenbasis with independent spectra.
std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(Rng& rng, std::size_t dim,
                                                              PairKind kind, PairWindows windows,
                                                              const ToleranceConfig& tol = {});
std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(const GenSpec& spec, PairKind kind,
                                                              PairWindows windows,
                                                              const ToleranceConfig& tol = {});

/// Random element of the commutant of normal N: a block-random part supported
/// on clusters of (numerically) equal eigenvalues plus a random cubic
/// polynomial in N, each normalized to unit Frobenius norm.
ComplexMatrix commutant_element(Rng& rng, const ComplexMatrix& n, const ToleranceConfig& tol = {});
ComplexMatrix commutant_element(const ComplexMatrix& n, const GenSpec& spec,
                                const ToleranceConfig& tol = {});

/// Unitary with eigenvalue arguments uniform in the arc (default center 0,
/// width 0.9 pi). The arc must be narrower than pi - 2 * angular_margin.
ComplexMatrix random_cramped_unitary(Rng& rng, std::size_t dim, Arc arc,
                                     const ToleranceConfig& tol = {});
ComplexMatrix random_cramped_unitary(const GenSpec& spec, const ToleranceConfig& tol = {});

/// M = i diag(0, 2pi, 0, 2pi, ...), N = copies of [[0, 1], [1, 0]]: e^M = I,
/// so the exponentials commute while M and N do not.
CounterexampleRecord counterexample_2pi(std::size_t dim_half, const ToleranceConfig& tol = {});

/// U = diag(1, -1), X = [[0, 1], [-1, 0]]: U X U* = X* with X not Hermitian.
CounterexampleRecord noncramped_berberian_example(const ToleranceConfig& tol = {});

/// Normal pair whose M has eigenvalue pairs lambda, lambda + 2 pi i (the
/// second shifted by `perturbation` times a complex Gaussian), and whose N
/// mixes each pair through a generic 2x2 normal block. With zero perturbation
/// e^M is scalar on every pair, so e^M and N commute.
std::pair<ComplexMatrix, ComplexMatrix> two_pi_family_pair(Rng& rng, std::size_t dim,
                                                           double perturbation,
                                                           Interval im_window = kInsideImWindow,
                                                           const ToleranceConfig& tol = {});

/// Like two_pi_family_pair, but eigenvalue pairs of M differ by i * gap instead
/// of 2 pi i.
std::pair<ComplexMatrix, ComplexMatrix> near_degenerate_pair(Rng& rng, std::size_t dim, double gap,
                                                             Interval im_window = kInsideImWindow,
                                                             const ToleranceConfig& tol = {});

enum class SearchRegion { TwoPi, Straddle, Inside, Hermitian, All };

std::optional<SearchRegion> parse_search_region(const std::string& name);
const char* to_string(SearchRegion region);

struct SearchOptions {
  SearchRegion region = SearchRegion::All;
  std::optional<double> perturbation;  // fixed 2pi-family perturbation; cycles a ladder otherwise
  unsigned jobs = 1;
};

struct SearchResult {
  std::vector<CounterexampleRecord> records;
  std::size_t confirmed = 0;
  std::size_t vacuous = 0;
  std::size_t violated = 0;
  /// Records whose spectral hypotheses all hold: each one contradicts a theorem.
  std::size_t hypothesis_satisfying_records = 0;
};

/// Samples pairs around the hypothesis boundaries and keeps every instance
/// whose exponentials commute within tol_flag while the operators fail to
/// commute beyond tol_conclude. Trial t uses seed spec.seed + t.
SearchResult boundary_search(const GenSpec& spec, std::size_t trials, const ToleranceConfig& tol,
                             const SearchOptions& options = {});

}  // namespace expcomm
