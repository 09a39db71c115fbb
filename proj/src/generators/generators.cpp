#include "expcomm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "expcomm/funcalc.hpp"

namespace expcomm {
namespace {

constexpr double kPi = std::numbers::pi;

Interval shrink(Interval w, const ToleranceConfig& tol, const char* who) {
  if (!(w.hi - w.lo > 2.0 * tol.spectral_margin)) {
    throw PreconditionError(std::string(who) + ": spectral window too narrow");
  }
  return {w.lo + tol.spectral_margin, w.hi - tol.spectral_margin};
}

// Real part drawn first; a single constructor call would leave the order
// of the two draws unspecified.
Complex draw_point(Rng& rng, Interval re, Interval im) {
  const double a = rng.uniform(re.lo, re.hi);
  const double b = rng.uniform(im.lo, im.hi);
  return {a, b};
}

ComplexMatrix conjugate_by(const ComplexMatrix& v, const ComplexMatrix& inner) {
  return v * inner * adjoint(v);
}

ComplexMatrix with_spectrum(const ComplexMatrix& v, const std::vector<Complex>& values) {
  return SpectralDecomposition{v, values}.reconstruct();
}

// Single-linkage clusters of eigenvalues closer than the clustering threshold.
std::vector<std::size_t> cluster_labels(const std::vector<Complex>& values) {
  const std::size_t n = values.size();
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) spread = std::max(spread, std::abs(values[i] - values[j]));
  const double threshold = std::max(1e-8, 1e-8 * spread);

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= threshold) parent[find(i)] = find(j);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = find(i);
  return labels;
}

// Block-diagonal inner matrix for the pair constructions: a generic 2x2
// normal block on every coordinate pair (2j, 2j+1), a scalar on a leftover.
ComplexMatrix pair_mixing_blocks(Rng& rng, std::size_t dim, Interval im_window,
                                 const ToleranceConfig& tol) {
  ComplexMatrix inner(dim);
  for (std::size_t j = 0; j + 1 < dim; j += 2) {
    const SpectralSample block = random_normal_sample(rng, 2, kDefaultReWindow, im_window, tol);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) inner(j + r, j + c) = block.matrix(r, c);
  }
  if (dim % 2 == 1) {
    const Interval im = shrink(im_window, tol, "pair_mixing_blocks");
    inner(dim - 1, dim - 1) = draw_point(rng, kDefaultReWindow, im);
  }
  return inner;
}

}  // namespace

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  if (dim == 0) throw PreconditionError("random_unitary: dim must be positive");
  ComplexMatrix z(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) z(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt with one reorthogonalization pass. The column
  // norms form the diagonal of R, which is therefore real and positive.
  ComplexMatrix q(dim);
  std::vector<Complex> v(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) v[i] = z(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex r{};
        for (std::size_t i = 0; i < dim; ++i) r += std::conj(q(i, k)) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= r * q(i, k);
      }
    }
    double norm = 0.0;
    for (const Complex& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

ComplexMatrix random_unitary(const GenSpec& spec) {
  Rng rng(spec.seed);
  return random_unitary(rng, spec.dim);
}

SpectralSample random_hermitian_sample(Rng& rng, std::size_t dim, Interval window,
                                       const ToleranceConfig& tol) {
  const Interval w = shrink(window, tol, "random_hermitian_in");
  ComplexMatrix v = random_unitary(rng, dim);
  std::vector<Complex> d(dim);
  for (auto& x : d) x = rng.uniform(w.lo, w.hi);
  ComplexMatrix h = hermitian_part(with_spectrum(v, d));
  return {std::move(h), {std::move(v), std::move(d)}};
}

ComplexMatrix random_hermitian_in(const GenSpec& spec, const ToleranceConfig& tol) {
  Rng rng(spec.seed);
  return random_hermitian_sample(rng, spec.dim, spec.spectral_window.value_or(kDefaultHermitianWindow), tol)
      .matrix;
}

SpectralSample random_normal_sample(Rng& rng, std::size_t dim, Interval re_window,
                                    Interval im_window, const ToleranceConfig& tol) {
  const Interval re = shrink(re_window, tol, "random_normal_im_window");
  const Interval im = shrink(im_window, tol, "random_normal_im_window");
  ComplexMatrix v = random_unitary(rng, dim);
  std::vector<Complex> d(dim);
  for (auto& x : d) x = draw_point(rng, re, im);
  ComplexMatrix n = with_spectrum(v, d);
  return {std::move(n), {std::move(v), std::move(d)}};
}

ComplexMatrix random_normal_im_window(const GenSpec& spec, Interval re_window, Interval im_window,
                                      const ToleranceConfig& tol) {
  Rng rng(spec.seed);
  return random_normal_sample(rng, spec.dim, re_window, im_window, tol).matrix;
}

std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(Rng& rng, std::size_t dim,
                                                              PairKind kind, PairWindows windows,
                                                              const ToleranceConfig& tol) {
  const Interval re = shrink(windows.re, tol, "random_commuting_pair");
  const Interval im = kind == PairKind::Normal ? shrink(windows.im, tol, "random_commuting_pair")
                                               : Interval{};
  const ComplexMatrix v = random_unitary(rng, dim);
  auto draw = [&] {
    std::vector<Complex> d(dim);
    for (auto& x : d) {
      const double a = rng.uniform(re.lo, re.hi);
      x = kind == PairKind::Normal ? Complex(a, rng.uniform(im.lo, im.hi)) : Complex(a);
    }
    return d;
  };
  const auto first = draw();
  const auto second = draw();
  ComplexMatrix x = with_spectrum(v, first);
  ComplexMatrix y = with_spectrum(v, second);
  if (kind == PairKind::Hermitian) {
    x = hermitian_part(x);
    y = hermitian_part(y);
  }
  return {std::move(x), std::move(y)};
}

std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(const GenSpec& spec, PairKind kind,
                                                              PairWindows windows,
                                                              const ToleranceConfig& tol) {
  Rng rng(spec.seed);
  return random_commuting_pair(rng, spec.dim, kind, windows, tol);
}

ComplexMatrix commutant_element(Rng& rng, const ComplexMatrix& n, const ToleranceConfig& tol) {
  if (!is_normal(n, tol)) throw PreconditionError("commutant_element: input is not normal");
  const std::size_t dim = n.dim();
  const SpectralDecomposition sd = normal_eig(n, tol);
  const std::vector<std::size_t> labels = cluster_labels(sd.eigenvalues);

  ComplexMatrix inner(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (labels[i] == labels[j]) inner(i, j) = rng.complex_normal();
  ComplexMatrix block_part = conjugate_by(sd.eigenvectors, inner);

  double radius = 1.0;
  for (const Complex& z : sd.eigenvalues) radius = std::max(radius, std::abs(z));
  const ComplexMatrix scaled = Complex(1.0 / radius) * n;
  ComplexMatrix poly(dim);
  ComplexMatrix power = ComplexMatrix::identity(dim);
  for (int k = 0; k <= 3; ++k) {
    poly += rng.complex_normal() * power;
    power = power * scaled;
  }

  const double bn = frobenius_norm(block_part);
  const double pn = frobenius_norm(poly);
  ComplexMatrix x = Complex(1.0 / std::max(bn, kEpsFloor)) * block_part;
  if (pn > 0.0) x += Complex(1.0 / pn) * poly;

  const double residual = commutator_residual(n, x);
  if (!(residual <= 1e-9)) {
    throw NumericalError("commutant_element: constructed element does not commute (residual " +
                         std::to_string(residual) + ")");
  }
  return x;
}

ComplexMatrix commutant_element(const ComplexMatrix& n, const GenSpec& spec,
                                const ToleranceConfig& tol) {
  Rng rng(spec.seed);
  return commutant_element(rng, n, tol);
}

ComplexMatrix random_cramped_unitary(Rng& rng, std::size_t dim, Arc arc,
                                     const ToleranceConfig& tol) {
  if (!(arc.width >= 0.0 && arc.width < kPi - 2.0 * tol.angular_margin)) {
    throw PreconditionError("random_cramped_unitary: arc must be narrower than an open semicircle");
  }
  const ComplexMatrix v = random_unitary(rng, dim);
  std::vector<Complex> d(dim);
  for (auto& x : d) x = std::polar(1.0, arc.center + arc.width * (rng.uniform() - 0.5));
  return with_spectrum(v, d);
}

ComplexMatrix random_cramped_unitary(const GenSpec& spec, const ToleranceConfig& tol) {
  Rng rng(spec.seed);
  return random_cramped_unitary(rng, spec.dim, spec.arc.value_or(Arc{0.0, 0.9 * kPi}), tol);
}

CounterexampleRecord counterexample_2pi(std::size_t dim_half, const ToleranceConfig& tol) {
  if (dim_half == 0) throw PreconditionError("counterexample_2pi: dim_half must be positive");
  const std::size_t dim = 2 * dim_half;
  ComplexMatrix m(dim);
  ComplexMatrix n(dim);
  for (std::size_t j = 0; j < dim_half; ++j) {
    m(2 * j + 1, 2 * j + 1) = Complex(0.0, 2.0 * kPi);
    n(2 * j, 2 * j + 1) = 1.0;
    n(2 * j + 1, 2 * j) = 1.0;
  }
  const ComplexMatrix exp_m = mat_exp(m, tol);
  const ComplexMatrix exp_n = mat_exp(n, tol);
  const ComplexMatrix exp_comm = exp_m * exp_n - exp_n * exp_m;

  CounterexampleRecord rec;
  rec.description = "2pi i family: M = i diag(0, 2pi, ...), N = blocks [[0,1],[1,0]]";
  rec.matrices = {{"M", m}, {"N", n}, {"expM", exp_m}};
  rec.violated_hypothesis =
      "Im-spectrum of M is {0, 2pi}, not contained in the open interval (0, pi); "
      "Im-spectrum of N is {0}, also outside (0, pi)";
  rec.hypothesis_residuals["exp_commutator"] = commutator_residual(exp_m, exp_n);
  rec.conclusion_residual = commutator_residual(m, n);
  rec.diagnostics["exp_commutator_abs"] = frobenius_norm(exp_comm);
  rec.diagnostics["expM_minus_I"] = frobenius_distance(exp_m, ComplexMatrix::identity(dim));
  rec.diagnostics["commutator_abs"] = frobenius_norm(m * n - n * m);
  rec.diagnostics["im_spectrum_M_slack"] = interval_slack(cartesian(m).imag_part, 0.0, kPi, tol);
  if (!rec.valid(tol) || !(rec.diagnostics["expM_minus_I"] <= 1e-12)) {
    throw NumericalError("counterexample_2pi: construction failed its own invariants");
  }
  return rec;
}

CounterexampleRecord noncramped_berberian_example(const ToleranceConfig& tol) {
  const ComplexMatrix u{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix x{{0.0, 1.0}, {-1.0, 0.0}};
  const ComplexMatrix lhs = u * x * adjoint(u);

  CounterexampleRecord rec;
  rec.description = "non-cramped unitary U = diag(1, -1) with X = [[0,1],[-1,0]]";
  rec.matrices = {{"U", u}, {"X", x}, {"UXU*", lhs}};
  rec.violated_hypothesis =
      "U is not cramped: eigenvalues 1 and -1 are antipodal and fit in no open semicircle";
  rec.hypothesis_residuals["UXUstar_minus_Xstar"] =
      frobenius_distance(lhs, adjoint(x)) / frobenius_norm(x);
  rec.conclusion_residual = hermitian_defect(x);
  rec.diagnostics["UXUstar_minus_Xstar_abs"] = frobenius_distance(lhs, adjoint(x));
  rec.diagnostics["hermitian_defect_abs"] = frobenius_distance(x, adjoint(x));
  rec.diagnostics["cramped"] = is_cramped(u, tol) ? 1.0 : 0.0;
  rec.diagnostics["largest_circular_gap"] = largest_circular_gap(normal_eig(u, tol).eigenvalues).width;
  if (!rec.valid(tol) || rec.diagnostics["cramped"] != 0.0) {
    throw NumericalError("noncramped_berberian_example: construction failed its own invariants");
  }
  return rec;
}

std::pair<ComplexMatrix, ComplexMatrix> two_pi_family_pair(Rng& rng, std::size_t dim,
                                                           double perturbation, Interval im_window,
                                                           const ToleranceConfig& tol) {
  if (dim < 2) throw PreconditionError("two_pi_family_pair: dim must be at least 2");
  const Interval re = shrink(kDefaultReWindow, tol, "two_pi_family_pair");
  const Interval im = shrink(im_window, tol, "two_pi_family_pair");
  const ComplexMatrix v = random_unitary(rng, dim);
  std::vector<Complex> spectrum(dim);
  for (std::size_t j = 0; j + 1 < dim; j += 2) {
    const Complex base = draw_point(rng, re, im);
    spectrum[j] = base;
    spectrum[j + 1] = base + Complex(0.0, 2.0 * kPi) + perturbation * rng.complex_normal();
  }
  if (dim % 2 == 1) spectrum[dim - 1] = draw_point(rng, re, im);
  ComplexMatrix m = with_spectrum(v, spectrum);
  ComplexMatrix n = conjugate_by(v, pair_mixing_blocks(rng, dim, kInsideImWindow, tol));
  return {std::move(m), std::move(n)};
}

std::pair<ComplexMatrix, ComplexMatrix> near_degenerate_pair(Rng& rng, std::size_t dim, double gap,
                                                             Interval im_window,
                                                             const ToleranceConfig& tol) {
  if (dim < 2) throw PreconditionError("near_degenerate_pair: dim must be at least 2");
  const Interval re = shrink(kDefaultReWindow, tol, "near_degenerate_pair");
  const Interval im = shrink({im_window.lo, im_window.hi - gap}, tol, "near_degenerate_pair");
  const ComplexMatrix v = random_unitary(rng, dim);
  std::vector<Complex> spectrum(dim);
  for (std::size_t j = 0; j + 1 < dim; j += 2) {
    const Complex base = draw_point(rng, re, im);
    spectrum[j] = base;
    spectrum[j + 1] = base + Complex(0.0, gap);
  }
  if (dim % 2 == 1) spectrum[dim - 1] = draw_point(rng, re, im);
  ComplexMatrix m = with_spectrum(v, spectrum);
  ComplexMatrix n = conjugate_by(v, pair_mixing_blocks(rng, dim, im_window, tol));
  return {std::move(m), std::move(n)};
}

}  // namespace expcomm
