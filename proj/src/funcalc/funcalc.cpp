#include "expcomm/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace expcomm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::vector<Complex> checked_values(std::span<const Complex> eigenvalues, const ScalarFn& f) {
  std::vector<Complex> out;
  out.reserve(eigenvalues.size());
  for (const Complex& lambda : eigenvalues) {
    const Complex v = f(lambda);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw PreconditionError("apply_fn: function is not finite at an eigenvalue");
    }
    out.push_back(v);
  }
  return out;
}

void check_log_domain(std::span<const Complex> eigenvalues, const BranchCut& cut,
                      const ToleranceConfig& tol) {
  for (const Complex& lambda : eigenvalues) {
    if (std::abs(lambda) <= tol.spectral_margin) {
      throw PreconditionError("mat_log: eigenvalue within spectral_margin of 0");
    }
    if (cut.distance_to_cut(lambda) <= tol.angular_margin) {
      throw PreconditionError("mat_log: eigenvalue lies on the branch cut");
    }
  }
}

}  // namespace

BranchCut BranchCut::principal() { return BranchCut{std::numbers::pi}; }

double BranchCut::lift_arg(Complex z) const {
  const double theta = std::arg(z);
  return cut_angle - wrap_to_two_pi(cut_angle - theta);
}

double BranchCut::distance_to_cut(Complex z) const {
  const double r = wrap_to_two_pi(cut_angle - std::arg(z));
  return std::min(r, kTwoPi - r);
}

Complex BranchCut::log(Complex z) const { return {std::log(std::abs(z)), lift_arg(z)}; }

ComplexMatrix apply_fn(const SpectralDecomposition& sd, const ScalarFn& f) {
  SpectralDecomposition mapped{sd.eigenvectors, checked_values(sd.eigenvalues, f)};
  return mapped.reconstruct();
}

ComplexMatrix apply_fn(const ComplexMatrix& n, const ScalarFn& f, const ToleranceConfig& tol) {
  return apply_fn(normal_eig(n, tol), f);
}

ComplexMatrix mat_exp(const ComplexMatrix& n, const ToleranceConfig& tol) {
  return apply_fn(n, [](Complex z) { return std::exp(z); }, tol);
}

ComplexMatrix taylor_exp(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const double norm = frobenius_norm(m);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix a = std::ldexp(1.0, -squarings) * m;

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 200; ++k) {
    term = (term * a) * Complex(1.0 / k);
    sum += term;
    if (frobenius_norm(term) <= 1e-18 * frobenius_norm(sum)) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CircularGap largest_circular_gap(std::span<const Complex> points) {
  std::vector<double> args;
  args.reserve(points.size());
  for (const Complex& z : points) args.push_back(wrap_to_two_pi(std::arg(z)));
  std::sort(args.begin(), args.end());
  if (args.empty()) return {kTwoPi, 0.0};

  // Near-equal gaps keep the earlier one so the documented tie-break is not
  // decided by rounding noise.
  constexpr double kTieSlack = 1e-12;
  CircularGap best{-1.0, 0.0};
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    const double g = args[i + 1] - args[i];
    if (g > best.width + kTieSlack) best = {g, args[i]};
  }
  const double wrap = args.front() + kTwoPi - args.back();
  if (wrap > best.width + kTieSlack) best = {wrap, args.back()};
  return best;
}

BranchCut choose_branch(std::span<const Complex> eigenvalues, const ToleranceConfig& tol) {
  for (const Complex& lambda : eigenvalues) {
    if (std::abs(lambda) <= tol.spectral_margin) {
      throw PreconditionError("choose_branch: eigenvalue within spectral_margin of 0");
    }
  }
  const CircularGap gap = largest_circular_gap(eigenvalues);
  if (gap.width < 2.0 * tol.angular_margin) {
    throw PreconditionError("choose_branch: eigenvalue arguments leave no room for a cut");
  }
  return BranchCut{wrap_to_two_pi(gap.start + 0.5 * gap.width)};
}

ComplexMatrix mat_log(const ComplexMatrix& n, const BranchCut& cut, const ToleranceConfig& tol) {
  const SpectralDecomposition sd = normal_eig(n, tol);
  check_log_domain(sd.eigenvalues, cut, tol);
  return apply_fn(sd, [&cut](Complex z) { return cut.log(z); });
}

ComplexMatrix mat_log(const ComplexMatrix& n, const ToleranceConfig& tol) {
  const SpectralDecomposition sd = normal_eig(n, tol);
  const BranchCut cut = choose_branch(sd.eigenvalues, tol);
  check_log_domain(sd.eigenvalues, cut, tol);
  return apply_fn(sd, [&cut](Complex z) { return cut.log(z); });
}

ComplexMatrix power_i(const ComplexMatrix& n, const BranchCut& cut, const ToleranceConfig& tol) {
  const SpectralDecomposition sd = normal_eig(n, tol);
  check_log_domain(sd.eigenvalues, cut, tol);
  return apply_fn(sd, [&cut](Complex z) { return std::exp(Complex(0.0, 1.0) * cut.log(z)); });
}

ComplexMatrix power_i(const ComplexMatrix& n, const ToleranceConfig& tol) {
  const SpectralDecomposition sd = normal_eig(n, tol);
  const BranchCut cut = choose_branch(sd.eigenvalues, tol);
  check_log_domain(sd.eigenvalues, cut, tol);
  return apply_fn(sd, [&cut](Complex z) { return std::exp(Complex(0.0, 1.0) * cut.log(z)); });
}

CartesianPair cartesian(const ComplexMatrix& n) {
  return {hermitian_part(n), hermitian_part(Complex(0.0, -1.0) * n)};
}

double interval_slack(const ComplexMatrix& h, double a, double b, const ToleranceConfig& tol) {
  const SpectralDecomposition sd = hermitian_eig(h, tol);
  double slack = std::numeric_limits<double>::infinity();
  for (const Complex& lambda : sd.eigenvalues) {
    const double x = lambda.real();
    slack = std::min({slack, x - (a + tol.spectral_margin), (b - tol.spectral_margin) - x});
  }
  return slack;
}

bool spectrum_in_open_interval(const ComplexMatrix& h, double a, double b,
                               const ToleranceConfig& tol) {
  return interval_slack(h, a, b, tol) >= 0.0;
}

void require_unitary(const ComplexMatrix& u, const ToleranceConfig& tol, const char* who) {
  const double r = unitarity_residual(u);
  if (!(r <= tol.tol_unitary * static_cast<double>(std::max<std::size_t>(u.dim(), 1)))) {
    throw PreconditionError(std::string(who) + ": input is not unitary (residual " +
                            std::to_string(r) + ")");
  }
}

bool is_cramped(const ComplexMatrix& u, const ToleranceConfig& tol) {
  require_unitary(u, tol, "is_cramped");
  const SpectralDecomposition sd = normal_eig(u, tol);
  return largest_circular_gap(sd.eigenvalues).width > std::numbers::pi + 2.0 * tol.angular_margin;
}

std::pair<ComplexMatrix, ComplexMatrix> cosh_sinh(const ComplexMatrix& a,
                                                  const ToleranceConfig& tol) {
  const SpectralDecomposition sd = normal_eig(a, tol);
  return {apply_fn(sd, [](Complex z) { return std::cosh(z); }),
          apply_fn(sd, [](Complex z) { return std::sinh(z); })};
}

}  // namespace expcomm
