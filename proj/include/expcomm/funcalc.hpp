#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "expcomm/matrix.hpp"
#include "expcomm/spectral.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

using ScalarFn = std::function<Complex(Complex)>;

/// The ray {r e^{i cut_angle} : r >= 0} removed from the logarithm's domain.
///
/// The logarithm on this cut takes arguments in (cut_angle - 2pi, cut_angle],
/// so cut_angle = pi is the principal branch and every branch agrees with the
/// principal one on the positive real axis.
struct BranchCut {
  double cut_angle = 0.0;  // radians, [0, 2pi)

  static BranchCut principal();

  /// Argument of z lifted into (cut_angle - 2pi, cut_angle].
  double lift_arg(Complex z) const;
  /// Angular distance from arg(z) to the cut ray.
  double distance_to_cut(Complex z) const;
  Complex log(Complex z) const;
};

struct CartesianPair {
  ComplexMatrix real_part;
  ComplexMatrix imag_part;
};

/// V diag(f(lambda)) V* from normal_eig. Throws PreconditionError if N is not
/// normal or f is non-finite at some eigenvalue.
ComplexMatrix apply_fn(const ComplexMatrix& n, const ScalarFn& f, const ToleranceConfig& tol = {});
ComplexMatrix apply_fn(const SpectralDecomposition& sd, const ScalarFn& f);

/// Exponential of a normal matrix through its spectral decomposition.
ComplexMatrix mat_exp(const ComplexMatrix& n, const ToleranceConfig& tol = {});

/// Scaling-and-squaring Taylor exponential; valid for any square matrix.
ComplexMatrix taylor_exp(const ComplexMatrix& m);

/// Midpoint of the largest circular gap between eigenvalue arguments. Ties
/// go to the first gap in ascending argument order (the wrap-around gap is
/// last). Throws if an eigenvalue lies within spectral_margin of 0 or the
/// arguments leave no gap of at least 2 * angular_margin.
BranchCut choose_branch(std::span<const Complex> eigenvalues, const ToleranceConfig& tol = {});

/// Largest gap between sorted angles on the circle, with the angular position
/// where it starts. An empty or single-point set has gap 2pi.
struct CircularGap {
  double width = 0.0;
  double start = 0.0;
};
CircularGap largest_circular_gap(std::span<const Complex> points);

ComplexMatrix mat_log(const ComplexMatrix& n, const BranchCut& cut, const ToleranceConfig& tol = {});
ComplexMatrix mat_log(const ComplexMatrix& n, const ToleranceConfig& tol = {});

/// N^i = exp(i log N) on the given cut.
ComplexMatrix power_i(const ComplexMatrix& n, const BranchCut& cut, const ToleranceConfig& tol = {});
/// N^i with the cut picked by choose_branch on N's own spectrum.
ComplexMatrix power_i(const ComplexMatrix& n, const ToleranceConfig& tol = {});

/// N = real_part + i * imag_part, both parts explicitly symmetrized.
CartesianPair cartesian(const ComplexMatrix& n);

/// Every eigenvalue of H lies in [a + spectral_margin, b - spectral_margin].
bool spectrum_in_open_interval(const ComplexMatrix& h, double a, double b,
                               const ToleranceConfig& tol = {});

/// Signed slack of the interval test: min over eigenvalues of the distance to
/// the margin-shrunk interval boundary (negative when some eigenvalue is outside).
double interval_slack(const ComplexMatrix& h, double a, double b, const ToleranceConfig& tol = {});

/// Spectrum contained in an open semicircle: largest circular gap between
/// eigenvalue arguments exceeds pi + 2 * angular_margin.
bool is_cramped(const ComplexMatrix& u, const ToleranceConfig& tol = {});

void require_unitary(const ComplexMatrix& u, const ToleranceConfig& tol, const char* who);

/// (cosh A, sinh A) from a single spectral decomposition.
std::pair<ComplexMatrix, ComplexMatrix> cosh_sinh(const ComplexMatrix& a,
                                                  const ToleranceConfig& tol = {});

}  // namespace expcomm
