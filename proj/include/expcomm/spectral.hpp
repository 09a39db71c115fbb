#pragma once

#include <vector>

#include "expcomm/matrix.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

/// Unitary eigenvector matrix (columns) plus eigenvalues, for a normal matrix.
struct SpectralDecomposition {
  ComplexMatrix eigenvectors;
  std::vector<Complex> eigenvalues;

  /// V diag(lambda) V*.
  ComplexMatrix reconstruct() const;
};

struct JointDiagonalization {
  ComplexMatrix unitary;
  std::vector<double> first;   // diagonal of V* H V
  std::vector<double> second;  // diagonal of V* K V
};

/// true iff commutator_residual(M, M*) <= tol_normal.
bool is_normal(const ComplexMatrix& m, const ToleranceConfig& tol = {});

bool is_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Householder tridiagonalization followed by implicit QR with Wilkinson
/// shifts. Eigenvalues come back sorted ascending; the imaginary parts of
/// `eigenvalues` are exactly zero.
///
/// Throws PreconditionError for non-Hermitian input and NumericalError when
/// the QR sweep exceeds 100 * dim iterations or the result fails its
/// reconstruction/unitarity post-check.
SpectralDecomposition hermitian_eig(const ComplexMatrix& h, const ToleranceConfig& tol = {});

/// Joint eigenbasis of two commuting Hermitian matrices. H is diagonalized,
/// its eigenvalues are grouped into clusters (gap <= max(1e-8, 1e-8 * spread)),
/// and K compressed onto each cluster's eigenspace is diagonalized in turn.
///
/// H and K must commute with commutator_residual <= tol_normal.
JointDiagonalization simultaneous_diag(const ComplexMatrix& h, const ComplexMatrix& k,
                                       const ToleranceConfig& tol = {});

/// Spectral decomposition of a normal matrix via simultaneous diagonalization
/// of its Cartesian parts, finished by Jacobi sweeps when near-degenerate
/// real parts leave residual coupling. Eigenvalues come out roughly ordered
/// by real part; callers should not rely on the order.
SpectralDecomposition normal_eig(const ComplexMatrix& n, const ToleranceConfig& tol = {});

/// Groups sorted values into runs whose consecutive gaps are <= threshold.
/// Returns [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> cluster_sorted(const std::vector<double>& sorted,
                                                                double threshold);

/// max(1e-8, 1e-8 * (max - min)) for sorted values.
double cluster_threshold(const std::vector<double>& sorted);

}  // namespace expcomm
