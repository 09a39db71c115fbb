#pragma once

namespace expcomm {

/// Every numerical threshold used by the library. Downstream operations take
/// one instance of this and never hard-code their own constants.
struct ToleranceConfig {
  double tol_normal = 1e-9;     // commutator_residual(M, M*) for is_normal
  double tol_hermitian = 1e-10; // ||H - H*||_F / ||H||_F
  double tol_unitary = 1e-10;   // ||U*U - I||_F <= tol_unitary * dim
  double tol_recon = 1e-9;      // relative reconstruction error of decompositions
  double tol_flag = 1e-10;      // an operator equation "holds" (hypothesis detection)
  double tol_conclude = 1e-7;   // a concluded equation must meet this
  double spectral_margin = 1e-6;
  double angular_margin = 1e-8; // radians kept between eigenvalue arguments and a cut
  double tol_nullspace = 1e-10; // relative to the largest singular value

  /// Throws PreconditionError unless all fields are nonnegative and
  /// tol_flag < tol_conclude.
  void validate() const;
};

}  // namespace expcomm
