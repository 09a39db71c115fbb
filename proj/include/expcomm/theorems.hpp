#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expcomm/matrix.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

enum class Verdict { Vacuous, Confirmed, Violated };

const char* to_string(Verdict v);

/// Outcome of evaluating one "hypothesis => conclusion" instance.
///
/// Operator-equation hypotheses are stored as relative residuals and hold
/// when <= tol_flag. Spectral hypotheses (interval containment, crampedness)
/// are yes/no conditions. `diagnostics` carries intermediate quantities that
/// do not enter the verdict.
struct ImplicationResult {
  std::string theorem;
  std::map<std::string, double> hypothesis_residuals;
  std::map<std::string, bool> hypothesis_conditions;
  bool hypothesis_satisfied = false;
  double conclusion_residual = 0.0;
  bool conclusion_satisfied = false;
  Verdict verdict = Verdict::Vacuous;
  std::map<std::string, double> diagnostics;

  /// Recomputes the satisfied flags and verdict from the stored residuals.
  void finalize(const ToleranceConfig& tol);
  /// true iff the flags and verdict agree with the residuals under `tol`.
  bool consistent(const ToleranceConfig& tol) const;
};

/// An instance where the operator equations of a hypothesis hold but the
/// conclusion fails, because some spectral hypothesis is not met.
struct CounterexampleRecord {
  std::string description;
  std::optional<std::uint64_t> seed;
  std::map<std::string, ComplexMatrix> matrices;
  std::string violated_hypothesis;
  std::map<std::string, double> hypothesis_residuals;
  double conclusion_residual = 0.0;
  std::map<std::string, double> diagnostics;

  /// conclusion_residual > tol_conclude and every hypothesis residual <= tol_flag.
  bool valid(const ToleranceConfig& tol) const;
};

/// Both directions of: for Hermitian A, B, e^A e^B = e^B e^A <=> AB = BA.
/// The verdict refers to the reverse direction; the forward direction is
/// reported under diagnostics "forward_*".
ImplicationResult check_wermuth(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ToleranceConfig& tol = {});

/// Basis of the real solution space of U X U* = X*, each element with unit
/// Frobenius norm. The map is only real-linear. In the eigenbasis U = V D V*
/// it couples Y = V* X V entrywise through the pairs (y_jk, y_kj), so the
/// nullspace is read off one 4x4 real SVD per pair.
std::vector<ComplexMatrix> berberian_solution_space(const ComplexMatrix& u,
                                                    const ToleranceConfig& tol = {});

/// Same space from an SVD of the full 2n^2 x 2n^2 real matrix of the map.
/// Cubic in n^2; meant for cross-checks at small n.
std::vector<ComplexMatrix> berberian_solution_space_dense(const ComplexMatrix& u,
                                                          const ToleranceConfig& tol = {});

/// Rescales X by a unit complex number so that trace(X) is real and
/// nonnegative, or, when the trace is negligible, the largest-magnitude
/// diagonal entry is real and positive. Matrices with a zero diagonal are
/// returned unchanged.
ComplexMatrix phase_normalize(const ComplexMatrix& x);

/// Cramped U and U X U* = X* force X Hermitian. The solution space is only
/// real-linear, so basis elements carry no free phase and the conclusion is
/// measured on them directly; the phase-normalized defect is a diagnostic.
ImplicationResult check_berberian(const ComplexMatrix& u, const ToleranceConfig& tol = {});

/// N normal and NX = XN imply N* X = X N*.
ImplicationResult check_fuglede(const ComplexMatrix& n, const ComplexMatrix& x,
                                const ToleranceConfig& tol = {});

/// S Hermitian, N = A + iB normal with spec(B) in (0, pi):
/// e^S e^N = e^N e^S implies SN = NS.
ImplicationResult check_proposition_SN(const ComplexMatrix& s, const ComplexMatrix& n,
                                       const ToleranceConfig& tol = {});

/// N = A + iB, M = C + iD normal with spec(B), spec(D) in (0, pi):
/// e^M e^N = e^N e^M implies MN = NM. Diagnostics carry the proof-chain
/// commutators ("CN", "AC", "BC", "AM", "AD", "BD", ...).
ImplicationResult check_main_MN(const ComplexMatrix& m, const ComplexMatrix& n,
                                const ToleranceConfig& tol = {});

/// Commuting normal A, B with 0 outside their spectra: A^i B^i = B^i A^i,
/// each power taken on its own automatically chosen cut.
ImplicationResult check_powers_commute(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const ToleranceConfig& tol = {});

/// Hermitian A with spec(A) in (0, pi): (e^{iA})^i = e^{-A}.
ImplicationResult check_power_of_unitary_exp(const ComplexMatrix& a,
                                             const ToleranceConfig& tol = {});

/// ([[0, A], [A, 0]], [[B, 0], [0, C]]).
std::pair<ComplexMatrix, ComplexMatrix> build_tilde(const ComplexMatrix& a, const ComplexMatrix& b,
                                                    const ComplexMatrix& c,
                                                    const ToleranceConfig& tol = {});

/// [[cosh A, sinh A], [sinh A, cosh A]], the exponential of [[0, A], [A, 0]].
ComplexMatrix exp_tilde_closed_form(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// Hermitian A, B, C with
///   cosh A e^B = e^B cosh A,  sinh A e^C = e^B sinh A,
///   e^C cosh A = cosh A e^C,  e^C sinh A = sinh A e^B
/// imply AC = BA. Diagnostics include the block-exponential commutator used
/// by the proof ("block_exp_commutator").
ImplicationResult check_three_operator(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const ComplexMatrix& c, const ToleranceConfig& tol = {});

}  // namespace expcomm
