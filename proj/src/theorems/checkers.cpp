#include <algorithm>
#include <cmath>
#include <numbers>

#include "expcomm/funcalc.hpp"
#include "expcomm/spectral.hpp"
#include "expcomm/theorems.hpp"

namespace expcomm {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void require_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol, const char* who) {
  if (!is_hermitian(m, tol)) {
    throw PreconditionError(std::string(who) + ": input is not Hermitian (defect " +
                            std::to_string(hermitian_defect(m)) + ")");
  }
}

void require_normal(const ComplexMatrix& m, const ToleranceConfig& tol, const char* who) {
  if (!is_normal(m, tol)) {
    throw PreconditionError(std::string(who) + ": input is not normal (residual " +
                            std::to_string(commutator_residual(m, adjoint(m))) + ")");
  }
}

double relative_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_distance(a, b) / std::max(frobenius_norm(b), kEpsFloor);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Vacuous: return "VACUOUS";
    case Verdict::Confirmed: return "CONFIRMED";
    case Verdict::Violated: return "VIOLATED";
  }
  return "UNKNOWN";
}

void ImplicationResult::finalize(const ToleranceConfig& tol) {
  hypothesis_satisfied =
      std::all_of(hypothesis_residuals.begin(), hypothesis_residuals.end(),
                  [&](const auto& kv) { return kv.second <= tol.tol_flag; }) &&
      std::all_of(hypothesis_conditions.begin(), hypothesis_conditions.end(),
                  [](const auto& kv) { return kv.second; });
  conclusion_satisfied = conclusion_residual <= tol.tol_conclude;
  if (!hypothesis_satisfied) {
    verdict = Verdict::Vacuous;
  } else {
    verdict = conclusion_satisfied ? Verdict::Confirmed : Verdict::Violated;
  }
}

bool ImplicationResult::consistent(const ToleranceConfig& tol) const {
  ImplicationResult copy = *this;
  copy.finalize(tol);
  return copy.hypothesis_satisfied == hypothesis_satisfied &&
         copy.conclusion_satisfied == conclusion_satisfied && copy.verdict == verdict &&
         (verdict == Verdict::Violated) == (hypothesis_satisfied && !conclusion_satisfied);
}

bool CounterexampleRecord::valid(const ToleranceConfig& tol) const {
  if (!(conclusion_residual > tol.tol_conclude)) return false;
  if (violated_hypothesis.empty()) return false;
  return std::all_of(hypothesis_residuals.begin(), hypothesis_residuals.end(),
                     [&](const auto& kv) { return kv.second <= tol.tol_flag; });
}

ImplicationResult check_wermuth(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ToleranceConfig& tol) {
  require_same_dim(a, b, "check_wermuth");
  require_hermitian(a, tol, "check_wermuth");
  require_hermitian(b, tol, "check_wermuth");

  const double exp_comm = commutator_residual(mat_exp(a, tol), mat_exp(b, tol));
  const double op_comm = commutator_residual(a, b);

  ImplicationResult r;
  r.theorem = "wermuth";
  r.hypothesis_residuals["exp_commutator"] = exp_comm;
  r.conclusion_residual = op_comm;
  r.diagnostics["forward_hypothesis"] = op_comm;
  r.diagnostics["forward_conclusion"] = exp_comm;
  r.diagnostics["forward_consistent"] =
      (op_comm > tol.tol_flag || exp_comm <= tol.tol_conclude) ? 1.0 : 0.0;
  r.finalize(tol);
  return r;
}

ImplicationResult check_fuglede(const ComplexMatrix& n, const ComplexMatrix& x,
                                const ToleranceConfig& tol) {
  require_same_dim(n, x, "check_fuglede");
  require_normal(n, tol, "check_fuglede");

  ImplicationResult r;
  r.theorem = "fuglede";
  r.hypothesis_residuals["NX_commutator"] = commutator_residual(n, x);
  r.conclusion_residual = commutator_residual(adjoint(n), x);
  r.finalize(tol);
  return r;
}

ImplicationResult check_proposition_SN(const ComplexMatrix& s, const ComplexMatrix& n,
                                       const ToleranceConfig& tol) {
  require_same_dim(s, n, "check_proposition_SN");
  require_hermitian(s, tol, "check_proposition_SN");
  require_normal(n, tol, "check_proposition_SN");

  const CartesianPair parts = cartesian(n);
  const ComplexMatrix exp_s = mat_exp(s, tol);

  ImplicationResult r;
  r.theorem = "proposition";
  const double slack = interval_slack(parts.imag_part, 0.0, kPi, tol);
  r.hypothesis_conditions["im_spectrum_in_open_0_pi"] = slack >= 0.0;
  r.hypothesis_residuals["exp_commutator"] = commutator_residual(exp_s, mat_exp(n, tol));
  r.conclusion_residual = commutator_residual(s, n);
  r.diagnostics["im_spectrum_slack"] = slack;
  r.diagnostics["expS_expA"] = commutator_residual(exp_s, mat_exp(parts.real_part, tol));
  r.diagnostics["AS"] = commutator_residual(parts.real_part, s);
  r.diagnostics["BS"] = commutator_residual(parts.imag_part, s);
  r.finalize(tol);
  return r;
}

ImplicationResult check_main_MN(const ComplexMatrix& m, const ComplexMatrix& n,
                                const ToleranceConfig& tol) {
  require_same_dim(m, n, "check_main_MN");
  require_normal(m, tol, "check_main_MN");
  require_normal(n, tol, "check_main_MN");

  // N = A + iB, M = C + iD
  const CartesianPair np = cartesian(n);
  const CartesianPair mp = cartesian(m);
  const ComplexMatrix& a = np.real_part;
  const ComplexMatrix& b = np.imag_part;
  const ComplexMatrix& c = mp.real_part;
  const ComplexMatrix& d = mp.imag_part;

  const ComplexMatrix exp_n = mat_exp(n, tol);
  const double slack_n = interval_slack(b, 0.0, kPi, tol);
  const double slack_m = interval_slack(d, 0.0, kPi, tol);

  ImplicationResult r;
  r.theorem = "main";
  r.hypothesis_conditions["im_spectrum_N_in_open_0_pi"] = slack_n >= 0.0;
  r.hypothesis_conditions["im_spectrum_M_in_open_0_pi"] = slack_m >= 0.0;
  r.hypothesis_residuals["exp_commutator"] = commutator_residual(mat_exp(m, tol), exp_n);
  r.conclusion_residual = commutator_residual(m, n);

  r.diagnostics["im_spectrum_N_slack"] = slack_n;
  r.diagnostics["im_spectrum_M_slack"] = slack_m;
  r.diagnostics["fuglede_expMstar_expN"] = commutator_residual(mat_exp(adjoint(m), tol), exp_n);
  r.diagnostics["CN"] = commutator_residual(c, n);
  r.diagnostics["AM"] = commutator_residual(a, m);
  r.diagnostics["AC"] = commutator_residual(a, c);
  r.diagnostics["BC"] = commutator_residual(b, c);
  r.diagnostics["AD"] = commutator_residual(a, d);
  r.diagnostics["BD"] = commutator_residual(b, d);
  r.diagnostics["expiB_expiD"] =
      commutator_residual(mat_exp(kI * b, tol), mat_exp(kI * d, tol));
  r.finalize(tol);
  return r;
}

ImplicationResult check_powers_commute(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const ToleranceConfig& tol) {
  require_same_dim(a, b, "check_powers_commute");
  require_normal(a, tol, "check_powers_commute");
  require_normal(b, tol, "check_powers_commute");

  ImplicationResult r;
  r.theorem = "powers_commute";
  r.hypothesis_residuals["AB_commutator"] = commutator_residual(a, b);

  const SpectralDecomposition sa = normal_eig(a, tol);
  const SpectralDecomposition sb = normal_eig(b, tol);
  auto powers = [&](const SpectralDecomposition& sd, const char* label) -> std::optional<ComplexMatrix> {
    try {
      const BranchCut cut = choose_branch(sd.eigenvalues, tol);
      for (const Complex& z : sd.eigenvalues) {
        if (cut.distance_to_cut(z) <= tol.angular_margin) return std::nullopt;
      }
      r.diagnostics[std::string("cut_angle_") + label] = cut.cut_angle;
      return apply_fn(sd, [&cut](Complex z) { return std::exp(kI * cut.log(z)); });
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
  };
  const auto pa = powers(sa, "A");
  const auto pb = powers(sb, "B");
  r.hypothesis_conditions["log_region_A"] = pa.has_value();
  r.hypothesis_conditions["log_region_B"] = pb.has_value();
  r.conclusion_residual = (pa && pb) ? commutator_residual(*pa, *pb) : 0.0;
  r.diagnostics["conclusion_evaluated"] = (pa && pb) ? 1.0 : 0.0;
  r.finalize(tol);
  return r;
}

ImplicationResult check_power_of_unitary_exp(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_hermitian(a, tol, "check_power_of_unitary_exp");

  ImplicationResult r;
  r.theorem = "power_of_unitary_exp";
  const double slack = interval_slack(a, 0.0, kPi, tol);
  r.hypothesis_conditions["spectrum_in_open_0_pi"] = slack >= 0.0;
  r.diagnostics["spectrum_slack"] = slack;

  const ComplexMatrix target = mat_exp(Complex(-1.0) * a, tol);
  try {
    const SpectralDecomposition su = normal_eig(mat_exp(kI * a, tol), tol);
    const BranchCut cut = choose_branch(su.eigenvalues, tol);
    r.diagnostics["cut_angle"] = cut.cut_angle;
    const ComplexMatrix p = apply_fn(su, [&cut](Complex z) { return std::exp(kI * cut.log(z)); });
    r.conclusion_residual = relative_distance(p, target);
  } catch (const PreconditionError&) {
    r.hypothesis_conditions["log_region"] = false;
  }
  r.finalize(tol);
  return r;
}

std::pair<ComplexMatrix, ComplexMatrix> build_tilde(const ComplexMatrix& a, const ComplexMatrix& b,
                                                    const ComplexMatrix& c,
                                                    const ToleranceConfig& tol) {
  require_same_dim(a, b, "build_tilde");
  require_same_dim(a, c, "build_tilde");
  require_hermitian(a, tol, "build_tilde");
  require_hermitian(b, tol, "build_tilde");
  require_hermitian(c, tol, "build_tilde");
  const ComplexMatrix zero = ComplexMatrix::zero(a.dim());
  return {hermitian_part(block2x2(zero, a, a, zero)), hermitian_part(block2x2(b, zero, zero, c))};
}

ComplexMatrix exp_tilde_closed_form(const ComplexMatrix& a, const ToleranceConfig& tol) {
  require_hermitian(a, tol, "exp_tilde_closed_form");
  const auto [ch, sh] = cosh_sinh(a, tol);
  return block2x2(ch, sh, sh, ch);
}

ImplicationResult check_three_operator(const ComplexMatrix& a, const ComplexMatrix& b,
                                       const ComplexMatrix& c, const ToleranceConfig& tol) {
  const auto [a_tilde, b_tilde] = build_tilde(a, b, c, tol);
  const auto [ch, sh] = cosh_sinh(a, tol);
  const ComplexMatrix exp_b = mat_exp(b, tol);
  const ComplexMatrix exp_c = mat_exp(c, tol);

  ImplicationResult r;
  r.theorem = "three_operator";
  r.hypothesis_residuals["coshA_expB"] = equation_residual(ch, exp_b, exp_b, ch);
  r.hypothesis_residuals["sinhA_expC_expB_sinhA"] = equation_residual(sh, exp_c, exp_b, sh);
  r.hypothesis_residuals["expC_coshA"] = equation_residual(exp_c, ch, ch, exp_c);
  r.hypothesis_residuals["expC_sinhA_sinhA_expB"] = equation_residual(exp_c, sh, sh, exp_b);

  const double na = frobenius_norm(a);
  const double scale = std::max(na * frobenius_norm(c) + frobenius_norm(b) * na, kEpsFloor);
  r.conclusion_residual = frobenius_distance(a * c, b * a) / scale;

  double max_eq = 0.0;
  for (const auto& [name, value] : r.hypothesis_residuals) max_eq = std::max(max_eq, value);
  const ComplexMatrix zero = ComplexMatrix::zero(a.dim());
  r.diagnostics["max_equation_residual"] = max_eq;
  r.diagnostics["block_exp_commutator"] =
      commutator_residual(block2x2(ch, sh, sh, ch), block2x2(exp_b, zero, zero, exp_c));
  r.diagnostics["block_commutator"] = commutator_residual(a_tilde, b_tilde);
  r.finalize(tol);
  return r;
}

}  // namespace expcomm
