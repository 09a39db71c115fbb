#include <doctest.h>

#include <cmath>
#include <numbers>

#include "expcomm/funcalc.hpp"
#include "expcomm/generators.hpp"
#include "expcomm/theorems.hpp"
#include "oracles.hpp"

using namespace expcomm;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
const ToleranceConfig kTol{};

ComplexMatrix diag(std::vector<Complex> d) { return ComplexMatrix::diagonal(std::span<const Complex>(d)); }
const ComplexMatrix kSwap{{0.0, 1.0}, {1.0, 0.0}};
}  // namespace

TEST_CASE("verdict finalization") {
  ImplicationResult r;
  r.hypothesis_residuals["h"] = 1e-12;
  r.conclusion_residual = 1e-3;
  r.finalize(kTol);
  CHECK(r.verdict == Verdict::Violated);
  r.hypothesis_conditions["c"] = false;
  r.finalize(kTol);
  CHECK(r.verdict == Verdict::Vacuous);
  r.hypothesis_conditions["c"] = true;
  r.conclusion_residual = 1e-9;
  r.finalize(kTol);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.consistent(kTol));
  r.verdict = Verdict::Violated;
  CHECK_FALSE(r.consistent(kTol));
  CHECK(std::string(to_string(Verdict::Confirmed)) == "CONFIRMED");
}

TEST_CASE("Wermuth checker") {
  Rng rng(1);
  auto [a, b] = random_commuting_pair(rng, 4, PairKind::Hermitian, {kDefaultHermitianWindow});
  ImplicationResult r = check_wermuth(a, b);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.diagnostics.at("forward_consistent") == 1.0);

  const ComplexMatrix d = diag({1.0, 2.0});
  r = check_wermuth(d, kSwap);
  CHECK(r.verdict == Verdict::Vacuous);
  const ComplexMatrix ea = oracle::expm(d);
  const ComplexMatrix eb = oracle::expm(kSwap);
  CHECK(r.hypothesis_residuals.at("exp_commutator") == Approx(commutator_residual(ea, eb)).epsilon(1e-10));
  CHECK(r.hypothesis_residuals.at("exp_commutator") > 0.01);
  CHECK(r.diagnostics.at("forward_consistent") == 1.0);

  const ComplexMatrix h = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  CHECK(check_wermuth(h, h).verdict == Verdict::Confirmed);
  CHECK_THROWS_AS(check_wermuth(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, d), PreconditionError);
}

TEST_CASE("Berberian solution space for U = I has real dimension n squared") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto basis = berberian_solution_space(ComplexMatrix::identity(n));
    CHECK(basis.size() == n * n);
    for (const auto& x : basis) CHECK(hermitian_defect(x) < 1e-12);
  }
}

TEST_CASE("Berberian solution space for the antipodal pair") {
  const ComplexMatrix u = diag({1.0, -1.0});
  const ComplexMatrix x{{0.0, 1.0}, {-1.0, 0.0}};
  CHECK(u * x * adjoint(u) == adjoint(x));
  const auto basis = berberian_solution_space(u);
  CHECK(basis.size() == 4);
  // x lies in the span: project onto the real span of the basis
  double worst = 0.0;
  for (const auto& b : basis) worst = std::max(worst, hermitian_defect(b));
  CHECK(worst == Approx(2.0));
  const ImplicationResult r = check_berberian(u);
  CHECK(r.verdict == Verdict::Vacuous);
  CHECK(r.conclusion_residual == Approx(2.0));
}

TEST_CASE("Berberian nullspace dimension matches the analytic count") {
  Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.below(5);
    const ComplexMatrix v = random_unitary(rng, n);
    std::vector<Complex> u(n);
    for (auto& z : u) {
      // coarse angles make coincidences and antipodes common
      z = std::polar(1.0, kPi / 2 * static_cast<double>(rng.below(4)));
    }
    const ComplexMatrix un = SpectralDecomposition{v, u}.reconstruct();
    const std::size_t expected = oracle::berberian_dimension(u);
    CHECK(berberian_solution_space(un).size() == expected);
    CHECK(berberian_solution_space_dense(un).size() == expected);
  }
}

TEST_CASE("Berberian: cramped unitaries admit only Hermitian solutions") {
  const ComplexMatrix u = diag({std::polar(1.0, kPi / 6), std::polar(1.0, kPi / 3)});
  for (const auto& x : berberian_solution_space(u)) CHECK(hermitian_defect(phase_normalize(x)) < 1e-8);
  for (const auto& x : berberian_solution_space_dense(u)) CHECK(hermitian_defect(x) < 1e-8);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix w = random_cramped_unitary(rng, 4, {rng.uniform(0.0, 2 * kPi), 0.9 * kPi});
    const ImplicationResult r = check_berberian(w);
    CHECK(r.verdict == Verdict::Confirmed);
    CHECK(r.conclusion_residual < 1e-8);
    CHECK(r.diagnostics.at("max_phase_normalized_defect") < 1e-8);
    for (const auto& x : berberian_solution_space_dense(w)) CHECK(hermitian_defect(x) < 1e-8);
  }
  const ComplexMatrix scalar = std::polar(1.0, 1.3) * ComplexMatrix::identity(3);
  const ImplicationResult r = check_berberian(scalar);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.diagnostics.at("nullspace_dim") == 9.0);
}

TEST_CASE("phase_normalize") {
  const ComplexMatrix h{{2.0, Complex(0, 1)}, {Complex(0, -1), 1.0}};
  const ComplexMatrix rotated = std::polar(1.0, 0.7) * h;
  CHECK(hermitian_defect(phase_normalize(rotated)) < 1e-15);
  CHECK(trace(phase_normalize(rotated)).real() == Approx(3.0));
  const ComplexMatrix skew{{0.0, 1.0}, {-1.0, 0.0}};
  CHECK(phase_normalize(skew) == skew);
}

TEST_CASE("Fuglede checker") {
  Rng rng(5);
  const ComplexMatrix n = random_normal_sample(rng, 4, kDefaultReWindow, kDefaultReWindow).matrix;
  const ComplexMatrix x = Complex(0.5) * n * n + Complex(2.0, 1.0) * n + ComplexMatrix::identity(4);
  ImplicationResult r = check_fuglede(n, x);
  CHECK(r.verdict == Verdict::Confirmed);
  const ComplexMatrix nil{{0.0, 1.0}, {0.0, 0.0}};
  r = check_fuglede(diag({1.0, 2.0}), nil);
  CHECK(r.verdict == Verdict::Vacuous);
  // X block-constant on the eigenbasis of N with distinct eigenvalues
  const SpectralSample s = random_normal_sample(rng, 5, kDefaultReWindow, kDefaultReWindow);
  std::vector<Complex> xd(5);
  for (auto& z : xd) z = rng.complex_normal();
  const ComplexMatrix xb = SpectralDecomposition{s.construction.eigenvectors, xd}.reconstruct();
  r = check_fuglede(s.matrix, xb);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.conclusion_residual <= 1e-10);
}

TEST_CASE("proposition checker") {
  Rng rng(9);
  const ComplexMatrix v = random_unitary(rng, 3);
  const ComplexMatrix s = hermitian_part(SpectralDecomposition{v, {0.3, -1.0, 1.5}}.reconstruct());
  const ComplexMatrix n = SpectralDecomposition{v, {Complex(0.2, 0.5), Complex(-0.4, 2.0), Complex(0.9, 1.1)}}.reconstruct();
  CHECK(check_proposition_SN(s, n).verdict == Verdict::Confirmed);
  CHECK(check_proposition_SN(ComplexMatrix::identity(3), n).verdict == Verdict::Confirmed);

  const ComplexMatrix n2pi = diag({0.0, Complex(0, 2 * kPi)});
  const ImplicationResult r = check_proposition_SN(kSwap, n2pi);
  CHECK(r.verdict == Verdict::Vacuous);
  CHECK(r.hypothesis_residuals.at("exp_commutator") < 1e-12);
  CHECK_FALSE(r.hypothesis_conditions.at("im_spectrum_in_open_0_pi"));
  CHECK(r.conclusion_residual > 0.1);
}

TEST_CASE("main checker") {
  Rng rng(10);
  auto [m, n] = random_commuting_pair(rng, 4, PairKind::Normal, {});
  ImplicationResult r = check_main_MN(m, n);
  CHECK(r.verdict == Verdict::Confirmed);
  for (const char* k : {"CN", "AM", "AC", "BC", "AD", "BD", "fuglede_expMstar_expN", "expiB_expiD"})
    CHECK(r.diagnostics.at(k) <= 1e-9);
  CHECK(check_main_MN(n, n).verdict == Verdict::Confirmed);

  // M = i diag(0.5, 2pi + 0.5): e^M is scalar, so it commutes with any N.
  const ComplexMatrix m2 = diag({Complex(0, 0.5), Complex(0, 2 * kPi + 0.5)});
  const ComplexMatrix n2 = random_normal_sample(rng, 2, kDefaultReWindow, kInsideImWindow).matrix;
  r = check_main_MN(m2, n2);
  CHECK(r.verdict == Verdict::Vacuous);
  CHECK(r.hypothesis_residuals.at("exp_commutator") < 1e-12);
  CHECK_FALSE(r.hypothesis_conditions.at("im_spectrum_M_in_open_0_pi"));
  CHECK(r.hypothesis_conditions.at("im_spectrum_N_in_open_0_pi"));
  CHECK(r.conclusion_residual > 1e-3);
}

TEST_CASE("complex power identities") {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_hermitian_sample(rng, 4, {0.05, kPi - 0.05}).matrix;
    const ImplicationResult r = check_power_of_unitary_exp(a);
    CHECK(r.verdict == Verdict::Confirmed);
    // independent oracle: (e^{iA})^i = e^{-A}
    CHECK(oracle::rel(power_i(oracle::expm(kI * a), BranchCut::principal()),
                      oracle::expm(Complex(-1.0) * a)) < 1e-8);
    auto [p, q] = random_commuting_pair(rng, 4, PairKind::Normal, {{0.2, 2.0}, {-1.5, 1.5}});
    const ImplicationResult c = check_powers_commute(p, q);
    CHECK(c.verdict == Verdict::Confirmed);
    CHECK(c.conclusion_residual <= 1e-8);
  }
  const ComplexMatrix out = diag({0.5, 4.0});
  CHECK(check_power_of_unitary_exp(out).verdict == Verdict::Vacuous);
}

TEST_CASE("block construction") {
  const ComplexMatrix z{{0.0}};
  auto [at0, bt0] = build_tilde(z, z, z);
  CHECK(at0 == ComplexMatrix::zero(2));
  CHECK(bt0 == ComplexMatrix::zero(2));
  auto [at, bt] = build_tilde(ComplexMatrix{{1.0}}, ComplexMatrix{{2.0}}, ComplexMatrix{{3.0}});
  CHECK(at == kSwap);
  CHECK(bt == diag({2.0, 3.0}));
  Rng rng(2);
  const ComplexMatrix a = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  const ComplexMatrix b = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  auto [ta, tb] = build_tilde(a, b, a);
  CHECK(ta == adjoint(ta));
  CHECK(tb == adjoint(tb));
}

TEST_CASE("closed-form block exponential") {
  CHECK(oracle::rel(exp_tilde_closed_form(ComplexMatrix::zero(2)), ComplexMatrix::identity(4)) == 0.0);
  const ComplexMatrix e = exp_tilde_closed_form(ComplexMatrix{{std::log(2.0)}});
  CHECK(frobenius_distance(e, ComplexMatrix{{1.25, 0.75}, {0.75, 1.25}}) < 1e-15);
  Rng rng(3);
  for (std::size_t n = 1; n <= 6; ++n) {
    const ComplexMatrix a = random_hermitian_sample(rng, n, kDefaultHermitianWindow).matrix;
    const ComplexMatrix tilde = build_tilde(a, a, a).first;
    CHECK(oracle::rel(exp_tilde_closed_form(a), oracle::expm(tilde)) < 1e-12);
  }
}

TEST_CASE("three-operator checker") {
  Rng rng(4);
  auto [a, b] = random_commuting_pair(rng, 3, PairKind::Hermitian, {kDefaultHermitianWindow});
  ImplicationResult r = check_three_operator(a, b, b);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.diagnostics.at("block_exp_commutator") <= kTol.tol_flag);

  const ComplexMatrix b2 = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  const ComplexMatrix c2 = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  r = check_three_operator(ComplexMatrix::zero(3), b2, c2);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.conclusion_residual == 0.0);

  const ComplexMatrix a3 = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  r = check_three_operator(a3, b2, c2);
  CHECK(r.verdict == Verdict::Vacuous);
  CHECK(r.diagnostics.at("max_equation_residual") > kTol.tol_flag);
  CHECK(r.diagnostics.at("block_exp_commutator") > kTol.tol_flag);
}

TEST_CASE("three-operator checker on spectrum symmetric A") {
  // A = diag(1, -1), B mixes the pair, C = A^-1 B A flips the off-diagonal sign.
  const ComplexMatrix a = diag({1.0, -1.0});
  const ComplexMatrix b{{0.5, Complex(0.2, 0.3)}, {Complex(0.2, -0.3), -0.1}};
  const ComplexMatrix c{{0.5, Complex(-0.2, -0.3)}, {Complex(-0.2, 0.3), -0.1}};
  CHECK(frobenius_norm(a * c - b * a) < 1e-15);
  const ImplicationResult r = check_three_operator(a, b, c);
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.diagnostics.at("max_equation_residual") <= kTol.tol_flag);
}
