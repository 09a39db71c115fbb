#include <doctest.h>

#include <cmath>
#include <numbers>

#include "expcomm/funcalc.hpp"
#include "expcomm/generators.hpp"
#include "oracles.hpp"

using namespace expcomm;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ComplexMatrix diag(std::vector<Complex> d) { return ComplexMatrix::diagonal(std::span<const Complex>(d)); }
}  // namespace

TEST_CASE("apply_fn basics") {
  Rng rng(2);
  const ComplexMatrix n = random_normal_sample(rng, 4, kDefaultReWindow, {-1.0, 1.0}).matrix;
  CHECK(oracle::rel(apply_fn(n, [](Complex z) { return z; }), n) < 1e-9);
  const ComplexMatrix e = apply_fn(diag({0.0, Complex(0, kPi)}), [](Complex z) { return std::exp(z); });
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(e(1, 1) + 1.0) < 1e-15);
  CHECK(oracle::rel(apply_fn(n, [](Complex z) { return std::exp(z); }), taylor_exp(n)) < 1e-9);
  CHECK_THROWS_AS(apply_fn(diag({0.0, 1.0}), [](Complex z) { return 1.0 / z; }), PreconditionError);
}

TEST_CASE("mat_exp examples") {
  CHECK(oracle::rel(mat_exp(ComplexMatrix::zero(3)), ComplexMatrix::identity(3)) == 0.0);
  const ComplexMatrix d = mat_exp(diag({std::log(2.0), std::log(3.0)}));
  CHECK(d(0, 0).real() == Approx(2.0));
  CHECK(d(1, 1).real() == Approx(3.0));
  const ComplexMatrix rot{{0.0, kPi}, {-kPi, 0.0}};
  const ComplexMatrix minus_i = Complex(-1.0) * ComplexMatrix::identity(2);
  CHECK(frobenius_distance(mat_exp(rot), minus_i) < 1e-14);
  CHECK(frobenius_distance(taylor_exp(rot), minus_i) < 1e-13);
}

TEST_CASE("taylor_exp examples and independent oracle") {
  CHECK(taylor_exp(ComplexMatrix::zero(2)) == ComplexMatrix::identity(2));
  const ComplexMatrix nil{{0.0, 1.0}, {0.0, 0.0}};
  CHECK(frobenius_distance(taylor_exp(nil), ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}) < 1e-15);
  Rng rng(44);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix h = random_hermitian_sample(rng, n, {-4.0, 4.0}).matrix;
    CHECK(oracle::rel(taylor_exp(h), mat_exp(h)) < 1e-10);
    CHECK(oracle::rel(taylor_exp(h), oracle::expm(h)) < 1e-12);
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = 3.0 * rng.complex_normal();
    CHECK(oracle::rel(taylor_exp(g), oracle::expm(g)) < 1e-11);
  }
}

TEST_CASE("branch cut conventions") {
  const BranchCut p = BranchCut::principal();
  CHECK(p.cut_angle == Approx(kPi));
  CHECK(p.lift_arg(Complex(1, 0)) == 0.0);
  CHECK(p.lift_arg(Complex(-1, 0)) == Approx(kPi));
  CHECK(p.lift_arg(Complex(0, -1)) == Approx(-kPi / 2));
  const Complex e = std::exp(1.0);
  CHECK(std::abs(p.log(e) - 1.0) < 1e-15);
  CHECK(std::abs(p.log(kI) - Complex(0, kPi / 2)) < 1e-15);
  const BranchCut down{3 * kPi / 2};
  CHECK(down.lift_arg(Complex(-1, 0)) == Approx(kPi));
  CHECK(down.lift_arg(Complex(1, -1e-3)) == Approx(-1e-3).epsilon(1e-9));
  CHECK(down.distance_to_cut(Complex(0, -1)) == Approx(0.0));
  CHECK(down.distance_to_cut(Complex(0, 1)) == Approx(kPi));
}

TEST_CASE("choose_branch examples") {
  const std::vector<Complex> a{1.0, kI};
  CHECK(choose_branch(a).cut_angle == Approx(5 * kPi / 4));
  const std::vector<Complex> b{2.0, 0.5, 7.0};
  CHECK(choose_branch(b).cut_angle == Approx(kPi));
  const std::vector<Complex> c{1.0, -1.0};
  CHECK(choose_branch(c).cut_angle == Approx(kPi / 2));
  const std::vector<Complex> z{1.0, 1e-9};
  CHECK_THROWS_AS(choose_branch(z), PreconditionError);
}

TEST_CASE("largest circular gap") {
  const std::vector<Complex> pts{1.0, kI, -1.0};
  CHECK(largest_circular_gap(pts).width == Approx(kPi));
  CHECK(largest_circular_gap(std::vector<Complex>{}).width == Approx(2 * kPi));
  CHECK(largest_circular_gap(std::vector<Complex>{kI}).width == Approx(2 * kPi));
}

TEST_CASE("mat_log examples and round trip") {
  const double e = std::exp(1.0);
  const ComplexMatrix l = mat_log(diag({e, e * e}), BranchCut::principal());
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(l(1, 1) - 2.0) < 1e-14);
  CHECK(std::abs(mat_log(diag({kI}), BranchCut::principal())(0, 0) - Complex(0, kPi / 2)) < 1e-15);
  Rng rng(13);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix m = random_normal_sample(rng, n, {0.2, 3.0}, {-2.0, 2.0}).matrix;
    CHECK(oracle::rel(mat_exp(mat_log(m, BranchCut::principal())), m) < 1e-9);
    CHECK(oracle::rel(oracle::expm(mat_log(m)), m) < 1e-9);
  }
  CHECK_THROWS_AS(mat_log(diag({-1.0, 1.0}), BranchCut::principal()), PreconditionError);
}

TEST_CASE("power_i examples") {
  const double e = std::exp(1.0);
  const ComplexMatrix p = power_i(diag({e}), BranchCut::principal());
  CHECK(std::abs(p(0, 0) - Complex(std::cos(1.0), std::sin(1.0))) < 1e-15);
  const ComplexMatrix u = diag({std::exp(kI * (kPi / 2))});
  CHECK(std::abs(power_i(u, BranchCut::principal())(0, 0) - std::exp(-kPi / 2)) < 1e-15);
  Rng rng(19);
  auto [a, b] = random_commuting_pair(rng, 5, PairKind::Normal, {{0.2, 2.0}, {-1.5, 1.5}});
  const ComplexMatrix pa = power_i(a);
  const ComplexMatrix pb = power_i(b);
  CHECK(commutator_residual(pa, pb) < 1e-9);
}

TEST_CASE("cartesian decomposition") {
  Rng rng(23);
  const ComplexMatrix h = random_hermitian_sample(rng, 3, kDefaultHermitianWindow).matrix;
  CartesianPair c = cartesian(h);
  CHECK(oracle::rel(c.real_part, h) < 1e-15);
  CHECK(frobenius_norm(c.imag_part) < 1e-15);
  c = cartesian(kI * h);
  CHECK(frobenius_norm(c.real_part) < 1e-15);
  CHECK(oracle::rel(c.imag_part, h) < 1e-15);
  c = cartesian(diag({Complex(1, 1), Complex(2, -1)}));
  CHECK(c.real_part == diag({1.0, 2.0}));
  CHECK(c.imag_part == diag({1.0, -1.0}));
}

TEST_CASE("spectrum_in_open_interval examples") {
  CHECK(spectrum_in_open_interval(diag({0.1, 3.0}), 0.0, kPi));
  CHECK_FALSE(spectrum_in_open_interval(diag({0.0, 1.0}), 0.0, kPi));
  CHECK_FALSE(spectrum_in_open_interval(diag({1.0, 2 * kPi}), 0.0, kPi));
  CHECK(interval_slack(diag({1.0, 2 * kPi}), 0.0, kPi) < 0.0);
}

TEST_CASE("is_cramped examples") {
  CHECK(is_cramped(diag({std::polar(1.0, kPi / 6), std::polar(1.0, kPi / 3)})));
  CHECK_FALSE(is_cramped(diag({1.0, -1.0})));
  CHECK_FALSE(is_cramped(diag({1.0, kI, -1.0})));
  CHECK(is_cramped(diag({std::exp(kI * 2.0)})));
  CHECK_THROWS_AS(is_cramped(diag({2.0, 1.0})), PreconditionError);
}

TEST_CASE("is_cramped agrees with a brute-force semicircle test") {
  Rng rng(101);
  int cramped = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<Complex> pts(n);
    const double spread = rng.uniform(0.2, 2.0 * kPi);
    for (auto& z : pts) z = std::polar(1.0, rng.uniform(0.0, spread));
    // keep away from the boundary case of an exact semicircle
    const double gap = largest_circular_gap(pts).width;
    if (std::abs(gap - kPi) < 1e-6) continue;
    const bool expected = oracle::brute_force_cramped(pts, 1e-9);
    CHECK(is_cramped(diag(pts)) == expected);
    cramped += expected ? 1 : 0;
  }
  CHECK(cramped > 50);
  CHECK(cramped < 350);
}

TEST_CASE("cosh_sinh examples") {
  auto [c0, s0] = cosh_sinh(ComplexMatrix::zero(2));
  CHECK(c0 == ComplexMatrix::identity(2));
  CHECK(frobenius_norm(s0) == 0.0);
  auto [c, s] = cosh_sinh(diag({std::log(2.0)}));
  CHECK(c(0, 0).real() == Approx(1.25).epsilon(1e-15));
  CHECK(s(0, 0).real() == Approx(0.75).epsilon(1e-15));
  Rng rng(7);
  const ComplexMatrix h = random_hermitian_sample(rng, 5, kDefaultHermitianWindow).matrix;
  auto [ch, sh] = cosh_sinh(h);
  const ComplexMatrix ep = oracle::expm(h);
  const ComplexMatrix em = oracle::expm(Complex(-1.0) * h);
  CHECK(oracle::rel(ch, Complex(0.5) * (ep + em)) < 1e-12);
  CHECK(oracle::rel(sh, Complex(0.5) * (ep - em)) < 1e-12);
}
