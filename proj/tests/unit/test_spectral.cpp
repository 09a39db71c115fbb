#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expcomm/generators.hpp"
#include "expcomm/spectral.hpp"
#include "oracles.hpp"

using namespace expcomm;
using doctest::Approx;

namespace {

double reconstruction_error(const SpectralDecomposition& sd, const ComplexMatrix& m) {
  return oracle::rel(sd.reconstruct(), m);
}

}  // namespace

TEST_CASE("normality of standard examples") {
  CHECK(is_normal(ComplexMatrix::diagonal(std::vector<Complex>{Complex(1, 2), Complex(-3, 0)})));
  const ComplexMatrix jordan{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_FALSE(is_normal(jordan));
  const ComplexMatrix gap = adjoint(jordan) * jordan - jordan * adjoint(jordan);
  CHECK(gap == ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}});
  Rng rng(3);
  CHECK(is_normal(random_unitary(rng, 5)));
  CHECK(is_normal(random_hermitian_sample(rng, 5, kDefaultHermitianWindow).matrix));
}

TEST_CASE("hermitian_eig on diagonal input returns sorted values and a permutation") {
  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0});
  const SpectralDecomposition sd = hermitian_eig(d);
  REQUIRE(sd.eigenvalues.size() == 3);
  CHECK(sd.eigenvalues[0].real() == Approx(1.0));
  CHECK(sd.eigenvalues[1].real() == Approx(2.0));
  CHECK(sd.eigenvalues[2].real() == Approx(3.0));
  for (std::size_t c = 0; c < 3; ++c) {
    double max_abs = 0.0;
    for (std::size_t r = 0; r < 3; ++r) max_abs = std::max(max_abs, std::abs(sd.eigenvectors(r, c)));
    CHECK(max_abs == Approx(1.0));
  }
}

TEST_CASE("hermitian_eig of the swap matrix") {
  const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  const SpectralDecomposition sd = hermitian_eig(swap);
  const auto [lo, hi] = oracle::eig2x2(swap);
  CHECK(sd.eigenvalues[0].real() == Approx(lo.real()));
  CHECK(sd.eigenvalues[1].real() == Approx(hi.real()));
  CHECK(sd.eigenvalues[0].real() == Approx(-1.0));
  // columns are (1, -1)/sqrt2 and (1, 1)/sqrt2 up to a phase
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(sd.eigenvectors(0, 0) + sd.eigenvectors(1, 0)) < 1e-12);
  CHECK(std::abs(sd.eigenvectors(0, 0)) == Approx(s));
  CHECK(std::abs(sd.eigenvectors(0, 1) - sd.eigenvectors(1, 1)) < 1e-12);
}

TEST_CASE("hermitian_eig recovers constructed spectra") {
  Rng rng(17);
  for (std::size_t n = 1; n <= 9; ++n) {
    const SpectralSample s = random_hermitian_sample(rng, n, {-3.0, 3.0});
    const SpectralDecomposition sd = hermitian_eig(s.matrix);
    std::vector<double> want;
    for (const Complex& z : s.construction.eigenvalues) want.push_back(z.real());
    std::sort(want.begin(), want.end());
    const std::vector<double> ref = oracle::hermitian_eigenvalues(s.matrix);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(sd.eigenvalues[i].real() - want[i]) < 1e-10);
      CHECK(std::abs(sd.eigenvalues[i].real() - ref[i]) < 1e-12);
      CHECK(sd.eigenvalues[i].imag() == 0.0);
    }
    CHECK(reconstruction_error(sd, s.matrix) < 1e-12);
    CHECK(unitarity_residual(sd.eigenvectors) < 1e-12);
  }
}

TEST_CASE("hermitian_eig handles repeated and tightly clustered eigenvalues") {
  Rng rng(21);
  const ComplexMatrix v = random_unitary(rng, 6);
  for (double gap : {0.0, 1e-14, 1e-10, 1e-6}) {
    const std::vector<Complex> spectrum{1.0, 1.0 + gap, 1.0 + 2 * gap, -2.0, -2.0, 0.5};
    const ComplexMatrix h = hermitian_part(SpectralDecomposition{v, spectrum}.reconstruct());
    const SpectralDecomposition sd = hermitian_eig(h);
    CHECK(reconstruction_error(sd, h) < 1e-12);
    CHECK(unitarity_residual(sd.eigenvectors) < 1e-12);
  }
}

TEST_CASE("hermitian_eig input validation") {
  const ComplexMatrix jordan{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(hermitian_eig(jordan), PreconditionError);
  CHECK(hermitian_eig(ComplexMatrix::zero(3)).eigenvalues[2] == Complex(0.0));
}

TEST_CASE("simultaneous_diag mixes only the degenerate block") {
  const ComplexMatrix h = ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0, 2.0});
  const ComplexMatrix k{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 5.0}};
  const JointDiagonalization j = simultaneous_diag(h, k);
  for (std::size_t c = 0; c < 3; ++c) {
    const bool third = std::abs(j.unitary(2, c)) > 0.5;
    if (third) {
      CHECK(std::abs(j.unitary(0, c)) < 1e-12);
      CHECK(std::abs(j.unitary(1, c)) < 1e-12);
    } else {
      CHECK(std::abs(j.unitary(2, c)) < 1e-12);
    }
  }
  std::vector<double> ks = j.second;
  std::sort(ks.begin(), ks.end());
  CHECK(ks[0] == Approx(-1.0));
  CHECK(ks[1] == Approx(1.0));
  CHECK(ks[2] == Approx(5.0));
}

TEST_CASE("simultaneous_diag of H with itself") {
  Rng rng(8);
  const ComplexMatrix h = random_hermitian_sample(rng, 4, kDefaultHermitianWindow).matrix;
  const JointDiagonalization j = simultaneous_diag(h, h);
  for (std::size_t i = 0; i < 4; ++i) CHECK(j.first[i] == Approx(j.second[i]).epsilon(1e-10));
}

TEST_CASE("simultaneous_diag reconstructs commuting pairs") {
  Rng rng(12);
  for (std::size_t n = 1; n <= 8; ++n) {
    auto [h, k] = random_commuting_pair(rng, n, PairKind::Hermitian, {kDefaultHermitianWindow});
    const JointDiagonalization j = simultaneous_diag(h, k);
    const ComplexMatrix vh = adjoint(j.unitary);
    CHECK(oracle::rel(j.unitary * ComplexMatrix::diagonal(std::span<const double>(j.first)) * vh, h) < 1e-9);
    CHECK(oracle::rel(j.unitary * ComplexMatrix::diagonal(std::span<const double>(j.second)) * vh, k) < 1e-9);
  }
  const ComplexMatrix a = ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0});
  const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(simultaneous_diag(a, swap), PreconditionError);
}

TEST_CASE("normal_eig examples") {
  const double pi = std::numbers::pi;
  const ComplexMatrix u = ComplexMatrix::diagonal(
      std::vector<Complex>{std::polar(1.0, pi / 6), std::polar(1.0, pi / 3)});
  const SpectralDecomposition su = normal_eig(u);
  for (const Complex& z : su.eigenvalues) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
  CHECK(oracle::match_distance(su.eigenvalues, {std::polar(1.0, pi / 6), std::polar(1.0, pi / 3)}) < 1e-12);

  const ComplexMatrix skew{{0.0, -1.0}, {1.0, 0.0}};
  const SpectralDecomposition ss = normal_eig(skew);
  CHECK(oracle::match_distance(ss.eigenvalues, {Complex(0, 1), Complex(0, -1)}) < 1e-12);

  Rng rng(4);
  const ComplexMatrix v = random_unitary(rng, 2);
  const std::vector<Complex> spec{Complex(1, 2), Complex(3, -1)};
  const ComplexMatrix n = SpectralDecomposition{v, spec}.reconstruct();
  CHECK(oracle::match_distance(normal_eig(n).eigenvalues, spec) < 1e-9);
  CHECK_THROWS_AS(normal_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), PreconditionError);
}

TEST_CASE("normal_eig agrees with a general eigensolver") {
  Rng rng(31);
  for (std::size_t n = 2; n <= 8; ++n) {
    const SpectralSample s = random_normal_sample(rng, n, {-2.0, 2.0}, {-2.0, 2.0});
    const SpectralDecomposition sd = normal_eig(s.matrix);
    CHECK(oracle::match_distance(sd.eigenvalues, oracle::eigenvalues(s.matrix)) < 1e-10);
    CHECK(oracle::match_distance(sd.eigenvalues, s.construction.eigenvalues) < 1e-10);
    CHECK(reconstruction_error(sd, s.matrix) < 1e-12);
    CHECK(unitarity_residual(sd.eigenvectors) < 1e-12);
  }
}

TEST_CASE("normal_eig separates eigenvalues whose real parts nearly coincide") {
  Rng rng(6);
  const ComplexMatrix v = random_unitary(rng, 4);
  for (double dx : {0.0, 1e-15, 1e-12, 1e-9, 1e-8, 1e-7}) {
    const std::vector<Complex> spec{Complex(0.3, 0.5), Complex(0.3 + dx, 0.5 + 2 * std::numbers::pi),
                                    Complex(-0.7, 1.0), Complex(-0.7 - dx, 2.0)};
    const ComplexMatrix n = SpectralDecomposition{v, spec}.reconstruct();
    const SpectralDecomposition sd = normal_eig(n);
    CHECK(reconstruction_error(sd, n) < 1e-12);
    CHECK(oracle::match_distance(sd.eigenvalues, spec) < 1e-10);
  }
}

TEST_CASE("clustering helpers") {
  const std::vector<double> v{0.0, 1e-12, 1.0, 1.0 + 1e-9, 3.0};
  CHECK(cluster_threshold(v) == Approx(3e-8));
  const auto groups = cluster_sorted(v, cluster_threshold(v));
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(groups[1] == std::pair<std::size_t, std::size_t>{2, 4});
  CHECK(groups[2] == std::pair<std::size_t, std::size_t>{4, 5});
  CHECK(cluster_threshold({0.5}) == Approx(1e-8));
}
