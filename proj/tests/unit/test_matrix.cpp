#include <doctest.h>

#include <cmath>
#include <limits>

#include "expcomm/generators.hpp"
#include "expcomm/matrix.hpp"
#include "expcomm/tolerance.hpp"
#include "oracles.hpp"

using namespace expcomm;
using doctest::Approx;

TEST_CASE("adjoint conjugates and transposes") {
  const ComplexMatrix a{{Complex(0, 1)}};
  CHECK(adjoint(a)(0, 0) == Complex(0, -1));
  const ComplexMatrix j{{0.0, 1.0}, {0.0, 0.0}};
  CHECK(adjoint(j) == ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}});
  const ComplexMatrix m{{Complex(1, 2), Complex(3, -1)}, {Complex(0, 4), Complex(-2, 0)}};
  CHECK(adjoint(adjoint(m)) == m);
}

TEST_CASE("commutator residual examples") {
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(commutator_residual(ComplexMatrix::identity(2), b) == 0.0);
  const ComplexMatrix a{{1.0, 0.0}, {0.0, 2.0}};
  // ||AB - BA|| = sqrt(2), ||A|| = sqrt(5), ||B|| = sqrt(2)
  CHECK(frobenius_norm(a * b - b * a) == Approx(std::sqrt(2.0)));
  CHECK(commutator_residual(a, b) == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(commutator_residual(a, b) == Approx(0.447).epsilon(1e-3));
  const ComplexMatrix d{{Complex(3, 1), 0.0}, {0.0, -2.0}};
  CHECK(commutator_residual(a, d) == 0.0);
}

TEST_CASE("commutator residual of zero matrices is zero, not NaN") {
  const ComplexMatrix z = ComplexMatrix::zero(3);
  CHECK(commutator_residual(z, z) == 0.0);
  CHECK(equation_residual(z, z, z, z) == 0.0);
  CHECK(hermitian_defect(z) == 0.0);
}

TEST_CASE("frobenius norm does not overflow or underflow") {
  const ComplexMatrix big{{1e200, 1e200}, {1e200, 1e200}};
  CHECK(frobenius_norm(big) == Approx(2e200));
  const ComplexMatrix tiny{{1e-200, 0.0}, {0.0, 1e-200}};
  CHECK(frobenius_norm(tiny) == Approx(std::sqrt(2.0) * 1e-200));
}

TEST_CASE("arithmetic agrees with an independent implementation") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix a(4);
    ComplexMatrix b(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        a(i, j) = rng.complex_normal();
        b(i, j) = rng.complex_normal();
      }
    const auto ea = oracle::to_eigen(a);
    const auto eb = oracle::to_eigen(b);
    CHECK(oracle::rel(a * b, oracle::from_eigen(ea * eb)) < 1e-14);
    CHECK(oracle::rel(adjoint(a), oracle::from_eigen(ea.adjoint())) == 0.0);
    CHECK(frobenius_norm(a) == Approx(ea.norm()).epsilon(1e-14));
    CHECK(std::abs(trace(a) - ea.trace()) < 1e-14);
  }
}

TEST_CASE("hermitian part is exactly Hermitian") {
  Rng rng(9);
  ComplexMatrix m(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m(i, j) = rng.complex_normal();
  const ComplexMatrix h = hermitian_part(m);
  CHECK(h == adjoint(h));
  CHECK(hermitian_defect(h) == 0.0);
}

TEST_CASE("unitarity residual") {
  CHECK(unitarity_residual(ComplexMatrix::identity(3)) == 0.0);
  const ComplexMatrix rot{{0.0, -1.0}, {1.0, 0.0}};
  CHECK(unitarity_residual(rot) == 0.0);
  CHECK(unitarity_residual(Complex(2.0) * ComplexMatrix::identity(2)) == Approx(std::sqrt(18.0)));
}

TEST_CASE("block assembly round trip") {
  const ComplexMatrix a{{1.0}};
  const ComplexMatrix b{{2.0}};
  const ComplexMatrix c{{3.0}};
  const ComplexMatrix d{{4.0}};
  const ComplexMatrix m = block2x2(a, b, c, d);
  CHECK(m == ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}});
  CHECK(sub_block(m, 0, 1) == b);
  CHECK(sub_block(m, 1, 0) == c);
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), PreconditionError);
  CHECK_THROWS_AS(ComplexMatrix(1, {Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)}),
                  PreconditionError);
  CHECK_THROWS_AS(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), PreconditionError);
  CHECK_THROWS_AS(commutator_residual(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                  PreconditionError);
}

TEST_CASE("tolerance validation") {
  ToleranceConfig tol;
  CHECK_NOTHROW(tol.validate());
  tol.tol_flag = 1e-6;
  tol.tol_conclude = 1e-7;
  CHECK_THROWS_AS(tol.validate(), PreconditionError);
  ToleranceConfig neg;
  neg.tol_recon = -1.0;
  CHECK_THROWS_AS(neg.validate(), PreconditionError);
  ToleranceConfig nan;
  nan.spectral_margin = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(nan.validate(), PreconditionError);
}
