#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "expcomm/funcalc.hpp"
#include "expcomm/spectral.hpp"
#include "expcomm/theorems.hpp"

namespace expcomm {
namespace {

// Column of the real representation of X -> U X U* - X* for the basis
// element coef * E_ij (coef = 1 or i). Layout: [Re X row-major, Im X row-major].
void fill_column(Eigen::MatrixXd& l, const ComplexMatrix& u, std::size_t i, std::size_t j,
                 Complex coef, Eigen::Index col) {
  const std::size_t n = u.dim();
  const std::size_t nn = n * n;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      Complex v = coef * u(r, i) * std::conj(u(s, j));
      if (r == j && s == i) v -= std::conj(coef);
      const std::size_t p = r * n + s;
      l(static_cast<Eigen::Index>(p), col) = v.real();
      l(static_cast<Eigen::Index>(nn + p), col) = v.imag();
    }
  }
}

double equation_defect(const ComplexMatrix& u, const ComplexMatrix& x) {
  return frobenius_distance(u * x * adjoint(u), adjoint(x)) / std::max(frobenius_norm(x), kEpsFloor);
}

void check_solution(const ComplexMatrix& u, const ComplexMatrix& x, const ToleranceConfig& tol) {
  const double defect = equation_defect(u, x);
  if (!(defect <= tol.tol_conclude)) {
    throw NumericalError("berberian_solution_space: nullspace vector fails U X U* = X* (residual " +
                         std::to_string(defect) + ")");
  }
}

}  // namespace

std::vector<ComplexMatrix> berberian_solution_space_dense(const ComplexMatrix& u,
                                                          const ToleranceConfig& tol) {
  require_unitary(u, tol, "berberian_solution_space_dense");
  const std::size_t n = u.dim();
  const std::size_t nn = n * n;
  const auto size = static_cast<Eigen::Index>(2 * nn);

  Eigen::MatrixXd l(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto p = static_cast<Eigen::Index>(i * n + j);
      fill_column(l, u, i, j, Complex(1.0, 0.0), p);
      fill_column(l, u, i, j, Complex(0.0, 1.0), static_cast<Eigen::Index>(nn) + p);
    }
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(l, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double threshold = tol.tol_nullspace * (sigma.size() > 0 ? sigma(0) : 0.0);

  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > threshold) continue;
    const auto v = svd.matrixV().col(k);
    ComplexMatrix x(n);
    for (std::size_t p = 0; p < nn; ++p) {
      x(p / n, p % n) = Complex(v(static_cast<Eigen::Index>(p)), v(static_cast<Eigen::Index>(nn + p)));
    }
    x *= Complex(1.0 / std::max(frobenius_norm(x), kEpsFloor));
    check_solution(u, x, tol);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<ComplexMatrix> berberian_solution_space(const ComplexMatrix& u,
                                                    const ToleranceConfig& tol) {
  require_unitary(u, tol, "berberian_solution_space");
  const std::size_t n = u.dim();
  const SpectralDecomposition sd = normal_eig(u, tol);
  const ComplexMatrix& v = sd.eigenvectors;
  const std::vector<Complex>& d = sd.eigenvalues;

  // Unknowns (Re y_jk, Im y_jk, Re y_kj, Im y_kj); rows are the real and
  // imaginary parts of w y_jk - conj(y_kj) and conj(w) y_kj - conj(y_jk)
  // with w = d_j conj(d_k). For j = k only the first two unknowns exist.
  struct Block {
    std::size_t j, k;
    Eigen::MatrixXd m;
  };
  std::vector<Block> blocks;
  double sigma_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const Complex w = d[j] * std::conj(d[k]);
      const double wr = w.real();
      const double wi = w.imag();
      Eigen::MatrixXd m;
      if (j == k) {
        m.resize(2, 2);
        m << wr - 1.0, -wi, wi, wr + 1.0;
      } else {
        m.resize(4, 4);
        m << wr, -wi, -1.0, 0.0,
             wi, wr, 0.0, 1.0,
             -1.0, 0.0, wr, wi,
             0.0, 1.0, -wi, wr;
      }
      sigma_max = std::max(sigma_max, m.norm() > 0.0 ? Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0) : 0.0);
      blocks.push_back({j, k, std::move(m)});
    }
  }
  const double threshold = tol.tol_nullspace * sigma_max;

  std::vector<ComplexMatrix> basis;
  const ComplexMatrix vh = adjoint(v);
  for (const Block& b : blocks) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    for (Eigen::Index c = 0; c < sigma.size(); ++c) {
      if (sigma(c) > threshold) continue;
      const auto z = svd.matrixV().col(c);
      ComplexMatrix y(n);
      y(b.j, b.k) = Complex(z(0), z(1));
      if (b.j != b.k) y(b.k, b.j) = Complex(z(2), z(3));
      ComplexMatrix x = v * y * vh;
      x *= Complex(1.0 / std::max(frobenius_norm(x), kEpsFloor));
      check_solution(u, x, tol);
      basis.push_back(std::move(x));
    }
  }
  return basis;
}

ComplexMatrix phase_normalize(const ComplexMatrix& x) {
  const double norm = frobenius_norm(x);
  const double negligible = 1e-10 * norm;
  const Complex t = trace(x);
  Complex anchor = t;
  if (std::abs(t) <= negligible) {
    anchor = Complex{};
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (std::abs(x(i, i)) > std::abs(anchor)) anchor = x(i, i);
    }
    if (std::abs(anchor) <= negligible) return x;
  }
  return (std::conj(anchor) / std::abs(anchor)) * x;
}

ImplicationResult check_berberian(const ComplexMatrix& u, const ToleranceConfig& tol) {
  ImplicationResult r;
  r.theorem = "berberian";
  r.hypothesis_conditions["cramped"] = is_cramped(u, tol);

  const std::vector<ComplexMatrix> basis = berberian_solution_space(u, tol);
  double worst_defect = 0.0;
  double worst_normalized = 0.0;
  double worst_equation = 0.0;
  for (const ComplexMatrix& x : basis) {
    worst_equation = std::max(worst_equation, equation_defect(u, x));
    worst_defect = std::max(worst_defect, hermitian_defect(x));
    worst_normalized = std::max(worst_normalized, hermitian_defect(phase_normalize(x)));
  }
  r.conclusion_residual = worst_defect;
  r.diagnostics["max_phase_normalized_defect"] = worst_normalized;
  r.diagnostics["nullspace_dim"] = static_cast<double>(basis.size());
  r.diagnostics["max_equation_residual"] = worst_equation;
  r.diagnostics["largest_circular_gap"] =
      largest_circular_gap(normal_eig(u, tol).eigenvalues).width;
  r.finalize(tol);
  return r;
}

}  // namespace expcomm
