#include "expcomm/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "expcomm/tolerance.hpp"

namespace expcomm {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw PreconditionError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                            " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw PreconditionError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw PreconditionError("ComplexMatrix: rows must form a square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw PreconditionError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexMatrix adjoint(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  double sumsq = 1.0;
  for (const Complex& z : m.data()) {
    for (double part : {z.real(), z.imag()}) {
      const double a = std::abs(part);
      if (a == 0.0) continue;
      if (scale < a) {
        sumsq = 1.0 + sumsq * (scale / a) * (scale / a);
        scale = a;
      } else {
        sumsq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(sumsq);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_norm(a - b);
}

Complex trace(const ComplexMatrix& m) {
  Complex t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double commutator_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator_residual");
  const double denom = std::max(frobenius_norm(a) * frobenius_norm(b), kEpsFloor);
  return frobenius_norm(a * b - b * a) / denom;
}

double equation_residual(const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& z,
                         const ComplexMatrix& w) {
  require_same_dim(x, y, "equation_residual");
  require_same_dim(z, w, "equation_residual");
  require_same_dim(x, z, "equation_residual");
  const double scale = std::max(frobenius_norm(x) * frobenius_norm(y),
                                frobenius_norm(z) * frobenius_norm(w));
  return frobenius_norm(x * y - z * w) / std::max(scale, kEpsFloor);
}

double hermitian_defect(const ComplexMatrix& m) {
  return frobenius_norm(m - adjoint(m)) / std::max(frobenius_norm(m), kEpsFloor);
}

double unitarity_residual(const ComplexMatrix& m) {
  return frobenius_norm(adjoint(m) * m - ComplexMatrix::identity(m.dim()));
}

ComplexMatrix block2x2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d) {
  require_same_dim(a, b, "block2x2");
  require_same_dim(a, c, "block2x2");
  require_same_dim(a, d, "block2x2");
  const std::size_t n = a.dim();
  ComplexMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(i, j);
      out(i, j + n) = b(i, j);
      out(i + n, j) = c(i, j);
      out(i + n, j + n) = d(i, j);
    }
  }
  return out;
}

ComplexMatrix sub_block(const ComplexMatrix& m, std::size_t block_row, std::size_t block_col) {
  if (m.dim() % 2 != 0 || block_row > 1 || block_col > 1) {
    throw PreconditionError("sub_block: expected an even-dimensional 2x2 block matrix");
  }
  const std::size_t n = m.dim() / 2;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i + block_row * n, j + block_col * n);
  return out;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw PreconditionError(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

void ToleranceConfig::validate() const {
  for (double v : {tol_normal, tol_hermitian, tol_unitary, tol_recon, tol_flag, tol_conclude,
                   spectral_margin, angular_margin, tol_nullspace}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw PreconditionError("ToleranceConfig: tolerances must be finite and nonnegative");
    }
  }
  if (!(tol_flag < tol_conclude)) {
    throw PreconditionError("ToleranceConfig: tol_flag must be strictly below tol_conclude");
  }
}

}  // namespace expcomm
