#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace expcomm {

using Complex = std::complex<double>;

/// Raised when an operation's input violates its precondition
/// (wrong shape, non-Hermitian input to a Hermitian routine, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative routine fails to converge or a computed
/// decomposition fails its own post-check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense square complex matrix, row-major storage.
///
/// Value type: every arithmetic operation returns a new matrix. Entries are
/// required to be finite; constructors fed with external data reject NaN/Inf.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);
  static ComplexMatrix diagonal(std::span<const double> entries);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  bool all_finite() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// (M + M*)/2, i.e. the nearest Hermitian matrix in Frobenius norm.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& m);

/// Guards relative residuals against 0/0 for zero operands.
inline constexpr double kEpsFloor = 1e-300;

/// ||AB - BA||_F / max(||A||_F ||B||_F, kEpsFloor).
double commutator_residual(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||XY - ZW||_F / max(max(||X|| ||Y||, ||Z|| ||W||), kEpsFloor); reduces to
/// commutator_residual when X = W and Y = Z.
double equation_residual(const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& z,
                         const ComplexMatrix& w);

/// ||M - M*||_F / max(||M||_F, kEpsFloor).
double hermitian_defect(const ComplexMatrix& m);

/// ||M* M - I||_F.
double unitarity_residual(const ComplexMatrix& m);

/// Blocks [[a, b], [c, d]] into a 2n x 2n matrix.
ComplexMatrix block2x2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ComplexMatrix& d);

/// Extracts the n x n block at block-row/col (r, c) of a 2n x 2n matrix.
ComplexMatrix sub_block(const ComplexMatrix& m, std::size_t block_row, std::size_t block_col);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

}  // namespace expcomm
