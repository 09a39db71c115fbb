#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "expcomm/spectral.hpp"

namespace expcomm {
namespace {

// Dense real symmetric tridiagonal working copy; only the band plus one
// bulge position is ever touched.
class RealSquare {
 public:
  explicit RealSquare(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

struct Tridiagonal {
  ComplexMatrix basis;  // H = basis * T * basis^*, T real symmetric tridiagonal
  std::vector<double> diag;
  std::vector<double> offdiag;
};

// Householder reduction of a Hermitian matrix to tridiagonal form, then a
// diagonal phase change that makes the off-diagonal real and nonnegative.
Tridiagonal tridiagonalize(ComplexMatrix a) {
  const std::size_t n = a.dim();
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<Complex> v(n);
  std::vector<Complex> w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t lo = k + 1;
    double tail = 0.0;
    for (std::size_t i = lo + 1; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;

    const Complex x0 = a(lo, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = lo; i < n; ++i) {
      v[i] = a(i, k);
      if (i == lo) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    const double vnorm = std::sqrt(vnorm2);
    for (std::size_t i = lo; i < n; ++i) v[i] /= vnorm;

    // A <- P A with P = I - 2 v v^* acting on rows lo..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = lo; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      for (std::size_t i = lo; i < n; ++i) a(i, j) -= 2.0 * v[i] * s;
    }
    // A <- A P and Q <- Q P on columns lo..n-1.
    for (ComplexMatrix* m : {&a, &q}) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = lo; j < n; ++j) s += (*m)(i, j) * v[j];
        w[i] = s;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = lo; j < n; ++j) (*m)(i, j) -= 2.0 * w[i] * std::conj(v[j]);
    }
  }

  Tridiagonal out;
  out.diag.resize(n);
  out.offdiag.resize(n > 0 ? n - 1 : 0);
  std::vector<Complex> phase(n, Complex(1.0));
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex t = a(i + 1, i);
    const double mag = std::abs(t);
    out.offdiag[i] = mag;
    phase[i + 1] = mag > 0.0 ? phase[i] * (t / mag) : phase[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) *= phase[j];
  out.basis = std::move(q);
  return out;
}

// One implicit symmetric QR step with Wilkinson shift on the unreduced block
// [start, end], accumulating the rotations into z.
void qr_step(RealSquare& t, RealSquare& z, std::size_t start, std::size_t end) {
  const double a = t(end - 1, end - 1);
  const double b = t(end, end - 1);
  const double c = t(end, end);
  const double d = 0.5 * (a - c);
  double mu = c;
  if (d == 0.0) {
    mu -= std::abs(b);
  } else {
    mu -= b * b / (d + std::copysign(std::hypot(d, b), d));
  }

  double x = t(start, start) - mu;
  double y = t(start + 1, start);
  const std::size_t n = t.dim();
  for (std::size_t k = start; k < end; ++k) {
    const double r = std::hypot(x, y);
    const double cs = r == 0.0 ? 1.0 : x / r;
    const double sn = r == 0.0 ? 0.0 : y / r;

    const std::size_t lo = k > start ? k - 1 : start;
    const std::size_t hi = std::min(end, k + 2);
    for (std::size_t j = lo; j <= hi; ++j) {
      const double p = t(k, j);
      const double q = t(k + 1, j);
      t(k, j) = cs * p + sn * q;
      t(k + 1, j) = -sn * p + cs * q;
    }
    for (std::size_t i = lo; i <= hi; ++i) {
      const double p = t(i, k);
      const double q = t(i, k + 1);
      t(i, k) = cs * p + sn * q;
      t(i, k + 1) = -sn * p + cs * q;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double p = z(i, k);
      const double q = z(i, k + 1);
      z(i, k) = cs * p + sn * q;
      z(i, k + 1) = -sn * p + cs * q;
    }
    if (k > start) {
      t(k + 1, k - 1) = 0.0;
      t(k - 1, k + 1) = 0.0;
    }
    if (k + 1 < end) {
      x = t(k + 1, k);
      y = t(k + 2, k);
    }
  }
}

void check_decomposition(const SpectralDecomposition& sd, const ComplexMatrix& original,
                         const ToleranceConfig& tol, const char* who) {
  const std::size_t n = original.dim();
  const double unitary = unitarity_residual(sd.eigenvectors);
  if (!(unitary <= tol.tol_unitary * static_cast<double>(std::max<std::size_t>(n, 1)))) {
    throw NumericalError(std::string(who) + ": eigenvector matrix not unitary (residual " +
                         std::to_string(unitary) + ")");
  }
  const double recon = frobenius_distance(sd.reconstruct(), original);
  if (!(recon <= tol.tol_recon * std::max(frobenius_norm(original), kEpsFloor))) {
    throw NumericalError(std::string(who) + ": reconstruction residual " +
                         std::to_string(recon) + " exceeds tolerance");
  }
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvectors.dim();
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= eigenvalues[j];
  return scaled * adjoint(eigenvectors);
}

bool is_normal(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return commutator_residual(m, adjoint(m)) <= tol.tol_normal;
}

bool is_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return hermitian_defect(m) <= tol.tol_hermitian;
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& h, const ToleranceConfig& tol) {
  if (!h.all_finite()) throw PreconditionError("hermitian_eig: non-finite entries");
  if (!is_hermitian(h, tol)) {
    throw PreconditionError("hermitian_eig: input is not Hermitian (defect " +
                            std::to_string(hermitian_defect(h)) + ")");
  }
  const std::size_t n = h.dim();
  const ComplexMatrix sym = hermitian_part(h);
  Tridiagonal tri = tridiagonalize(sym);

  RealSquare t(n);
  RealSquare z(n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = tri.diag[i];
    z(i, i) = 1.0;
    if (i + 1 < n) {
      t(i + 1, i) = tri.offdiag[i];
      t(i, i + 1) = tri.offdiag[i];
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t cap = 100 * std::max<std::size_t>(n, 1);
  std::size_t iterations = 0;
  while (n > 1) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double e = std::abs(t(i + 1, i));
      if (e <= eps * (std::abs(t(i, i)) + std::abs(t(i + 1, i + 1))) ||
          e < std::numeric_limits<double>::min()) {
        t(i + 1, i) = 0.0;
        t(i, i + 1) = 0.0;
      }
    }
    std::size_t end = n - 1;
    while (end > 0 && t(end, end - 1) == 0.0) --end;
    if (end == 0) break;
    std::size_t start = end - 1;
    while (start > 0 && t(start, start - 1) != 0.0) --start;
    if (++iterations > cap) {
      throw NumericalError("hermitian_eig: QR iteration did not converge within " +
                           std::to_string(cap) + " steps");
    }
    qr_step(t, z, start, end);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return t(i, i) < t(j, j); });

  SpectralDecomposition sd;
  sd.eigenvalues.resize(n);
  sd.eigenvectors = ComplexMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    sd.eigenvalues[col] = t(src, src);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += tri.basis(i, k) * z(k, src);
      sd.eigenvectors(i, col) = s;
    }
  }
  check_decomposition(sd, sym, tol, "hermitian_eig");
  return sd;
}

double cluster_threshold(const std::vector<double>& sorted) {
  if (sorted.empty()) return 1e-8;
  return std::max(1e-8, 1e-8 * (sorted.back() - sorted.front()));
}

std::vector<std::pair<std::size_t, std::size_t>> cluster_sorted(const std::vector<double>& sorted,
                                                                double threshold) {
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted[i] - sorted[i - 1] > threshold) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  return clusters;
}

namespace detail {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi sweeps for a nearly diagonal normal matrix a = V* N V: each
// 2x2 principal block is diagonalized by an exact unitary rotation, which
// is accumulated into v. Picks up couplings the cluster stage cannot see,
// e.g. eigenvalues whose real parts differ by less than the eigenvector
// accuracy of the real part.
void jacobi_polish(ComplexMatrix& a, ComplexMatrix& v, double target) {
  const std::size_t n = a.dim();
  for (int sweep = 0; sweep < 30 && off_diagonal_norm(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex app = a(p, p);
        const Complex aqq = a(q, q);
        const Complex apq = a(p, q);
        const Complex aqp = a(q, p);
        if (std::abs(apq) + std::abs(aqp) <= target * 1e-3) continue;
        const Complex half = 0.5 * (app - aqq);
        Complex root = std::sqrt(half * half + apq * aqp);
        if (std::real(std::conj(half) * root) < 0.0) root = -root;
        // Eigenvalue of the block nearest app, computed without cancellation.
        const Complex denom = half + root;
        const Complex lambda = std::abs(denom) > 0.0 ? app + apq * aqp / denom : app;
        Complex x1 = apq;
        Complex x2 = lambda - app;
        const Complex y1 = lambda - aqq;
        const Complex y2 = aqp;
        if (std::norm(y1) + std::norm(y2) > std::norm(x1) + std::norm(x2)) {
          x1 = y1;
          x2 = y2;
        }
        const double len = std::sqrt(std::norm(x1) + std::norm(x2));
        if (!(len > 0.0) || !std::isfinite(len)) continue;
        x1 /= len;
        x2 /= len;
        // G = [[x1, -conj(x2)], [x2, conj(x1)]]; a <- G* a G, v <- v G.
        const Complex g11 = x1, g12 = -std::conj(x2), g21 = x2, g22 = std::conj(x1);
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * g11 + aiq * g21;
          a(i, q) = aip * g12 + aiq * g22;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * g11 + viq * g21;
          v(i, q) = vip * g12 + viq * g22;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = std::conj(g11) * apj + std::conj(g21) * aqj;
          a(q, j) = std::conj(g12) * apj + std::conj(g22) * aqj;
        }
      }
    }
  }
}

}  // namespace

JointDiagonalization joint_diagonalize(const ComplexMatrix& h, const ComplexMatrix& k,
                                       const ToleranceConfig& tol) {
  const std::size_t n = h.dim();
  const SpectralDecomposition hs = hermitian_eig(h, tol);
  std::vector<double> hvals(n);
  for (std::size_t i = 0; i < n; ++i) hvals[i] = hs.eigenvalues[i].real();

  ComplexMatrix v(n);
  const ComplexMatrix ksym = hermitian_part(k);
  for (const auto& [begin, end] : cluster_sorted(hvals, cluster_threshold(hvals))) {
    const std::size_t m = end - begin;
    ComplexMatrix compressed(m);
    // compressed = Vc^* K Vc, Vc = eigenvector columns [begin, end)
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        Complex s{};
        for (std::size_t i = 0; i < n; ++i) {
          Complex kv{};
          for (std::size_t j = 0; j < n; ++j) kv += ksym(i, j) * hs.eigenvectors(j, begin + b);
          s += std::conj(hs.eigenvectors(i, begin + a)) * kv;
        }
        compressed(a, b) = s;
      }
    }
    const SpectralDecomposition ks = hermitian_eig(hermitian_part(compressed), tol);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < m; ++b) {
        Complex s{};
        for (std::size_t a = 0; a < m; ++a) s += hs.eigenvectors(i, begin + a) * ks.eigenvectors(a, b);
        v(i, begin + b) = s;
      }
    }
  }

  const ComplexMatrix hsym = hermitian_part(h);
  const ComplexMatrix combined = hsym + Complex(0.0, 1.0) * ksym;
  ComplexMatrix a = adjoint(v) * combined * v;
  const double target = 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) *
                        std::max(frobenius_norm(combined), kEpsFloor);
  if (off_diagonal_norm(a) > target) jacobi_polish(a, v, target);

  JointDiagonalization out;
  const ComplexMatrix vh = adjoint(v);
  const ComplexMatrix hd = vh * hsym * v;
  const ComplexMatrix kd = vh * ksym * v;
  out.first.resize(n);
  out.second.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.first[i] = hd(i, i).real();
    out.second[i] = kd(i, i).real();
  }
  out.unitary = std::move(v);
  return out;
}

}  // namespace detail

JointDiagonalization simultaneous_diag(const ComplexMatrix& h, const ComplexMatrix& k,
                                       const ToleranceConfig& tol) {
  require_same_dim(h, k, "simultaneous_diag");
  if (!is_hermitian(h, tol) || !is_hermitian(k, tol)) {
    throw PreconditionError("simultaneous_diag: inputs must be Hermitian");
  }
  const double comm = commutator_residual(h, k);
  if (!(comm <= tol.tol_normal)) {
    throw PreconditionError("simultaneous_diag: inputs do not commute (residual " +
                            std::to_string(comm) + ")");
  }
  JointDiagonalization joint = detail::joint_diagonalize(h, k, tol);

  const ComplexMatrix vh = adjoint(joint.unitary);
  const double hn = std::max(frobenius_norm(h), kEpsFloor);
  const double kn = std::max(frobenius_norm(k), kEpsFloor);
  const double hoff = frobenius_distance(vh * hermitian_part(h) * joint.unitary,
                                         ComplexMatrix::diagonal(std::span<const double>(joint.first)));
  const double koff = frobenius_distance(vh * hermitian_part(k) * joint.unitary,
                                         ComplexMatrix::diagonal(std::span<const double>(joint.second)));
  if (!(hoff <= tol.tol_recon * hn) || !(koff <= tol.tol_recon * kn)) {
    throw NumericalError("simultaneous_diag: cluster compression failed to diagonalize both inputs");
  }
  return joint;
}

SpectralDecomposition normal_eig(const ComplexMatrix& n, const ToleranceConfig& tol) {
  if (!n.all_finite()) throw PreconditionError("normal_eig: non-finite entries");
  if (!is_normal(n, tol)) {
    throw PreconditionError("normal_eig: input is not normal (residual " +
                            std::to_string(commutator_residual(n, adjoint(n))) + ")");
  }
  const ComplexMatrix re = hermitian_part(n);
  const ComplexMatrix im = hermitian_part(Complex(0.0, -1.0) * n);
  JointDiagonalization joint = detail::joint_diagonalize(re, im, tol);

  SpectralDecomposition sd;
  sd.eigenvectors = std::move(joint.unitary);
  sd.eigenvalues.resize(n.dim());
  for (std::size_t i = 0; i < n.dim(); ++i) sd.eigenvalues[i] = Complex(joint.first[i], joint.second[i]);
  check_decomposition(sd, n, tol, "normal_eig");
  return sd;
}

}  // namespace expcomm
