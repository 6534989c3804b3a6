#include "fracwave/frac_laplacian.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "fracwave/fft.hpp"
#include "fracwave/kernels.hpp"

namespace fracwave {

namespace {

double max_abs(const std::vector<double>& m) {
  double v = 0.0;
  for (double x : m) v = std::max(v, std::abs(x));
  return v;
}

double pow_clipped(double lambda, double r, double clip) {
  if (lambda <= clip) return 0.0;
  return std::pow(lambda, r);
}

void check_decomposition(const SpdOperator& op, const std::vector<double>& a,
                         const std::vector<double>& q,
                         const std::vector<double>& lambda, std::size_t n) {
  // Symmetry of the assembled matrix.
  double sym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sym = std::max(sym, std::abs(a[i * n + j] - a[j * n + i]));
  if (sym > 1e-12 * max_abs(a))
    throw std::runtime_error("SpdOperator: assembled matrix not symmetric");

  const double lmax = lambda.back();
  if (lambda.front() < -1e-10 * lmax)
    throw std::runtime_error("SpdOperator: negative eigenvalue beyond round-off");

  // Orthonormality Q^T Q = I; full check at moderate sizes, sampled columns
  // beyond that to keep construction O(n^3) bounded by the solve itself.
  const std::size_t stride = n <= 600 ? 1 : n / 32;
  double ortho = 0.0;
  for (std::size_t i = 0; i < n; i += stride)
    for (std::size_t j = i; j < n; j += stride) {
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += q[k * n + i] * q[k * n + j];
      ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  if (ortho > 1e-10)
    throw std::runtime_error("SpdOperator: eigenvector basis not orthonormal");
  (void)op;
}

}  // namespace

Grid1D::Grid1D(std::size_t n_, double h_, Boundary b) : n(n_), h(h_), boundary(b) {
  if (n < 3) throw std::invalid_argument("Grid1D: need at least 3 points");
  if (!(h > 0.0)) throw std::invalid_argument("Grid1D: spacing must be > 0");
}

SpdOperator build_laplacian(const Grid1D& grid) {
  const std::size_t n = grid.n;
  const double inv_h2 = 1.0 / (grid.h * grid.h);

  SpdOperator op(grid);
  op.a_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    op.a_[i * n + i] = 2.0 * inv_h2;
    if (i > 0) op.a_[i * n + i - 1] = -inv_h2;
    if (i + 1 < n) op.a_[i * n + i + 1] = -inv_h2;
  }
  if (grid.periodic()) {
    op.a_[0 * n + (n - 1)] = -inv_h2;
    op.a_[(n - 1) * n + 0] = -inv_h2;
  }

  op.decompose();
  return op;
}

SpdOperator spd_from_matrix(std::vector<double> dense, const Grid1D& grid) {
  const std::size_t n = grid.n;
  if (dense.size() != n * n)
    throw std::invalid_argument("spd_from_matrix: size mismatch with grid");
  SpdOperator op(grid);
  op.a_ = std::move(dense);
  op.decompose();
  return op;
}

void SpdOperator::decompose() {
  const std::size_t n = grid_.n;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      amap(a_.data(), static_cast<Eigen::Index>(n),
           static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(amap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("SpdOperator: eigendecomposition failed");

  eigenvalues_.resize(n);
  q_.resize(n * n);
  qt_.resize(n * n);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (std::size_t i = 0; i < n; ++i)
    eigenvalues_[i] = vals(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = vecs(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j));
      q_[i * n + j] = v;
      qt_[j * n + i] = v;
    }

  check_decomposition(*this, a_, q_, eigenvalues_, n);
}

Field frac_power_apply(const SpdOperator& op, FracOrder r, const Field& u) {
  const std::size_t n = op.n();
  if (u.size() != n)
    throw std::invalid_argument("frac_power_apply: dimension mismatch");

  Field w(n), out(n);
  kernels::matvec(op.qt_.data(), u.data(), w.data(), n);
  const double clip = op.clip_threshold();
  for (std::size_t i = 0; i < n; ++i)
    w[i] *= pow_clipped(op.eigenvalues_[i], r.value(), clip);
  kernels::matvec(op.q_.data(), w.data(), out.data(), n);
  return out;
}

std::vector<double> frac_power_apply(const SpdOperator& op, FracOrder r,
                                     const std::vector<double>& u) {
  const std::size_t n = op.n();
  if (u.size() != n)
    throw std::invalid_argument("frac_power_apply: dimension mismatch");

  std::vector<double> w(n), out(n);
  kernels::matvec(op.qt_.data(), u.data(), w.data(), n);
  const double clip = op.clip_threshold();
  for (std::size_t i = 0; i < n; ++i)
    w[i] *= pow_clipped(op.eigenvalues_[i], r.value(), clip);
  kernels::matvec(op.q_.data(), w.data(), out.data(), n);
  return out;
}

std::vector<double> frac_power_matrix(const SpdOperator& op, FracOrder r) {
  const std::size_t n = op.n();
  std::vector<double> d(n);
  const double clip = op.clip_threshold();
  for (std::size_t i = 0; i < n; ++i)
    d[i] = pow_clipped(op.eigenvalues_[i], r.value(), clip);
  std::vector<double> m(n * n);
  kernels::sym_congruence(op.q_.data(), d.data(), n, m.data());
  return m;
}

double grid_wavenumber(const Grid1D& grid, std::size_t mode) {
  return 2.0 * std::sin(M_PI * static_cast<double>(mode) /
                        static_cast<double>(grid.n)) /
         grid.h;
}

std::vector<double> spectral_multipliers(const Grid1D& grid, FracOrder y) {
  std::vector<double> mult(grid.n, 0.0);
  for (std::size_t m = 1; m < grid.n; ++m)
    mult[m] = std::pow(grid_wavenumber(grid, m), y.value());
  return mult;
}

Field spectral_frac_laplacian(const Field& u, FracOrder y, const Grid1D& grid) {
  if (!grid.periodic())
    throw std::invalid_argument(
        "spectral_frac_laplacian: periodic grid required");
  if (u.size() != grid.n)
    throw std::invalid_argument("spectral_frac_laplacian: dimension mismatch");

  Dft plan(grid.n);
  Field hat(grid.n), out(grid.n);
  plan.forward(u.data(), hat.data());
  const std::vector<double> mult = spectral_multipliers(grid, y);
  for (std::size_t m = 0; m < grid.n; ++m) hat[m] *= mult[m];
  plan.inverse(hat.data(), out.data());
  return out;
}

std::vector<double> spectral_frac_laplacian(const std::vector<double>& u,
                                            FracOrder y, const Grid1D& grid) {
  Field uc(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) uc[i] = Cplx{u[i], 0.0};
  const Field res = spectral_frac_laplacian(uc, y, grid);
  std::vector<double> out(u.size());
  // Real input and real symbol: the imaginary residue is round-off only.
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = res[i].real();
  return out;
}

GradientOperator build_gradient(const Grid1D& grid) {
  const std::size_t n = grid.n;
  const double inv_2h = 1.0 / (2.0 * grid.h);
  const double inv_h = 1.0 / grid.h;

  GradientOperator b{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.periodic()) {
      b.matrix[i * n + (i + 1) % n] = inv_2h;
      b.matrix[i * n + (i + n - 1) % n] = -inv_2h;
    } else if (i == 0) {
      b.matrix[0 * n + 0] = -inv_h;
      b.matrix[0 * n + 1] = inv_h;
    } else if (i == n - 1) {
      b.matrix[i * n + i] = inv_h;
      b.matrix[i * n + i - 1] = -inv_h;
    } else {
      b.matrix[i * n + i + 1] = inv_2h;
      b.matrix[i * n + i - 1] = -inv_2h;
    }
  }
  return b;
}

}  // namespace fracwave
