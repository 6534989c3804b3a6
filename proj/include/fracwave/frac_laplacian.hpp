#pragma once

#include <cstddef>
#include <vector>

#include "fracwave/frac_calculus.hpp"

namespace fracwave {

enum class Boundary { Dirichlet, Periodic };

struct Grid1D {
  std::size_t n;
  double h;
  Boundary boundary;

  Grid1D(std::size_t n_, double h_, Boundary b);
  double length() const {
    return boundary == Boundary::Periodic ? static_cast<double>(n) * h
                                          : static_cast<double>(n - 1) * h;
  }
  bool periodic() const { return boundary == Boundary::Periodic; }
};

/// The discrete negative Laplacian A = -D2/h^2 (symmetric positive
/// semidefinite) together with its eager spectral decomposition
/// A = Q diag(lambda) Q^T. Immutable after construction.
class SpdOperator {
 public:
  const Grid1D& grid() const { return grid_; }
  std::size_t n() const { return grid_.n; }
  const std::vector<double>& matrix() const { return a_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<double>& eigenvectors() const { return q_; }  // row-major Q
  const std::vector<double>& eigenvectors_transposed() const { return qt_; }
  double max_eigenvalue() const { return eigenvalues_.back(); }
  /// Eigenvalues at or below this threshold are treated as the zero mode.
  double clip_threshold() const { return 1e-10 * max_eigenvalue(); }

  friend SpdOperator build_laplacian(const Grid1D& grid);
  friend SpdOperator spd_from_matrix(std::vector<double> dense,
                                     const Grid1D& grid);
  friend Field frac_power_apply(const SpdOperator& op, FracOrder r,
                                const Field& u);
  friend std::vector<double> frac_power_apply(const SpdOperator& op,
                                              FracOrder r,
                                              const std::vector<double>& u);
  friend std::vector<double> frac_power_matrix(const SpdOperator& op,
                                               FracOrder r);

 private:
  explicit SpdOperator(const Grid1D& grid) : grid_(grid) {}
  void decompose();
  Grid1D grid_;
  std::vector<double> a_;            // dense n x n, row-major
  std::vector<double> eigenvalues_;  // ascending
  std::vector<double> q_;            // row-major, columns are eigenvectors
  std::vector<double> qt_;           // row-major Q^T
};

/// Central-difference gradient matrix B (skew-symmetric on periodic grids).
struct GradientOperator {
  std::size_t n;
  std::vector<double> matrix;  // dense n x n, row-major
};

/// Assemble the second-difference stencil [-1, 2, -1]/h^2 (Dirichlet rows
/// clamped, periodic rows wrapped) and compute its eigendecomposition.
SpdOperator build_laplacian(const Grid1D& grid);

/// Wrap an arbitrary symmetric positive semidefinite dense matrix (row-major,
/// grid.n x grid.n) with its spectral decomposition.
SpdOperator spd_from_matrix(std::vector<double> dense, const Grid1D& grid);

/// A^r u through the spectral decomposition, with near-zero eigenvalues
/// clipped to zero (the periodic constant mode suffers no damping).
Field frac_power_apply(const SpdOperator& op, FracOrder r, const Field& u);
std::vector<double> frac_power_apply(const SpdOperator& op, FracOrder r,
                                     const std::vector<double>& u);

/// Dense materialization Q diag(lambda^r) Q^T.
std::vector<double> frac_power_matrix(const SpdOperator& op, FracOrder r);

/// Grid wavenumber of Fourier mode m: the exact symbol of the stencil,
/// kappa_m = 2 sin(pi m / n) / h.
double grid_wavenumber(const Grid1D& grid, std::size_t mode);

/// |kappa|^y multipliers for all n modes (mode 0 clipped to zero).
std::vector<double> spectral_multipliers(const Grid1D& grid, FracOrder y);

/// Fractional Laplacian |nabla|^y u on a periodic grid through the DFT.
/// Agrees with frac_power_apply(A, y/2, .) to round-off by construction.
Field spectral_frac_laplacian(const Field& u, FracOrder y, const Grid1D& grid);
std::vector<double> spectral_frac_laplacian(const std::vector<double>& u,
                                            FracOrder y, const Grid1D& grid);

GradientOperator build_gradient(const Grid1D& grid);

}  // namespace fracwave
