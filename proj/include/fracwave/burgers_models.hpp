#pragma once

#include <memory>
#include <vector>

#include "fracwave/fft.hpp"
#include "fracwave/frac_calculus.hpp"
#include "fracwave/frac_laplacian.hpp"

namespace fracwave {

struct BurgersParams {
  double alpha0;
  double gamma;

  BurgersParams(double alpha0_, double gamma_);
  /// Diffusivity of the gamma = 2 reduction.
  double epsilon() const { return 2.0 * alpha0; }
};

enum class BurgersVariant { Standard, FracReal, FracComplex, Gamma0 };

const char* burgers_variant_name(BurgersVariant v);

struct BurgersState {
  Field p;
  double t = 0.0;
};

/// Explicit conservative integrator on a periodic grid: local
/// Lax-Friedrichs flux on p^2/2 plus the variant's damping term.
class BurgersSimulator {
 public:
  BurgersSimulator(BurgersParams params, BurgersVariant variant, Grid1D grid);

  void set_initial(const std::vector<double>& p0);
  void set_initial(const Field& p0);

  /// One explicit step. Throws on CFL violation:
  /// dt <= min(0.5 h / max|p|, 0.5 h^2 / (2 eps + delta)).
  void step(double dt);

  const BurgersState& state() const { return state_; }
  const Grid1D& grid() const { return grid_; }
  double max_abs() const;
  /// Conserved quantity sum p h of the flux form (alpha0 = 0).
  Cplx total_mass() const;

 private:
  void compute_damping();

  BurgersParams params_;
  BurgersVariant variant_;
  Grid1D grid_;
  BurgersState state_;
  std::unique_ptr<SpdOperator> spd_;   // FracReal
  std::vector<double> frac_powers_;
  std::unique_ptr<Dft> dft_;           // FracComplex
  std::vector<double> spectral_mult_;
  Field damp_, q_, p_next_, scratch_;
};

struct BurgersRun {
  std::vector<double> times;
  std::vector<Field> snapshots;
  double dt = 0.0;
  double h = 0.0;  // grid spacing, for mode wavenumbers
};

/// Fixed-step run recording a snapshot every `snapshot_every` steps
/// (always including the initial and final states).
BurgersRun run_burgers(BurgersParams params, BurgersVariant variant,
                       const Grid1D& grid, const std::vector<double>& p0,
                       double dt, std::size_t steps,
                       std::size_t snapshot_every);

struct ModeDecay {
  double kappa;  // grid wavenumber 2 sin(pi m / n) / h
  double rate;   // fitted exponential decay rate of |p_hat_m(t)|
};

/// Per-mode exponential decay rates from a sequence of snapshots:
/// least-squares fit of ln |p_hat_m(t)| against t for every mode that is
/// seeded at t = 0 and stays above the noise floor (relative to the initial
/// spectral peak). Requires at least 3 snapshots and 2 usable modes.
std::vector<ModeDecay> burgers_decay_spectrum(const BurgersRun& run,
                                              double noise_floor = 1e-6);

}  // namespace fracwave
