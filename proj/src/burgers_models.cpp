#include "fracwave/burgers_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracwave/kernels.hpp"

namespace fracwave {

BurgersParams::BurgersParams(double alpha0_, double gamma_)
    : alpha0(alpha0_), gamma(gamma_) {
  if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
    throw std::invalid_argument("BurgersParams: alpha0 must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 2.0))
    throw std::invalid_argument("BurgersParams: gamma must lie in [0, 2]");
}

const char* burgers_variant_name(BurgersVariant v) {
  switch (v) {
    case BurgersVariant::Standard: return "burgers_standard";
    case BurgersVariant::FracReal: return "burgers_frac_real";
    case BurgersVariant::FracComplex: return "burgers_frac_complex";
    case BurgersVariant::Gamma0: return "burgers_gamma0";
  }
  return "unknown";
}

BurgersSimulator::BurgersSimulator(BurgersParams params, BurgersVariant variant,
                                   Grid1D grid)
    : params_(params), variant_(variant), grid_(grid) {
  if (!grid_.periodic())
    throw std::invalid_argument("BurgersSimulator: periodic grid required");

  const std::size_t n = grid_.n;
  state_.p.assign(n, Cplx{0.0, 0.0});
  damp_.resize(n);
  q_.resize(n);
  p_next_.resize(n);
  scratch_.resize(n);

  if (variant_ == BurgersVariant::FracReal) {
    spd_ = std::make_unique<SpdOperator>(build_laplacian(grid_));
    frac_powers_.resize(n);
    const double clip = spd_->clip_threshold();
    for (std::size_t i = 0; i < n; ++i) {
      const double lam = spd_->eigenvalues()[i];
      frac_powers_[i] = lam <= clip ? 0.0 : std::pow(lam, params_.gamma / 2.0);
    }
  } else if (variant_ == BurgersVariant::FracComplex) {
    dft_ = std::make_unique<Dft>(n);
    spectral_mult_ = spectral_multipliers(grid_, FracOrder(params_.gamma));
  }
}

void BurgersSimulator::set_initial(const std::vector<double>& p0) {
  Field f(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) f[i] = Cplx{p0[i], 0.0};
  set_initial(f);
}

void BurgersSimulator::set_initial(const Field& p0) {
  if (p0.size() != grid_.n)
    throw std::invalid_argument("BurgersSimulator: initial field size mismatch");
  state_.p = p0;
  state_.t = 0.0;
}

void BurgersSimulator::compute_damping() {
  const std::size_t n = grid_.n;
  const double a0 = params_.alpha0;
  const double g = params_.gamma;
  switch (variant_) {
    case BurgersVariant::Standard: {
      // -eps lap(p), eps = 2 alpha0 (the gamma = 2 reduction fixes the sign)
      kernels::laplacian_stencil(state_.p.data(), q_.data(), n, grid_.h, true);
      const double eps = params_.epsilon();
      for (std::size_t j = 0; j < n; ++j) damp_[j] = -eps * q_[j];
      break;
    }
    case BurgersVariant::FracReal: {
      kernels::matvec(spd_->eigenvectors_transposed().data(), state_.p.data(),
                      scratch_.data(), n);
      for (std::size_t i = 0; i < n; ++i) scratch_[i] *= frac_powers_[i];
      kernels::matvec(spd_->eigenvectors().data(), scratch_.data(), q_.data(),
                      n);
      for (std::size_t j = 0; j < n; ++j) {
        const double mag = std::pow(std::abs(state_.p[j]), 2.0 - g);
        damp_[j] = Cplx{2.0 * a0 * std::abs(mag * q_[j]), 0.0};
      }
      break;
    }
    case BurgersVariant::FracComplex: {
      dft_->forward(state_.p.data(), scratch_.data());
      for (std::size_t m = 0; m < n; ++m) scratch_[m] *= spectral_mult_[m];
      dft_->inverse(scratch_.data(), q_.data());
      for (std::size_t j = 0; j < n; ++j) {
        const double mag = std::pow(std::abs(state_.p[j]), 2.0 - g);
        damp_[j] = 2.0 * a0 * mag * q_[j];
      }
      break;
    }
    case BurgersVariant::Gamma0: {
      for (std::size_t j = 0; j < n; ++j)
        damp_[j] = 2.0 * a0 * state_.p[j] * state_.p[j];
      break;
    }
  }
}

void BurgersSimulator::step(double dt) {
  if (!(dt > 0.0))
    throw std::invalid_argument("BurgersSimulator: dt must be > 0");
  const double pmax = max_abs();
  const double adv_limit =
      pmax > 0.0 ? 0.5 * grid_.h / pmax : std::numeric_limits<double>::infinity();
  const double diff_limit =
      0.5 * grid_.h * grid_.h / (2.0 * params_.epsilon() + 1e-12);
  if (dt > adv_limit || dt > diff_limit)
    throw std::invalid_argument("BurgersSimulator: CFL violation (dt too large)");

  compute_damping();
  kernels::burgers_advect(state_.p.data(), damp_.data(), grid_.n, dt, grid_.h,
                          p_next_.data());
  std::swap(state_.p, p_next_);
  state_.t += dt;
}

double BurgersSimulator::max_abs() const {
  double v = 0.0;
  for (const Cplx& x : state_.p) v = std::max(v, std::abs(x));
  return v;
}

Cplx BurgersSimulator::total_mass() const {
  Cplx acc{0.0, 0.0};
  for (const Cplx& x : state_.p) acc += x;
  return acc * grid_.h;
}

BurgersRun run_burgers(BurgersParams params, BurgersVariant variant,
                       const Grid1D& grid, const std::vector<double>& p0,
                       double dt, std::size_t steps,
                       std::size_t snapshot_every) {
  BurgersSimulator sim(params, variant, grid);
  sim.set_initial(p0);
  BurgersRun run;
  run.dt = dt;
  run.h = grid.h;
  run.times.push_back(0.0);
  run.snapshots.push_back(sim.state().p);
  for (std::size_t k = 1; k <= steps; ++k) {
    sim.step(dt);
    if ((snapshot_every != 0 && k % snapshot_every == 0) || k == steps) {
      run.times.push_back(sim.state().t);
      run.snapshots.push_back(sim.state().p);
    }
  }
  return run;
}

std::vector<ModeDecay> burgers_decay_spectrum(const BurgersRun& run,
                                              double noise_floor) {
  if (run.snapshots.size() < 3)
    throw std::invalid_argument("burgers_decay_spectrum: need >= 3 snapshots");
  const std::size_t n = run.snapshots.front().size();
  const std::size_t nt = run.snapshots.size();

  Dft plan(n);
  std::vector<std::vector<double>> amps(nt);  // [time][mode]
  Field hat(n);
  for (std::size_t i = 0; i < nt; ++i) {
    plan.forward(run.snapshots[i].data(), hat.data());
    amps[i].resize(n / 2);
    for (std::size_t m = 1; m < n / 2; ++m)
      amps[i][m] = std::abs(hat[m]) / static_cast<double>(n);
  }

  if (!(run.h > 0.0))
    throw std::invalid_argument("burgers_decay_spectrum: run has no grid spacing");
  // Usability is gated on the INITIAL spectrum: a mode must be seeded at
  // t = 0 and stay above the floor, so harmonics grown by the nonlinearity
  // from nothing do not enter the fit.
  double peak0 = 0.0;
  for (std::size_t m = 1; m < n / 2; ++m) peak0 = std::max(peak0, amps[0][m]);
  const double floor_abs = noise_floor * peak0;
  std::vector<ModeDecay> out;
  for (std::size_t m = 1; m < n / 2; ++m) {
    bool usable = true;
    for (std::size_t i = 0; i < nt; ++i)
      if (!(amps[i][m] > floor_abs)) { usable = false; break; }
    if (!usable) continue;

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      sx += run.times[i];
      sy += std::log(amps[i][m]);
    }
    const double mx = sx / static_cast<double>(nt);
    const double my = sy / static_cast<double>(nt);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      const double dx = run.times[i] - mx;
      sxx += dx * dx;
      sxy += dx * (std::log(amps[i][m]) - my);
    }
    if (sxx == 0.0) continue;
    const double kappa = 2.0 * std::sin(M_PI * static_cast<double>(m) /
                                        static_cast<double>(n)) /
                         run.h;
    out.push_back({kappa, -sxy / sxx});
  }
  if (out.size() < 2)
    throw std::invalid_argument(
        "burgers_decay_spectrum: fewer than 2 modes above the noise floor");
  return out;
}

}  // namespace fracwave
