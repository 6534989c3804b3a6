#pragma once

#include <complex>
#include <vector>

#include "fracwave/wave_models.hpp"

namespace fracwave {

struct DispersionPoint {
  double omega = 0.0;
  Cplx k{0.0, 0.0};
  double alpha = 0.0;        // Im k, nepers/m
  double phase_speed = 0.0;  // omega / Re k
};

struct PowerLawFit {
  double alpha0_hat = 0.0;
  double y_hat = 0.0;
  double r2 = 0.0;
};

/// Complex wavenumber of the forward branch (Re k > 0, Im k >= 0) for the
/// plane wave p = e^{i(kx - wt)}.
///
/// Temporal models solve the closed form
///     k^2 = w^2/c^2 + 2 i a0 w^{1+y} / c^{1+2y};
/// the temporal-real model has no analytic plane-wave form (the absolute
/// value is not analytic) and is analyzed through this complex counterpart.
/// Spatial models solve k^2 = w^2/c^2 + 2 i a0 w |k|^y / c^{1+y} implicitly
/// by Newton iteration seeded at the lossless root w/c. Structural damping
/// is k = (w/c) / sqrt(1 - i eta).
DispersionPoint dispersion_relation(const ModelKind& model,
                                    const MediumParams& medium, double omega);

std::vector<DispersionPoint> attenuation_curve(const ModelKind& model,
                                               const MediumParams& medium,
                                               const std::vector<double>& omegas);

/// Ordinary least squares on (ln w, ln a): y_hat = slope,
/// alpha0_hat = exp(intercept), r2 in log-log space.
PowerLawFit fit_power_law(const std::vector<double>& omegas,
                          const std::vector<double>& alphas);

/// E0 e^{-alpha x}.
double decay_amplitude(double e0, double alpha, double x);

/// ln N / ln s, the dimension of the self-similarity law N = s^n.
double hausdorff_dimension(double n_copies, double scale);

/// Log-spaced frequency grid, inclusive of both endpoints.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace fracwave
