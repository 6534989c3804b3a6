#include "fracwave/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "fracwave/errors.hpp"
#include "fracwave/frac_calculus.hpp"

namespace fracwave {

namespace {

DispersionPoint make_point(double omega, Cplx k) {
  if (k.real() < 0.0) k = -k;  // forward branch
  double alpha = k.imag();
  if (alpha < 0.0 && alpha > -1e-13 * std::abs(k)) alpha = 0.0;  // round-off
  return {omega, k, alpha, omega / k.real()};
}

Cplx temporal_k(const MediumParams& medium, double omega) {
  const double y = medium.y;
  // i^{-3y} (-iw)^{1+y} with the integer power reduced first collapses to
  // -i w^{1+y}; the explicit product is kept so the written model form and
  // the ft_symbol convention stay visible in one place.
  const Cplx term = complex_damping_factor(y) *
                    ft_symbol(FracOrder(1.0 + y), omega) *
                    (2.0 * medium.alpha0 / std::pow(medium.c, 1.0 + 2.0 * y));
  const Cplx k2 = omega * omega / (medium.c * medium.c) - term;
  return std::sqrt(k2);
}

Cplx spatial_k(const MediumParams& medium, double omega) {
  const double y = medium.y;
  const double w2c2 = omega * omega / (medium.c * medium.c);
  const double coef = 2.0 * medium.alpha0 * omega / std::pow(medium.c, 1.0 + y);

  // f(k) = k^2 - w^2/c^2 - i coef |k|^y, solved as a 2x2 real Newton system
  // in (a, b) = (Re k, Im k); |k| is smooth away from the origin.
  double a = omega / medium.c, b = 0.0;
  std::vector<Cplx> iterates{Cplx{a, b}};
  for (int it = 0; it < 50; ++it) {
    const double r2 = a * a + b * b;
    const double s = std::pow(r2, y / 2.0);
    const double fre = a * a - b * b - w2c2;
    const double fim = 2.0 * a * b - coef * s;
    // dS/da = y a r^{y-2}, dS/db = y b r^{y-2}
    const double sg = y == 0.0 ? 0.0 : y * std::pow(r2, y / 2.0 - 1.0);
    const double j11 = 2.0 * a, j12 = -2.0 * b;
    const double j21 = 2.0 * b - coef * sg * a;
    const double j22 = 2.0 * a - coef * sg * b;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0)
      throw NewtonError("dispersion_relation: singular Jacobian", iterates);
    const double da = (-fre * j22 + fim * j12) / det;
    const double db = (-fim * j11 + fre * j21) / det;
    a += da;
    b += db;
    iterates.push_back(Cplx{a, b});
    if (std::hypot(da, db) <= 1e-12 * std::hypot(a, b)) return {a, b};
  }
  throw NewtonError("dispersion_relation: Newton did not converge in 50 steps",
                    iterates);
}

}  // namespace

DispersionPoint dispersion_relation(const ModelKind& model,
                                    const MediumParams& medium, double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("dispersion_relation: omega must be > 0");

  switch (model.kind) {
    case ModelKind::Kind::Lossless:
      return make_point(omega, Cplx{omega / medium.c, 0.0});
    case ModelKind::Kind::TemporalReal:
    case ModelKind::Kind::TemporalComplex:
      return make_point(omega, temporal_k(medium, omega));
    case ModelKind::Kind::SpatialReal:
    case ModelKind::Kind::SpatialComplex:
      return make_point(omega, spatial_k(medium, omega));
    case ModelKind::Kind::StructuralDamping: {
      const Cplx k = omega / (medium.c * std::sqrt(Cplx{1.0, -model.eta}));
      return make_point(omega, k);
    }
  }
  throw std::logic_error("dispersion_relation: unknown model");
}

std::vector<DispersionPoint> attenuation_curve(
    const ModelKind& model, const MediumParams& medium,
    const std::vector<double>& omegas) {
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0))
      throw std::invalid_argument("attenuation_curve: omegas must be positive");
    if (i > 0 && omegas[i] < omegas[i - 1])
      throw std::invalid_argument("attenuation_curve: omegas must be sorted");
  }
  std::vector<DispersionPoint> pts(omegas.size());
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(omegas.size()); ++i) {
    try {
      pts[i] = dispersion_relation(model, medium, omegas[i]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return pts;
}

PowerLawFit fit_power_law(const std::vector<double>& omegas,
                          const std::vector<double>& alphas) {
  if (omegas.size() != alphas.size())
    throw std::invalid_argument("fit_power_law: size mismatch");
  if (omegas.size() < 5)
    throw std::invalid_argument("fit_power_law: need at least 5 points");
  double wmin = omegas.front(), wmax = omegas.front();
  for (double w : omegas) {
    if (!(w > 0.0))
      throw std::invalid_argument("fit_power_law: nonpositive omega");
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  for (double a : alphas)
    if (!(a > 0.0))
      throw std::invalid_argument("fit_power_law: nonpositive alpha");
  if (wmax < 4.0 * wmin)
    throw std::invalid_argument(
        "fit_power_law: degenerate span (need a factor of 4 in omega)");

  const std::size_t n = omegas.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(omegas[i]);
    sy += std::log(alphas[i]);
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(omegas[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(alphas[i]) - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ly = std::log(alphas[i]);
    const double pred = intercept + slope * std::log(omegas[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - my) * (ly - my);
  }
  double r2;
  if (ss_tot > 1e-300)
    r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  else
    r2 = ss_res < 1e-300 ? 1.0 : 0.0;

  return {std::exp(intercept), slope, r2};
}

double decay_amplitude(double e0, double alpha, double x) {
  if (x < 0.0)
    throw std::invalid_argument("decay_amplitude: x must be >= 0");
  return e0 * std::exp(-alpha * x);
}

double hausdorff_dimension(double n_copies, double scale) {
  if (!(n_copies >= 1.0))
    throw std::invalid_argument("hausdorff_dimension: N must be >= 1");
  if (!(scale > 1.0))
    throw std::invalid_argument("hausdorff_dimension: scale must be > 1");
  return std::log(n_copies) / std::log(scale);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2)
    throw std::invalid_argument("log_spaced: invalid range");
  std::vector<double> w(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    w[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                              static_cast<double>(count - 1));
  w.front() = lo;
  w.back() = hi;
  return w;
}

}  // namespace fracwave
