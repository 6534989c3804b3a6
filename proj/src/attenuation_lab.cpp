#include "fracwave/attenuation_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracwave/fft.hpp"

namespace fracwave {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p *= 2;
  return p;
}

std::size_t argmax(const std::vector<double>& v, std::size_t lo,
                   std::size_t hi) {
  std::size_t best = lo;
  for (std::size_t i = lo; i <= hi && i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace

double PulseSpec::tau() const {
  // FWHM of the spectral envelope equals bandwidth * f0.
  return std::sqrt(2.0 * std::log(2.0)) / (M_PI * f0 * bandwidth);
}

std::vector<double> make_pulse(const PulseSpec& spec, double dt,
                               double duration) {
  if (!(spec.f0 > 0.0)) throw std::invalid_argument("make_pulse: f0 must be > 0");
  if (!(spec.bandwidth > 0.0 && spec.bandwidth < 2.0))
    throw std::invalid_argument("make_pulse: bandwidth must lie in (0, 2)");
  if (!(dt > 0.0)) throw std::invalid_argument("make_pulse: dt must be > 0");
  if (!(duration > 0.0))
    throw std::invalid_argument("make_pulse: duration must be > 0");
  if (!std::isfinite(spec.amplitude))
    throw std::invalid_argument("make_pulse: amplitude must be finite");

  const double f_hi = spec.f0 * (1.0 + spec.bandwidth);
  if (1.0 / (f_hi * dt) < 10.0)
    throw std::invalid_argument(
        "make_pulse: unresolved pulse, need >= 10 steps per period at "
        "f0*(1+bandwidth) = " +
        std::to_string(f_hi) + " Hz with dt = " + std::to_string(dt));

  const double tau = spec.tau();
  const double t0 = 4.5 * tau;
  const std::size_t len =
      static_cast<std::size_t>(std::floor(duration / dt)) + 1;
  std::vector<double> s(len, 0.0), env(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    const double t = static_cast<double>(k) * dt - t0;
    env[k] = std::exp(-0.5 * t * t / (tau * tau));
    if (spec.kind == PulseSpec::Kind::GaussianSine)
      s[k] = spec.amplitude * env[k] * std::sin(2.0 * M_PI * spec.f0 * t);
    else
      s[k] = spec.amplitude * env[k];
  }
  if (spec.kind == PulseSpec::Kind::GaussianSine) {
    // Project out the net area: a 1D driven point integrates its source, so
    // any DC content leaves a standing plateau wake behind the pulse.
    double sum_s = 0.0, sum_e = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      sum_s += s[k];
      sum_e += env[k];
    }
    const double dc = sum_s / sum_e;
    for (std::size_t k = 0; k < len; ++k) s[k] -= dc * env[k];
  }
  return s;
}

std::vector<Cplx> make_pulse_analytic(const PulseSpec& spec, double dt,
                                      double duration) {
  // validation shared with the real form
  const std::vector<double> checked = make_pulse(spec, dt, duration);
  const std::size_t len = checked.size();
  const double tau = spec.tau();
  const double t0 = 4.5 * tau;
  std::vector<Cplx> s(len, Cplx{0.0, 0.0});
  std::vector<double> env(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    const double t = static_cast<double>(k) * dt - t0;
    env[k] = std::exp(-0.5 * t * t / (tau * tau));
    if (spec.kind == PulseSpec::Kind::GaussianSine)
      s[k] = spec.amplitude * env[k] *
             std::polar(1.0, -2.0 * M_PI * spec.f0 * t);
    else
      s[k] = Cplx{spec.amplitude * env[k], 0.0};
  }
  if (spec.kind == PulseSpec::Kind::GaussianSine) {
    Cplx sum_s{0.0, 0.0};
    double sum_e = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      sum_s += s[k];
      sum_e += env[k];
    }
    const Cplx dc = sum_s / sum_e;
    for (std::size_t k = 0; k < len; ++k) s[k] -= dc * env[k];
  }
  return s;
}

std::vector<double> analytic_envelope(const std::vector<double>& x) {
  const std::size_t n = next_pow2(std::max<std::size_t>(x.size(), 2));
  Field buf(n, Cplx{0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = Cplx{x[i], 0.0};

  Dft plan(n);
  Field hat(n);
  plan.forward(buf.data(), hat.data());
  // One-sided spectrum: keep DC and Nyquist, double positives, zero negatives.
  for (std::size_t m = 1; m < n / 2; ++m) hat[m] *= 2.0;
  for (std::size_t m = n / 2 + 1; m < n; ++m) hat[m] = Cplx{0.0, 0.0};
  plan.inverse(hat.data(), buf.data());

  std::vector<double> env(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) env[i] = std::abs(buf[i]);
  return env;
}

std::vector<double> trace_envelope(const std::vector<Cplx>& trace) {
  std::vector<double> re(trace.size()), im(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    re[i] = trace[i].real();
    im[i] = trace[i].imag();
  }
  const std::vector<double> er = analytic_envelope(re);
  const std::vector<double> ei = analytic_envelope(im);
  std::vector<double> env(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i)
    env[i] = std::hypot(er[i], ei[i]);
  return env;
}

std::vector<Cplx> analysis_spectrum(const std::vector<Cplx>& x) {
  Dft plan(x.size());
  std::vector<Cplx> out(x.size());
  plan.inverse(x.data(), out.data());
  const double n = static_cast<double>(x.size());
  for (Cplx& v : out) v *= n;  // undo the inverse normalization
  return out;
}

std::vector<double> tukey_window(std::size_t n, double taper_frac) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const std::size_t ramp = static_cast<std::size_t>(
      std::floor(taper_frac * static_cast<double>(n)));
  for (std::size_t i = 0; i < ramp; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(ramp);
    const double v = 0.5 * (1.0 - std::cos(M_PI * u));
    w[i] *= v;
    w[n - 1 - i] *= v;
  }
  return w;
}

Band snr_band(const std::vector<double>& mag1, const std::vector<double>& mag2,
              double threshold, std::size_t jmin, std::size_t jmax) {
  if (mag1.size() != mag2.size() || mag1.empty())
    throw std::invalid_argument("snr_band: bad spectra");
  jmax = std::min(jmax, mag1.size() - 1);
  if (jmin > jmax) throw std::invalid_argument("snr_band: empty search range");

  double m1 = 0.0, m2 = 0.0;
  for (std::size_t j = jmin; j <= jmax; ++j) {
    m1 = std::max(m1, mag1[j]);
    m2 = std::max(m2, mag2[j]);
  }
  const double t1 = threshold * m1, t2 = threshold * m2;
  auto pass = [&](std::size_t j) { return mag1[j] >= t1 && mag2[j] >= t2; };

  const std::size_t peak = argmax(mag1, jmin, jmax);
  if (!pass(peak)) throw std::invalid_argument("snr_band: empty SNR band");
  Band b{peak, peak};
  while (b.lo > jmin && pass(b.lo - 1)) --b.lo;
  while (b.hi < jmax && pass(b.hi + 1)) ++b.hi;
  if (b.hi - b.lo + 1 < 5)
    throw std::invalid_argument("snr_band: SNR band narrower than 5 bins");
  return b;
}

std::vector<double> spectral_ratio_alpha(const std::vector<double>& mag1,
                                         const std::vector<double>& mag2,
                                         double dx) {
  if (mag1.size() != mag2.size())
    throw std::invalid_argument("spectral_ratio_alpha: size mismatch");
  if (dx == 0.0)
    throw std::invalid_argument("spectral_ratio_alpha: zero probe separation");
  // log difference, not log of the quotient: swapping the probes then
  // negates the result exactly
  std::vector<double> alpha(mag1.size());
  for (std::size_t i = 0; i < mag1.size(); ++i)
    alpha[i] = (std::log(mag1[i]) - std::log(mag2[i])) / dx;
  return alpha;
}

ExperimentResult run_attenuation_experiment(
    const ModelKind& model, const MediumParams& medium, const Grid1D& grid,
    const PulseSpec& pulse, std::size_t source_index, std::size_t probe1_index,
    std::size_t probe2_index, double duration, double dt_refine) {
  if (!grid.periodic())
    throw std::invalid_argument(
        "run_attenuation_experiment: periodic grid required");
  if (!(source_index < probe1_index && probe1_index < probe2_index &&
        probe2_index < grid.n))
    throw std::invalid_argument(
        "run_attenuation_experiment: need source < probe1 < probe2 < n");
  if (!(dt_refine > 0.0 && dt_refine <= 1.0))
    throw std::invalid_argument(
        "run_attenuation_experiment: dt_refine must lie in (0, 1]");

  // Grid must resolve the top of the pulse band.
  const double f_hi = pulse.f0 * (1.0 + pulse.bandwidth);
  const double lambda_hi = medium.c / f_hi;
  if (lambda_hi < 8.0 * grid.h)
    throw std::invalid_argument(
        "run_attenuation_experiment: unresolved pulse, need >= 8 points per "
        "wavelength at f0*(1+bandwidth); wavelength = " +
        std::to_string(lambda_hi) + " m, h = " + std::to_string(grid.h));

  // The wrapped (left-going) wave must not reach probe 2 inside the
  // recording window.
  const double len = grid.length();
  const double dx2 = static_cast<double>(probe2_index - source_index) * grid.h;
  const double t_contam = (len - dx2) / medium.c;
  if (duration > t_contam)
    throw std::invalid_argument(
        "run_attenuation_experiment: recording window (" +
        std::to_string(duration) + " s) extends past wraparound arrival (" +
        std::to_string(t_contam) + " s); enlarge the domain");

  const double dt = stable_dt(model, medium, grid) * dt_refine;

  SourceSpec source;
  source.kind = SourceSpec::Kind::DrivenPoint;
  source.location = source_index;
  const bool complex_domain = model.kind == ModelKind::Kind::TemporalComplex ||
                              model.kind == ModelKind::Kind::SpatialComplex;
  if (complex_domain) {
    source.signature = make_pulse_analytic(pulse, dt, pulse.duration());
  } else {
    const std::vector<double> sig = make_pulse(pulse, dt, pulse.duration());
    source.signature.assign(sig.size(), Cplx{0.0, 0.0});
    for (std::size_t k = 0; k < sig.size(); ++k)
      source.signature[k] = Cplx{sig[k], 0.0};
  }

  const ProbeTraces traces = simulate(model, medium, grid, source, duration,
                                      {probe1_index, probe2_index}, dt);

  ExperimentResult res;
  res.dt = dt;
  res.dx = static_cast<double>(probe2_index - probe1_index) * grid.h;

  // Arrival detection and identical-length windows around each arrival.
  const std::vector<double> env1 = trace_envelope(traces.data[0]);
  const std::vector<double> env2 = trace_envelope(traces.data[1]);
  const std::size_t nsamp = env1.size();
  const std::size_t peak1 = argmax(env1, 0, nsamp - 1);
  const std::size_t peak2 = argmax(env2, 0, nsamp - 1);
  res.arrival1 = static_cast<double>(peak1) * dt;
  res.arrival2 = static_cast<double>(peak2) * dt;

  std::size_t wlen = static_cast<std::size_t>(
      std::llround(1.5 * pulse.duration() / dt));
  wlen = std::clamp<std::size_t>(wlen, 32, nsamp);
  res.window_len = static_cast<double>(wlen) * dt;

  auto window_start = [&](std::size_t peak) {
    const std::size_t half = wlen / 2;
    std::size_t s = peak > half ? peak - half : 0;
    return std::min(s, nsamp - wlen);
  };
  const std::vector<double> taper = tukey_window(wlen, res.taper_frac);

  const std::size_t nfft = next_pow2(4 * wlen);
  auto spectrum = [&](const std::vector<Cplx>& trace, std::size_t start) {
    Field buf(nfft, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < wlen; ++i) buf[i] = trace[start + i] * taper[i];
    const std::vector<Cplx> hat = analysis_spectrum(buf);
    std::vector<double> mag(nfft / 2);
    for (std::size_t m = 0; m < nfft / 2; ++m) mag[m] = std::abs(hat[m]);
    return mag;
  };
  const std::vector<double> mag1 = spectrum(traces.data[0], window_start(peak1));
  const std::vector<double> mag2 = spectrum(traces.data[1], window_start(peak2));

  // Usable bins: at least 2 cycles inside the window, at least 8 grid points
  // per wavelength, then the 1 percent SNR gate.
  const double domega = 2.0 * M_PI / (static_cast<double>(nfft) * dt);
  const double omega_floor = 2.0 * M_PI * 2.0 / res.window_len;
  const double omega_ceil = 2.0 * M_PI * medium.c / (8.0 * grid.h);
  const std::size_t jmin = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(omega_floor / domega)));
  const std::size_t jmax =
      static_cast<std::size_t>(std::floor(omega_ceil / domega));
  const Band band = snr_band(mag1, mag2, 0.01, jmin, jmax);
  res.band_lo = static_cast<double>(band.lo) * domega;
  res.band_hi = static_cast<double>(band.hi) * domega;

  for (std::size_t j = band.lo; j <= band.hi; ++j) {
    res.omega.push_back(static_cast<double>(j) * domega);
    res.alpha_measured.push_back(
        (std::log(mag1[j]) - std::log(mag2[j])) / res.dx);
  }
  const std::vector<DispersionPoint> pred =
      attenuation_curve(model, medium, res.omega);
  res.alpha_predicted.resize(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i)
    res.alpha_predicted[i] = pred[i].alpha;

  res.fit = fit_power_law(res.omega, res.alpha_measured);

  const std::size_t nb = res.omega.size();
  for (std::size_t i = nb / 4; i < nb - nb / 4; ++i) {
    if (res.alpha_predicted[i] > 0.0) {
      const double dev =
          std::abs(res.alpha_measured[i] / res.alpha_predicted[i] - 1.0);
      res.max_dev_mid = std::max(res.max_dev_mid, dev);
    }
  }
  return res;
}

std::vector<SweepRow> sweep(const std::vector<ModelKind>& models,
                            const std::vector<double>& ys,
                            const std::vector<double>& alpha0s,
                            const LabSetup& setup) {
  std::vector<SweepRow> rows;
  for (const ModelKind& model : models)
    for (double y : ys)
      for (double a0 : alpha0s) {
        SweepRow row;
        row.model = model.name();
        row.y = y;
        row.alpha0 = a0;
        try {
          const MediumParams medium(setup.c, a0, y);
          const ExperimentResult res = run_attenuation_experiment(
              model, medium, setup.grid, setup.pulse, setup.source_index,
              setup.probe1_index, setup.probe2_index, setup.duration,
              setup.dt_refine);
          row.ok = true;
          row.y_hat = res.fit.y_hat;
          row.alpha0_hat = res.fit.alpha0_hat;
          row.r2 = res.fit.r2;
          row.band_lo = res.band_lo;
          row.band_hi = res.band_hi;
          row.max_dev_mid = res.max_dev_mid;
        } catch (const std::exception& e) {
          row.ok = false;
          row.error = e.what();
        }
        rows.push_back(row);
      }
  return rows;
}

}  // namespace fracwave
