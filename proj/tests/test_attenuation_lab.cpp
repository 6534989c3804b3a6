#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "fracwave/attenuation_lab.hpp"
#include "fracwave/fft.hpp"

using namespace fracwave;

namespace {

// Shared desk-scale bench: L = 32 m periodic, c = 1, probes 6 m apart.
LabSetup bench() {
  LabSetup setup{Grid1D(512, 0.0625, Boundary::Periodic),
                 1.0,
                 PulseSpec{PulseSpec::Kind::GaussianSine, 5.0 / (2.0 * M_PI),
                           1.0, 1.0},
                 24,    // x = 1.5
                 120,   // x = 7.5
                 216,   // x = 13.5
                 17.5,
                 1.0};
  return setup;
}

std::vector<double> spectrum_mag(const std::vector<double>& x) {
  Field buf(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = Cplx{x[i], 0.0};
  const Field hat = dft_forward(buf);
  std::vector<double> mag(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::abs(hat[i]);
  return mag;
}

}  // namespace

TEST_CASE("make_pulse: amplitude zero gives the zero series") {
  PulseSpec spec{PulseSpec::Kind::GaussianSine, 1.0, 1.0, 0.0};
  const std::vector<double> s = make_pulse(spec, 0.01, 5.0);
  for (double v : s) CHECK(v == 0.0);
}

TEST_CASE("make_pulse: gaussian bump spectrum peaks at zero and decays") {
  PulseSpec spec{PulseSpec::Kind::GaussianBump, 1.0, 1.0, 1.0};
  const double dt = 0.01;
  std::vector<double> s = make_pulse(spec, dt, 10.0);
  s.resize(1024, 0.0);
  const std::vector<double> mag = spectrum_mag(s);
  for (std::size_t m = 1; m <= 40; ++m) CHECK(mag[m] <= mag[0] + 1e-12);
  for (std::size_t m = 1; m < 20; ++m) CHECK(mag[m + 1] <= mag[m] * 1.0001);
}

TEST_CASE("make_pulse: gaussian sine spectral peak lands on f0 within 2%") {
  const double f0 = 1.0;
  PulseSpec spec{PulseSpec::Kind::GaussianSine, f0, 1.0, 1.0};
  const double dt = 0.01;
  std::vector<double> s = make_pulse(spec, dt, spec.duration());
  s.resize(8192, 0.0);
  const std::vector<double> mag = spectrum_mag(s);
  std::size_t peak = 1;
  for (std::size_t m = 1; m < 4096; ++m)
    if (mag[m] > mag[peak]) peak = m;
  const double f_peak = static_cast<double>(peak) / (8192.0 * dt);
  CHECK(f_peak == doctest::Approx(f0).epsilon(0.02));

  // spectral magnitude stays above a tenth of peak across the nominal band
  const double flo = f0 * 0.5, fhi = f0 * 1.5;
  for (std::size_t m = 1; m < 4096; ++m) {
    const double f = static_cast<double>(m) / (8192.0 * dt);
    if (f >= flo && f <= fhi) CHECK(mag[m] >= 0.1 * mag[peak]);
  }
}

TEST_CASE("make_pulse: unresolved pulse raises an error naming the bound") {
  PulseSpec spec{PulseSpec::Kind::GaussianSine, 10.0, 1.0, 1.0};
  try {
    make_pulse(spec, 0.02, 1.0);  // 2.5 steps per period at f0 (1+b)
    FAIL("expected resolution error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("10 steps per period") !=
          std::string::npos);
  }
}

TEST_CASE("make_pulse_analytic: spectrum is one-sided") {
  PulseSpec spec{PulseSpec::Kind::GaussianSine, 1.0, 1.0, 1.0};
  const double dt = 0.01;
  std::vector<Cplx> s = make_pulse_analytic(spec, dt, spec.duration());
  s.resize(8192, Cplx{0.0, 0.0});
  const std::vector<Cplx> hat = analysis_spectrum(s);
  // under the e^{+i w t} analysis kernel, forward content fills [1, n/2);
  // a real pulse would mirror its full energy into the -f0 band, the
  // analytic one keeps that band at the envelope-tail level
  const std::size_t bin_f0 = static_cast<std::size_t>(1.0 * 8192.0 * dt);
  double pos = 0.0, mirror = 0.0;
  for (std::size_t m = 1; m < 4096; ++m) pos = std::max(pos, std::abs(hat[m]));
  for (std::size_t m = 8192 - 2 * bin_f0; m <= 8192 - bin_f0 / 2; ++m)
    mirror = std::max(mirror, std::abs(hat[m]));
  CHECK(mirror <= 1e-3 * pos);
  // the whole negative half stays weak (only the near-DC skirt of a
  // wideband envelope leaks across zero)
  double neg = 0.0;
  for (std::size_t m = 4097; m < 8192; ++m)
    neg = std::max(neg, std::abs(hat[m]));
  CHECK(neg <= 0.1 * pos);
}

TEST_CASE("tukey window: flat middle, tapered ends") {
  const std::vector<double> w = tukey_window(100, 0.1);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[99] == doctest::Approx(0.0));
  for (std::size_t i = 10; i < 90; ++i) CHECK(w[i] == 1.0);
  CHECK(w[5] == w[94]);  // symmetric ramps
}

TEST_CASE("snr_band: gating and band monotonicity") {
  const std::size_t n = 200;
  std::vector<double> m1(n), m2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = (static_cast<double>(j) - 100.0) / 25.0;
    m1[j] = std::exp(-0.5 * x * x);
    m2[j] = 0.7 * std::exp(-0.55 * x * x);
  }
  const Band b1 = snr_band(m1, m2, 0.01, 1, n - 1);
  const Band b5 = snr_band(m1, m2, 0.05, 1, n - 1);
  CHECK(b5.lo >= b1.lo);
  CHECK(b5.hi <= b1.hi);
  CHECK(b1.lo <= 100);
  CHECK(b1.hi >= 100);

  // widening the gate only restricts the band; alpha values are untouched
  const std::vector<double> alpha1 = spectral_ratio_alpha(m1, m2, 2.0);
  const std::vector<double> alpha5 = spectral_ratio_alpha(m1, m2, 2.0);
  for (std::size_t j = b5.lo; j <= b5.hi; ++j) CHECK(alpha1[j] == alpha5[j]);
}

TEST_CASE("snr_band: empty search range raises") {
  std::vector<double> m1(50, 1.0), m2(50, 1.0);
  CHECK_THROWS_AS(snr_band(m1, m2, 0.01, 40, 10), std::invalid_argument);
}

TEST_CASE("reciprocity: swapping probes negates the measured attenuation") {
  const std::vector<double> m1{1.0, 0.9, 0.8, 0.7}, m2{0.8, 0.75, 0.6, 0.5};
  const std::vector<double> fwd = spectral_ratio_alpha(m1, m2, 2.5);
  const std::vector<double> rev = spectral_ratio_alpha(m2, m1, 2.5);
  for (std::size_t i = 0; i < fwd.size(); ++i) CHECK(fwd[i] == -rev[i]);
}

TEST_CASE("attenuation experiment: temporal complex y=1 recovers the law") {
  const LabSetup setup = bench();
  const MediumParams medium(1.0, 0.01, 1.0);
  const ExperimentResult res = run_attenuation_experiment(
      ModelKind::temporal_complex(), medium, setup.grid, setup.pulse,
      setup.source_index, setup.probe1_index, setup.probe2_index,
      setup.duration);

  CHECK(res.fit.y_hat > 0.9);
  CHECK(res.fit.y_hat < 1.1);
  CHECK(res.fit.alpha0_hat == doctest::Approx(0.01).epsilon(0.2));
  CHECK(res.fit.r2 > 0.99);
  CHECK(res.max_dev_mid <= 0.10);
  CHECK(res.arrival2 > res.arrival1);
  // monotone decay along propagation: alpha positive across the band
  for (double a : res.alpha_measured) CHECK(a > 0.0);
}

TEST_CASE("attenuation experiment: lossless medium rejects the fit") {
  const LabSetup setup = bench();
  const MediumParams medium(1.0, 0.0, 1.0);
  try {
    run_attenuation_experiment(ModelKind::lossless(), medium, setup.grid,
                               setup.pulse, setup.source_index,
                               setup.probe1_index, setup.probe2_index,
                               setup.duration);
    FAIL("expected nonpositive-alpha fit rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("nonpositive alpha") !=
          std::string::npos);
  }
}

TEST_CASE("attenuation experiment guards its geometry") {
  const LabSetup setup = bench();
  const MediumParams medium(1.0, 0.01, 1.0);
  // probes out of order
  CHECK_THROWS_AS(
      run_attenuation_experiment(ModelKind::temporal_complex(), medium,
                                 setup.grid, setup.pulse, 120, 24, 216, 10.0),
      std::invalid_argument);
  // recording window runs into the wraparound
  CHECK_THROWS_AS(
      run_attenuation_experiment(ModelKind::temporal_complex(), medium,
                                 setup.grid, setup.pulse, 24, 120, 216, 100.0),
      std::invalid_argument);
  // unresolved pulse for this grid
  PulseSpec fast = setup.pulse;
  fast.f0 = 4.0;
  CHECK_THROWS_AS(
      run_attenuation_experiment(ModelKind::temporal_complex(), medium,
                                 setup.grid, fast, 24, 120, 216, 10.0),
      std::invalid_argument);
}

TEST_CASE("temporal and spatial complex models agree at y=1 within 10%") {
  const LabSetup setup = bench();
  const MediumParams medium(1.0, 0.01, 1.0);
  const ExperimentResult a = run_attenuation_experiment(
      ModelKind::temporal_complex(), medium, setup.grid, setup.pulse,
      setup.source_index, setup.probe1_index, setup.probe2_index,
      setup.duration);
  const ExperimentResult b = run_attenuation_experiment(
      ModelKind::spatial_complex(), medium, setup.grid, setup.pulse,
      setup.source_index, setup.probe1_index, setup.probe2_index,
      setup.duration);

  // compare measured curves on the overlap of the two bands' middle halves
  const double lo = std::max(a.band_lo + 0.25 * (a.band_hi - a.band_lo),
                             b.band_lo + 0.25 * (b.band_hi - b.band_lo));
  const double hi = std::min(a.band_hi - 0.25 * (a.band_hi - a.band_lo),
                             b.band_hi - 0.25 * (b.band_hi - b.band_lo));
  REQUIRE(hi > lo);
  auto value_at = [](const ExperimentResult& r, double w) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.omega.size(); ++i)
      if (std::abs(r.omega[i] - w) < std::abs(r.omega[best] - w)) best = i;
    return r.alpha_measured[best];
  };
  for (double w = lo; w <= hi; w += (hi - lo) / 8.0) {
    const double va = value_at(a, w), vb = value_at(b, w);
    CHECK(va / vb == doctest::Approx(1.0).epsilon(0.10));
  }
}

TEST_CASE("sweep: empty request gives an empty table") {
  CHECK(sweep({}, {0.5}, {0.01}, bench()).empty());
  CHECK(sweep({ModelKind::temporal_complex()}, {}, {0.01}, bench()).empty());
  CHECK(sweep({ModelKind::temporal_complex()}, {0.5}, {}, bench()).empty());
}

TEST_CASE("sweep: a single cell equals the direct experiment call") {
  const LabSetup setup = bench();
  const MediumParams medium(1.0, 0.01, 0.5);
  const ExperimentResult direct = run_attenuation_experiment(
      ModelKind::spatial_complex(), medium, setup.grid, setup.pulse,
      setup.source_index, setup.probe1_index, setup.probe2_index,
      setup.duration);
  const std::vector<SweepRow> rows =
      sweep({ModelKind::spatial_complex()}, {0.5}, {0.01}, setup);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  CHECK(rows[0].y_hat == direct.fit.y_hat);
  CHECK(rows[0].alpha0_hat == direct.fit.alpha0_hat);
  CHECK(rows[0].r2 == direct.fit.r2);
  CHECK(rows[0].max_dev_mid == direct.max_dev_mid);
}

TEST_CASE("sweep records per-cell failures and continues") {
  LabSetup setup = bench();
  setup.duration = 100.0;  // wraparound guard trips in every cell
  const std::vector<SweepRow> rows =
      sweep({ModelKind::temporal_complex()}, {0.5, 1.0}, {0.01}, setup);
  REQUIRE(rows.size() == 2);
  for (const SweepRow& r : rows) {
    CHECK_FALSE(r.ok);
    CHECK(r.error.find("wraparound") != std::string::npos);
  }
}
