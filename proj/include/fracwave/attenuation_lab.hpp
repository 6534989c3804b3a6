#pragma once

#include <string>
#include <vector>

#include "fracwave/dispersion.hpp"
#include "fracwave/wave_models.hpp"

namespace fracwave {

struct PulseSpec {
  enum class Kind { GaussianSine, GaussianBump };
  Kind kind = Kind::GaussianSine;
  double f0 = 1.0;        // Hz
  double bandwidth = 1.0; // fractional (FWHM / f0), in (0, 2)
  double amplitude = 1.0;

  /// Envelope standard deviation implied by the fractional bandwidth.
  double tau() const;
  /// Effective duration of the emitted pulse (envelope centered at 4.5 tau).
  double duration() const { return 9.0 * tau(); }
};

/// Sampled source signature: zero before t = 0, finite energy, spectral
/// magnitude at least half of peak across the nominal band. Throws when the
/// time step cannot resolve the pulse (fewer than 10 steps per period at
/// f0 (1 + b)).
std::vector<double> make_pulse(const PulseSpec& spec, double dt,
                               double duration);

/// One-sided (analytic) pulse env(t) e^{-2 pi i f0 t}: spectrum on positive
/// frequencies only. The complex-domain models are one-sided operators and
/// must be driven with this form; a real drive puts half its energy into the
/// negative-frequency branch, which those models amplify for y in (0.5, 1.5).
std::vector<Cplx> make_pulse_analytic(const PulseSpec& spec, double dt,
                                      double duration);

/// Magnitude of the analytic signal (spectral one-siding).
std::vector<double> analytic_envelope(const std::vector<double>& x);
/// Envelope of a complex trace: quadrature sum of the component envelopes.
std::vector<double> trace_envelope(const std::vector<Cplx>& trace);

/// Analysis transform P_m = sum_k x_k e^{+i w_m t_k}: the one-sided
/// convention under which e^{-i w t} content (the forward branch) lands in
/// the positive bins m in [1, n/2).
std::vector<Cplx> analysis_spectrum(const std::vector<Cplx>& x);

/// Rectangular window with raised-cosine tapers over `taper_frac` of each end.
std::vector<double> tukey_window(std::size_t n, double taper_frac);

struct Band {
  std::size_t lo = 0;  // inclusive spectrum indices
  std::size_t hi = 0;
};

/// Maximal contiguous run of bins, inside [jmin, jmax], containing the peak
/// of mag1 where both spectra stay at or above `threshold` times their peak.
Band snr_band(const std::vector<double>& mag1, const std::vector<double>& mag2,
              double threshold, std::size_t jmin, std::size_t jmax);

/// Two-probe log-spectral-ratio attenuation: ln(|P1|/|P2|) / dx per bin.
std::vector<double> spectral_ratio_alpha(const std::vector<double>& mag1,
                                         const std::vector<double>& mag2,
                                         double dx);

struct ExperimentResult {
  double dt = 0.0;
  double dx = 0.0;           // probe separation, meters
  double arrival1 = 0.0;     // envelope-peak times, seconds
  double arrival2 = 0.0;
  double window_len = 0.0;   // seconds, identical for both probes
  double taper_frac = 0.1;
  double band_lo = 0.0;      // rad/s
  double band_hi = 0.0;
  std::vector<double> omega;            // band frequencies
  std::vector<double> alpha_measured;   // on band
  std::vector<double> alpha_predicted;  // dispersion module, same band
  PowerLawFit fit;
  double max_dev_mid = 0.0;  // max |measured/predicted - 1|, middle half
};

/// Launch a broadband pulse from a driven point, record two probes along the
/// propagation path, window each arrival, and measure alpha(w) from the
/// spectral ratio; fit the power law and attach the dispersion prediction.
ExperimentResult run_attenuation_experiment(
    const ModelKind& model, const MediumParams& medium, const Grid1D& grid,
    const PulseSpec& pulse, std::size_t source_index, std::size_t probe1_index,
    std::size_t probe2_index, double duration, double dt_refine = 1.0);

struct LabSetup {
  Grid1D grid;
  double c = 1.0;
  PulseSpec pulse;
  std::size_t source_index = 0;
  std::size_t probe1_index = 0;
  std::size_t probe2_index = 0;
  double duration = 0.0;
  double dt_refine = 1.0;
};

struct SweepRow {
  std::string model;
  double y = 0.0;
  double alpha0 = 0.0;
  bool ok = false;
  std::string error;
  double y_hat = 0.0;
  double alpha0_hat = 0.0;
  double r2 = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double max_dev_mid = 0.0;
};

/// One experiment per (model, y, alpha0) combination; per-cell failures are
/// recorded in the row and the sweep continues.
std::vector<SweepRow> sweep(const std::vector<ModelKind>& models,
                            const std::vector<double>& ys,
                            const std::vector<double>& alpha0s,
                            const LabSetup& setup);

}  // namespace fracwave
