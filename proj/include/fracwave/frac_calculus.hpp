#pragma once

#include <complex>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

namespace fracwave {

using Cplx = std::complex<double>;
using Field = std::vector<Cplx>;

/// A validated real fractional order in [0, 3].
class FracOrder {
 public:
  explicit FracOrder(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Uniformly spaced snapshots of a field, newest last. The memory of the
/// fractional time derivative. A window length of 0 keeps the full history;
/// otherwise only the newest `window` samples are retained and the buffer
/// reports itself as truncated.
class HistoryBuffer {
 public:
  HistoryBuffer(double dt, std::size_t window = 0);

  void push(Field sample);
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double dt() const { return dt_; }
  bool truncated() const { return truncated_; }
  std::size_t window() const { return window_; }
  const Field& newest() const { return samples_.back(); }
  const Field& at_age(std::size_t k) const;  // k = 0 is the newest sample

 private:
  double dt_;
  std::size_t window_;
  bool truncated_ = false;
  std::deque<Field> samples_;
};

/// Grunwald-Letnikov weights w_0..w_n for a given order:
/// w_0 = 1, w_k = w_{k-1} (k - 1 - s) / k.
struct GlWeights {
  double order;
  std::vector<double> w;

  /// Grow the weight table up to index n (no-op if already long enough).
  void extend(std::size_t n);
};

GlWeights gl_weights(FracOrder s, std::size_t n);

/// Discrete fractional derivative of the newest sample:
/// dt^{-s} sum_k w_k p(t - k dt) over the buffered history.
Field frac_deriv_gl(const HistoryBuffer& history, FracOrder s);

/// Scalar convenience overload for a sampled time series (oldest first).
double frac_deriv_gl(const std::vector<double>& samples, double dt,
                     FracOrder s);

/// Direct evaluation of the derivative definition
///   D^s p(t) = 1/Gamma(1-s) d/dt Integral_0^t p(tau) (t-tau)^{-s} dtau
/// for 0 < s < 1: singularity-respecting product-integration quadrature for
/// the inner integral (exact on piecewise-linear p), central difference for
/// the outer derivative. Slow and accurate; this is the test oracle for
/// frac_deriv_gl, not a production path.
double frac_deriv_rl(const std::function<double(double)>& p, double t,
                     FracOrder s, std::size_t quad_points = 4096);

/// One-sided Fourier symbol of the fractional time derivative:
/// (-i w)^s on the principal branch, i.e. w^s exp(-i s pi / 2). Requires
/// w > 0; negative frequencies follow by conjugate symmetry at the caller.
Cplx ft_symbol(FracOrder s, double omega);

}  // namespace fracwave
