#include "fracwave/frac_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "fracwave/kernels.hpp"

namespace fracwave {

FracOrder::FracOrder(double value) : value_(value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("FracOrder: value must be finite");
  if (value < 0.0 || value > 3.0)
    throw std::invalid_argument("FracOrder: value must lie in [0, 3]");
}

HistoryBuffer::HistoryBuffer(double dt, std::size_t window)
    : dt_(dt), window_(window) {
  if (!(dt > 0.0)) throw std::invalid_argument("HistoryBuffer: dt must be > 0");
  if (window != 0 && window < 2)
    throw std::invalid_argument("HistoryBuffer: window must be >= 2");
}

void HistoryBuffer::push(Field sample) {
  samples_.push_back(std::move(sample));
  if (window_ != 0 && samples_.size() > window_) {
    samples_.pop_front();
    truncated_ = true;
  }
}

const Field& HistoryBuffer::at_age(std::size_t k) const {
  if (k >= samples_.size())
    throw std::out_of_range("HistoryBuffer: age out of range");
  return samples_[samples_.size() - 1 - k];
}

void GlWeights::extend(std::size_t n) {
  if (w.empty()) w.push_back(1.0);
  for (std::size_t k = w.size(); k <= n; ++k)
    w.push_back(w[k - 1] * (static_cast<double>(k) - 1.0 - order) /
                static_cast<double>(k));
}

GlWeights gl_weights(FracOrder s, std::size_t n) {
  GlWeights gw{s.value(), {}};
  gw.extend(n);
  return gw;
}

Field frac_deriv_gl(const HistoryBuffer& history, FracOrder s) {
  if (history.empty())
    throw std::invalid_argument("frac_deriv_gl: history is empty");
  if (!(history.dt() > 0.0))
    throw std::invalid_argument("frac_deriv_gl: dt must be > 0");

  const std::size_t m = history.size();
  const std::size_t n = history.newest().size();
  GlWeights gw = gl_weights(s, m - 1);

  std::vector<const Cplx*> snaps(m);
  for (std::size_t k = 0; k < m; ++k) snaps[k] = history.at_age(k).data();

  Field out(n);
  kernels::gl_reduce(snaps.data(), m, gw.w.data(), n, out.data());

  const double scale = std::pow(history.dt(), -s.value());
  for (auto& v : out) v *= scale;
  return out;
}

double frac_deriv_gl(const std::vector<double>& samples, double dt,
                     FracOrder s) {
  HistoryBuffer hist(dt);
  for (double v : samples) hist.push(Field{Cplx{v, 0.0}});
  return frac_deriv_gl(hist, s)[0].real();
}

double frac_deriv_rl(const std::function<double(double)>& p, double t,
                     FracOrder s, std::size_t quad_points) {
  const double sv = s.value();
  if (!(t > 0.0)) throw std::invalid_argument("frac_deriv_rl: t must be > 0");
  if (!(sv > 0.0 && sv < 1.0))
    throw std::invalid_argument("frac_deriv_rl: order must lie in (0, 1)");
  if (quad_points < 2)
    throw std::invalid_argument("frac_deriv_rl: need at least 2 quad points");

  // I(T) = Integral_0^T p(T - u) u^{-s} du on a mesh graded toward the
  // u = 0 singularity; the linear interpolant of p is integrated exactly
  // against u^{-s}.
  auto inner = [&](double T) {
    const std::size_t N = quad_points;
    double acc = 0.0;
    double ua = 0.0;
    double pa = p(T);  // p(T - 0)
    for (std::size_t j = 1; j <= N; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(N);
      const double ub = T * frac * frac;  // quadratic grading
      const double pb = p(T - ub);
      const double du = ub - ua;
      if (du > 0.0) {
        const double beta = (pb - pa) / du;
        const double alpha = pa - beta * ua;
        const double m1 = (std::pow(ub, 1.0 - sv) - std::pow(ua, 1.0 - sv)) /
                          (1.0 - sv);
        const double m2 = (std::pow(ub, 2.0 - sv) - std::pow(ua, 2.0 - sv)) /
                          (2.0 - sv);
        acc += alpha * m1 + beta * m2;
      }
      ua = ub;
      pa = pb;
    }
    return acc;
  };

  const double delta = t * 1e-3;
  const double deriv = (inner(t + delta) - inner(t - delta)) / (2.0 * delta);
  return deriv / std::tgamma(1.0 - sv);
}

Cplx ft_symbol(FracOrder s, double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("ft_symbol: omega must be > 0");
  return std::polar(std::pow(omega, s.value()),
                    -s.value() * M_PI / 2.0);
}

}  // namespace fracwave
