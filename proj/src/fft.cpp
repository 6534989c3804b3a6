#include "fracwave/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <stdexcept>

namespace fracwave {

Dft::Dft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Dft: length must be positive");
  buf_in_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  buf_out_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  fwd_plan_ = fftw_plan_dft_1d(static_cast<int>(n),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  inv_plan_ = fftw_plan_dft_1d(static_cast<int>(n),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
}

Dft::~Dft() {
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Dft::forward(const std::complex<double>* in,
                  std::complex<double>* out) const {
  std::memcpy(buf_in_, in, n_ * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(fwd_plan_));
  std::memcpy(out, buf_out_, n_ * sizeof(std::complex<double>));
}

void Dft::inverse(const std::complex<double>* in,
                  std::complex<double>* out) const {
  std::memcpy(buf_in_, in, n_ * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(inv_plan_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = buf_out_[i] * scale;
}

std::vector<std::complex<double>> dft_forward(
    const std::vector<std::complex<double>>& x) {
  Dft plan(x.size());
  std::vector<std::complex<double>> out(x.size());
  plan.forward(x.data(), out.data());
  return out;
}

}  // namespace fracwave
