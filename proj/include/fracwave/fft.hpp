#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fracwave {

/// Complex 1D DFT of fixed length, forward and inverse (inverse is
/// normalized by 1/n). Plans are created once at construction with
/// deterministic (estimate-mode) planning.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::size_t size() const { return n_; }
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  std::size_t n_;
  void* fwd_plan_;
  void* inv_plan_;
  std::complex<double>* buf_in_;
  std::complex<double>* buf_out_;
};

/// One-shot forward DFT convenience for analysis code.
std::vector<std::complex<double>> dft_forward(
    const std::vector<std::complex<double>>& x);

}  // namespace fracwave
