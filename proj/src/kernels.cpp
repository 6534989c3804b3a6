#include "fracwave/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace fracwave::kernels {

namespace {
std::atomic<Backend> g_backend{Backend::OpenMp};

inline double row_dot(const double* row, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += row[i] * x[i];
  return acc;
}

inline Cplx row_dot(const double* row, const Cplx* x, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += row[i] * x[i].real();
    im += row[i] * x[i].imag();
  }
  return {re, im};
}

// Blocked so each thread streams contiguous snapshot segments.
constexpr std::size_t kBlock = 512;

inline void gl_reduce_block(const Cplx* const* snaps, std::size_t terms,
                            const double* w, std::size_t j0, std::size_t j1,
                            Cplx* out) {
  for (std::size_t j = j0; j < j1; ++j) out[j] = Cplx{0.0, 0.0};
  for (std::size_t k = 0; k < terms; ++k) {
    const Cplx* s = snaps[k];
    const double wk = w[k];
    for (std::size_t j = j0; j < j1; ++j) out[j] += wk * s[j];
  }
}

inline Cplx lap_at(const Cplx* p, std::size_t j, std::size_t n, double inv_h2,
                   bool periodic) {
  const Cplx left = (j > 0) ? p[j - 1] : (periodic ? p[n - 1] : Cplx{0.0, 0.0});
  const Cplx right =
      (j + 1 < n) ? p[j + 1] : (periodic ? p[0] : Cplx{0.0, 0.0});
  return (left - 2.0 * p[j] + right) * inv_h2;
}

inline Cplx llf_flux(const Cplx& pl, const Cplx& pr) {
  const Cplx fl = 0.5 * pl * pl;
  const Cplx fr = 0.5 * pr * pr;
  const double a = std::max(std::abs(pl), std::abs(pr));
  return 0.5 * (fl + fr) - 0.5 * a * (pr - pl);
}

}  // namespace

void set_backend(Backend b) { g_backend.store(b); }
Backend backend() { return g_backend.load(); }

void matvec(const double* m, const double* x, double* y, std::size_t n) {
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(n); ++r)
      y[r] = row_dot(m + static_cast<std::size_t>(r) * n, x, n);
  } else {
    for (std::size_t r = 0; r < n; ++r) y[r] = row_dot(m + r * n, x, n);
  }
}

void matvec(const double* m, const Cplx* x, Cplx* y, std::size_t n) {
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(n); ++r)
      y[r] = row_dot(m + static_cast<std::size_t>(r) * n, x, n);
  } else {
    for (std::size_t r = 0; r < n; ++r) y[r] = row_dot(m + r * n, x, n);
  }
}

void gl_reduce(const Cplx* const* snaps, std::size_t terms, const double* w,
               std::size_t n, Cplx* out) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      const std::size_t j0 = static_cast<std::size_t>(b) * kBlock;
      gl_reduce_block(snaps, terms, w, j0, std::min(j0 + kBlock, n), out);
    }
  } else {
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t j0 = b * kBlock;
      gl_reduce_block(snaps, terms, w, j0, std::min(j0 + kBlock, n), out);
    }
  }
}

void laplacian_stencil(const Cplx* p, Cplx* out, std::size_t n, double h,
                       bool periodic) {
  const double inv_h2 = 1.0 / (h * h);
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(n); ++j)
      out[j] = lap_at(p, static_cast<std::size_t>(j), n, inv_h2, periodic);
  } else {
    for (std::size_t j = 0; j < n; ++j)
      out[j] = lap_at(p, j, n, inv_h2, periodic);
  }
}

void leapfrog_combine(std::size_t n, const Cplx* p_now, const Cplx* p_prev,
                      const Cplx* lap, const Cplx* damp, double c2dt2,
                      Cplx lap_scale, Cplx* out) {
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
      const Cplx d = damp ? damp[j] : Cplx{0.0, 0.0};
      out[j] = 2.0 * p_now[j] - p_prev[j] + c2dt2 * (lap_scale * lap[j] - d);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const Cplx d = damp ? damp[j] : Cplx{0.0, 0.0};
      out[j] = 2.0 * p_now[j] - p_prev[j] + c2dt2 * (lap_scale * lap[j] - d);
    }
  }
}

void burgers_advect(const Cplx* p, const Cplx* damp, std::size_t n, double dt,
                    double h, Cplx* out) {
  const double r = dt / h;
  auto cell = [&](std::size_t j) {
    const Cplx pl = p[(j + n - 1) % n];
    const Cplx pr = p[(j + 1) % n];
    const Cplx f_right = llf_flux(p[j], pr);
    const Cplx f_left = llf_flux(pl, p[j]);
    const Cplx d = damp ? damp[j] : Cplx{0.0, 0.0};
    return p[j] - r * (f_right - f_left) - dt * d;
  };
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(n); ++j)
      out[j] = cell(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < n; ++j) out[j] = cell(j);
  }
}

void sym_congruence(const double* q, const double* d, std::size_t n,
                    double* m_out) {
  auto row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q[i * n + k] * d[k] * q[j * n + k];
      m_out[i * n + j] = acc;
    }
  };
  if (backend() == Backend::OpenMp) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) row(i);
  }
}

}  // namespace fracwave::kernels
