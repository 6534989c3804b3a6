// Times the serial reference kernels against the OpenMP variants on the
// shapes the solvers actually use. Run without arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "fracwave/kernels.hpp"

namespace k = fracwave::kernels;
using k::Cplx;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    fn();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

void report(const char* name, double serial_s, double omp_s) {
  std::printf("%-28s serial %9.4f ms   omp %9.4f ms   speedup %.2fx\n", name,
              serial_s * 1e3, omp_s * 1e3, serial_s / omp_s);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {  // dense matvec, n = 1024 (fractional power application)
    const std::size_t n = 1024;
    std::vector<double> m(n * n), x(n), y(n);
    for (std::size_t i = 0; i < n * n; ++i) m[i] = std::sin(0.001 * (double)i);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(0.01 * (double)i);
    auto run = [&]() { k::matvec(m.data(), x.data(), y.data(), n); };
    k::set_backend(k::Backend::Serial);
    const double ts = time_best_of(20, run);
    k::set_backend(k::Backend::OpenMp);
    const double to = time_best_of(20, run);
    report("matvec n=1024", ts, to);
  }

  {  // GL history reduction: 4096 snapshots of a 512-point field
    const std::size_t steps = 4096, n = 512;
    std::vector<std::vector<Cplx>> hist(steps, std::vector<Cplx>(n));
    std::vector<const Cplx*> ptrs(steps);
    std::vector<double> w(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      ptrs[s] = hist[s].data();
      w[s] = 1.0 / (1.0 + (double)s);
      for (std::size_t j = 0; j < n; ++j)
        hist[s][j] = Cplx{std::sin((double)(s + j)), 0.1};
    }
    std::vector<Cplx> out(n);
    auto run = [&]() { k::gl_reduce(ptrs.data(), steps, w.data(), n, out.data()); };
    k::set_backend(k::Backend::Serial);
    const double ts = time_best_of(10, run);
    k::set_backend(k::Backend::OpenMp);
    const double to = time_best_of(10, run);
    report("gl_reduce 4096x512", ts, to);
  }

  {  // leapfrog pointwise update, n = 1 << 16
    const std::size_t n = 1 << 16;
    std::vector<Cplx> pn(n, Cplx{1.0, 0.0}), pp(n, Cplx{0.9, 0.0}), lap(n),
        damp(n), out(n);
    auto run = [&]() {
      for (int i = 0; i < 50; ++i)
        k::leapfrog_combine(n, pn.data(), pp.data(), lap.data(), damp.data(),
                            1e-4, Cplx{1.0, 0.0}, out.data());
    };
    k::set_backend(k::Backend::Serial);
    const double ts = time_best_of(10, run);
    k::set_backend(k::Backend::OpenMp);
    const double to = time_best_of(10, run);
    report("leapfrog_combine 50x65536", ts, to);
  }

  {  // Burgers advection sweep, n = 1 << 16
    const std::size_t n = 1 << 16;
    std::vector<Cplx> p(n), damp(n), out(n);
    for (std::size_t j = 0; j < n; ++j)
      p[j] = Cplx{0.1 * std::sin(2e-4 * (double)j), 0.0};
    auto run = [&]() {
      for (int i = 0; i < 50; ++i)
        k::burgers_advect(p.data(), damp.data(), n, 1e-4, 0.01, out.data());
    };
    k::set_backend(k::Backend::Serial);
    const double ts = time_best_of(10, run);
    k::set_backend(k::Backend::OpenMp);
    const double to = time_best_of(10, run);
    report("burgers_advect 50x65536", ts, to);
  }

  {  // dense congruence Q diag Q^T, n = 256
    const std::size_t n = 256;
    std::vector<double> q(n * n), d(n), m(n * n);
    for (std::size_t i = 0; i < n * n; ++i) q[i] = std::cos(0.002 * (double)i);
    for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 + (double)i;
    auto run = [&]() { k::sym_congruence(q.data(), d.data(), n, m.data()); };
    k::set_backend(k::Backend::Serial);
    const double ts = time_best_of(5, run);
    k::set_backend(k::Backend::OpenMp);
    const double to = time_best_of(5, run);
    report("sym_congruence n=256", ts, to);
  }

  k::set_backend(k::Backend::OpenMp);
  return 0;
}
