#pragma once

#include <complex>
#include <cstddef>

// Hot inner loops of the library. Every kernel exists in a serial and an
// OpenMP variant behind a runtime switch; both iterate in the same order
// per output element, so results are bit-identical across backends and
// thread counts. None of the parallel loops carries a reduction.

namespace fracwave::kernels {

using Cplx = std::complex<double>;

enum class Backend { Serial, OpenMp };

void set_backend(Backend b);
Backend backend();

/// y = M x for a dense row-major n-by-n real matrix.
void matvec(const double* m, const double* x, double* y, std::size_t n);

/// y = M x, real matrix applied to a complex vector.
void matvec(const double* m, const Cplx* x, Cplx* y, std::size_t n);

/// out = sum_{k<terms} w[k] * snaps[k], snaps ordered newest first.
/// This is the Grunwald-Letnikov history reduction, the O(steps) part of
/// every time-fractional step.
void gl_reduce(const Cplx* const* snaps, std::size_t terms, const double* w,
               std::size_t n, Cplx* out);

/// Second-difference Laplacian of a field: out = D2 p / h^2.
/// Dirichlet rows clamp the missing neighbour to zero; periodic rows wrap.
void laplacian_stencil(const Cplx* p, Cplx* out, std::size_t n, double h,
                       bool periodic);

/// Three-level explicit update:
///   out = 2 p_now - p_prev + c2dt2 * (lap_scale * lap - damp)
/// damp may be null (no damping term).
void leapfrog_combine(std::size_t n, const Cplx* p_now, const Cplx* p_prev,
                      const Cplx* lap, const Cplx* damp, double c2dt2,
                      Cplx lap_scale, Cplx* out);

/// One conservative advection step with local Lax-Friedrichs flux on p^2/2,
/// periodic wrap, plus an explicit damping term:
///   out_j = p_j - (dt/h)(F_{j+1/2} - F_{j-1/2}) - dt * damp_j
void burgers_advect(const Cplx* p, const Cplx* damp, std::size_t n, double dt,
                    double h, Cplx* out);

/// Dense congruence m_out = Q diag(d) Q^T (row-major Q), used to
/// materialize matrix fractional powers.
void sym_congruence(const double* q, const double* d, std::size_t n,
                    double* m_out);

}  // namespace fracwave::kernels
