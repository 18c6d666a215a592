// Inner-loop kernels. Each has a serial reference implementation and an
// OpenMP variant; the serial form is the semantics, the parallel form must
// match it bit for bit (exact arithmetic, canonical maps). Dispatch is by
// operand size unless overridden via set_parallel_kernels().
#pragma once

#include "defq/poly.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace defq {

Poly poly_mul_serial(const Poly& a, const Poly& b);
Poly poly_mul_parallel(const Poly& a, const Poly& b);

enum class KernelMode { Auto, Serial, Parallel };
void set_kernel_mode(KernelMode mode);
KernelMode kernel_mode();

// Used by Poly::operator*.
Poly poly_mul_dispatch(const Poly& a, const Poly& b);

// Fan out `count` independent jobs; results land at their own index, so the
// outcome is identical to the serial loop. Exceptions are rethrown after the
// loop (first index wins).
void run_indexed_jobs(std::size_t count, const std::function<void(std::size_t)>& job,
                      bool parallel = true);

} // namespace defq
