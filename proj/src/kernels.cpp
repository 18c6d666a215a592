#include "defq/kernels.hpp"

#include "defq/errors.hpp"

#include <atomic>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace defq {

namespace {
KernelMode g_mode = KernelMode::Auto;
// Below this many coefficient multiplications the parallel kernel is not worth
// its merge overhead.
constexpr std::size_t kParallelWorkThreshold = 4096;
} // namespace

void set_kernel_mode(KernelMode mode) { g_mode = mode; }
KernelMode kernel_mode() { return g_mode; }

Poly poly_mul_serial(const Poly& a, const Poly& b) {
    Poly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly poly_mul_parallel(const Poly& a, const Poly& b) {
#ifndef _OPENMP
    return poly_mul_serial(a, b);
#else
    if (a.terms_.empty() || b.terms_.empty()) return Poly(a.vars_);
    std::vector<const std::pair<const Exponents, Rational>*> rows;
    rows.reserve(a.terms_.size());
    for (const auto& t : a.terms_) rows.push_back(&t);

    int nthreads = omp_get_max_threads();
    std::vector<Poly> partial(nthreads, Poly(a.vars_));
    std::exception_ptr err;

#pragma omp parallel
    {
        int tid = omp_get_thread_num();
        Poly& acc = partial[tid];
        Exponents e(a.vars_.size());
#pragma omp for schedule(static)
        for (long idx = 0; idx < static_cast<long>(rows.size()); ++idx) {
            try {
                const auto& [ea, ca] = *rows[idx];
                for (const auto& [eb, cb] : b.terms_) {
                    for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                    acc.add_term(e, ca * cb);
                }
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);

    // Merge order does not matter: addition in a canonical map is commutative.
    Poly r(a.vars_);
    for (const Poly& p : partial)
        for (const auto& [e2, c] : p.terms()) r.add_term(e2, c);
    return r;
#endif
}

Poly poly_mul_dispatch(const Poly& a, const Poly& b) {
    switch (g_mode) {
        case KernelMode::Serial: return poly_mul_serial(a, b);
        case KernelMode::Parallel: return poly_mul_parallel(a, b);
        case KernelMode::Auto: break;
    }
    std::size_t work = a.terms().size() * b.terms().size();
    return work >= kParallelWorkThreshold ? poly_mul_parallel(a, b) : poly_mul_serial(a, b);
}

void run_indexed_jobs(std::size_t count, const std::function<void(std::size_t)>& job,
                      bool parallel) {
#ifdef _OPENMP
    if (parallel && count > 1) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(count); ++i) {
            try {
                job(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < count; ++i) job(i);
}

} // namespace defq
