// Timing harness comparing the serial reference kernels against the OpenMP
// variants on identical inputs, plus the trial fan-out used by the verify
// suites. Results are checked for exact equality before timing is reported.
#include "defq/kernels.hpp"
#include "defq/rng.hpp"
#include "defq/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace defq;

namespace {

Poly random_poly(const std::vector<std::string>& vars, Rng& rng, int terms, int max_exp) {
    Poly p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars.size());
        for (auto& x : e) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_exp) + 1));
        long c = rng.range(-99, 99);
        if (c != 0) p.add_term(e, Rational(c));
    }
    return p;
}

template <class F>
double time_ms(const F& f, int reps) {
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    int terms = 600;
    int reps = 3;
    std::uint64_t seed = 7;
    app.add_option("--terms", terms, "terms per polynomial");
    app.add_option("--reps", reps, "timing repetitions");
    app.add_option("--seed", seed, "input seed");
    CLI11_PARSE(app, argc, argv);

    Rng rng(seed);
    std::vector<std::string> vars{"x", "y", "z"};
    Poly a = random_poly(vars, rng, terms, 8);
    Poly b = random_poly(vars, rng, terms, 8);

    Poly serial = poly_mul_serial(a, b);
    Poly parallel = poly_mul_parallel(a, b);
    if (!(serial == parallel)) {
        std::cerr << "kernel mismatch: parallel result differs from the serial reference\n";
        return 1;
    }

    double t_serial = time_ms([&] { (void)poly_mul_serial(a, b); }, reps);
    double t_parallel = time_ms([&] { (void)poly_mul_parallel(a, b); }, reps);

    std::cout << "poly-mul  terms=" << a.terms().size() << "x" << b.terms().size() << "\n";
    std::cout << "  serial   " << t_serial << " ms\n";
    std::cout << "  openmp   " << t_parallel << " ms\n";
    std::cout << "  speedup  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n";

    VerifyOptions opt;
    opt.trials = 40;
    opt.seed = seed;
    opt.order = 2;
    opt.parallel = false;
    double t_suite_serial = time_ms([&] { (void)suite_gauge_orbit(opt); }, 1);
    opt.parallel = true;
    double t_suite_parallel = time_ms([&] { (void)suite_gauge_orbit(opt); }, 1);
    std::cout << "gauge-orbit suite (40 trials)\n";
    std::cout << "  serial   " << t_suite_serial << " ms\n";
    std::cout << "  openmp   " << t_suite_parallel << " ms\n";
    std::cout << "  speedup  "
              << (t_suite_parallel > 0 ? t_suite_serial / t_suite_parallel : 0.0) << "x\n";
    return 0;
}
