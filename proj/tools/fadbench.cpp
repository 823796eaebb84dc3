// Benchmark: OpenMP kernels against their serial reference implementations.
// Covers the three data-parallel hot paths: fixed-point tabulation, orbit
// tabulation, and the torus enumeration oracle.

#include "fad/orbit.hpp"
#include "fad/systems.hpp"

#include <chrono>
#include <cstdio>
#include <omp.h>

using namespace fad;

namespace {

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        IntMatrix fb = IntMatrix::from_rows({{Int(1), Int(0), Int(3), Int(4)},
                                             {Int(0), Int(1), Int(2), Int(0)},
                                             {Int(3), Int(0), Int(1), Int(4)},
                                             {Int(2), Int(1), Int(0), Int(4)}});
        MultTypeHandle h = mult_type_build(fb);
        std::vector<Int> a, b;
        double ts = seconds([&] { a = mult_d_table(h, 700, false); });
        double tp = seconds([&] { b = mult_d_table(h, 700, true); });
        bool ok = a == b;
        std::printf("mult_d_table N=700   serial %.3fs  omp %.3fs  speedup %.2fx  %s\n", ts, tp,
                    ts / tp, ok ? "match" : "MISMATCH");
    }
    {
        FixedPointReport rep = torus_system(5, IntMatrix::scalar(4, Int(5)));
        OrbitReport r1, r2;
        double ts = seconds([&] { r1 = orbit_counts(rep.params, 350, false); });
        double tp = seconds([&] { r2 = orbit_counts(rep.params, 350, true); });
        bool ok = r1.P == r2.P && r1.pi == r2.pi;
        std::printf("orbit_counts N=350   serial %.3fs  omp %.3fs  speedup %.2fx  %s\n", ts, tp,
                    ts / tp, ok ? "match" : "MISMATCH");
    }
    {
        IntMatrix M = IntMatrix::from_rows({{Int(2), Int(1)}, {Int(1), Int(3)}});
        Int a, b;
        double ts = seconds([&] { a = torus_oracle_enumerate_kernel(5, M, 3, 4, false); });
        double tp = seconds([&] { b = torus_oracle_enumerate_kernel(5, M, 3, 4, true); });
        bool ok = a == b;
        std::printf("torus enumerate q=5^4 serial %.3fs  omp %.3fs  speedup %.2fx  %s\n", ts, tp,
                    ts / tp, ok ? "match" : "MISMATCH");
    }
    return 0;
}
