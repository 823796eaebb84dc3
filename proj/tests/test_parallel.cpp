#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fad/orbit.hpp"
#include "fad/systems.hpp"

using namespace fad;

// The OpenMP kernels must agree with their serial reference implementations.

TEST_CASE("mult_d_table: omp kernel matches the serial reference") {
    IntMatrix fb = IntMatrix::from_rows({{Int(1), Int(0), Int(3), Int(4)},
                                         {Int(0), Int(1), Int(2), Int(0)},
                                         {Int(3), Int(0), Int(1), Int(4)},
                                         {Int(2), Int(1), Int(0), Int(4)}});
    MultTypeHandle h = mult_type_build(fb);
    CHECK(mult_d_table(h, 120, false) == mult_d_table(h, 120, true));
}

TEST_CASE("orbit_counts: omp kernel matches the serial reference") {
    FixedPointReport rep = torus_system(5, IntMatrix::scalar(4, Int(5)));
    OrbitReport a = orbit_counts(rep.params, 80, false);
    OrbitReport b = orbit_counts(rep.params, 80, true);
    CHECK(a.P == b.P);
    CHECK(a.pi == b.pi);
    FixedPointReport ca = ca_system(3, {{0, 1}, {1, 1}});
    OrbitReport c = orbit_counts(ca.params, 60, false);
    OrbitReport d = orbit_counts(ca.params, 60, true);
    CHECK(c.P == d.P);
}

TEST_CASE("torus enumeration: omp kernel matches the serial reference") {
    IntMatrix M = IntMatrix::from_rows({{Int(2), Int(1)}, {Int(1), Int(3)}});
    for (long n = 1; n <= 3; ++n) {
        Int a = torus_oracle_enumerate_kernel(5, M, n, 4, false);
        Int b = torus_oracle_enumerate_kernel(5, M, n, 4, true);
        CHECK(a == b);
    }
}
