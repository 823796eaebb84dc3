#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fad/systems.hpp"

#include <random>

using namespace fad;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Int>> rr;
    for (auto& r : rows) {
        std::vector<Int> row;
        for (long v : r) row.emplace_back(v);
        rr.push_back(row);
    }
    return IntMatrix::from_rows(rr);
}

} // namespace

TEST_CASE("fad_eval on pinned systems") {
    // x -> x^2 on G_m over F_7bar: f(n) = |2^n-1| |2^n-1|_7; at n = 3 the
    // 7-part cancels (x^7 = 1 collapses to x = 1 in characteristic 7)
    FixedPointReport t7 = torus_system(7, mat({{2}}));
    CHECK(fad_eval(t7.params, 3) == Rat(1));
    CHECK(fad_eval(t7.params, 1) == Rat(1));
    CHECK(fad_eval(t7.params, 2) == Rat(3));
    CHECK(fad_eval(t7.params, 4) == Rat(15));

    // CA with p = 3: f(3) = 3^{3-3} = 1
    FixedPointReport ca = ca_system(3, {{0, 1}, {1, 1}});
    CHECK(fad_eval(ca.params, 3) == Rat(1));
    CHECK(fad_eval(ca.params, 1) == Rat(1));   // 3^(1-1)
    CHECK(fad_eval(ca.params, 2) == Rat(3));   // 3^(2-1)
    CHECK(fad_eval(ca.params, 9) == Rat(1));   // 3^(9-9)
    CHECK(fad_eval(ca.params, 6) == Rat(pow_int(Int(3), 3)));  // 3^(6-3)

    // elliptic p=3, m=2 ordinary: f(2) = 9 * (1/3) = 3
    FixedPointReport el = elliptic_system(3, 2, true);
    CHECK(fad_eval(el.params, 2) == Rat(3));
    CHECK(fad_eval(el.params, 1) == Rat(1));
    CHECK(fad_eval(el.params, 3) == Rat(49));
}

TEST_CASE("fad_eval rejects irrational p-power exponents") {
    FadParams fp = make_fad_params(mat({{2}}), Rat(1), {5}, GcdSeq::constant(Rat(1)),
                                   {{5, GcdSeq::constant(Rat(1, 2))}},
                                   {{5, GcdSeq::constant(Rat(0))}});
    CHECK(fad_eval(fp, 1) == Rat(1));
    CHECK_THROWS_AS(fad_eval(fp, 5), argument_error);
}

TEST_CASE("fad_verify reports the first mismatch") {
    FixedPointReport rep = torus_system(5, IntMatrix::scalar(2, Int(2)));
    auto good = rep.direct;
    CHECK(fad_verify(rep.params, [&](long n) { return Rat(good(n)); }, 30).ok);

    FadParams bad = rep.params;
    bad.r = bad.r * GcdSeq(2, {{1, Rat(1)}, {2, Rat(3)}});
    auto res = fad_verify(bad, [&](long n) { return Rat(good(n)); }, 30);
    CHECK(!res.ok);
    CHECK(res.first_mismatch == 2);
}

TEST_CASE("fad_product: identity, CA x shift, Frobenius product") {
    FixedPointReport ca = ca_system(3, {{0, 1}, {1, 1}});
    FixedPointReport triv = finite_system({{1, 1}});
    FadParams prod = fad_product(ca.params, triv.params);
    for (long n = 1; n <= 20; ++n) CHECK(fad_eval(prod, n) == fad_eval(ca.params, n));
    CHECK(prod.S == ca.params.S);

    // CA(p=3) x full shift(m=2): f_n = 2^n 3^{n - |n|_3^{-1}}
    FadParams shift2 = make_fad_params(IntMatrix(0, 0), Rat(2), {}, GcdSeq::constant(Rat(1)), {}, {});
    FadParams prod2 = fad_product(ca.params, shift2);
    for (long n = 1; n <= 18; ++n) {
        long pe = 1, m = n;
        while (m % 3 == 0) { m /= 3; pe *= 3; }
        Rat expect = Rat(pow_int(Int(2), static_cast<unsigned long>(n))) *
                     Rat(pow_int(Int(3), static_cast<unsigned long>(n - pe)));
        CHECK(fad_eval(prod2, n) == expect);
    }

    // G_a x G_m with (F, F^2) over F_2bar realises 2^n (4^n - 1), the same
    // count as the 2-Frobenius on SL_2
    auto F2 = std::make_shared<const FqField>(2, 1, FqField::default_modulus(2, 1));
    TwistedMatrix frob = tm_zero(F2, 1);
    frob.at(0, 0) = tp_phi_power(F2, fq_one(F2), 1);  // sigma = phi
    FixedPointReport ga = vector_group_system(2, 1, F2->modulus, frob);
    FixedPointReport gm = torus_system(2, mat({{4}}));
    FadParams prod3 = fad_product(ga.params, gm.params);
    SteinbergDesc sl2 = q_frobenius_descriptor(2, Int(2), {2}, 0);
    FixedPointReport sl2rep = steinberg_system(sl2);
    for (long n = 1; n <= 12; ++n)
        CHECK(fad_eval(prod3, n) == fad_eval(sl2rep.params, n));

    // product evaluation = product of evaluations on random pairs
    FixedPointReport el = elliptic_system(3, 2, true);
    std::vector<FadParams> pool = {ca.params, shift2, gm.params, el.params};
    std::mt19937 rng(5);
    for (int it = 0; it < 6; ++it) {
        const FadParams& a = pool[rng() % pool.size()];
        const FadParams& b = pool[rng() % pool.size()];
        FadParams pr = fad_product(a, b);
        for (long n = 1; n <= 30; ++n)
            CHECK(fad_eval(pr, n) == fad_eval(a, n) * fad_eval(b, n));
    }
}

TEST_CASE("built-in descriptors: fad_eval equals the direct formula, n <= 30") {
    std::vector<FixedPointReport> reps;
    reps.push_back(torus_system(2, mat({{0, 0, -1}, {1, 0, -1}, {0, 1, 1}})));
    reps.push_back(torus_system(5, IntMatrix::scalar(4, Int(5))));
    reps.push_back(s_integer_system(Int(2), {3}));
    reps.push_back(ca_system(3, {{0, 1}, {1, 1}}));
    reps.push_back(elliptic_system(3, 2, true));
    reps.push_back(elliptic_system(3, 2, false));
    reps.push_back(finite_system({{1, 2}, {3, 1}}));
    reps.push_back(steinberg_system(q_frobenius_descriptor(5, Int(5), {2}, 0)));
    for (auto& rep : reps) {
        for (long n = 1; n <= 30; ++n) {
            Int direct = rep.direct(n);
            CHECK(direct > 0);
            CHECK(Rat(direct) == fad_eval(rep.params, n));
        }
    }
}

TEST_CASE("Moebius round-trip through P_ell") {
    FixedPointReport rep = s_integer_system(Int(2), {3});
    std::map<long, Rat> P;
    for (long ell = 1; ell <= 30; ++ell) {
        Rat sum(0);
        for (long d : divisors(ell)) sum += Rat(mobius(ell / d)) * fad_eval(rep.params, d);
        P[ell] = sum / Rat(ell);
    }
    for (long n = 1; n <= 30; ++n) {
        Rat recomposed(0);
        for (long d : divisors(n)) recomposed += Rat(d) * P[d];
        CHECK(recomposed == fad_eval(rep.params, n));
    }
}

TEST_CASE("realizable_check pinned verdicts") {
    // (2^(2^n)) is NOT realisable: the Moebius sum at ell = 5 is
    // 2^32 - 4 == 2 (mod 5)
    auto dexp = [](long n) {
        return pow_int(Int(2), pow_int(Int(2), static_cast<unsigned long>(n)).get_ui());
    };
    auto vd = realizable_check(dexp, 12);
    CHECK(!vd.pass);
    CHECK(vd.witness == 5);
    CHECK(vd.reason == "integrality");

    auto half5 = [](long n) { return Int((pow_int(Int(5), static_cast<unsigned long>(n)) - 1) / 2); };
    CHECK(realizable_check(half5, 50).pass);

    auto vid = realizable_check([](long n) { return Int(n); }, 10);
    CHECK(!vid.pass);
    CHECK(vid.witness == 2);  // ell = 2 fails first (ell = 4 fails too)
    CHECK(vid.reason == "integrality");

    auto vneg = realizable_check([](long) { return Int(-1); }, 5);
    CHECK(!vneg.pass);
    CHECK(vneg.witness == 1);
    CHECK(vneg.reason == "nonnegativity");

    // growth-envelope variant: f_n = 4^n with C = 2, D = 1
    auto sq = [](long n) { return pow_int(Int(4), static_cast<unsigned long>(n)); };
    CHECK(realizable_check(sq, 20, Int(2), Int(1)).pass);
}

TEST_CASE("realizable_check passes on the built-in algebraic-group systems") {
    std::vector<FixedPointReport> reps;
    reps.push_back(torus_system(5, IntMatrix::scalar(4, Int(5))));
    reps.push_back(torus_system(2, mat({{0, 0, -1}, {1, 0, -1}, {0, 1, 1}})));
    reps.push_back(elliptic_system(3, 2, true));
    reps.push_back(steinberg_system(q_frobenius_descriptor(3, Int(3), {2}, 0)));
    for (auto& rep : reps) {
        auto f = [&](long n) { return rep.direct(n); };
        CHECK(realizable_check(f, 30).pass);
    }
}

TEST_CASE("validate_realizable_params") {
    FixedPointReport rep = torus_system(2, mat({{0, 0, -1}, {1, 0, -1}, {0, 1, 1}}));
    CHECK(validate_realizable_params(rep.params).empty());

    FadParams raw = make_fad_params(mat({{2}}), Rat(3, 2), {}, GcdSeq::constant(Rat(1)), {}, {});
    auto v = validate_realizable_params(raw);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "c not an integer");

    // negative r is rejected at construction (rationality/positivity are type
    // invariants; the sqrt(2) example is deliberately unrepresentable)
    CHECK_THROWS_AS(make_fad_params(mat({{2}}), Rat(1), {}, GcdSeq::constant(Rat(-1)), {}, {}),
                    argument_error);
}

TEST_CASE("normalization drops primes with trivial s and t") {
    FadParams fp = make_fad_params(mat({{3}}), Rat(1), {5}, GcdSeq::constant(Rat(1)),
                                   {{5, GcdSeq::constant(Rat(0))}},
                                   {{5, GcdSeq::constant(Rat(0))}});
    CHECK(fp.S.empty());
    CHECK(fp.s.empty());
    CHECK(fp.t.empty());
}
