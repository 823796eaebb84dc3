// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit status 0 iff every
// attainable criterion passes; the one expected value that is mathematically
// unattainable is reported explicitly with its counterexample.

#include "fad/json_io.hpp"
#include "fad/orbit.hpp"
#include "fad/systems.hpp"
#include "fad/zeta.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace fad;

namespace {

int failures = 0;
bool c10_truth_pinned = false;  // criterion 10: expected value is unattainable

void report(int idx, bool ok, const std::string& note = "") {
    std::printf("criterion %2d: %s%s%s\n", idx, ok ? "PASS" : "FAIL",
                note.empty() ? "" : " — ", note.c_str());
    if (!ok) ++failures;
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Int>> rr;
    for (auto& r : rows) {
        std::vector<Int> row;
        for (long v : r) row.emplace_back(v);
        rr.push_back(row);
    }
    return IntMatrix::from_rows(rr);
}

double secs(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const IntMatrix FB = mat({{1, 0, 3, 4}, {0, 1, 2, 0}, {3, 0, 1, 4}, {2, 1, 0, 4}});
const IntMatrix FC = mat({{0, 0, 0, -1}, {1, 0, 0, 3}, {0, 1, 0, -3}, {0, 0, 1, 3}});

TwistedMatrix worked_sigma(const FqPtr& F5) {
    auto tpf = [&](std::initializer_list<long> cs) {
        TwistedPoly t{F5, {}};
        for (long c : cs) t.c.push_back(fq_from_int(F5, c));
        t.trim();
        return t;
    };
    TwistedMatrix s = tm_zero(F5, 2);
    s.at(0, 0) = tpf({1});
    s.at(0, 1) = tpf({0, 1});
    s.at(1, 0) = tpf({2});
    s.at(1, 1) = tpf({0, 1});
    return s;
}

// --- criterion 1: Chevalley/Steinberg counts, runtime < 1 s ---
void c1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (long n = 1; n <= 4; ++n) {
        std::vector<long> degs;
        for (long i = 1; i <= n; ++i) degs.push_back(i);
        for (long q : {2L, 3L, 4L, 5L}) {
            Int expect(1);
            for (long i = 0; i < n; ++i)
                expect *= pow_int(Int(q), static_cast<unsigned long>(n)) -
                          pow_int(Int(q), static_cast<unsigned long>(i));
            if (chevalley_count(Int(q), degs, 0) != expect) ok = false;
        }
    }
    for (long p : {3L, 5L, 7L}) {
        Int expect = Int(p) * (Int(p) * Int(p) - 1);
        if (chevalley_count(Int(p), {2}, 0) != expect) ok = false;
        FixedPointReport rep = steinberg_system(q_frobenius_descriptor(p, Int(p), {2}, 0));
        if (rep.direct(1) != expect) ok = false;
    }
    double el = secs(t0);
    report(1, ok && el < 1.0, "GL_n & SL_2 exact, " + std::to_string(el) + "s");
}

// --- criterion 2: torus FAD extraction ---
void c2() {
    FixedPointReport rep = torus_system(2, mat({{0, 0, -1}, {1, 0, -1}, {0, 1, 1}}));
    const FadParams& fp = rep.params;
    bool ok = fp.s.count(2) && fp.s.at(2).is_constant(Rat(3));
    ok = ok && fp.r.period() == 4 && fp.r.eval(4) == Rat(4) && fp.r.eval(1) == Rat(1, 2) &&
         fp.r.eval(2) == Rat(2) && fp.r.eval(3) == Rat(1, 2);
    report(2, ok, "s == 3, r 4-periodic (4, 1/2, 2, 1/2)");
}

// --- criterion 3: vector group profiles + oracle ---
void c3() {
    auto F5 = std::make_shared<const FqField>(5, 1, FqField::default_modulus(5, 1));
    TwistedMatrix sigma = worked_sigma(F5);
    DegProfile dp = deg_profile(sigma);
    GcdSeq tins = insep_profile(sigma);
    bool ok = dp.a == 1;
    ok = ok && dp.t.eval(2) == Rat(1) && dp.t.eval(1) == Rat(0);
    ok = ok && tins.is_constant(Rat(1));
    FixedPointReport rep = vector_group_system(5, 1, F5->modulus, sigma);
    ok = ok && rep.params.t.at(5).eval(2) == Rat(2) && rep.params.t.at(5).eval(1) == Rat(1);
    // sigma_n = 5^{n - t_n |n|_5^{-1}}
    for (long n = 1; n <= 20 && ok; ++n) {
        long pe = 1, m = n;
        while (m % 5 == 0) { m /= 5; pe *= 5; }
        long tn = (n % 2 == 0) ? 2 : 1;
        Int expect = pow_int(Int(5), static_cast<unsigned long>(n - tn * pe));
        if (Rat(expect) != fad_eval(rep.params, n)) ok = false;
    }
    // oracle cross-check n <= 8 along the budget-allowed divisor chain;
    // saturation is certifiable for n <= 6 (see the decisions ledger), and
    // the oracle count always divides the formula count
    std::string note = "a=1, t_deg=(1,0), t_ins=1, (t0,t1)=(2,1); oracle exact n<=6";
    const std::vector<long> chain = {1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
    for (long n = 1; n <= 8 && ok; ++n) {
        Int formula = rep.direct(n);
        Int best(1);
        std::map<long, Int> counts;
        for (long Mf : chain) counts[Mf] = vector_group_oracle(5, 1, F5->modulus, sigma, n, Mf);
        bool cert = false;
        for (long Mf : chain) {
            if (counts.at(Mf) > best) best = counts.at(Mf);
            if (counts.count(2 * Mf) && counts.at(2 * Mf) == counts.at(Mf) && counts.at(Mf) >= best)
                cert = true;
        }
        if (n <= 6) {
            if (!cert || best != formula) ok = false;
        } else if (formula % best != 0) {
            ok = false;
        }
    }
    report(3, ok, note);
}

// --- criterion 4: G_a endomorphism and CA produce p^{n-|n|_p^{-1}} ---
void c4() {
    bool ok = true;
    for (long p : {2L, 3L, 5L}) {
        auto F = std::make_shared<const FqField>(p, 1, FqField::default_modulus(p, 1));
        TwistedMatrix s = tm_zero(F, 1);
        TwistedPoly t{F, {fq_one(F), fq_one(F)}};  // phi + 1
        s.at(0, 0) = t;
        FixedPointReport ga = vector_group_system(p, 1, F->modulus, s);
        FixedPointReport ca = ca_system(p, {{0, 1}, {1, 1}});
        for (long n = 1; n <= 20; ++n) {
            long pe = 1, m = n;
            while (m % p == 0) { m /= p; pe *= p; }
            Int expect = pow_int(Int(p), static_cast<unsigned long>(n - pe));
            if (ga.direct(n) != expect || ca.direct(n) != expect) ok = false;
            if (Rat(expect) != fad_eval(ga.params, n)) ok = false;
            if (Rat(expect) != fad_eval(ca.params, n)) ok = false;
        }
    }
    report(4, ok, "f_n = p^{n-|n|_p^{-1}} for p in {2,3,5}, n <= 20");
}

// --- criterion 5: zeta closed forms ---
void c5() {
    bool ok = true;
    {
        FadParams fp = make_fad_params(mat({{2}}), Rat(1), {}, GcdSeq::constant(Rat(1)), {}, {});
        ZetaForm zf = zeta_build(fp);
        ok = ok && zf.kind == ZetaKind::Rational && zf.num == ZPoly({Int(1), Int(-1)}) &&
             zf.den == ZPoly({Int(1), Int(-2)});
    }
    {
        FadParams fp = make_fad_params(mat({{-2}}), Rat(1), {}, GcdSeq::constant(Rat(1)), {}, {});
        ZetaForm zf = zeta_build(fp);
        ok = ok && zf.kind == ZetaKind::Rational && zf.num == ZPoly({Int(1), Int(1)}) &&
             zf.den == ZPoly({Int(1), Int(-2)});
    }
    for (long m : {2L, 3L, 7L}) {
        FadParams fp = make_fad_params(IntMatrix(0, 0), Rat(m), {}, GcdSeq::constant(Rat(1)), {}, {});
        ZetaForm zf = zeta_build(fp);
        ok = ok && zf.kind == ZetaKind::Rational && zf.num == ZPoly::constant(1) &&
             zf.den == ZPoly({Int(1), Int(-m)});
    }
    {
        FadParams fp = make_fad_params(mat({{5}}), Rat(1), {}, GcdSeq::constant(Rat(1, 2)), {}, {});
        ZetaForm zf = zeta_build(fp);
        ok = ok && zf.kind == ZetaKind::RootRational && zf.root_index == 2 &&
             zf.num == ZPoly({Int(1), Int(-1)}) && zf.den == ZPoly({Int(1), Int(-5)});
    }
    report(5, ok, "(1-z)/(1-2z), (1+z)/(1-2z), 1/(1-mz), zeta^2=(1-z)/(1-5z)");
}

// --- criterion 6: rationality dichotomy over the corpus ---
void c6() {
    bool ok = true;
    auto F5 = std::make_shared<const FqField>(5, 1, FqField::default_modulus(5, 1));
    std::vector<std::pair<FadParams, bool>> corpus;
    corpus.push_back({elliptic_system(3, 2, true).params, true});
    corpus.push_back({ca_system(3, {{0, 1}, {1, 1}}).params, true});
    corpus.push_back({vector_group_system(5, 1, F5->modulus, worked_sigma(F5)).params, true});
    corpus.push_back({torus_system(5, FB).params, true});
    corpus.push_back({torus_system(5, FC).params, true});
    corpus.push_back({torus_system(5, IntMatrix::scalar(4, Int(5))).params, false});
    corpus.push_back({make_fad_params(IntMatrix(0, 0), Rat(2), {}, GcdSeq::constant(Rat(1)), {}, {}), false});
    corpus.push_back({finite_system({{1, 2}, {3, 1}}).params, false});
    corpus.push_back({steinberg_system(q_frobenius_descriptor(5, Int(5), {2}, 0)).params, false});
    corpus.push_back({make_fad_params(mat({{5}}), Rat(1), {}, GcdSeq::constant(Rat(1, 2)), {}, {}), false});
    for (auto& [fp, expect_nh] : corpus) {
        ZetaForm zf = zeta_build(fp);
        if ((zf.kind == ZetaKind::NonHolonomic) != expect_nh) ok = false;
    }
    report(6, ok, "NonHolonomic exactly on the nonzero-s/t members");
}

// --- criterion 7: orbit asymptotics + classification triple, < 10 s ---
void c7() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    FadParams fa = torus_system(5, IntMatrix::scalar(4, Int(5))).params;
    OrbitReport rep = orbit_counts(fa, 400, true);
    Rat target(625, 624);
    for (long N = 20; N <= 400; ++N) {
        double diff = std::abs((rep.Pi[static_cast<size_t>(N)] - RInterval(target, 128)).mid_approx());
        if (diff >= 1e-3) ok = false;
    }
    if (classify_accumulation(fa).cls != AccumulationClass::Finite) ok = false;
    if (classify_accumulation(torus_system(5, FB).params).cls != AccumulationClass::FiniteUnionCantor) ok = false;
    if (classify_accumulation(torus_system(5, FC).params).cls != AccumulationClass::ContainsInterval) ok = false;
    double el = secs(t0);
    report(7, ok && el < 10.0,
           "|Pi - 5^4/(5^4-1)| < 1e-3 for 20 <= N <= 400; Finite/Cantor/Interval; " +
               std::to_string(el) + "s");
}

// --- criterion 8: Theta values ---
void c8() {
    bool ok = true;
    {
        ThetaResult th = theta(torus_system(5, FC).params);
        ok = ok && th.theta_prime.is_rational && th.theta_prime.value == Rat(0);
        ok = ok && th.theta.is_rational && th.theta.value == Rat(1, 2);
    }
    {
        FadParams a = elliptic_system(3, 2, true).params;
        ThetaResult th = theta(fad_product(a, a));
        ok = ok && th.theta.is_rational && th.theta.value == Rat(3, 4);
    }
    report(8, ok, "f_c -> (0, 1/2); elliptic x elliptic -> 3/4, exact rationals");
}

// --- criterion 9: detector groups ---
void c9() {
    bool ok = true;
    {
        DetectorDescriptor d = detector_structure(torus_system(5, IntMatrix::scalar(4, Int(5))).params);
        ok = ok && d.varpi == 1 && d.t == 0 && d.s == 1 && d.S.empty() &&
             d.t_flag == RankFlag::Exact;
    }
    {
        DetectorDescriptor d = detector_structure(torus_system(5, FB).params);
        ok = ok && d.varpi == 124 && d.t == 0 && d.s == 124 && d.s0 == 1 &&
             d.S == std::set<long>{5} && d.t_flag == RankFlag::Exact;
    }
    {
        DetectorDescriptor d = detector_structure(torus_system(5, FC).params);
        ok = ok && d.varpi == 3 && d.t == 1 && d.s == 3 && d.s0 == 1 &&
             d.S == std::set<long>{5} && d.t_flag == RankFlag::Exact;
    }
    report(9, ok, "0 / Z/124 x Z_5 / Z/3 x T x Z_5, t flagged exact");
}

// --- criterion 10: realizability ---
void c10() {
    // The first sub-item expects (2^(2^n)) to be realisable, but it is not:
    // the Moebius sum at ell = 5 is 2^32 - 4 == 2 (mod 5).  The check runs
    // as stated and the honest verdict is reported.
    auto dexp = [](long n) {
        return pow_int(Int(2), pow_int(Int(2), static_cast<unsigned long>(n)).get_ui());
    };
    auto vd = realizable_check(dexp, 50);
    bool dexp_passes_as_specified = vd.pass;
    bool truth_pinned = !vd.pass && vd.witness == 5 && vd.reason == "integrality";

    auto half5 = [](long n) { return Int((pow_int(Int(5), static_cast<unsigned long>(n)) - 1) / 2); };
    bool ok2 = realizable_check(half5, 50).pass;
    auto vid = realizable_check([](long n) { return Int(n); }, 10);
    bool ok3 = !vid.pass && vid.reason == "integrality";
    auto vneg = realizable_check([](long) { return Int(-1); }, 5);
    bool ok4 = !vneg.pass && vneg.reason == "nonnegativity" && vneg.witness == 1;

    if (dexp_passes_as_specified) {
        report(10, ok2 && ok3 && ok4, "all four sub-items");
    } else {
        c10_truth_pinned = truth_pinned && ok2 && ok3 && ok4;
        report(10, false,
               std::string("(2^(2^n)) is not realisable (fails at ell=5, integrality); ") +
                   (c10_truth_pinned ? "other sub-items pass and the true verdict is pinned"
                                    : "additional failures"));
    }
}

// --- criterion 11: property suites, >= 10 randomized instances, < 60 s ---
void c11() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::mt19937 rng(2026);
    std::uniform_int_distribution<long> entry(-4, 4);
    auto random_confined = [&](long n) {
        for (;;) {
            IntMatrix M(n, n);
            for (auto& x : M.a) x = entry(rng);
            try {
                mult_type_build(M);
                return M;
            } catch (const not_confined_error&) {
            }
        }
    };
    // Moebius round-trip + expansion identity + sign formula
    for (int it = 0; it < 10; ++it) {
        IntMatrix M = random_confined(1 + static_cast<long>(rng() % 3));
        MultTypeHandle h = mult_type_build(M);
        for (unsigned long n = 1; n <= 12; ++n) {
            if (mult_d(h, n) != mult_d_expansion(h, n)) ok = false;
            Int d = mult_d(h, n);
            if ((d > 0 ? 1 : -1) != mult_sign(h, n)) ok = false;
        }
        FadParams fp = make_fad_params(M, Rat(1), {}, GcdSeq::constant(Rat(1)), {}, {});
        std::map<long, Rat> P;
        for (long ell = 1; ell <= 12; ++ell) {
            Rat sum(0);
            for (long dd : divisors(ell)) sum += Rat(mobius(ell / dd)) * Rat(abs(mult_d(h, static_cast<unsigned long>(dd))));
            P[ell] = sum / Rat(ell);
        }
        for (long n = 1; n <= 12; ++n) {
            Rat back(0);
            for (long dd : divisors(n)) back += Rat(dd) * P[dd];
            if (back != Rat(abs(mult_d(h, static_cast<unsigned long>(n))))) ok = false;
        }
    }
    // dual-route Dieudonne agreement on random twisted matrices
    {
        auto F9 = std::make_shared<const FqField>(3, 2, FqField::default_modulus(3, 2));
        int done = 0;
        while (done < 10) {
            TwistedMatrix tau = tm_zero(F9, 2);
            for (long i = 0; i < 2; ++i)
                for (long j = 0; j < 2; ++j) {
                    TwistedPoly t{F9, {}};
                    long d = static_cast<long>(rng() % 3);
                    for (long k = 0; k <= d; ++k)
                        t.c.push_back(fq_from_coords(F9, {static_cast<long>(rng() % 3),
                                                          static_cast<long>(rng() % 3)}));
                    t.trim();
                    tau.at(i, j) = t;
                }
            DdetProfile prof = ddet_profile(tau);
            FqPoly det = fqp_det(iota_embed(tau));
            if (prof.singular != det.is_zero()) ok = false;
            if (!prof.singular && prof.degphi != fqp_deg(det)) ok = false;
            ++done;
        }
    }
    // product multiplicativity on random pairs of built-ins
    {
        std::vector<FadParams> pool;
        pool.push_back(elliptic_system(3, 2, true).params);
        pool.push_back(s_integer_system(Int(2), {3}).params);
        pool.push_back(ca_system(2, {{0, 1}, {1, 1}}).params);
        pool.push_back(finite_system({{1, 1}, {2, 1}}).params);
        pool.push_back(torus_system(3, mat({{2}})).params);
        for (int it = 0; it < 10; ++it) {
            const FadParams& a = pool[rng() % pool.size()];
            const FadParams& b = pool[rng() % pool.size()];
            FadParams pr = fad_product(a, b);
            for (long n = 1; n <= 12; ++n)
                if (fad_eval(pr, n) != fad_eval(a, n) * fad_eval(b, n)) ok = false;
        }
    }
    // u_n positivity (certified) and integrality where it holds
    {
        int done = 0;
        while (done < 10) {
            IntMatrix M = random_confined(1 + static_cast<long>(rng() % 3));
            MultTypeHandle h = mult_type_build(M);
            for (long n = 1; n <= 50; ++n) {
                UnValue u = u_n(h, n);
                if (h.hyperbolic) {
                    if (!u.exact || u.value != Rat(1)) ok = false;
                } else if (!u.interval.strictly_positive()) {
                    ok = false;
                }
            }
            ++done;
        }
        // and the Salem system exercises the non-hyperbolic branch
        MultTypeHandle hc = mult_type_build(FC);
        for (long n = 1; n <= 50; ++n)
            if (!u_n(hc, n).interval.strictly_positive()) ok = false;
    }
    double el = secs(t0);
    report(11, ok && el < 60.0, "property suites over randomized instances, " +
                                     std::to_string(el) + "s");
}

// --- criterion 12: Ree consistency ---
void c12() {
    bool ok = true;
    for (long a : {0L, 1L}) {
        long e = 2 * a + 1;
        SteinbergDesc ree;
        ree.p = 3;
        ree.c = pow_int(Int(3), static_cast<unsigned long>(3 * e));
        ree.J = IntMatrix(2, 2);
        ree.J(0, 0) = pow_int(Int(3), static_cast<unsigned long>(e));
        ree.J(1, 1) = -pow_int(Int(3), static_cast<unsigned long>(3 * e));
        ree.Z = IntMatrix(0, 0);
        FixedPointReport rep = steinberg_system(ree);
        for (long n = 1; n <= 3; ++n) {
            Int qn = pow_int(Int(3), static_cast<unsigned long>(e * n));
            if (fad_eval_int(rep.params, 2 * n) != chevalley_count(qn, {2, 6}, 0)) ok = false;
        }
        if (!coh_zeta_check(ree)) ok = false;
    }
    report(12, ok, "sigma_{2n} = Frobenius count at q = 3^{2a+1}, a in {0,1}, n <= 3");
}

} // namespace

int main() {
    c1();
    c2();
    c3();
    c4();
    c5();
    c6();
    c7();
    c8();
    c9();
    c10();
    c11();
    c12();
    if (failures > 0)
        std::printf("%d criterion(s) failing\n", failures);
    // Criterion 10's first sub-item is mathematically unattainable; that
    // single documented red is non-fatal iff every other check is green and
    // the true verdict is pinned by the suite.
    return failures == 0 || (failures == 1 && c10_truth_pinned) ? 0 : 1;
}
