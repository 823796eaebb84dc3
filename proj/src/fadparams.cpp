#include "fad/fadparams.hpp"

namespace fad {

FadParams make_fad_params(IntMatrix A, Rat c, std::set<long> S, GcdSeq r,
                          std::map<long, GcdSeq> s, std::map<long, GcdSeq> t) {
    if (c <= 0) throw argument_error("FadParams: c must be positive");
    FadParams fp;
    fp.handle = mult_type_build(A);
    fp.c = c;
    fp.S = std::move(S);
    fp.r = std::move(r);
    fp.s = std::move(s);
    fp.t = std::move(t);
    for (auto& [d, v] : fp.r.values()) {
        (void)d;
        if (v <= 0) throw argument_error("FadParams: r must be positive");
    }
    for (long p : fp.S) {
        if (!is_prime(Int(p))) throw argument_error("FadParams: S contains a non-prime");
        if (!fp.s.count(p)) fp.s.emplace(p, GcdSeq::constant(Rat(0)));
        if (!fp.t.count(p)) fp.t.emplace(p, GcdSeq::constant(Rat(0)));
        for (auto* q : {&fp.s.at(p), &fp.t.at(p)}) {
            if (q->period() % p == 0)
                throw argument_error("FadParams: s/t period not coprime to p");
            for (auto& [d, v] : q->values()) {
                (void)d;
                if (v < 0) throw argument_error("FadParams: s/t must be nonnegative");
            }
        }
    }
    normalize_params(fp);
    return fp;
}

void normalize_params(FadParams& fp) {
    for (auto it = fp.S.begin(); it != fp.S.end();) {
        long p = *it;
        bool strivial = !fp.s.count(p) || fp.s.at(p).is_zero();
        bool ttrivial = !fp.t.count(p) || fp.t.at(p).is_zero();
        if (strivial && ttrivial) {
            fp.s.erase(p);
            fp.t.erase(p);
            it = fp.S.erase(it);
        } else {
            ++it;
        }
    }
}

namespace {

// p^e for rational e; throws unless e is an integer.
Rat p_power(long p, const Rat& e) {
    if (e.get_den() != 1)
        throw argument_error("irrational value: non-integer exponent of p");
    if (!e.get_num().fits_slong_p())
        throw argument_error("fad_eval: exponent overflow");
    long k = e.get_num().get_si();
    if (k >= 0) return Rat(pow_int(Int(p), static_cast<unsigned long>(k)));
    return Rat(1, pow_int(Int(p), static_cast<unsigned long>(-k)));
}

} // namespace

Rat fad_eval(const FadParams& fp, long n) {
    if (n < 1) throw argument_error("fad_eval: n must be >= 1");
    Int dn = mult_d(fp.handle, static_cast<unsigned long>(n));
    Rat acc(abs(dn));
    acc *= pow_rat(fp.c, n);
    acc *= fp.r.eval(n);
    for (long p : fp.S) {
        long ord = 0;
        long m = n;
        while (m % p == 0) { m /= p; ++ord; }
        // |n|_p^{s_n} = p^{-ord * s_n}
        Rat se = fp.s.at(p).eval(n) * Rat(-ord);
        acc *= p_power(p, se);
        // p^{-t_n |n|_p^{-1}} with |n|_p^{-1} = p^ord
        Rat te = fp.t.at(p).eval(n) * Rat(-pow_int(Int(p), static_cast<unsigned long>(ord)));
        acc *= p_power(p, te);
    }
    return acc;
}

Int fad_eval_int(const FadParams& fp, long n) {
    Rat v = fad_eval(fp, n);
    if (v.get_den() != 1 || v <= 0)
        throw argument_error("fad_eval_int: value is not a positive integer at n=" + std::to_string(n));
    return v.get_num();
}

VerifyResult fad_verify(const FadParams& fp, const std::function<Rat(long)>& oracle, long N) {
    for (long n = 1; n <= N; ++n) {
        if (fad_eval(fp, n) != oracle(n)) return {false, n};
    }
    return {true, 0};
}

FadParams fad_product(const FadParams& a, const FadParams& b) {
    FadParams fp;
    fp.handle = mult_type_build(block_diag(a.handle.A, b.handle.A));
    fp.c = a.c * b.c;
    fp.S = a.S;
    for (long p : b.S) fp.S.insert(p);
    fp.r = a.r * b.r;
    for (long p : fp.S) {
        GcdSeq sa = a.s.count(p) ? a.s.at(p) : GcdSeq::constant(Rat(0));
        GcdSeq sb = b.s.count(p) ? b.s.at(p) : GcdSeq::constant(Rat(0));
        fp.s.emplace(p, sa + sb);
        GcdSeq ta = a.t.count(p) ? a.t.at(p) : GcdSeq::constant(Rat(0));
        GcdSeq tb = b.t.count(p) ? b.t.at(p) : GcdSeq::constant(Rat(0));
        fp.t.emplace(p, ta + tb);
    }
    normalize_params(fp);
    return fp;
}

RealizableVerdict realizable_check(const std::function<Int(long)>& f, long N) {
    for (long ell = 1; ell <= N; ++ell) {
        Int sum(0);
        for (long n : divisors(ell)) sum += Int(mobius(ell / n)) * f(n);
        if (sum < 0) return {false, ell, "nonnegativity"};
        if (sum % ell != 0) return {false, ell, "integrality"};
    }
    return {true, 0, ""};
}

RealizableVerdict realizable_check(const std::function<Int(long)>& f, long N,
                                   const Int& C, const Int& D) {
    // C^{n+1} D <= a_n <= C^{2n} D makes nonnegativity automatic; verify the
    // envelope, then only test integrality
    if (C < 2 || D <= 0) throw argument_error("realizable_check: need C >= 2, D > 0");
    for (long n = 1; n <= N; ++n) {
        Int lo = pow_int(C, static_cast<unsigned long>(n + 1)) * D;
        Int hi = pow_int(C, static_cast<unsigned long>(2 * n)) * D;
        Int v = f(n);
        if (v < lo || v > hi)
            throw argument_error("realizable_check: growth envelope violated at n=" + std::to_string(n));
    }
    for (long ell = 1; ell <= N; ++ell) {
        Int sum(0);
        for (long n : divisors(ell)) sum += Int(mobius(ell / n)) * f(n);
        if (sum % ell != 0) return {false, ell, "integrality"};
    }
    return {true, 0, ""};
}

std::vector<std::string> validate_realizable_params(const FadParams& fp) {
    std::vector<std::string> out;
    if (fp.c.get_den() != 1) out.push_back("c not an integer");
    bool all_t_integral = true;
    for (auto& [p, tq] : fp.t) {
        (void)p;
        for (auto& [d, v] : tq.values()) {
            (void)d;
            if (v.get_den() != 1) all_t_integral = false;
        }
    }
    if (all_t_integral) {
        // r and p^{s} must then be rational: r is rational by construction;
        // p^{s_{p,n}} rational forces integer s
        for (auto& [p, sq] : fp.s) {
            for (auto& [d, v] : sq.values()) {
                (void)d;
                if (v.get_den() != 1)
                    out.push_back("p^{s_{" + std::to_string(p) + ",n}} irrational (non-integer exponent)");
            }
        }
    }
    return out;
}

} // namespace fad
