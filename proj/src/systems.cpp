#include "fad/systems.hpp"

#include "fad/polyfactor.hpp"

#include <omp.h>

namespace fad {

namespace {

long remove_p_part(long n, long p) {
    while (n % p == 0) n /= p;
    return n;
}

// order of x in F_p[x]/(gbar) where gbar is the invertible part of the
// charpoly mod p; found by iteration with a hard 10^6 cap
long multiplicative_order_cap(const std::vector<long>& gbar, long p) {
    std::vector<long> x = {0, 1};
    auto rem = [&](std::vector<long> a) {
        long db = static_cast<long>(gbar.size()) - 1;
        long lead = gbar.back();
        long inv = 1;
        {
            long t = 0, nt = 1, r = p, nr = lead % p;
            while (nr != 0) {
                long q = r / nr;
                std::swap(t -= q * nt, nt);
                std::swap(r -= q * nr, nr);
            }
            inv = ((t % p) + p) % p;
        }
        while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
            long k = static_cast<long>(a.size()) - 1 - db;
            long f = a.back() * inv % p;
            for (long i = 0; i <= db; ++i)
                a[static_cast<size_t>(k + i)] = ((a[static_cast<size_t>(k + i)] - f * gbar[static_cast<size_t>(i)]) % p + p) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    };
    auto mul = [&](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    };
    std::vector<long> xr = rem(x);
    std::vector<long> cur = xr;
    std::vector<long> one = {1};
    for (long k = 1; k <= 1000000; ++k) {
        if (cur == one) return k;
        cur = rem(mul(cur, xr));
    }
    throw budget_error("multiplicative order cap (10^6) exceeded");
}

} // namespace

PadicSplit torus_padic_split(const IntMatrix& M, long p) {
    long s_dim = M.rows;
    ZPoly cp = charpoly(M);
    // reduce mod p, strip x^e
    std::vector<long> cpp(cp.c.size());
    for (size_t i = 0; i < cp.c.size(); ++i) {
        Int r = cp.c[i] % p;
        if (r < 0) r += p;
        cpp[i] = static_cast<long>(r.get_si());
    }
    while (!cpp.empty() && cpp.back() == 0) cpp.pop_back();
    size_t sh = 0;
    while (sh < cpp.size() && cpp[sh] == 0) ++sh;
    std::vector<long> gbar(cpp.begin() + static_cast<long>(sh), cpp.end());
    if (static_cast<long>(gbar.size()) - 1 <= 0) {
        // nilpotent mod p: |d_n|_p = 1 identically
        return {GcdSeq::constant(Rat(1)), GcdSeq::constant(Rat(0))};
    }
    long ord = multiplicative_order_cap(gbar, p);
    long ellp = remove_p_part(ord, p);
    auto w_of = [&](unsigned long n) {
        return ord_p_det_power_minus_one(M, n, Int(p));
    };
    // per divisor m of ell': stabilize increments of w(m p^k) in k
    std::map<long, long> s_vals;
    long Kmax = 0;
    std::map<long, long> w_at_div;  // cache for the r step
    for (long m : divisors(ellp)) {
        std::vector<long> w;
        long k0 = -1;
        for (long k = 0; k <= 10; ++k) {
            w.push_back(w_of(static_cast<unsigned long>(m) *
                             static_cast<unsigned long>(pow_int(Int(p), static_cast<unsigned long>(k)).get_ui())));
            if (k >= 2 && w[static_cast<size_t>(k)] - w[static_cast<size_t>(k - 1)] ==
                              w[static_cast<size_t>(k - 1)] - w[static_cast<size_t>(k - 2)]) {
                k0 = k - 2;
                break;
            }
            if (k == 10)
                throw precision_error("torus_padic_split: stabilization cap (k <= 8) exceeded");
        }
        s_vals[m] = w[static_cast<size_t>(k0 + 1)] - w[static_cast<size_t>(k0)];
        Kmax = std::max(Kmax, k0);
        w_at_div[m] = w[0];
    }
    GcdSeq s_seq = [&] {
        std::map<long, Rat> sv;
        for (auto& [m, v] : s_vals) sv[m] = Rat(v);
        return GcdSeq(ellp, std::move(sv));
    }();
    // r on divisors of varpi = ell' * p^Kmax
    long varpi = ellp;
    for (long i = 0; i < Kmax; ++i) varpi *= p;
    std::map<long, Rat> rv;
    for (long d : divisors(varpi)) {
        long w = w_of(static_cast<unsigned long>(d));
        long ordp = 0, dd = d;
        while (dd % p == 0) { dd /= p; ++ordp; }
        long rho = -w + static_cast<long>(s_seq.eval(d).get_num().get_si()) * ordp;
        rv[d] = rho >= 0 ? Rat(pow_int(Int(p), static_cast<unsigned long>(rho)))
                         : Rat(1, pow_int(Int(p), static_cast<unsigned long>(-rho)));
    }
    GcdSeq r_seq(varpi, std::move(rv));
    // verification window n <= 2 * varpi * p (hard contract)
    long window = 2 * std::max(r_seq.period(), s_seq.period()) * p;
    if (window > 100000) throw budget_error("torus_padic_split: verification window too large");
    for (long n = 1; n <= window; ++n) {
        long w = w_of(static_cast<unsigned long>(n));
        long ordp = 0, nn = n;
        while (nn % p == 0) { nn /= p; ++ordp; }
        Rat expected = r_seq.eval(n);
        long sval = static_cast<long>(s_seq.eval(n).get_num().get_si());
        long rho = -w + sval * ordp;
        Rat got = rho >= 0 ? Rat(pow_int(Int(p), static_cast<unsigned long>(rho)))
                           : Rat(1, pow_int(Int(p), static_cast<unsigned long>(-rho)));
        if (expected != got)
            throw precision_error("torus_padic_split: extraction failed verification at n=" +
                                  std::to_string(n));
    }
    (void)s_dim;
    return {r_seq, s_seq};
}

FixedPointReport torus_system(long p, const IntMatrix& M) {
    if (!is_prime(Int(p))) throw argument_error("torus_system: p not prime");
    MultTypeHandle h = mult_type_build(M);  // throws not_confined_error if needed
    PadicSplit sp = torus_padic_split(M, p);
    FixedPointReport rep;
    rep.params = make_fad_params(M, Rat(1), {p}, sp.r, {{p, sp.s}}, {{p, GcdSeq::constant(Rat(0))}});
    rep.direct = [M, p](long n) {
        MultTypeHandle hh = mult_type_build(M);
        Int d = mult_d(hh, static_cast<unsigned long>(n));
        Rat v = Rat(abs(d)) * padic_abs(d, Int(p));
        if (v.get_den() != 1) throw inconsistency_error("torus count not integral");
        return Int(v.get_num());
    };
    rep.provenance = "torus: |det(M^n-1)| * |det(M^n-1)|_p";
    (void)h;
    return rep;
}

FixedPointReport s_integer_system(const Int& xi, const std::set<long>& S) {
    if (xi == 0 || xi == 1 || xi == -1)
        throw argument_error("s_integer_system: xi must satisfy |xi| >= 2");
    IntMatrix A(1, 1);
    A(0, 0) = xi;
    GcdSeq r = GcdSeq::constant(Rat(1));
    std::map<long, GcdSeq> smap, tmap;
    for (long p : S) {
        PadicSplit sp = torus_padic_split(A, p);
        r = r * sp.r;
        smap.emplace(p, sp.s);
        tmap.emplace(p, GcdSeq::constant(Rat(0)));
    }
    FixedPointReport rep;
    rep.params = make_fad_params(A, Rat(1), S, r, smap, tmap);
    rep.direct = [xi, S](long n) {
        Int d = pow_int(xi, static_cast<unsigned long>(n)) - 1;
        Rat v(abs(d));
        for (long p : S) v *= padic_abs(d, Int(p));
        if (v.get_den() != 1) throw inconsistency_error("S-integer count not integral");
        return Int(v.get_num());
    };
    rep.provenance = "S-integer: |xi^n-1| * prod_p |xi^n-1|_p";
    return rep;
}

FixedPointReport elliptic_system(long p, long m, bool ordinary) {
    if (!is_prime(Int(p))) throw argument_error("elliptic_system: p not prime");
    if (std::abs(m) < 2) throw argument_error("elliptic_system: |m| must be >= 2");
    if (m % p == 0) throw argument_error("elliptic_system: p | m unsupported");
    long e = ordinary ? 1 : 2;
    IntMatrix A(2, 2);
    A(0, 0) = m;
    A(1, 1) = m;
    IntMatrix one(1, 1);
    one(0, 0) = m;
    PadicSplit sp = torus_padic_split(one, p);
    // |m^n-1|_p^e = (r_n |n|_p^{s_n})^e
    GcdSeq r = sp.r;
    GcdSeq s = sp.s;
    for (long i = 1; i < e; ++i) {
        r = r * sp.r;
    }
    s = s.scale(Rat(e));
    FixedPointReport rep;
    rep.params = make_fad_params(A, Rat(1), {p}, r, {{p, s}}, {{p, GcdSeq::constant(Rat(0))}});
    rep.direct = [p, m, e](long n) {
        Int d = pow_int(Int(m), static_cast<unsigned long>(n)) - 1;
        Rat v = Rat(d * d);
        Rat ab = padic_abs(d, Int(p));
        for (long i = 0; i < e; ++i) v *= ab;
        if (v.get_den() != 1) throw inconsistency_error("elliptic count not integral");
        return Int(v.get_num());
    };
    rep.provenance = ordinary ? "elliptic ordinary: (m^n-1)^2 |m^n-1|_p"
                              : "elliptic supersingular: (m^n-1)^2 |m^n-1|_p^2";
    return rep;
}

FixedPointReport steinberg_system(const SteinbergDesc& d) {
    if (!is_prime(Int(d.p))) throw argument_error("steinberg_system: p not prime");
    if (d.c <= 0) throw argument_error("steinberg_system: c must be positive");
    {
        Int cc = d.c;
        while (cc % d.p == 0) cc /= d.p;
        if (cc != 1) throw argument_error("steinberg_system: c must be a power of p");
    }
    if (!d.J.square() || !d.Z.square()) throw argument_error("steinberg_system: non-square data");
    IntMatrix A = block_diag(d.J, d.Z);
    GcdSeq r = GcdSeq::constant(Rat(1));
    GcdSeq s = GcdSeq::constant(Rat(0));
    if (d.Z.rows > 0) {
        PadicSplit sp = torus_padic_split(d.Z, d.p);
        r = sp.r;
        s = sp.s;
    }
    FixedPointReport rep;
    rep.params = make_fad_params(A, Rat(d.c), {d.p}, r, {{d.p, s}},
                                 {{d.p, GcdSeq::constant(Rat(0))}});
    SteinbergDesc dd = d;
    rep.direct = [dd](long n) {
        Int cn = pow_int(dd.c, static_cast<unsigned long>(n));
        Int dj(1);
        if (dd.J.rows > 0) {
            IntMatrix P = mat_pow(dd.J, static_cast<unsigned long>(n));
            IntMatrix I = IntMatrix::identity(dd.J.rows);
            dj = det(I - P);
        }
        Rat v = Rat(cn) * Rat(abs(dj));
        if (dd.Z.rows > 0) {
            IntMatrix P = mat_pow(dd.Z, static_cast<unsigned long>(n));
            for (long i = 0; i < dd.Z.rows; ++i) P(i, i) -= 1;
            Int dz = det(P);
            v *= Rat(abs(dz)) * padic_abs(dz, Int(dd.p));
        }
        if (v.get_den() != 1) throw inconsistency_error("steinberg count not integral");
        return Int(v.get_num());
    };
    rep.provenance = "reductive: c^n |det(1-J^n)| |det(Z^n-1)| |det(Z^n-1)|_p";
    return rep;
}

Int chevalley_count(const Int& q, const std::vector<long>& degrees, long central_rank) {
    long se = 0;
    for (long dd : degrees) se += dd - 1;
    Int out = pow_int(q, static_cast<unsigned long>(se));
    for (long dd : degrees) out *= pow_int(q, static_cast<unsigned long>(dd)) - 1;
    for (long i = 0; i < central_rank; ++i) out *= q - 1;
    return out;
}

SteinbergDesc q_frobenius_descriptor(long p, const Int& q, const std::vector<long>& degrees,
                                     long central_rank) {
    {
        Int qq = q;
        while (qq % p == 0) qq /= p;
        if (qq != 1) throw argument_error("q_frobenius_descriptor: q must be a power of p");
    }
    SteinbergDesc d;
    d.p = p;
    long se = 0;
    for (long dd : degrees) se += dd - 1;
    d.c = pow_int(q, static_cast<unsigned long>(se));
    d.J = IntMatrix(static_cast<long>(degrees.size()), static_cast<long>(degrees.size()));
    for (size_t i = 0; i < degrees.size(); ++i)
        d.J(static_cast<long>(i), static_cast<long>(i)) = pow_int(q, static_cast<unsigned long>(degrees[i]));
    d.Z = IntMatrix(central_rank, central_rank);
    for (long i = 0; i < central_rank; ++i) d.Z(i, i) = q;
    return d;
}

FixedPointReport finite_system(const std::map<long, long>& cycles) {
    for (auto& [len, cnt] : cycles)
        if (len < 1 || cnt < 0) throw argument_error("finite_system: bad cycle data");
    // f(n) = sum_{l | n} l * count_l must be positive for all n, i.e. a fixed
    // point must exist
    auto eval_direct = [cycles](long n) {
        Int f(0);
        for (auto& [len, cnt] : cycles)
            if (n % len == 0) f += Int(len) * Int(cnt);
        return f;
    };
    if (eval_direct(1) <= 0)
        throw argument_error("finite_system: f(1) = 0; fixed point counts must be positive");
    std::map<long, Rat> dsum;
    for (auto& [len, cnt] : cycles)
        if (cnt > 0) dsum[len] = Rat(len) * Rat(cnt);
    GcdSeq r = GcdSeq::from_divisor_sums(dsum);
    FixedPointReport rep;
    rep.params = make_fad_params(IntMatrix(0, 0), Rat(1), {}, r, {}, {});
    rep.direct = eval_direct;
    rep.provenance = "finite: f(n) = sum_{l|n} l P_l";
    return rep;
}

// ---- CA --------------------------------------------------------------------

namespace {

// Laurent polynomial over F_p: offset + dense coefficient vector.
struct Laurent {
    long p;
    long off = 0;  // exponent of c[0]
    std::vector<long> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
        size_t s = 0;
        while (s < c.size() && c[s] == 0) ++s;
        if (s) {
            c.erase(c.begin(), c.begin() + static_cast<long>(s));
            off += static_cast<long>(s);
        }
    }
    bool is_zero() const { return c.empty(); }
    long topexp() const { return off + static_cast<long>(c.size()) - 1; }
    long botexp() const { return off; }
    long length() const { return is_zero() ? -1 : topexp() - botexp(); }
};

Laurent laurent_from_map(long p, const std::map<long, long>& m) {
    Laurent L{p, 0, {}};
    if (m.empty()) return L;
    long lo = m.begin()->first, hi = m.rbegin()->first;
    L.off = lo;
    L.c.assign(static_cast<size_t>(hi - lo + 1), 0);
    for (auto& [e, v] : m) L.c[static_cast<size_t>(e - lo)] = ((v % p) + p) % p;
    L.trim();
    return L;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
    Laurent r{a.p, a.off + b.off, {}};
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    r.trim();
    return r;
}

Laurent laurent_pow(const Laurent& a, unsigned long n) {
    Laurent r{a.p, 0, {1}};
    Laurent b = a;
    while (n > 0) {
        if (n & 1) r = laurent_mul(r, b);
        n >>= 1;
        if (n) b = laurent_mul(b, b);
    }
    return r;
}

Laurent laurent_sub_one(const Laurent& a) {
    Laurent r = a;
    if (r.is_zero()) {
        r.off = 0;
        r.c = {r.p - 1};
        return r;
    }
    if (r.off > 0) {
        // prepend zeros down to exponent 0
        r.c.insert(r.c.begin(), static_cast<size_t>(r.off), 0);
        r.off = 0;
    } else if (r.topexp() < 0) {
        r.c.resize(static_cast<size_t>(-r.off) + 1, 0);
    }
    long idx = -r.off;
    if (idx >= static_cast<long>(r.c.size())) r.c.resize(static_cast<size_t>(idx) + 1, 0);
    r.c[static_cast<size_t>(idx)] = ((r.c[static_cast<size_t>(idx)] - 1) % r.p + r.p) % r.p;
    r.trim();
    return r;
}

long ca_length_pow(const Laurent& xi, unsigned long n) {
    Laurent pw = laurent_pow(xi, n);
    Laurent d = laurent_sub_one(pw);
    if (d.is_zero()) throw not_confined_error("ca: xi^n = 1");
    return d.length();
}

} // namespace

FixedPointReport ca_system(long p, const std::map<long, long>& laurent) {
    if (!is_prime(Int(p))) throw argument_error("ca_system: p not prime");
    Laurent xi = laurent_from_map(p, laurent);
    if (xi.is_zero()) throw argument_error("ca_system: zero rule");
    if (xi.length() == 0) {
        // monomial c*t^k: confined iff k != 0
        if (xi.off == 0) throw not_confined_error("ca_system: constant rule is not confined");
    }
    long a = std::max(xi.topexp(), 0L) - std::min(xi.botexp(), 0L);
    // t_m = a*m - length(xi^m - 1) for p coprime m; period by scan + verify
    long W0 = std::max<long>(40, 8 * (xi.length() + 1));
    std::map<long, long> tvals;
    for (long m = 1; m <= W0; ++m) {
        if (m % p == 0) continue;
        long L = ca_length_pow(xi, static_cast<unsigned long>(m));
        long t = a * m - L;
        if (t < 0) throw inconsistency_error("ca_system: negative t value");
        tvals[m] = t;
    }
    long varpi = 0;
    for (long cand = 1; cand <= W0 / 2; ++cand) {
        if (std::gcd(cand, p) != 1) continue;
        bool ok = true;
        for (auto& [m, t] : tvals) {
            long g = std::gcd(m, cand);
            if (!tvals.count(g) || tvals.at(g) != t) { ok = false; break; }
        }
        if (ok) { varpi = cand; break; }
    }
    if (varpi == 0) throw budget_error("ca_system: period not found within window");
    std::map<long, Rat> tv;
    for (long d : divisors(varpi)) tv[d] = Rat(tvals.at(d));
    GcdSeq t(varpi, std::move(tv));
    long window = 2 * varpi * p;
    if (window > 20000) throw budget_error("ca_system: verification window too large");
    for (long n = 1; n <= window; ++n) {
        long L = ca_length_pow(xi, static_cast<unsigned long>(n));
        long ordp = 0, nn = n;
        while (nn % p == 0) { nn /= p; ++ordp; }
        long expect = a * n - static_cast<long>(t.eval(n).get_num().get_si()) *
                                  static_cast<long>(pow_int(Int(p), static_cast<unsigned long>(ordp)).get_si());
        if (L != expect)
            throw precision_error("ca_system: closed form failed verification at n=" + std::to_string(n));
    }
    FixedPointReport rep;
    rep.params = make_fad_params(IntMatrix(0, 0), Rat(pow_int(Int(p), static_cast<unsigned long>(a))),
                                 {p}, GcdSeq::constant(Rat(1)),
                                 {{p, GcdSeq::constant(Rat(0))}}, {{p, t}});
    long pp = p;
    std::map<long, long> lmap = laurent;
    rep.direct = [pp, lmap](long n) {
        Laurent x = laurent_from_map(pp, lmap);
        long L = ca_length_pow(x, static_cast<unsigned long>(n));
        return pow_int(Int(pp), static_cast<unsigned long>(L));
    };
    rep.provenance = "additive CA: f(n) = p^length(xi^n - 1)";
    return rep;
}

Int ca_oracle(long p, const std::map<long, long>& laurent, long n) {
    Laurent xi = laurent_from_map(p, laurent);
    if (xi.is_zero()) throw argument_error("ca_oracle: zero rule");
    Laurent pw = laurent_pow(xi, static_cast<unsigned long>(n));
    Laurent d = laurent_sub_one(pw);
    if (d.is_zero()) throw not_confined_error("ca_oracle: xi^n = 1");
    long L = d.length();
    // certify spatial periodicity: the recurrence companion matrix has finite
    // multiplicative order (budget-capped); all p^L period solutions count
    if (L > 0) {
        // companion matrix over F_p of the degree-L recurrence from d
        IntMatrix C(L, L);
        long top = d.c.back();
        long inv;
        {
            long t = 0, nt = 1, r = p, nr = top % p;
            while (nr != 0) {
                long q = r / nr;
                std::swap(t -= q * nt, nt);
                std::swap(r -= q * nr, nr);
            }
            inv = ((t % p) + p) % p;
        }
        for (long i = 1; i < L; ++i) C(i, i - 1) = 1;
        for (long i = 0; i < L; ++i) {
            long coef = ((-(d.c[static_cast<size_t>(i)] * inv % p)) % p + p) % p;
            C(i, L - 1) = coef;
        }
        IntMatrix acc = IntMatrix::identity(L);
        IntMatrix I = IntMatrix::identity(L);
        long cap = 1000000;
        bool found = false;
        IntMatrix base = C;
        for (auto& x : base.a) { Int r = x % p; if (r < 0) r += p; x = r; }
        for (long k = 1; k <= cap; ++k) {
            acc = acc * base;
            for (auto& x : acc.a) { Int r = x % p; if (r < 0) r += p; x = r; }
            if (acc == I) { found = true; break; }
        }
        if (!found) throw budget_error("ca_oracle: companion order cap exceeded");
    }
    return pow_int(Int(p), static_cast<unsigned long>(L));
}

// ---- vector groups ---------------------------------------------------------

TwistedMatrix decode_twisted(const FqPtr& F, const std::vector<std::vector<TwistedPolyEnc>>& entries) {
    long r = static_cast<long>(entries.size());
    TwistedMatrix m = tm_zero(F, r);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(entries[static_cast<size_t>(i)].size()) != r)
            throw argument_error("decode_twisted: ragged matrix");
        for (long j = 0; j < r; ++j) {
            const TwistedPolyEnc& enc = entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
            TwistedPoly t{F, {}};
            for (auto& coords : enc) t.c.push_back(fq_from_coords(F, coords));
            t.trim();
            m.at(i, j) = t;
        }
    }
    return m;
}

FixedPointReport vector_group_system(long p, long nu, const std::vector<long>& modulus,
                                     const TwistedMatrix& sigma) {
    if (!is_prime(Int(p))) throw argument_error("vector_group_system: p not prime");
    (void)nu;
    (void)modulus;
    DegProfile dp = deg_profile(sigma);
    GcdSeq tins = insep_profile(sigma);
    GcdSeq t = dp.t + tins;
    FixedPointReport rep;
    rep.params = make_fad_params(IntMatrix(0, 0),
                                 Rat(pow_int(Int(p), static_cast<unsigned long>(dp.a))), {p},
                                 GcdSeq::constant(Rat(1)), {{p, GcdSeq::constant(Rat(0))}},
                                 {{p, t}});
    TwistedMatrix sig = sigma;
    long pp = p;
    rep.direct = [sig, pp](long n) {
        TwistedMatrix P = tm_pow(sig, static_cast<unsigned long>(n));
        P = tm_sub(P, tm_identity(sig.F, sig.n));
        DdetProfile prof = ddet_profile(P);
        if (prof.singular) throw not_confined_error("vector group: sigma^n - 1 singular");
        long e = prof.degphi - prof.vphi;  // separable degree exponent
        return pow_int(Int(pp), static_cast<unsigned long>(e));
    };
    rep.provenance = "vector group: p^{deg - deg_i} of sigma^n - 1";
    return rep;
}

Int vector_group_oracle(long p, long nu, const std::vector<long>& modulus,
                        const TwistedMatrix& sigma, long n, long M_field) {
    long r = sigma.n;
    if (M_field < 1 || M_field * r * nu > 64)
        throw budget_error("vector_group_oracle: budget M_field*r*nu <= 64 exceeded");
    // K = F_p[z]/(big), big irreducible of degree D = M_field * nu
    long D = M_field * nu;
    std::vector<long> big = FqField::default_modulus(p, D);
    auto K = std::make_shared<const FqField>(p, D, big);
    // embed F_q into K: find a root of 'modulus' in K by scanning
    FqElem root = fq_zero(K);
    bool found = false;
    if (nu == 1) {
        root = fq_one(K);
        found = true;  // prime field embeds trivially; root unused
    } else {
        // enumerate K elements (p^D <= 5^8 within budget)
        std::vector<long> idx(static_cast<size_t>(D), 0);
        long total = 1;
        for (long i = 0; i < D; ++i) {
            total *= p;
            if (total > 10000000) throw budget_error("vector_group_oracle: embedding scan budget");
        }
        for (long v = 0; v < total && !found; ++v) {
            long x = v;
            FqElem cand = fq_zero(K);
            for (long i = 0; i < D; ++i) {
                cand.c[static_cast<size_t>(i)] = x % p;
                x /= p;
            }
            // evaluate modulus at cand
            FqElem acc = fq_zero(K);
            for (size_t i = modulus.size(); i-- > 0;) {
                acc = fq_mul(K, acc, cand);
                FqElem c0 = fq_from_int(K, modulus[i]);
                acc = fq_add(K, acc, c0);
            }
            if (fq_is_zero(acc) && !fq_is_zero(cand)) {
                root = cand;
                found = true;
            }
        }
        if (!found) throw inconsistency_error("vector_group_oracle: no embedding root found");
    }
    auto embed = [&](const FqElem& a) {
        // a = sum coords[i] * x^i -> sum coords[i] * root^i in K
        FqElem acc = fq_zero(K);
        FqElem pw = fq_one(K);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i]) {
                FqElem term = fq_mul(K, fq_from_int(K, a.c[i]), pw);
                acc = fq_add(K, acc, term);
            }
            pw = fq_mul(K, pw, root);
        }
        return acc;
    };
    // sigma^n - 1 as a twisted matrix over the original field
    TwistedMatrix P = tm_pow(sigma, static_cast<unsigned long>(n));
    P = tm_sub(P, tm_identity(sigma.F, sigma.n));
    // build the F_p-linear map on K^r: dimension r*D over F_p
    long dim = r * D;
    std::vector<std::vector<long>> Mat(static_cast<size_t>(dim), std::vector<long>(static_cast<size_t>(dim), 0));
    for (long j = 0; j < r; ++j) {
        for (long b = 0; b < D; ++b) {
            // basis vector: component j = z^b
            FqElem xb = fq_zero(K);
            xb.c[static_cast<size_t>(b)] = 1;
            // image in each row i
            for (long i = 0; i < r; ++i) {
                const TwistedPoly& e = P.at(i, j);
                FqElem img = fq_zero(K);
                for (long k = 0; k <= e.deg(); ++k) {
                    if (fq_is_zero(e.c[static_cast<size_t>(k)])) continue;
                    FqElem c_emb = embed(e.c[static_cast<size_t>(k)]);
                    FqElem xq = fq_frob(K, xb, k);  // z^b ^ (p^k)
                    img = fq_add(K, img, fq_mul(K, c_emb, xq));
                }
                for (long rr = 0; rr < D; ++rr)
                    Mat[static_cast<size_t>(i * D + rr)][static_cast<size_t>(j * D + b)] = img.c[static_cast<size_t>(rr)];
            }
        }
    }
    // kernel dimension over F_p
    long rank = 0;
    for (long c = 0; c < dim; ++c) {
        long piv = -1;
        for (long rr = rank; rr < dim; ++rr)
            if (Mat[static_cast<size_t>(rr)][static_cast<size_t>(c)] != 0) { piv = rr; break; }
        if (piv < 0) continue;
        std::swap(Mat[static_cast<size_t>(piv)], Mat[static_cast<size_t>(rank)]);
        long inv;
        {
            long t = 0, nt = 1, rg = p, nr = Mat[static_cast<size_t>(rank)][static_cast<size_t>(c)] % p;
            while (nr != 0) {
                long q = rg / nr;
                std::swap(t -= q * nt, nt);
                std::swap(rg -= q * nr, nr);
            }
            inv = ((t % p) + p) % p;
        }
        for (long j2 = 0; j2 < dim; ++j2)
            Mat[static_cast<size_t>(rank)][static_cast<size_t>(j2)] = Mat[static_cast<size_t>(rank)][static_cast<size_t>(j2)] * inv % p;
        for (long rr = 0; rr < dim; ++rr) {
            if (rr == rank) continue;
            long f = Mat[static_cast<size_t>(rr)][static_cast<size_t>(c)];
            if (!f) continue;
            for (long j2 = 0; j2 < dim; ++j2)
                Mat[static_cast<size_t>(rr)][static_cast<size_t>(j2)] =
                    ((Mat[static_cast<size_t>(rr)][static_cast<size_t>(j2)] - f * Mat[static_cast<size_t>(rank)][static_cast<size_t>(j2)]) % p + p) % p;
        }
        ++rank;
    }
    return pow_int(Int(p), static_cast<unsigned long>(dim - rank));
}

// ---- torus oracles ----------------------------------------------------------

Int torus_oracle(long p, const IntMatrix& M, long n, TorusOracleMode mode, long M_field) {
    if (mode == TorusOracleMode::Snf) {
        IntMatrix P = mat_pow(M, static_cast<unsigned long>(n));
        for (long i = 0; i < M.rows; ++i) P(i, i) -= 1;
        SmithFormZ snf = smith_form_Z(P);
        Int out(1);
        for (auto a : snf.diag) {
            if (a == 0) throw not_confined_error("torus_oracle: infinite fixed points");
            Int b = a;
            while (b % p == 0) b /= p;
            out *= b;
        }
        return out;
    }
    return torus_oracle_enumerate_kernel(p, M, n, M_field, false);
}

Int torus_oracle_enumerate_kernel(long p, const IntMatrix& M, long n, long M_field, bool parallel) {
    long s = M.rows;
    // budget: p^(M_field*s) <= 10^7
    double budget = 1;
    for (long i = 0; i < M_field * s; ++i) {
        budget *= p;
        if (budget > 1e7) throw budget_error("torus_oracle: enumeration budget exceeded");
    }
    Int qm1_int = pow_int(Int(p), static_cast<unsigned long>(M_field)) - 1;
    long q1 = static_cast<long>(qm1_int.get_si());
    IntMatrix P = mat_pow(M, static_cast<unsigned long>(n));
    for (long i = 0; i < s; ++i) P(i, i) -= 1;
    // count v in (Z/(q-1))^s with P v == 0 mod q-1
    std::vector<std::vector<long>> Pm(static_cast<size_t>(s), std::vector<long>(static_cast<size_t>(s)));
    for (long i = 0; i < s; ++i)
        for (long j = 0; j < s; ++j) {
            Int r = P(i, j) % q1;
            if (r < 0) r += q1;
            Pm[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<long>(r.get_si());
        }
    long total = 1;
    for (long i = 0; i < s; ++i) total *= q1;
    long count = 0;
    if (parallel) {
#pragma omp parallel for reduction(+ : count) schedule(static)
        for (long v = 0; v < total; ++v) {
            long x = v;
            long vv[8];
            for (long i = 0; i < s; ++i) {
                vv[i] = x % q1;
                x /= q1;
            }
            bool ok = true;
            for (long i = 0; i < s && ok; ++i) {
                long acc = 0;
                for (long j = 0; j < s; ++j) acc = (acc + Pm[static_cast<size_t>(i)][static_cast<size_t>(j)] * vv[j]) % q1;
                if (acc % q1 != 0) ok = false;
            }
            if (ok) ++count;
        }
    } else {
        for (long v = 0; v < total; ++v) {
            long x = v;
            long vv[8];
            for (long i = 0; i < s; ++i) {
                vv[i] = x % q1;
                x /= q1;
            }
            bool ok = true;
            for (long i = 0; i < s && ok; ++i) {
                long acc = 0;
                for (long j = 0; j < s; ++j) acc = (acc + Pm[static_cast<size_t>(i)][static_cast<size_t>(j)] * vv[j]) % q1;
                if (acc % q1 != 0) ok = false;
            }
            if (ok) ++count;
        }
    }
    return Int(count);
}

// ---- elliptic oracle (division polynomials) ---------------------------------

Int elliptic_oracle(long p, long a2, long a4, long a6, long m, long n) {
    if (p == 2) throw argument_error("elliptic_oracle: p = 2 unsupported");
    Int N = pow_int(Int(m), static_cast<unsigned long>(n)) - 1;
    Int Nabs = abs(N);
    if (Nabs % 2 == 0) throw argument_error("elliptic_oracle: even torsion unsupported");
    if (!Nabs.fits_slong_p()) throw budget_error("elliptic_oracle: N too large");
    long NN = Nabs.get_si();
    if (NN == 1) return Int(1);
    auto mkpoly = [&](std::initializer_list<long> v) {
        std::vector<long> c(v);
        for (auto& x : c) x = ((x % p) + p) % p;
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    };
    auto mul = [&](const std::vector<long>& A, const std::vector<long>& B) {
        if (A.empty() || B.empty()) return std::vector<long>{};
        std::vector<long> C(A.size() + B.size() - 1, 0);
        for (size_t i = 0; i < A.size(); ++i) {
            if (!A[i]) continue;
            for (size_t j = 0; j < B.size(); ++j)
                C[i + j] = static_cast<long>((C[i + j] + static_cast<long long>(A[i]) * B[j]) % p);
        }
        while (!C.empty() && C.back() == 0) C.pop_back();
        return C;
    };
    auto sub = [&](const std::vector<long>& A, const std::vector<long>& B) {
        std::vector<long> C(std::max(A.size(), B.size()), 0);
        for (size_t i = 0; i < A.size(); ++i) C[i] = A[i];
        for (size_t i = 0; i < B.size(); ++i) C[i] = ((C[i] - B[i]) % p + p) % p;
        while (!C.empty() && C.back() == 0) C.pop_back();
        return C;
    };
    // curve y^2 = f(x) = x^3 + a2 x^2 + a4 x + a6 (a1 = a3 = 0):
    // b-invariants b2 = 4 a2, b4 = 2 a4, b6 = 4 a6, b8 = 4 a2 a6 - a4^2.
    std::vector<long> f = mkpoly({a6, a4, a2, 1});
    std::vector<long> f2 = mul(f, f);
    long b2 = ((4 * a2) % p + p) % p;
    long b4 = ((2 * a4) % p + p) % p;
    long b6 = ((4 * a6) % p + p) % p;
    long b8 = (((4 * a2 % p) * (a6 % p) - (a4 % p) * (a4 % p)) % p + p) % p;
    long inv2 = (p + 1) / 2;
    // psi_k = G[k] for k odd, psi_k = y * G[k] for k even
    std::map<long, std::vector<long>> G;
    std::function<const std::vector<long>&(long)> P = [&](long k) -> const std::vector<long>& {
        auto it = G.find(k);
        if (it != G.end()) return it->second;
        std::vector<long> val;
        if (k == 0) val = {};
        else if (k == 1) val = mkpoly({1});
        else if (k == 2) val = mkpoly({2});
        else if (k == 3) val = mkpoly({b8, 3 * b6, 3 * b4, b2, 3});
        else if (k == 4) {
            std::vector<long> inner = mkpoly({
                (b4 * b8 % p - b6 * b6 % p + p * p) % p,
                (b2 * b8 % p - b4 * b6 % p + p * p) % p,
                (10 * b8) % p, (10 * b6) % p, (5 * b4) % p, b2 % p, 2});
            val = mul(mkpoly({2}), inner);
        } else {
            long mm = k / 2;
            if (k % 2 == 1) {
                // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3,
                // with y^4 = f^2 substituted on the even-parity side
                std::vector<long> t1 = mul(P(mm + 2), mul(P(mm), mul(P(mm), P(mm))));
                std::vector<long> t2 = mul(P(mm - 1), mul(P(mm + 1), mul(P(mm + 1), P(mm + 1))));
                if (mm % 2 == 0) t1 = mul(t1, f2);
                else t2 = mul(t2, f2);
                val = sub(t1, t2);
            } else {
                // psi_{2m} = (psi_m/(2y)) (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2);
                // both parities reduce to the same polynomial formula
                std::vector<long> t1 = mul(P(mm + 2), mul(P(mm - 1), P(mm - 1)));
                std::vector<long> t2 = mul(P(mm - 2), mul(P(mm + 1), P(mm + 1)));
                std::vector<long> num = mul(P(mm), sub(t1, t2));
                for (auto& x : num) x = static_cast<long>((static_cast<long long>(x) * inv2) % p);
                val = num;
            }
        }
        G[k] = std::move(val);
        return G.at(k);
    };
    const std::vector<long>& psiN = P(NN);
    if (psiN.empty()) throw inconsistency_error("elliptic_oracle: psi_N vanished");
    long roots = distinct_root_count_mod_p(psiN, p);
    return Int(1 + 2 * roots);
}

// ---- torus equivalence -------------------------------------------------------

TorusEquivalence torus_zeta_equivalence(long p, const IntMatrix& M1, const IntMatrix& M2) {
    (void)p;
    MultTypeHandle h1 = mult_type_build(M1);
    MultTypeHandle h2 = mult_type_build(M2);
    if (!is_irreducible(h1.charP) || !is_irreducible(h2.charP))
        throw argument_error("torus_zeta_equivalence: reducible characteristic polynomial unsupported");
    if (h1.charP == h2.charP) return TorusEquivalence::EquivariantlyIsogenous;
    Int c0 = h1.charP.coeff(0);
    if (c0 == 1 || c0 == -1) {
        // P(0)^{-1} x^s P(1/x) is exactly the sign-normalized reversal
        ZPoly rec = reciprocal_normalized(h1.charP);
        if (rec == h2.charP) return TorusEquivalence::TimeReversedIsogenous;
    }
    return TorusEquivalence::Distinct;
}

// ---- products ----------------------------------------------------------------

FixedPointReport build_system(const SystemDescriptor& desc) {
    if (std::holds_alternative<TorusDesc>(desc)) {
        const auto& d = std::get<TorusDesc>(desc);
        return torus_system(d.p, d.M);
    }
    if (std::holds_alternative<VectorGroupDesc>(desc)) {
        const auto& d = std::get<VectorGroupDesc>(desc);
        auto F = std::make_shared<const FqField>(d.p, d.nu, d.modulus.empty()
                                                               ? FqField::default_modulus(d.p, d.nu)
                                                               : d.modulus);
        TwistedMatrix sigma = decode_twisted(F, d.sigma);
        return vector_group_system(d.p, d.nu, F->modulus, sigma);
    }
    if (std::holds_alternative<SIntegerDesc>(desc)) {
        const auto& d = std::get<SIntegerDesc>(desc);
        return s_integer_system(d.xi, d.S);
    }
    if (std::holds_alternative<CADesc>(desc)) {
        const auto& d = std::get<CADesc>(desc);
        return ca_system(d.p, d.laurent);
    }
    if (std::holds_alternative<EllipticDesc>(desc)) {
        const auto& d = std::get<EllipticDesc>(desc);
        return elliptic_system(d.p, d.m, d.ordinary);
    }
    if (std::holds_alternative<SteinbergDesc>(desc)) {
        return steinberg_system(std::get<SteinbergDesc>(desc));
    }
    if (std::holds_alternative<FiniteDesc>(desc)) {
        return finite_system(std::get<FiniteDesc>(desc).cycles);
    }
    if (std::holds_alternative<RawFadDesc>(desc)) {
        const auto& d = std::get<RawFadDesc>(desc);
        GcdSeq r(d.r_period, d.r);
        std::map<long, GcdSeq> smap, tmap;
        for (auto& [p, vals] : d.s) smap.emplace(p, GcdSeq(d.s_period.at(p), vals));
        for (auto& [p, vals] : d.t) tmap.emplace(p, GcdSeq(d.t_period.at(p), vals));
        FixedPointReport rep;
        rep.params = make_fad_params(d.A, d.c, d.S, r, smap, tmap);
        FadParams fp = rep.params;
        rep.direct = [fp](long n) { return fad_eval_int(fp, n); };
        rep.provenance = "raw FAD parameters";
        return rep;
    }
    // product
    const auto& pd = std::get<std::shared_ptr<ProductDesc>>(desc);
    if (pd->factors.empty()) throw argument_error("product: no factors");
    FixedPointReport acc = build_system(pd->factors[0]);
    for (size_t i = 1; i < pd->factors.size(); ++i) {
        FixedPointReport nxt = build_system(pd->factors[i]);
        FixedPointReport prod;
        prod.params = fad_product(acc.params, nxt.params);
        auto f1 = acc.direct, f2 = nxt.direct;
        prod.direct = [f1, f2](long n) { return Int(f1(n) * f2(n)); };
        prod.provenance = acc.provenance + " x " + nxt.provenance;
        acc = std::move(prod);
    }
    return acc;
}

} // namespace fad
