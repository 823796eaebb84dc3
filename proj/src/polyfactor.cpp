#include "fad/polyfactor.hpp"

#include <random>

namespace fad {

namespace {

// ---- arithmetic in F_p[x], p odd machine prime --------------------------

using FpPoly = std::vector<long>;  // low-to-high, normalized

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long fp_deg(const FpPoly& a) { return static_cast<long>(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

long fp_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, long p) {
    long db = fp_deg(b);
    long inv = fp_inv(b.back(), p);
    while (fp_deg(a) >= db) {
        long k = fp_deg(a) - db;
        long f = a.back() * inv % p;
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(k + i)] = ((a[static_cast<size_t>(k + i)] - f * b[static_cast<size_t>(i)]) % p + p) % p;
        fp_trim(a);
    }
    return a;
}

FpPoly fp_divexact(FpPoly a, const FpPoly& b, long p) {
    long db = fp_deg(b);
    long inv = fp_inv(b.back(), p);
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 0);
    while (fp_deg(a) >= db) {
        long k = fp_deg(a) - db;
        long f = a.back() * inv % p;
        q[static_cast<size_t>(k)] = f;
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(k + i)] = ((a[static_cast<size_t>(k + i)] - f * b[static_cast<size_t>(i)]) % p + p) % p;
        fp_trim(a);
    }
    fp_trim(q);
    return q;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = fp_inv(a.back(), p);
        for (auto& x : a) x = x * inv % p;
    }
    return a;
}

FpPoly fp_monic(FpPoly a, long p) {
    if (a.empty()) return a;
    long inv = fp_inv(a.back(), p);
    for (auto& x : a) x = x * inv % p;
    return a;
}

FpPoly fp_deriv(const FpPoly& a, long p) {
    if (a.size() <= 1) return {};
    FpPoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = (a[i] * static_cast<long>(i % static_cast<size_t>(p))) % p;
    fp_trim(d);
    return d;
}

FpPoly fp_powmod(FpPoly base, const Int& e, const FpPoly& mod, long p) {
    FpPoly r = {1};
    base = fp_rem(std::move(base), mod, p);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = fp_rem(fp_mul(r, base, p), mod, p);
        k >>= 1;
        if (k > 0) base = fp_rem(fp_mul(base, base, p), mod, p);
    }
    return r;
}

std::mt19937_64 rng(0x5eed5eedULL);

void fp_edf(const FpPoly& f, long d, long p, std::vector<FpPoly>& out) {
    if (fp_deg(f) == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    Int pd = pow_int(Int(p), static_cast<unsigned long>(d));
    Int e = (pd - 1) / 2;
    for (;;) {
        FpPoly a(static_cast<size_t>(fp_deg(f)), 0);
        for (auto& x : a) x = static_cast<long>(rng() % static_cast<unsigned long>(p));
        fp_trim(a);
        if (fp_deg(a) < 1) continue;
        FpPoly c = fp_powmod(a, e, f, p);
        if (c.empty()) continue;
        c[0] = (c[0] - 1 + p) % p;
        fp_trim(c);
        FpPoly w = fp_gcd(c, f, p);
        if (fp_deg(w) > 0 && fp_deg(w) < fp_deg(f)) {
            fp_edf(w, d, p, out);
            fp_edf(fp_divexact(f, w, p), d, p, out);
            return;
        }
    }
}

// distinct-degree + equal-degree factorization of a squarefree monic f mod p
std::vector<FpPoly> fp_factor_squarefree(FpPoly f, long p) {
    std::vector<FpPoly> out;
    FpPoly h = {0, 1};  // x
    long d = 0;
    while (fp_deg(f) >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(h, Int(p), f, p);  // x^(p^d) mod f
        FpPoly hm = h;
        if (hm.size() < 2) hm.resize(2, 0);
        hm[1] = ((hm[1] - 1) % p + p) % p;
        fp_trim(hm);
        FpPoly g = fp_gcd(hm, f, p);
        if (fp_deg(g) > 0) {
            fp_edf(g, d, p, out);
            f = fp_divexact(f, g, p);
            if (fp_deg(f) > 0) h = fp_rem(h, f, p);
        }
    }
    if (fp_deg(f) > 0) out.push_back(fp_monic(f, p));
    return out;
}

// ---- Hensel lifting -------------------------------------------------------

ZPoly zp_from_fp(const FpPoly& a) {
    std::vector<Int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    return ZPoly(std::move(c));
}

ZPoly mod_sym(const ZPoly& a, const Int& m) {
    std::vector<Int> c(a.c);
    Int half = m / 2;
    for (auto& x : c) {
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (x > half) x -= m;
    }
    return ZPoly(std::move(c));
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Int& m) { return mod_sym(a * b, m); }

// division with remainder mod m by a monic polynomial
std::pair<ZPoly, ZPoly> divmod_monic_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly r = mod_sym(a, m);
    long db = b.deg();
    std::vector<Int> q(r.deg() >= db ? static_cast<size_t>(r.deg() - db + 1) : 1, Int(0));
    while (!r.is_zero() && r.deg() >= db) {
        Int f = r.lead();
        long k = r.deg() - db;
        q[static_cast<size_t>(k)] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(k) + i] -= f * b.c[i];
        r.trim();
        r = mod_sym(r, m);
    }
    return {mod_sym(ZPoly(std::move(q)), m), r};
}

// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, h monic,
// g monic.  Returns lifted (g,h,s,t) mod m^2.
struct HenselPair {
    ZPoly g, h, s, t;
};

HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    ZPoly e = mod_sym(f - in.g * in.h, m2);
    auto [q, r] = divmod_monic_mod(mul_mod(in.s, e, m2), in.h, m2);
    ZPoly h1 = mod_sym(in.h + r, m2);
    // renormalize g1 as the exact quotient f / h1 mod m^2 (h1 monic), which
    // pins the degree and keeps g1 monic for monic f
    auto [g1, rr] = divmod_monic_mod(f, h1, m2);
    if (!rr.is_zero()) throw inconsistency_error("hensel_step: lift failed");
    (void)q;
    ZPoly b = mod_sym(in.s * g1 + in.t * h1 - ZPoly::constant(1), m2);
    auto [c, d] = divmod_monic_mod(mul_mod(in.s, b, m2), h1, m2);
    ZPoly s1 = mod_sym(in.s - d, m2);
    ZPoly t1 = mod_sym(in.t - mul_mod(in.t, b, m2) - mul_mod(c, g1, m2), m2);
    return {g1, h1, s1, t1};
}

// extended gcd in F_p[x]: s*a + t*b = 1 for coprime a, b
std::pair<FpPoly, FpPoly> fp_xgcd(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = {1}, s1 = {};
    FpPoly t0 = {}, t1 = {1};
    while (!r1.empty()) {
        FpPoly q = fp_divexact(r0, r1, p);  // floor division
        FpPoly qr = fp_mul(q, r1, p);
        FpPoly r2(std::max(r0.size(), qr.size()), 0);
        for (size_t i = 0; i < r0.size(); ++i) r2[i] = r0[i];
        for (size_t i = 0; i < qr.size(); ++i) r2[i] = ((r2[i] - qr[i]) % p + p) % p;
        fp_trim(r2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        FpPoly qs = fp_mul(q, s1, p);
        FpPoly s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
        fp_trim(s2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        FpPoly qt = fp_mul(q, t1, p);
        FpPoly t2(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
        fp_trim(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd, normalize to 1
    long inv = fp_inv(r0.back(), p);
    for (auto& x : s0) x = x * inv % p;
    for (auto& x : t0) x = x * inv % p;
    return {s0, t0};
}

// Lift F = prod(factors) mod p (all monic, F monic) to mod M where M = p^(2^j).
std::vector<ZPoly> lift_rec(const ZPoly& F, const std::vector<FpPoly>& factors, long p, const Int& M) {
    if (factors.size() == 1) return {mod_sym(F, M)};
    size_t half = factors.size() / 2;
    FpPoly gl = {1}, hr = {1};
    for (size_t i = 0; i < half; ++i) gl = fp_mul(gl, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) hr = fp_mul(hr, factors[i], p);
    auto [s, t] = fp_xgcd(gl, hr, p);
    HenselPair pair{zp_from_fp(gl), zp_from_fp(hr), zp_from_fp(s), zp_from_fp(t)};
    pair.g = mod_sym(pair.g, Int(p));
    pair.h = mod_sym(pair.h, Int(p));
    pair.s = mod_sym(pair.s, Int(p));
    pair.t = mod_sym(pair.t, Int(p));
    Int m(p);
    while (m < M) {
        pair = hensel_step(F, pair, m);
        m = m * m;
    }
    std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<FpPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    auto L = lift_rec(pair.g, left, p, M);
    auto R = lift_rec(pair.h, right, p, M);
    L.insert(L.end(), R.begin(), R.end());
    return L;
}

std::vector<long> first_subset(long k) {
    std::vector<long> s(static_cast<size_t>(k));
    for (long i = 0; i < k; ++i) s[static_cast<size_t>(i)] = i;
    return s;
}

bool next_subset(std::vector<long>& s, long n) {
    long k = static_cast<long>(s.size());
    long i = k - 1;
    while (i >= 0 && s[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++s[static_cast<size_t>(i)];
    for (long j = i + 1; j < k; ++j) s[static_cast<size_t>(j)] = s[static_cast<size_t>(j - 1)] + 1;
    return true;
}

// Factor a primitive squarefree polynomial of degree >= 1.
std::vector<ZPoly> factor_squarefree(const ZPoly& fin) {
    std::vector<ZPoly> out;
    ZPoly f = primitive_part(fin);
    // strip x
    while (f.coeff(0) == 0) {
        out.push_back(ZPoly::x());
        f.c.erase(f.c.begin());
    }
    if (f.deg() < 1) return out;
    if (f.deg() == 1) {
        out.push_back(f);
        return out;
    }
    // monicize: g(y) = b^{d-1} f(y/b), b = lc(f)
    Int b = f.lead();
    long d = f.deg();
    ZPoly g;
    {
        std::vector<Int> c(f.c.size());
        for (long i = 0; i <= d; ++i)
            c[static_cast<size_t>(i)] = f.c[static_cast<size_t>(i)] *
                pow_int(b, static_cast<unsigned long>(d - 1 - i >= 0 ? d - 1 - i : 0));
        // i = d: b^{-1} * b = 1
        c[static_cast<size_t>(d)] = 1;
        g = ZPoly(std::move(c));
    }
    // choose an odd prime with g squarefree mod p
    long p = 0;
    FpPoly gbar;
    {
        Int pp(2);
        for (int tries = 0; tries < 1000; ++tries) {
            mpz_nextprime(pp.get_mpz_t(), pp.get_mpz_t());
            long cand = static_cast<long>(pp.get_si());
            FpPoly gb(g.c.size());
            for (size_t i = 0; i < g.c.size(); ++i) {
                Int r = g.c[i] % cand;
                if (r < 0) r += cand;
                gb[i] = static_cast<long>(r.get_si());
            }
            fp_trim(gb);
            if (fp_deg(gb) != d) continue;  // cannot happen: monic
            FpPoly der = fp_deriv(gb, cand);
            if (der.empty()) continue;
            FpPoly gc = fp_gcd(gb, der, cand);
            if (fp_deg(gc) == 0) {
                p = cand;
                gbar = gb;
                break;
            }
        }
        if (p == 0) throw precision_error("factor_squarefree: no good prime found");
    }
    std::vector<FpPoly> modular = fp_factor_squarefree(fp_monic(gbar, p), p);
    if (modular.size() == 1) {
        out.push_back(f);  // irreducible over Z
        return out;
    }
    std::sort(modular.begin(), modular.end());
    // Mignotte-style bound for monic g: any monic factor has
    // |coeff| <= 2^d * sqrt(d+1) * ||g||_inf
    Int norm(0);
    for (auto& x : g.c) if (::abs(x) > norm) norm = ::abs(x);
    Int bound = pow_int(Int(2), static_cast<unsigned long>(d + 2)) * Int(d + 1) * norm;
    Int M(p);
    while (M < bound) M = M * M;
    std::vector<ZPoly> lifted = lift_rec(mod_sym(g, M), modular, p, M);

    // recombination
    ZPoly rem = g;
    std::vector<ZPoly> gfactors;
    bool progress = true;
    while (progress && !lifted.empty()) {
        progress = false;
        long n = static_cast<long>(lifted.size());
        for (long k = 1; k <= n / 2 && !progress; ++k) {
            auto sub = first_subset(k);
            do {
                ZPoly cand = ZPoly::constant(1);
                for (long idx : sub) cand = mod_sym(cand * lifted[static_cast<size_t>(idx)], M);
                // trial division
                try {
                    ZPoly q = div_exact(rem, cand);
                    gfactors.push_back(cand);
                    rem = q;
                    std::vector<ZPoly> keep;
                    for (long i = 0; i < n; ++i)
                        if (std::find(sub.begin(), sub.end(), i) == sub.end())
                            keep.push_back(lifted[static_cast<size_t>(i)]);
                    lifted = std::move(keep);
                    progress = true;
                    break;
                } catch (const argument_error&) {
                    // not a true factor
                }
            } while (next_subset(sub, n));
        }
    }
    if (rem.deg() > 0) gfactors.push_back(rem);
    // map back through y = b*x
    for (auto& G : gfactors) out.push_back(scale_arg(G, Rat(b)));
    return out;
}

} // namespace

std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& fin) {
    std::vector<std::pair<ZPoly, int>> out;
    if (fin.is_zero() || fin.deg() < 1) return out;
    auto sf = squarefree_decomposition(fin);
    for (auto& [w, mult] : sf) {
        for (auto& g : factor_squarefree(w)) out.push_back({g, mult});
    }
    // deterministic order
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (long i = a.first.deg(); i >= 0; --i) {
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        }
        return a.second < b.second;
    });
    return out;
}

bool is_irreducible(const ZPoly& f) {
    if (f.deg() < 1) return false;
    auto fac = factor_poly(f);
    return fac.size() == 1 && fac[0].second == 1 && fac[0].first.deg() == f.deg();
}

long distinct_root_count_mod_p(const std::vector<long>& fin, long p) {
    FpPoly f(fin);
    for (auto& x : f) x = ((x % p) + p) % p;
    fp_trim(f);
    long count = 0;
    // strip x
    size_t sh = 0;
    while (sh < f.size() && f[sh] == 0) ++sh;
    if (sh > 0) {
        ++count;
        f.erase(f.begin(), f.begin() + static_cast<long>(sh));
    }
    std::function<long(FpPoly)> rad = [&](FpPoly g) -> long {
        fp_trim(g);
        if (fp_deg(g) <= 0) return 0;
        FpPoly der = fp_deriv(g, p);
        if (der.empty()) {
            // g = h(x^p); distinct-root count preserved under contraction
            FpPoly h;
            for (size_t i = 0; i < g.size(); i += static_cast<size_t>(p)) h.push_back(g[i]);
            return rad(h);
        }
        FpPoly c = fp_gcd(g, der, p);
        FpPoly w = fp_divexact(g, c, p);  // roots with multiplicity coprime to p
        long n = fp_deg(w);
        // remove these roots entirely from c, then recurse on the rest
        for (;;) {
            FpPoly gg = fp_gcd(c, w, p);
            if (fp_deg(gg) <= 0) break;
            c = fp_divexact(c, gg, p);
        }
        return n + rad(c);
    };
    return count + rad(f);
}

} // namespace fad
