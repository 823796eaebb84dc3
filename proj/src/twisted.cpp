#include "fad/twisted.hpp"

#include <functional>
#include <set>

namespace fad {

// ---- F_p helpers ----------------------------------------------------------

namespace {

long pmod(long a, long p) { return ((a % p) + p) % p; }

long p_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = pmod(a, p);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return pmod(t, p);
}

using PPoly = std::vector<long>;  // over F_p, low-to-high

void pp_trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pp_mul(const PPoly& a, const PPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    pp_trim(c);
    return c;
}

PPoly pp_rem(PPoly a, const PPoly& b, long p) {
    long db = static_cast<long>(b.size()) - 1;
    long inv = p_inv(b.back(), p);
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long k = static_cast<long>(a.size()) - 1 - db;
        long f = a.back() * inv % p;
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(k + i)] = pmod(a[static_cast<size_t>(k + i)] - f * b[static_cast<size_t>(i)], p);
        pp_trim(a);
    }
    return a;
}

PPoly pp_powmod_x(long e_p, long reps, const PPoly& mod, long p) {
    // x^(p^reps) mod 'mod'
    PPoly r = {0, 1};
    for (long i = 0; i < reps; ++i) {
        // r = r^p mod mod
        PPoly acc = {1};
        PPoly base = r;
        long e = e_p;
        while (e > 0) {
            if (e & 1) acc = pp_rem(pp_mul(acc, base, p), mod, p);
            e >>= 1;
            if (e) base = pp_rem(pp_mul(base, base, p), mod, p);
        }
        r = acc;
    }
    return r;
}

PPoly pp_gcd(PPoly a, PPoly b, long p) {
    while (!b.empty()) {
        PPoly r = pp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool pp_is_irreducible(const PPoly& f, long p) {
    long nu = static_cast<long>(f.size()) - 1;
    if (nu < 1) return false;
    if (nu == 1) return true;
    // x^(p^nu) == x mod f, and x^(p^(nu/q)) != x for prime divisors q of nu
    PPoly xq = pp_powmod_x(p, nu, f, p);
    PPoly x = pp_rem({0, 1}, f, p);
    if (xq != x) return false;
    for (long q = 2; q <= nu; ++q) {
        if (nu % q != 0 || factorize(q).size() != 1 || factorize(q).begin()->second != 1) continue;
        if (q != factorize(q).begin()->first) continue;
        PPoly xr = pp_powmod_x(p, nu / q, f, p);
        PPoly diff = xr;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = pmod(diff[1] - 1, p);
        pp_trim(diff);
        PPoly g = pp_gcd(f, diff, p);
        if (static_cast<long>(g.size()) - 1 > 0) return false;
    }
    return true;
}

std::vector<std::vector<long>> p_mat_inverse(const std::vector<std::vector<long>>& M, long p) {
    long n = static_cast<long>(M.size());
    std::vector<std::vector<long>> A(M);
    std::vector<std::vector<long>> I(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
    for (long i = 0; i < n; ++i) I[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long r = c; r < n; ++r)
            if (A[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) { piv = r; break; }
        if (piv < 0) throw argument_error("p_mat_inverse: singular");
        std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(c)]);
        std::swap(I[static_cast<size_t>(piv)], I[static_cast<size_t>(c)]);
        long inv = p_inv(A[static_cast<size_t>(c)][static_cast<size_t>(c)], p);
        for (long j = 0; j < n; ++j) {
            A[static_cast<size_t>(c)][static_cast<size_t>(j)] = A[static_cast<size_t>(c)][static_cast<size_t>(j)] * inv % p;
            I[static_cast<size_t>(c)][static_cast<size_t>(j)] = I[static_cast<size_t>(c)][static_cast<size_t>(j)] * inv % p;
        }
        for (long r = 0; r < n; ++r) {
            if (r == c || A[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
            long f = A[static_cast<size_t>(r)][static_cast<size_t>(c)];
            for (long j = 0; j < n; ++j) {
                A[static_cast<size_t>(r)][static_cast<size_t>(j)] = pmod(A[static_cast<size_t>(r)][static_cast<size_t>(j)] - f * A[static_cast<size_t>(c)][static_cast<size_t>(j)], p);
                I[static_cast<size_t>(r)][static_cast<size_t>(j)] = pmod(I[static_cast<size_t>(r)][static_cast<size_t>(j)] - f * I[static_cast<size_t>(c)][static_cast<size_t>(j)], p);
            }
        }
    }
    return I;
}

} // namespace

// ---- FqField ---------------------------------------------------------------

FqField::FqField(long p_, long nu_, std::vector<long> modulus_)
    : p(p_), nu(nu_), modulus(std::move(modulus_)) {
    if (!is_prime(Int(p))) throw argument_error("FqField: p not prime");
    if (nu < 1) throw argument_error("FqField: nu must be >= 1");
    if (static_cast<long>(modulus.size()) != nu + 1 || modulus.back() != 1)
        throw argument_error("FqField: modulus must be monic of degree nu");
    for (auto& x : modulus) x = pmod(x, p);
    if (!pp_is_irreducible(modulus, p)) throw argument_error("FqField: modulus not irreducible");
    // Frobenius matrix: column i = x^(i*p) mod modulus
    frob.assign(static_cast<size_t>(nu), std::vector<long>(static_cast<size_t>(nu), 0));
    for (long i = 0; i < nu; ++i) {
        PPoly xi(static_cast<size_t>(i) + 1, 0);
        xi[static_cast<size_t>(i)] = 1;
        // (x^i)^p = x^(i*p) mod modulus
        PPoly acc = {1};
        for (long k = 0; k < i * p; ++k) {
            acc.insert(acc.begin(), 0);
            acc = pp_rem(acc, modulus, p);
        }
        for (long r = 0; r < nu; ++r)
            frob[static_cast<size_t>(r)][static_cast<size_t>(i)] =
                r < static_cast<long>(acc.size()) ? acc[static_cast<size_t>(r)] : 0;
    }
    frob_inv = p_mat_inverse(frob, p);
}

std::vector<long> FqField::default_modulus(long p, long nu) {
    if (nu == 1) return {0, 1};  // F_p itself: modulus x (placeholder, never used)
    // smallest monic irreducible when the lower coefficients are read as a
    // base-p integer c_0 + c_1 p + ... (deterministic, Conway-free)
    std::vector<long> f(static_cast<size_t>(nu) + 1, 0);
    f[static_cast<size_t>(nu)] = 1;
    for (unsigned long long v = 1;; ++v) {
        unsigned long long x = v;
        for (long i = 0; i < nu; ++i) {
            f[static_cast<size_t>(i)] = static_cast<long>(x % static_cast<unsigned long long>(p));
            x /= static_cast<unsigned long long>(p);
        }
        if (x > 0) throw budget_error("default_modulus: search space exhausted");
        if (f[0] != 0 && pp_is_irreducible(f, p)) return f;
    }
}

// ---- Fq elements -----------------------------------------------------------

FqElem fq_zero(const FqPtr& F) { return FqElem{std::vector<long>(static_cast<size_t>(F->nu), 0)}; }

FqElem fq_one(const FqPtr& F) {
    FqElem e = fq_zero(F);
    e.c[0] = 1;
    return e;
}

FqElem fq_from_int(const FqPtr& F, long v) {
    FqElem e = fq_zero(F);
    e.c[0] = pmod(v, F->p);
    return e;
}

FqElem fq_from_coords(const FqPtr& F, std::vector<long> coords) {
    if (static_cast<long>(coords.size()) > F->nu) throw argument_error("fq_from_coords: too many coordinates");
    FqElem e = fq_zero(F);
    for (size_t i = 0; i < coords.size(); ++i) e.c[i] = pmod(coords[i], F->p);
    return e;
}

bool fq_is_zero(const FqElem& a) {
    for (long x : a.c)
        if (x != 0) return false;
    return true;
}

bool fq_eq(const FqElem& a, const FqElem& b) { return a.c == b.c; }

FqElem fq_add(const FqPtr& F, const FqElem& a, const FqElem& b) {
    FqElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = pmod(r.c[i] + b.c[i], F->p);
    return r;
}

FqElem fq_sub(const FqPtr& F, const FqElem& a, const FqElem& b) {
    FqElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = pmod(r.c[i] - b.c[i], F->p);
    return r;
}

FqElem fq_neg(const FqPtr& F, const FqElem& a) {
    FqElem r = a;
    for (auto& x : r.c) x = pmod(-x, F->p);
    return r;
}

FqElem fq_mul(const FqPtr& F, const FqElem& a, const FqElem& b) {
    if (F->nu == 1) {
        FqElem r = fq_zero(F);
        r.c[0] = a.c[0] * b.c[0] % F->p;
        return r;
    }
    PPoly pa(a.c), pb(b.c);
    pp_trim(pa);
    pp_trim(pb);
    PPoly prod = pp_rem(pp_mul(pa, pb, F->p), F->modulus, F->p);
    FqElem r = fq_zero(F);
    for (size_t i = 0; i < prod.size(); ++i) r.c[i] = prod[i];
    return r;
}

FqElem fq_inv(const FqPtr& F, const FqElem& a) {
    if (fq_is_zero(a)) throw argument_error("fq_inv: zero");
    if (F->nu == 1) {
        FqElem r = fq_zero(F);
        r.c[0] = p_inv(a.c[0], F->p);
        return r;
    }
    // extended Euclid in F_p[x]
    PPoly r0 = F->modulus, r1(a.c);
    pp_trim(r1);
    PPoly t0 = {}, t1 = {1};
    long p = F->p;
    while (!r1.empty() && static_cast<long>(r1.size()) - 1 > 0) {
        // q = r0 / r1
        PPoly q;
        {
            PPoly aa = r0;
            long db = static_cast<long>(r1.size()) - 1;
            long inv = p_inv(r1.back(), p);
            q.assign(aa.size() >= r1.size() ? aa.size() - r1.size() + 1 : 1, 0);
            while (static_cast<long>(aa.size()) - 1 >= db && !aa.empty()) {
                long k = static_cast<long>(aa.size()) - 1 - db;
                long f = aa.back() * inv % p;
                q[static_cast<size_t>(k)] = f;
                for (long i = 0; i <= db; ++i)
                    aa[static_cast<size_t>(k + i)] = pmod(aa[static_cast<size_t>(k + i)] - f * r1[static_cast<size_t>(i)], p);
                pp_trim(aa);
            }
            pp_trim(q);
            r0 = std::move(aa);
        }
        std::swap(r0, r1);
        // t: t0, t1 = t1, t0 - q*t1
        PPoly qt = pp_mul(q, t1, p);
        PPoly t2(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = pmod(t2[i] - qt[i], p);
        pp_trim(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw argument_error("fq_inv: not invertible");
    long inv = p_inv(r1[0], p);
    FqElem out = fq_zero(F);
    for (size_t i = 0; i < t1.size(); ++i) out.c[i] = t1[i] * inv % p;
    return out;
}

FqElem fq_frob(const FqPtr& F, const FqElem& a, long k) {
    k = ((k % F->nu) + F->nu) % F->nu;
    FqElem r = a;
    for (long step = 0; step < k; ++step) {
        FqElem s = fq_zero(F);
        for (long i = 0; i < F->nu; ++i)
            for (long j = 0; j < F->nu; ++j)
                s.c[static_cast<size_t>(i)] =
                    pmod(s.c[static_cast<size_t>(i)] + F->frob[static_cast<size_t>(i)][static_cast<size_t>(j)] * r.c[static_cast<size_t>(j)], F->p);
        r = s;
    }
    return r;
}

FqElem fq_frob_inv(const FqPtr& F, const FqElem& a, long k) {
    k = ((k % F->nu) + F->nu) % F->nu;
    return fq_frob(F, a, F->nu - k == F->nu ? 0 : F->nu - k);
}

// ---- TwistedPoly -----------------------------------------------------------

void TwistedPoly::trim() {
    while (!c.empty() && fq_is_zero(c.back())) c.pop_back();
}

long TwistedPoly::val() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!fq_is_zero(c[i])) return static_cast<long>(i);
    return -1;
}

TwistedPoly tp_zero(const FqPtr& F) { return TwistedPoly{F, {}}; }

TwistedPoly tp_const(const FqPtr& F, const FqElem& a) {
    TwistedPoly t{F, {a}};
    t.trim();
    return t;
}

TwistedPoly tp_phi_power(const FqPtr& F, const FqElem& a, long k) {
    TwistedPoly t{F, std::vector<FqElem>(static_cast<size_t>(k) + 1, fq_zero(F))};
    t.c[static_cast<size_t>(k)] = a;
    t.trim();
    return t;
}

TwistedPoly tp_add(const TwistedPoly& a, const TwistedPoly& b) {
    TwistedPoly r{a.F, std::vector<FqElem>(std::max(a.c.size(), b.c.size()), fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = fq_add(a.F, r.c[i], b.c[i]);
    r.trim();
    return r;
}

TwistedPoly tp_sub(const TwistedPoly& a, const TwistedPoly& b) {
    TwistedPoly r{a.F, std::vector<FqElem>(std::max(a.c.size(), b.c.size()), fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = fq_sub(a.F, r.c[i], b.c[i]);
    r.trim();
    return r;
}

TwistedPoly tp_mul(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.is_zero() || b.is_zero()) return tp_zero(a.F);
    TwistedPoly r{a.F, std::vector<FqElem>(a.c.size() + b.c.size() - 1, fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (fq_is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (fq_is_zero(b.c[j])) continue;
            // (a phi^i)(b phi^j) = a * b^(p^i) phi^(i+j)
            FqElem term = fq_mul(a.F, a.c[i], fq_frob(a.F, b.c[j], static_cast<long>(i)));
            r.c[i + j] = fq_add(a.F, r.c[i + j], term);
        }
    }
    r.trim();
    return r;
}

bool tp_eq(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!fq_eq(a.c[i], b.c[i])) return false;
    return true;
}

std::pair<TwistedPoly, TwistedPoly> tp_right_divmod(const TwistedPoly& a, const TwistedPoly& b) {
    if (b.is_zero()) throw argument_error("tp_right_divmod: division by zero");
    TwistedPoly q = tp_zero(a.F), r = a;
    long db = b.deg();
    const FqElem& bl = b.c[static_cast<size_t>(db)];
    while (!r.is_zero() && r.deg() >= db) {
        long k = r.deg() - db;
        // q_k * b_l^(p^k) = r_lead  =>  q_k = r_lead * (b_l^(p^k))^-1
        FqElem coef = fq_mul(a.F, r.c[static_cast<size_t>(r.deg())],
                             fq_inv(a.F, fq_frob(a.F, bl, k)));
        TwistedPoly term = tp_phi_power(a.F, coef, k);
        q = tp_add(q, term);
        r = tp_sub(r, tp_mul(term, b));
    }
    return {q, r};
}

std::pair<TwistedPoly, TwistedPoly> tp_left_divmod(const TwistedPoly& a, const TwistedPoly& b) {
    if (b.is_zero()) throw argument_error("tp_left_divmod: division by zero");
    TwistedPoly q = tp_zero(a.F), r = a;
    long db = b.deg();
    const FqElem& bl = b.c[static_cast<size_t>(db)];
    while (!r.is_zero() && r.deg() >= db) {
        long k = r.deg() - db;
        // b_l * q_k^(p^db) = r_lead  =>  q_k = (b_l^-1 r_lead)^(p^-db)
        FqElem coef = fq_frob_inv(a.F, fq_mul(a.F, fq_inv(a.F, bl), r.c[static_cast<size_t>(r.deg())]), db);
        TwistedPoly term = tp_phi_power(a.F, coef, k);
        q = tp_add(q, term);
        r = tp_sub(r, tp_mul(b, term));
    }
    return {q, r};
}

// ---- TwistedMatrix ---------------------------------------------------------

TwistedMatrix tm_zero(const FqPtr& F, long n) {
    TwistedMatrix m{F, n, std::vector<TwistedPoly>(static_cast<size_t>(n * n), tp_zero(F))};
    return m;
}

TwistedMatrix tm_identity(const FqPtr& F, long n) {
    TwistedMatrix m = tm_zero(F, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = tp_const(F, fq_one(F));
    return m;
}

TwistedMatrix tm_add(const TwistedMatrix& a, const TwistedMatrix& b) {
    TwistedMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = tp_add(a.e[i], b.e[i]);
    return r;
}

TwistedMatrix tm_sub(const TwistedMatrix& a, const TwistedMatrix& b) {
    TwistedMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = tp_sub(a.e[i], b.e[i]);
    return r;
}

TwistedMatrix tm_mul(const TwistedMatrix& a, const TwistedMatrix& b) {
    TwistedMatrix r = tm_zero(a.F, a.n);
    for (long i = 0; i < a.n; ++i)
        for (long k = 0; k < a.n; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (long j = 0; j < a.n; ++j)
                r.at(i, j) = tp_add(r.at(i, j), tp_mul(a.at(i, k), b.at(k, j)));
        }
    return r;
}

TwistedMatrix tm_pow(const TwistedMatrix& a, unsigned long k) {
    TwistedMatrix r = tm_identity(a.F, a.n);
    TwistedMatrix b = a;
    while (k > 0) {
        if (k & 1) r = tm_mul(r, b);
        k >>= 1;
        if (k) b = tm_mul(b, b);
    }
    return r;
}

TwistedMatrix tm_scalar(const FqPtr& F, long n, const TwistedPoly& d) {
    TwistedMatrix m = tm_zero(F, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = d;
    return m;
}

bool tm_eq(const TwistedMatrix& a, const TwistedMatrix& b) {
    if (a.n != b.n) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!tp_eq(a.e[i], b.e[i])) return false;
    return true;
}

TwistedSmith tm_smith(const TwistedMatrix& tau) {
    const FqPtr& F = tau.F;
    long n = tau.n;
    TwistedSmith S;
    S.d = tau;
    S.u = tm_identity(F, n);
    S.v = tm_identity(F, n);
    S.u_inv = tm_identity(F, n);
    S.v_inv = tm_identity(F, n);
    bool diagonal = true;
    for (long i = 0; i < n && diagonal; ++i)
        for (long j = 0; j < n && diagonal; ++j)
            if (i != j && !tau.at(i, j).is_zero()) diagonal = false;
    if (diagonal) return S;
    TwistedMatrix& A = S.d;

    auto row_swap = [&](long i, long j) {
        for (long k = 0; k < n; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (long k = 0; k < n; ++k) std::swap(S.u.at(i, k), S.u.at(j, k));
        for (long k = 0; k < n; ++k) std::swap(S.u_inv.at(k, i), S.u_inv.at(k, j));
    };
    auto col_swap = [&](long i, long j) {
        for (long k = 0; k < n; ++k) std::swap(A.at(k, i), A.at(k, j));
        for (long k = 0; k < n; ++k) std::swap(S.v.at(k, i), S.v.at(k, j));
        for (long k = 0; k < n; ++k) std::swap(S.v_inv.at(i, k), S.v_inv.at(j, k));
    };
    // row dst -= f * row src (f acts on the left)
    auto row_sub = [&](long dst, long src, const TwistedPoly& f) {
        for (long k = 0; k < n; ++k) A.at(dst, k) = tp_sub(A.at(dst, k), tp_mul(f, A.at(src, k)));
        for (long k = 0; k < n; ++k) S.u.at(dst, k) = tp_sub(S.u.at(dst, k), tp_mul(f, S.u.at(src, k)));
        for (long k = 0; k < n; ++k) S.u_inv.at(k, src) = tp_add(S.u_inv.at(k, src), tp_mul(S.u_inv.at(k, dst), f));
    };
    // col dst -= col src * f (f acts on the right)
    auto col_sub = [&](long dst, long src, const TwistedPoly& f) {
        for (long k = 0; k < n; ++k) A.at(k, dst) = tp_sub(A.at(k, dst), tp_mul(A.at(k, src), f));
        for (long k = 0; k < n; ++k) S.v.at(k, dst) = tp_sub(S.v.at(k, dst), tp_mul(S.v.at(k, src), f));
        for (long k = 0; k < n; ++k) S.v_inv.at(src, k) = tp_add(S.v_inv.at(src, k), tp_mul(f, S.v_inv.at(dst, k)));
    };

    for (long k = 0; k < n; ++k) {
        for (;;) {
            long pi = -1, pj = -1, best = -1;
            for (long i = k; i < n; ++i)
                for (long j = k; j < n; ++j) {
                    if (A.at(i, j).is_zero()) continue;
                    long d = A.at(i, j).deg();
                    if (pi < 0 || d < best) { best = d; pi = i; pj = j; }
                }
            if (pi < 0) break;  // trailing block zero
            if (pi != k) row_swap(k, pi);
            if (pj != k) col_swap(k, pj);
            bool clean = true;
            for (long i = k + 1; i < n; ++i) {
                if (A.at(i, k).is_zero()) continue;
                auto [q, r] = tp_right_divmod(A.at(i, k), A.at(k, k));
                row_sub(i, k, q);
                (void)r;
                if (!A.at(i, k).is_zero()) clean = false;
            }
            for (long j = k + 1; j < n; ++j) {
                if (A.at(k, j).is_zero()) continue;
                auto [q, r] = tp_left_divmod(A.at(k, j), A.at(k, k));
                col_sub(j, k, q);
                (void)r;
                if (!A.at(k, j).is_zero()) clean = false;
            }
            if (clean) break;
        }
    }
    return S;
}

DdetProfile ddet_profile(const TwistedMatrix& tau) {
    TwistedSmith S = tm_smith(tau);
    DdetProfile out;
    for (long i = 0; i < tau.n; ++i) {
        const TwistedPoly& d = S.d.at(i, i);
        if (d.is_zero()) {
            out.singular = true;
            return out;
        }
        out.degphi += d.deg();
        out.vphi += d.val();
    }
    return out;
}

// ---- commutative embedding -------------------------------------------------

void FqPoly::trim() {
    while (!c.empty() && fq_is_zero(c.back())) c.pop_back();
}

long fqp_deg(const FqPoly& a) { return a.deg(); }

namespace {

FqPoly fqp_zero(const FqPtr& F) { return FqPoly{F, {}}; }

FqPoly fqp_const(const FqPtr& F, const FqElem& a) {
    FqPoly r{F, {a}};
    r.trim();
    return r;
}

FqPoly fqp_add(const FqPoly& a, const FqPoly& b) {
    FqPoly r{a.F, std::vector<FqElem>(std::max(a.c.size(), b.c.size()), fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = fq_add(a.F, r.c[i], b.c[i]);
    r.trim();
    return r;
}

FqPoly fqp_sub(const FqPoly& a, const FqPoly& b) {
    FqPoly r{a.F, std::vector<FqElem>(std::max(a.c.size(), b.c.size()), fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = fq_sub(a.F, r.c[i], b.c[i]);
    r.trim();
    return r;
}

FqPoly fqp_mul(const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return fqp_zero(a.F);
    FqPoly r{a.F, std::vector<FqElem>(a.c.size() + b.c.size() - 1, fq_zero(a.F))};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (fq_is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = fq_add(a.F, r.c[i + j], fq_mul(a.F, a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

FqPoly fqp_divexact(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw argument_error("fqp_divexact: zero divisor");
    FqPoly r = a, q{a.F, {}};
    q.c.assign(a.c.size(), fq_zero(a.F));
    FqElem binv = fq_inv(a.F, b.c[static_cast<size_t>(b.deg())]);
    while (!r.is_zero() && r.deg() >= b.deg()) {
        long k = r.deg() - b.deg();
        FqElem f = fq_mul(a.F, r.c[static_cast<size_t>(r.deg())], binv);
        q.c[static_cast<size_t>(k)] = f;
        for (long i = 0; i <= b.deg(); ++i) {
            FqElem t = fq_mul(a.F, f, b.c[static_cast<size_t>(i)]);
            r.c[static_cast<size_t>(k + i)] = fq_sub(a.F, r.c[static_cast<size_t>(k + i)], t);
        }
        r.trim();
    }
    if (!r.is_zero()) throw argument_error("fqp_divexact: inexact");
    q.trim();
    return q;
}

} // namespace

FqPolyMatrix iota_embed(const TwistedMatrix& tau) {
    const FqPtr& F = tau.F;
    long nu = F->nu, r = tau.n;
    FqPolyMatrix M{F, r * nu, std::vector<FqPoly>(static_cast<size_t>(r * nu * r * nu), fqp_zero(F))};
    for (long I = 0; I < r; ++I)
        for (long J = 0; J < r; ++J) {
            const TwistedPoly& d = tau.at(I, J);
            // delta = sum_i phi^i delta_i, delta_i in F_q[T]:
            // delta_i[T^t] = frob^{-i}(coeff of phi^(i+nu t))
            std::vector<FqPoly> comp(static_cast<size_t>(nu), fqp_zero(F));
            for (long m = 0; m <= d.deg(); ++m) {
                if (fq_is_zero(d.c[static_cast<size_t>(m)])) continue;
                long i = m % nu, t = m / nu;
                FqElem v = fq_frob_inv(F, d.c[static_cast<size_t>(m)], i);
                auto& ci = comp[static_cast<size_t>(i)];
                if (static_cast<long>(ci.c.size()) <= t) ci.c.resize(static_cast<size_t>(t) + 1, fq_zero(F));
                ci.c[static_cast<size_t>(t)] = fq_add(F, ci.c[static_cast<size_t>(t)], v);
            }
            for (auto& cpoly : comp) cpoly.trim();
            // block entry (k, j) = F^{-j}(delta_{k-j})        if k >= j
            //                    = T * F^{-j}(delta_{nu+k-j}) otherwise
            for (long k = 0; k < nu; ++k)
                for (long j = 0; j < nu; ++j) {
                    long idx = k - j;
                    bool wrap = idx < 0;
                    if (wrap) idx += nu;
                    FqPoly entry = comp[static_cast<size_t>(idx)];
                    // apply F^{-j} coefficientwise
                    for (auto& cc : entry.c) cc = fq_frob_inv(F, cc, j);
                    if (wrap) {
                        entry.c.insert(entry.c.begin(), fq_zero(F));  // * T
                        entry.trim();
                    }
                    M.at(I * nu + k, J * nu + j) = entry;
                }
        }
    return M;
}

FqPoly fqp_det(const FqPolyMatrix& Min) {
    long n = Min.n;
    if (n == 0) return fqp_const(Min.F, fq_one(Min.F));
    FqPolyMatrix M = Min;
    FqPoly prev = fqp_const(M.F, fq_one(M.F));
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (M.at(k, k).is_zero()) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (!M.at(i, k).is_zero()) { piv = i; break; }
            if (piv < 0) return fqp_zero(M.F);
            for (long j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                FqPoly t = fqp_sub(fqp_mul(M.at(i, j), M.at(k, k)), fqp_mul(M.at(i, k), M.at(k, j)));
                M.at(i, j) = fqp_divexact(t, prev);
            }
            M.at(i, k) = fqp_zero(M.F);
        }
        prev = M.at(k, k);
    }
    FqPoly d = M.at(n - 1, n - 1);
    if (sign < 0) {
        for (auto& cc : d.c) cc = fq_neg(M.F, cc);
    }
    return d;
}

bool is_nonsingular(const TwistedMatrix& sigma) {
    long d = -1;
    for (auto& e : sigma.e) d = std::max(d, e.deg());
    if (d < 0) throw argument_error("is_nonsingular: zero matrix");
    const FqPtr& F = sigma.F;
    long n = sigma.n;
    std::vector<std::vector<FqElem>> lead(static_cast<size_t>(n),
                                          std::vector<FqElem>(static_cast<size_t>(n), fq_zero(F)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (sigma.at(i, j).deg() == d) lead[static_cast<size_t>(i)][static_cast<size_t>(j)] = sigma.at(i, j).c[static_cast<size_t>(d)];
    // Gaussian elimination over F_q
    long rank = 0;
    auto A = lead;
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long r2 = rank; r2 < n; ++r2)
            if (!fq_is_zero(A[static_cast<size_t>(r2)][static_cast<size_t>(c)])) { piv = r2; break; }
        if (piv < 0) continue;
        std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(rank)]);
        FqElem inv = fq_inv(F, A[static_cast<size_t>(rank)][static_cast<size_t>(c)]);
        for (long j = 0; j < n; ++j) A[static_cast<size_t>(rank)][static_cast<size_t>(j)] = fq_mul(F, A[static_cast<size_t>(rank)][static_cast<size_t>(j)], inv);
        for (long r2 = 0; r2 < n; ++r2) {
            if (r2 == rank) continue;
            FqElem f = A[static_cast<size_t>(r2)][static_cast<size_t>(c)];
            if (fq_is_zero(f)) continue;
            for (long j = 0; j < n; ++j)
                A[static_cast<size_t>(r2)][static_cast<size_t>(j)] =
                    fq_sub(F, A[static_cast<size_t>(r2)][static_cast<size_t>(j)], fq_mul(F, f, A[static_cast<size_t>(rank)][static_cast<size_t>(j)]));
        }
        ++rank;
    }
    return rank == n;
}

std::vector<std::vector<FqElem>> reduce_mod_phi(const TwistedMatrix& sigma) {
    const FqPtr& F = sigma.F;
    long n = sigma.n;
    std::vector<std::vector<FqElem>> out(static_cast<size_t>(n),
                                         std::vector<FqElem>(static_cast<size_t>(n), fq_zero(F)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!sigma.at(i, j).is_zero() && !fq_is_zero(sigma.at(i, j).c[0]))
                out[static_cast<size_t>(i)][static_cast<size_t>(j)] = sigma.at(i, j).c[0];
    return out;
}

namespace {

// F_p-realization of the F_q-matrix sbar (r x r) as an (r*nu x r*nu) integer
// matrix with entries in [0, p); used to read off eigenvalue orders.
IntMatrix fp_realization(const FqPtr& F, const std::vector<std::vector<FqElem>>& sbar) {
    long n = static_cast<long>(sbar.size());
    long nu = F->nu;
    IntMatrix M(n * nu, n * nu);
    for (long I = 0; I < n; ++I)
        for (long J = 0; J < n; ++J) {
            const FqElem& a = sbar[static_cast<size_t>(I)][static_cast<size_t>(J)];
            // column j of the block: a * x^j mod modulus
            for (long j = 0; j < nu; ++j) {
                PPoly xj(static_cast<size_t>(j) + 1, 0);
                xj[static_cast<size_t>(j)] = 1;
                PPoly av(a.c);
                pp_trim(av);
                PPoly prod = pp_mul(av, xj, F->p);
                if (nu > 1) prod = pp_rem(prod, F->modulus, F->p);
                for (long i = 0; i < nu; ++i)
                    M(I * nu + i, J * nu + j) =
                        i < static_cast<long>(prod.size()) ? prod[static_cast<size_t>(i)] : 0;
            }
        }
    return M;
}

} // namespace

GcdSeq insep_profile(const TwistedMatrix& sigma) {
    const FqPtr& F = sigma.F;
    auto sbar = reduce_mod_phi(sigma);
    IntMatrix M = fp_realization(F, sbar);
    ZPoly cp = charpoly(M);
    // reduce coefficients mod p, factor over F_p, collect multiplicative
    // orders of the nonzero eigenvalues
    long p = F->p;
    PPoly cpp(cp.c.size());
    for (size_t i = 0; i < cp.c.size(); ++i) {
        Int r = cp.c[i] % p;
        if (r < 0) r += p;
        cpp[i] = static_cast<long>(r.get_si());
    }
    pp_trim(cpp);
    // strip x^e
    size_t shift = 0;
    while (shift < cpp.size() && cpp[shift] == 0) ++shift;
    PPoly unitpart(cpp.begin() + static_cast<long>(shift), cpp.end());
    std::set<long> orders;
    // collect squarefree pieces whose roots cover all roots of unitpart;
    // in characteristic p this needs both the gcd split and the x^p
    // contraction (which preserves root orders, p being coprime to them)
    std::vector<PPoly> pieces;
    std::function<void(PPoly)> collect = [&](PPoly f) {
        pp_trim(f);
        if (static_cast<long>(f.size()) - 1 <= 0) return;
        PPoly der(f.size() - 1, 0);
        for (size_t i = 1; i < f.size(); ++i)
            der[i - 1] = f[i] * static_cast<long>(i % static_cast<size_t>(p)) % p;
        pp_trim(der);
        if (der.empty()) {
            PPoly h;
            for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p)) h.push_back(f[i]);
            collect(h);
            return;
        }
        PPoly g = pp_gcd(f, der, p);
        if (static_cast<long>(g.size()) - 1 == 0) {
            pieces.push_back(f);
            return;
        }
        // f/g is squarefree; g carries the repeated roots
        PPoly q;
        {
            PPoly aa = f;
            long db = static_cast<long>(g.size()) - 1;
            long gi = p_inv(g.back(), p);
            q.assign(aa.size() - g.size() + 1, 0);
            while (static_cast<long>(aa.size()) - 1 >= db && !aa.empty()) {
                long k = static_cast<long>(aa.size()) - 1 - db;
                long fq = aa.back() * gi % p;
                q[static_cast<size_t>(k)] = fq;
                for (long i = 0; i <= db; ++i)
                    aa[static_cast<size_t>(k + i)] = pmod(aa[static_cast<size_t>(k + i)] - fq * g[static_cast<size_t>(i)], p);
                pp_trim(aa);
            }
            pp_trim(q);
        }
        if (static_cast<long>(q.size()) - 1 > 0) pieces.push_back(q);
        collect(g);
    };
    collect(unitpart);
    for (const PPoly& sf : pieces) {
        // order of x in F_p[x]/(sf), capped; every root order divides it
        PPoly x = {0, 1};
        PPoly acc = pp_rem(x, sf, p);
        long cap = 1000000;
        long ord = 0;
        PPoly one = {1};
        PPoly cur = acc;
        for (long k = 1; k <= cap; ++k) {
            if (cur == one) { ord = k; break; }
            cur = pp_rem(pp_mul(cur, acc, p), sf, p);
        }
        if (ord == 0) throw budget_error("insep_profile: order cap exceeded");
        for (long d : divisors(ord)) {
            if (d % p == 0) continue;
            ZPoly cyc = cyclotomic(d);
            PPoly cycp(cyc.c.size());
            for (size_t i = 0; i < cyc.c.size(); ++i) {
                Int r = cyc.c[i] % p;
                if (r < 0) r += p;
                cycp[i] = static_cast<long>(r.get_si());
            }
            pp_trim(cycp);
            PPoly g = pp_gcd(sf, cycp, p);
            if (static_cast<long>(g.size()) - 1 > 0) orders.insert(d);
        }
    }
    // t^ins_n = sum over d | n of v_phi(ddet(Phi_d(sigma)))
    std::map<long, Rat> dmap;
    for (long d : orders) {
        ZPoly cyc = cyclotomic(d);
        // evaluate Phi_d at sigma (integer coefficients mod p act as scalars)
        TwistedMatrix acc = tm_zero(sigma.F, sigma.n);
        TwistedMatrix pw = tm_identity(sigma.F, sigma.n);
        for (long i = 0; i <= cyc.deg(); ++i) {
            Int ci = cyc.coeff(i) % F->p;
            if (ci < 0) ci += F->p;
            long cl = static_cast<long>(ci.get_si());
            if (cl != 0) {
                TwistedMatrix term = pw;
                for (auto& e : term.e) {
                    TwistedPoly scaled = tp_mul(tp_const(sigma.F, fq_from_int(sigma.F, cl)), e);
                    e = scaled;
                }
                acc = tm_add(acc, term);
            }
            if (i < cyc.deg()) pw = tm_mul(pw, sigma);
        }
        DdetProfile prof = ddet_profile(acc);
        if (prof.singular)
            throw not_confined_error("insep_profile: Phi_d(sigma) is not an isogeny");
        if (prof.vphi > 0) dmap[d] = Rat(prof.vphi);
    }
    return GcdSeq::from_divisor_sums(dmap);
}

DegProfile deg_profile(const TwistedMatrix& sigma) {
    const FqPtr& F = sigma.F;
    long p = F->p;
    FqPolyMatrix M = iota_embed(sigma);
    long n = M.n;
    // confinedness: no constant root-of-unity eigenvalue of M; equivalently
    // the gcd over F_q[x] of the T-coefficients of charpoly(M) is c*x^k.
    // Cheaper equivalent at our scale: ddet(sigma^m - 1) != 0 on the window,
    // checked as we go (a zero diagonal throws below).

    // slope a = max_k deg_T of the k-th elementary symmetric function of M
    // (cancellation between principal minors matters, so sum before deg)
    long a = 0;
    {
        std::vector<long> idx;
        FqPoly sum = FqPoly{F, {}};
        std::function<void(long, long)> rec = [&](long start, long k) {
            if (k == 0) {
                FqPolyMatrix sub{F, static_cast<long>(idx.size()), {}};
                sub.e.assign(idx.size() * idx.size(), FqPoly{F, {}});
                for (size_t i = 0; i < idx.size(); ++i)
                    for (size_t j = 0; j < idx.size(); ++j)
                        sub.e[i * idx.size() + j] = M.at(idx[i], idx[j]);
                sum = fqp_add(sum, fqp_det(sub));
                return;
            }
            for (long i = start; i <= n - k; ++i) {
                idx.push_back(i);
                rec(i + 1, k - 1);
                idx.pop_back();
            }
        };
        for (long k = 1; k <= n; ++k) {
            sum = FqPoly{F, {}};
            rec(0, k);
            a = std::max(a, sum.deg());
        }
    }

    // w(m) = deg_phi ddet(sigma^m - 1), exact; t_m = a*m - w(m) for p coprime m.
    // Powers are kept incrementally and w-values cached: the verification
    // window below revisits the same indices.
    TwistedMatrix cur = tm_identity(F, sigma.n);
    long cur_m = 0;
    std::map<long, long> wcache;
    auto w_of = [&](long m) {
        auto it = wcache.find(m);
        if (it != wcache.end()) return it->second;
        if (m < cur_m) {
            cur = tm_pow(sigma, static_cast<unsigned long>(m));
            cur_m = m;
        } else {
            while (cur_m < m) {
                cur = tm_mul(cur, sigma);
                ++cur_m;
            }
        }
        TwistedMatrix P = tm_sub(cur, tm_identity(F, sigma.n));
        DdetProfile prof = ddet_profile(P);
        if (prof.singular)
            throw not_confined_error("deg_profile: sigma^" + std::to_string(m) + " - 1 singular");
        wcache[m] = prof.degphi;
        return prof.degphi;
    };
    long W0 = std::max<long>(40, 6 * sigma.n * F->nu);
    std::map<long, long> tvals;
    for (long m = 1; m <= W0; ++m) {
        if (m % p == 0) continue;
        long t = a * m - w_of(m);
        if (t < 0) throw inconsistency_error("deg_profile: negative t value");
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
    if (varpi == 0) throw budget_error("deg_profile: period not found within window");
    std::map<long, Rat> vals;
    for (long d : divisors(varpi)) vals[d] = Rat(tvals.at(d));
    DegProfile out;
    out.a = a;
    out.t = GcdSeq(varpi, vals);
    // verification of the closed form on n <= 2*varpi*p (stabilization is
    // exact in characteristic p, but the window is pinned by the contract)
    long vmax = 2 * varpi * p;
    if (vmax > 4000) throw budget_error("deg_profile: verification window too large");
    for (long m = 1; m <= vmax; ++m) {
        long ordp = 0, mm = m;
        while (mm % p == 0) { mm /= p; ++ordp; }
        Rat expect = Rat(a) * Rat(m) - out.t.eval(m) * Rat(pow_int(Int(p), static_cast<unsigned long>(ordp)));
        if (Rat(w_of(m)) != expect)
            throw inconsistency_error("deg_profile: closed form fails at n=" + std::to_string(m));
    }
    return out;
}

} // namespace fad
