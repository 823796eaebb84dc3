#include "fad/poly.hpp"

namespace fad {

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a) {
    std::vector<Int> c(a.c);
    for (auto& x : c) x = -x;
    return ZPoly(std::move(c));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] += a.c[i] * b.c[j];
    return ZPoly(std::move(c));
}

ZPoly operator*(const ZPoly& a, const Int& k) {
    if (k == 0) return ZPoly();
    std::vector<Int> c(a.c);
    for (auto& x : c) x *= k;
    return ZPoly(std::move(c));
}

Int content(const ZPoly& a) {
    Int g(0);
    for (auto& x : a.c) g = gcd(g, x);
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    if (a.lead() < 0) g = -g;
    std::vector<Int> c(a.c);
    for (auto& x : c) x /= g;
    return ZPoly(std::move(c));
}

ZPoly derivative(const ZPoly& a) {
    if (a.deg() <= 0) return ZPoly();
    std::vector<Int> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Int(static_cast<long>(i));
    return ZPoly(std::move(c));
}

Int eval(const ZPoly& a, const Int& x) {
    Int r(0);
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

Rat eval(const ZPoly& a, const Rat& x) {
    Rat r(0);
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + Rat(a.c[i]);
    return r;
}

std::pair<ZPoly, ZPoly> divmod_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw argument_error("poly division by zero");
    ZPoly r = a;
    std::vector<Int> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, Int(0));
    while (!r.is_zero() && r.deg() >= b.deg()) {
        Int qq, rr;
        mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), r.lead().get_mpz_t(), b.lead().get_mpz_t());
        if (rr != 0) throw argument_error("divmod_exact: inexact leading division");
        long k = r.deg() - b.deg();
        q[static_cast<size_t>(k)] = qq;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(k) + i] -= qq * b.c[i];
        r.trim();
    }
    return {ZPoly(std::move(q)), r};
}

ZPoly div_exact(const ZPoly& a, const ZPoly& b) {
    auto [q, r] = divmod_exact(a, b);
    if (!r.is_zero()) throw argument_error("div_exact: nonzero remainder");
    return q;
}

ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw argument_error("pseudo_rem by zero");
    ZPoly r = a;
    long db = b.deg();
    if (r.deg() < db) {
        // still scale for PRS sign conventions
        return r;
    }
    long steps = r.deg() - db + 1;
    const Int& lb = b.lead();
    for (long s = 0; s < steps; ++s) {
        if (r.is_zero() || r.deg() < db) {
            // multiply remaining scale
            Int f = pow_int(lb, static_cast<unsigned long>(steps - s));
            for (auto& x : r.c) x *= f;
            break;
        }
        Int lr = r.lead();
        long k = r.deg() - db;
        for (auto& x : r.c) x *= lb;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(k) + i] -= lr * b.c[i];
        r.trim();
    }
    return r;
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    ZPoly f = primitive_part(a), g = primitive_part(b);
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.deg() < g.deg()) std::swap(f, g);
    while (!g.is_zero()) {
        ZPoly r = pseudo_rem(f, g);
        f = g;
        g = primitive_part(r);
    }
    return primitive_part(f);
}

Int resultant(const ZPoly& A, const ZPoly& B) {
    // fraction-free Bareiss on the Sylvester matrix; sizes here stay small
    if (A.is_zero() || B.is_zero()) return Int(0);
    long m = A.deg(), n = B.deg();
    if (m == 0) return pow_int(A.lead(), static_cast<unsigned long>(n));
    if (n == 0) return pow_int(B.lead(), static_cast<unsigned long>(m));
    long N = m + n;
    std::vector<std::vector<Int>> M(static_cast<size_t>(N),
                                    std::vector<Int>(static_cast<size_t>(N), Int(0)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j)
            M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = A.c[static_cast<size_t>(m - j)];
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j)
            M[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = B.c[static_cast<size_t>(n - j)];
    Int prev(1);
    int sign = 1;
    for (long k = 0; k < N - 1; ++k) {
        if (M[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            long piv = -1;
            for (long i = k + 1; i < N; ++i)
                if (M[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) { piv = i; break; }
            if (piv < 0) return Int(0);
            std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(piv)]);
            sign = -sign;
        }
        for (long i = k + 1; i < N; ++i) {
            for (long j = k + 1; j < N; ++j) {
                Int t = M[static_cast<size_t>(i)][static_cast<size_t>(j)] * M[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                        M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] = t / prev;
            }
            M[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
        }
        prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign > 0 ? M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)]
                    : -M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
}

ZPoly squarefree_part(const ZPoly& a) {
    if (a.deg() <= 0) return a.is_zero() ? a : ZPoly::constant(1);
    ZPoly f = primitive_part(a);
    ZPoly g = gcd(f, derivative(f));
    if (g.deg() == 0) return f;
    return primitive_part(div_exact(f, g));
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a) {
    // Yun's algorithm on the primitive part.
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly f = primitive_part(a);
    if (f.deg() <= 0) return out;
    ZPoly fp = derivative(f);
    ZPoly g = gcd(f, fp);
    if (g.deg() == 0) {
        out.push_back({f, 1});
        return out;
    }
    ZPoly w = div_exact(f, g);
    ZPoly y = div_exact(fp, g);
    ZPoly z = y - derivative(w);
    int i = 1;
    while (!z.is_zero()) {
        ZPoly h = gcd(w, z);
        if (h.deg() > 0) out.push_back({h, i});
        w = div_exact(w, h);
        y = div_exact(z, h);
        z = y - derivative(w);
        ++i;
    }
    if (w.deg() > 0) out.push_back({w, i});
    return out;
}

ZPoly cyclotomic(long d) {
    // Phi_d via repeated exact division of x^d - 1.
    std::vector<Int> xn(static_cast<size_t>(d) + 1, Int(0));
    xn[0] = -1;
    xn[static_cast<size_t>(d)] = 1;
    ZPoly num((std::vector<Int>(xn)));
    for (long e : divisors(d)) {
        if (e == d) continue;
        num = div_exact(num, cyclotomic(e));
    }
    return num;
}

ZPoly reciprocal_normalized(const ZPoly& a) {
    if (a.is_zero()) return a;
    std::vector<Int> c(a.c.rbegin(), a.c.rend());
    return primitive_part(ZPoly(std::move(c)));
}

bool is_self_reciprocal(const ZPoly& a) {
    if (a.is_zero()) return false;
    return primitive_part(a) == reciprocal_normalized(a);
}

ZPoly trace_polynomial(const ZPoly& a) {
    // a self-reciprocal of even degree 2m, a(x) = x^m g(x + 1/x).
    if (!is_self_reciprocal(a) || a.deg() % 2 != 0)
        throw argument_error("trace_polynomial: not self-reciprocal of even degree");
    ZPoly f = primitive_part(a);
    long m = f.deg() / 2;
    for (long i = 0; i <= m; ++i)
        if (f.coeff(i) != f.coeff(2 * m - i))
            throw argument_error("trace_polynomial: anti-palindromic input");
    // Write f = sum_{k=0..m} b_k x^{m-k}(x^{2k} + 1)/..; peel with z_k(y).
    // Iteratively: g = sum c_k y^k determined top down.
    ZPoly g;
    ZPoly rem = f;
    for (long k = m; k >= 0; --k) {
        Int ck = rem.coeff(m + k);
        if (ck != 0) {
            // subtract ck * x^{m-k} * (x + 1/x)^k * x^k = ck * x^{m-k} * (x^2+1)^k
            // i.e. ck * x^m * (x+1/x)^k in Laurent terms; as ordinary poly:
            // ck * x^{m-k} * (x^2 + 1)^k ... careful: (x+1/x)^k * x^k = (x^2+1)^k.
            std::vector<Int> binom(static_cast<size_t>(k) + 1, Int(0));
            Int b(1);
            for (long i = 0; i <= k; ++i) {
                binom[static_cast<size_t>(i)] = b;
                b = b * Int(k - i) / Int(i + 1);
            }
            // (x^2+1)^k = sum binom[i] x^{2i}
            std::vector<Int> term(static_cast<size_t>(m - k + 2 * k) + 1, Int(0));
            for (long i = 0; i <= k; ++i) term[static_cast<size_t>(m - k + 2 * i)] += binom[static_cast<size_t>(i)] * ck;
            rem = rem - ZPoly(std::move(term));
            std::vector<Int> gy(static_cast<size_t>(k) + 1, Int(0));
            gy[static_cast<size_t>(k)] = ck;
            g = g + ZPoly(std::move(gy));
        }
    }
    if (!rem.is_zero()) throw inconsistency_error("trace_polynomial: residue nonzero");
    return g;
}

ZPoly power_sum_in_trace(long n) {
    // z_0 = 2, z_1 = y, z_k = y z_{k-1} - z_{k-2}.
    if (n < 0) n = -n;
    ZPoly z0 = ZPoly::constant(2);
    if (n == 0) return z0;
    ZPoly y = ZPoly::x();
    ZPoly z1 = y;
    if (n == 1) return z1;
    for (long k = 2; k <= n; ++k) {
        ZPoly z2 = y * z1 - z0;
        z0 = std::move(z1);
        z1 = std::move(z2);
    }
    return z1;
}

ZPoly compose_xk(const ZPoly& a, long k) {
    if (k <= 0) throw argument_error("compose_xk: k must be positive");
    if (a.is_zero()) return a;
    std::vector<Int> c(static_cast<size_t>(a.deg() * k) + 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i * static_cast<size_t>(k)] = a.c[i];
    return ZPoly(std::move(c));
}

ZPoly scale_arg(const ZPoly& a, const Rat& s) {
    // primitive part of den^deg * a(s*x)
    if (a.is_zero()) return a;
    Int num = s.get_num(), den = s.get_den();
    long d = a.deg();
    std::vector<Int> c(a.c.size());
    for (long i = 0; i <= d; ++i) {
        c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] *
            pow_int(num, static_cast<unsigned long>(i)) *
            pow_int(den, static_cast<unsigned long>(d - i));
    }
    return primitive_part(ZPoly(std::move(c)));
}

ZPoly negate_arg(const ZPoly& a) {
    std::vector<Int> c(a.c);
    for (size_t i = 0; i < c.size(); ++i)
        if (i % 2 == 1) c[i] = -c[i];
    return ZPoly(std::move(c));
}

std::string to_string(const ZPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string s;
    for (long i = 0; i <= a.deg(); ++i) {
        Int ci = a.coeff(i);
        if (ci == 0) continue;
        bool first = s.empty();
        if (ci > 0 && !first) s += " + ";
        if (ci < 0) s += first ? "-" : " - ";
        Int ab = abs(ci);
        bool unit = (ab == 1) && i != 0;
        if (!unit) s += ab.get_str();
        if (i > 0) {
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, long N) {
    std::vector<Rat> c(static_cast<size_t>(N), Rat(0));
    for (size_t i = 0; i < a.size() && i < static_cast<size_t>(N); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < static_cast<size_t>(N); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

std::vector<Rat> series_inv(const std::vector<Rat>& a, long N) {
    if (a.empty() || a[0] == 0) throw argument_error("series_inv: zero constant term");
    std::vector<Rat> r(static_cast<size_t>(N), Rat(0));
    r[0] = 1 / a[0];
    for (long n = 1; n < N; ++n) {
        Rat s(0);
        for (long k = 1; k <= n; ++k) {
            if (k < static_cast<long>(a.size()))
                s += a[static_cast<size_t>(k)] * r[static_cast<size_t>(n - k)];
        }
        r[static_cast<size_t>(n)] = -s / a[0];
    }
    return r;
}

std::vector<Rat> series_pow(const std::vector<Rat>& a, long e, long N) {
    std::vector<Rat> base = a;
    base.resize(static_cast<size_t>(N), Rat(0));
    if (e < 0) {
        base = series_inv(base, N);
        e = -e;
    }
    std::vector<Rat> r(static_cast<size_t>(N), Rat(0));
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = series_mul(r, base, N);
        base = series_mul(base, base, N);
        e >>= 1;
    }
    return r;
}

} // namespace fad
