#include "fad/zeta.hpp"

namespace fad {

std::vector<Rat> zeta_series(const FadParams& fp, long N) {
    if (N < 1) throw argument_error("zeta_series: N must be >= 1");
    std::vector<Rat> f(static_cast<size_t>(N) + 1, Rat(0));
    for (long n = 1; n <= N; ++n) f[static_cast<size_t>(n)] = fad_eval(fp, n);
    // c_0 = 1, k c_k = sum_{j<=k} f_j c_{k-j}
    std::vector<Rat> c(static_cast<size_t>(N) + 1, Rat(0));
    c[0] = 1;
    for (long k = 1; k <= N; ++k) {
        Rat s(0);
        for (long j = 1; j <= k; ++j) s += f[static_cast<size_t>(j)] * c[static_cast<size_t>(k - j)];
        c[static_cast<size_t>(k)] = s / Rat(k);
    }
    return c;
}

namespace {

// det(1 - B w) as an integer polynomial in w (reversed charpoly).
ZPoly reversed_charpoly(const IntMatrix& B) {
    ZPoly cp = charpoly(B);
    std::vector<Int> rev(cp.c.rbegin(), cp.c.rend());
    return ZPoly(std::move(rev));
}

std::vector<Rat> poly_series(const ZPoly& p, long N) {
    std::vector<Rat> out(static_cast<size_t>(N) + 1, Rat(0));
    for (long i = 0; i <= std::min<long>(p.deg(), N); ++i) out[static_cast<size_t>(i)] = Rat(p.coeff(i));
    return out;
}

} // namespace

ZetaForm zeta_build(const FadParams& fp) {
    ZetaForm zf;
    if (!fp.p_part_trivial()) {
        zf.kind = ZetaKind::NonHolonomic;
        zf.series_prefix = zeta_series(fp, 24);
        bool t_integral = true;
        for (auto& [p, tq] : fp.t) {
            (void)p;
            for (auto& [d, v] : tq.values()) {
                (void)d;
                if (v.get_den() != 1) t_integral = false;
            }
        }
        zf.natural_boundary = fp.handle.hyperbolic && t_integral;
        return zf;
    }
    if (fp.c.get_den() != 1)
        throw argument_error("zeta_build: non-integer c has no closed form here");
    // f_n = |d_n| c^n r_n; with r_n = sum_{j in D, j|n} d_j:
    //   zeta_f(z) = prod_{j in D} zeta_{A^j}(c^j z^j)^{d_j / j}
    auto dsum = fp.r.divisor_sums();
    std::map<std::vector<Int>, std::pair<ZPoly, Rat>> agg;
    for (auto& [j, dj] : dsum) {
        IntMatrix Aj = mat_pow(fp.handle.A, static_cast<unsigned long>(j));
        MultTypeHandle hj = mult_type_build(Aj);
        Int cj = pow_rat(fp.c, j).get_num();
        for (long k = 0; k <= hj.s; ++k) {
            IntMatrix B = hj.blocks[static_cast<size_t>(k)];
            if (hj.eps2 % 2 == 1) B = B * Int(-1);
            // det(1 - B (c^j z^j))
            ZPoly Q = reversed_charpoly(B);
            // substitute w = c^j z^j
            ZPoly Qc(std::vector<Int>{});
            {
                std::vector<Int> cc;
                for (long i = 0; i <= Q.deg(); ++i) {
                    // coefficient of z^{i*j} is Q_i * c^{j*i}
                    long target = i * j;
                    if (static_cast<long>(cc.size()) <= target) cc.resize(static_cast<size_t>(target) + 1, Int(0));
                    cc[static_cast<size_t>(target)] = Q.coeff(i) * pow_int(cj, static_cast<unsigned long>(i));
                }
                Qc = ZPoly(std::move(cc));
            }
            // exponent: -(-1)^(s-k+eps1) * d_j / j
            Rat e = dj / Rat(j);
            if ((hj.s - k + hj.eps1) % 2 == 0) e = -e;
            auto key = Qc.c;
            auto it = agg.find(key);
            if (it == agg.end()) agg[key] = {Qc, e};
            else it->second.second += e;
        }
    }
    for (auto& [key, val] : agg) {
        (void)key;
        if (val.second != 0) zf.factors.push_back({val.first, val.second});
    }
    std::sort(zf.factors.begin(), zf.factors.end(), [](const ZetaFactor& a, const ZetaFactor& b) {
        if (a.Q.deg() != b.Q.deg()) return a.Q.deg() < b.Q.deg();
        for (long i = 0; i <= a.Q.deg(); ++i)
            if (a.Q.coeff(i) != b.Q.coeff(i)) return a.Q.coeff(i) < b.Q.coeff(i);
        return a.e < b.e;
    });
    // integer exponents => Rational; otherwise RootRational with the lcm
    Int den(1);
    for (auto& f : zf.factors) den = lcm(den, Int(f.e.get_den()));
    long m = static_cast<long>(den.get_si());
    zf.root_index = m;
    ZPoly num = ZPoly::constant(1), dd = ZPoly::constant(1);
    for (auto& f : zf.factors) {
        Rat e = f.e * Rat(m);
        long ei = static_cast<long>(e.get_num().get_si());
        if (ei > 0)
            for (long i = 0; i < ei; ++i) num = num * f.Q;
        else
            for (long i = 0; i < -ei; ++i) dd = dd * f.Q;
    }
    zf.num = num;
    zf.den = dd;
    zf.kind = (m == 1) ? ZetaKind::Rational : ZetaKind::RootRational;
    return zf;
}

std::vector<Rat> zeta_form_series(const ZetaForm& zf, long N) {
    if (zf.kind == ZetaKind::NonHolonomic) {
        std::vector<Rat> out = zf.series_prefix;
        out.resize(static_cast<size_t>(N) + 1, Rat(0));
        return out;
    }
    auto num = poly_series(zf.num, N);
    auto den = poly_series(zf.den, N);
    return series_mul(num, series_inv(den, N + 1), N + 1);
}

std::string zeta_form_to_string(const ZetaForm& zf) {
    switch (zf.kind) {
        case ZetaKind::Rational:
            return "(" + to_string(zf.num, "z") + ")/(" + to_string(zf.den, "z") + ")";
        case ZetaKind::RootRational:
            return "((" + to_string(zf.num, "z") + ")/(" + to_string(zf.den, "z") + "))^(1/" +
                   std::to_string(zf.root_index) + ")";
        case ZetaKind::ProductForm: {
            std::string s;
            for (auto& f : zf.factors) {
                if (!s.empty()) s += " * ";
                s += "(" + to_string(f.Q, "z") + ")^(" + to_string(f.e) + ")";
            }
            return s;
        }
        case ZetaKind::NonHolonomic:
            return std::string("non-holonomic") + (zf.natural_boundary ? " [natural boundary]" : "");
    }
    return "";
}

bool coh_zeta_check(const SteinbergDesc& d, long order) {
    IntMatrix P = block_diag(d.J, d.Z);
    MultTypeHandle h = mult_type_build(P);
    long r = P.rows;
    // LHS: series of exp(sum |det(1 - P^n)| c^n z^n / n)
    std::vector<Rat> lhs;
    {
        std::vector<Rat> f(static_cast<size_t>(order) + 1, Rat(0));
        for (long n = 1; n <= order; ++n) {
            Int dn = mult_d(h, static_cast<unsigned long>(n));
            f[static_cast<size_t>(n)] = Rat(abs(dn)) * pow_rat(Rat(d.c), n);
        }
        lhs.assign(static_cast<size_t>(order) + 1, Rat(0));
        lhs[0] = 1;
        for (long k = 1; k <= order; ++k) {
            Rat s(0);
            for (long j = 1; j <= k; ++j) s += f[static_cast<size_t>(j)] * lhs[static_cast<size_t>(k - j)];
            lhs[static_cast<size_t>(k)] = s / Rat(k);
        }
    }
    // RHS: zeta^coh(w) = prod_k det(1 - wedge^k P w)^((-1)^(k+1)), evaluated
    // at w = (-1)^eps2 c z, raised to (-1)^(r+eps1)
    std::vector<Rat> rhs;
    {
        std::vector<Rat> acc(static_cast<size_t>(order) + 2, Rat(0));
        acc[0] = 1;
        long N = order + 1;
        for (long k = 0; k <= r; ++k) {
            ZPoly Q = reversed_charpoly(exterior_power(P, k));
            auto qs = poly_series(Q, N);
            if (k % 2 == 1) acc = series_mul(acc, qs, N + 1);
            else acc = series_mul(acc, series_inv(qs, N + 1), N + 1);
        }
        // substitute z -> (-1)^eps2 c z
        Int sign = (h.eps2 % 2 == 1) ? Int(-1) : Int(1);
        std::vector<Rat> sub(acc.size(), Rat(0));
        for (size_t i = 0; i < acc.size(); ++i)
            sub[i] = acc[i] * Rat(pow_int(sign * d.c, static_cast<unsigned long>(i)));
        if ((r + h.eps1) % 2 == 1) sub = series_inv(sub, order + 1);
        sub.resize(static_cast<size_t>(order) + 1, Rat(0));
        rhs = sub;
    }
    for (long i = 0; i <= order; ++i)
        if (lhs[static_cast<size_t>(i)] != rhs[static_cast<size_t>(i)]) return false;
    // Shub identity Lambda = c * sp(sigma_*): the spectral radius over the
    // cohomology blocks equals the unscaled dominant root; verified as exact
    // algebraic equality through the dominant machinery plus a certified
    // no-root-above check on every block.
    DominantData dd1 = dominant_data(h, Rat(d.c));
    DominantData dd0 = dominant_data(h, Rat(1));
    RealAlgebraic lhs_lam = dd1.Lambda;
    RealAlgebraic rhs_lam = dd0.Lambda.scale(Rat(d.c));
    if (!(lhs_lam == rhs_lam)) return false;
    for (long k = 0; k <= r; ++k) {
        auto boxes = isolate_complex_roots(squarefree_part(h.block_charpolys[static_cast<size_t>(k)]));
        RInterval lam = dd0.Lambda.to_interval(192);
        for (auto& b : boxes) {
            for (int iter = 0; iter < 64; ++iter) {
                RInterval m2 = b.box.norm2();
                RInterval l2 = lam * lam;
                if (mpfr_cmp(m2.lo(), l2.hi()) > 0) return false;  // eigenvalue above Lambda
                if (mpfr_cmp(m2.hi(), l2.lo()) <= 0) break;        // certified below-or-equal
                b.refine();
                dd0.Lambda.refine();
                lam = dd0.Lambda.to_interval(192);
            }
        }
    }
    return true;
}

} // namespace fad
