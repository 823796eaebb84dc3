#include "fad/roots.hpp"

#include <complex>

namespace fad {

CBox operator+(const CBox& a, const CBox& b) { return CBox(a.re + b.re, a.im + b.im); }
CBox operator-(const CBox& a, const CBox& b) { return CBox(a.re - b.re, a.im - b.im); }

CBox operator*(const CBox& a, const CBox& b) {
    return CBox(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

CBox operator/(const CBox& a, const CBox& b) {
    RInterval n2 = b.norm2();
    if (n2.contains_zero()) throw precision_error("CBox division by box containing zero");
    return CBox((a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2);
}

CBox eval_box(const ZPoly& p, const CBox& z) {
    mpfr_prec_t prec = z.re.prec();
    CBox acc(prec);
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + RInterval::exact_int(p.c[i], prec);
    }
    return acc;
}

CBox pow_box(const CBox& z, unsigned long n) {
    CBox r(z.re.prec());
    r.re = RInterval(Rat(1), z.re.prec());
    CBox b = z;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

namespace {

// ---- plain mpfr complex (midpoint) arithmetic for Durand-Kerner ----------

struct MpC {
    mpfr_t re, im;
    explicit MpC(mpfr_prec_t p) {
        mpfr_init2(re, p);
        mpfr_init2(im, p);
        mpfr_set_ui(re, 0, MPFR_RNDN);
        mpfr_set_ui(im, 0, MPFR_RNDN);
    }
    MpC(const MpC& o) : MpC(mpfr_get_prec(o.re)) {
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    MpC& operator=(const MpC& o) {
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
        return *this;
    }
    ~MpC() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

void mpc_sub(MpC& r, const MpC& a, const MpC& b) {
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}

void mpc_mul(MpC& r, const MpC& a, const MpC& b, mpfr_t t1, mpfr_t t2) {
    // r may not alias a or b
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
    mpfr_set(r.re, t1, MPFR_RNDN);
    mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
    mpfr_add(r.im, t1, t2, MPFR_RNDN);
}

void mpc_div(MpC& r, const MpC& a, const MpC& b, mpfr_t t1, mpfr_t t2, mpfr_t n2) {
    mpfr_mul(t1, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, b.im, b.im, MPFR_RNDN);
    mpfr_add(n2, t1, t2, MPFR_RNDN);
    // re = (a.re*b.re + a.im*b.im)/n2, im = (a.im*b.re - a.re*b.im)/n2
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_set(r.re, t1, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_sub(r.im, t2, t1, MPFR_RNDN);
    mpfr_div(r.re, r.re, n2, MPFR_RNDN);
    mpfr_div(r.im, r.im, n2, MPFR_RNDN);
}

// Durand-Kerner at precision prec; returns approximate roots.
std::vector<std::pair<double, double>> durand_kerner(const ZPoly& f, mpfr_prec_t prec, int iters) {
    long d = f.deg();
    std::vector<MpC> z;
    z.reserve(static_cast<size_t>(d));
    double B = mpq_get_d(root_bound(f).get_mpq_t()) * 0.7 + 0.3;
    for (long i = 0; i < d; ++i) {
        MpC c(prec);
        double ang = 2 * 3.141592653589793 * (static_cast<double>(i) + 0.25) / static_cast<double>(d) + 0.4;
        mpfr_set_d(c.re, B * std::cos(ang), MPFR_RNDN);
        mpfr_set_d(c.im, B * std::sin(ang), MPFR_RNDN);
        z.push_back(c);
    }
    std::vector<MpC> coef;
    coef.reserve(f.c.size());
    for (auto& a : f.c) {
        MpC c(prec);
        mpfr_set_z(c.re, a.get_mpz_t(), MPFR_RNDN);
        z.reserve(z.size());
        coef.push_back(c);
    }
    mpfr_t t1, t2, n2;
    mpfr_init2(t1, prec);
    mpfr_init2(t2, prec);
    mpfr_init2(n2, prec);
    MpC num(prec), den(prec), tmp(prec), diff(prec), upd(prec);
    for (int it = 0; it < iters; ++it) {
        for (long i = 0; i < d; ++i) {
            // num = f(z_i) (Horner with the leading coefficient folded in)
            num = coef.back();
            for (size_t k = coef.size() - 1; k-- > 0;) {
                mpc_mul(tmp, num, z[static_cast<size_t>(i)], t1, t2);
                mpfr_add(tmp.re, tmp.re, coef[k].re, MPFR_RNDN);
                num = tmp;
            }
            // den = lc * prod_{j != i} (z_i - z_j)
            den = coef.back();
            for (long j = 0; j < d; ++j) {
                if (j == i) continue;
                mpc_sub(diff, z[static_cast<size_t>(i)], z[static_cast<size_t>(j)]);
                mpc_mul(tmp, den, diff, t1, t2);
                den = tmp;
            }
            mpc_div(upd, num, den, t1, t2, n2);
            mpfr_sub(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re, upd.re, MPFR_RNDN);
            mpfr_sub(z[static_cast<size_t>(i)].im, z[static_cast<size_t>(i)].im, upd.im, MPFR_RNDN);
        }
    }
    // per-root Newton polish: quadratic convergence once DK is close
    {
        std::vector<MpC> dcoef;
        dcoef.reserve(f.c.size());
        for (size_t i = 1; i < f.c.size(); ++i) {
            MpC c(prec);
            Int ci = f.c[i] * Int(static_cast<long>(i));
            mpfr_set_z(c.re, ci.get_mpz_t(), MPFR_RNDN);
            dcoef.push_back(c);
        }
        MpC num2(prec), den2(prec), tmp2(prec), upd2(prec);
        for (long i = 0; i < d; ++i) {
            for (int it = 0; it < 60; ++it) {
                num2 = coef.back();
                for (size_t k = coef.size() - 1; k-- > 0;) {
                    mpc_mul(tmp2, num2, z[static_cast<size_t>(i)], t1, t2);
                    mpfr_add(tmp2.re, tmp2.re, coef[k].re, MPFR_RNDN);
                    num2 = tmp2;
                }
                den2 = dcoef.back();
                for (size_t k = dcoef.size() - 1; k-- > 0;) {
                    mpc_mul(tmp2, den2, z[static_cast<size_t>(i)], t1, t2);
                    mpfr_add(tmp2.re, tmp2.re, dcoef[k].re, MPFR_RNDN);
                    den2 = tmp2;
                }
                mpfr_mul(t1, den2.re, den2.re, MPFR_RNDN);
                mpfr_mul(t2, den2.im, den2.im, MPFR_RNDN);
                mpfr_add(t1, t1, t2, MPFR_RNDN);
                if (mpfr_zero_p(t1)) break;
                mpc_div(upd2, num2, den2, t1, t2, n2);
                mpfr_sub(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re, upd2.re, MPFR_RNDN);
                mpfr_sub(z[static_cast<size_t>(i)].im, z[static_cast<size_t>(i)].im, upd2.im, MPFR_RNDN);
            }
        }
    }
    std::vector<std::pair<double, double>> out;
    for (auto& c : z)
        out.push_back({mpfr_get_d(c.re, MPFR_RNDN), mpfr_get_d(c.im, MPFR_RNDN)});
    mpfr_clear(t1);
    mpfr_clear(t2);
    mpfr_clear(n2);
    return out;
}

// Interval-Newton contraction test around (x,y) with radius rad.
// On success fills 'out' with a certified box containing exactly one root.
bool certify_box(const ZPoly& f, const ZPoly& fp, double x, double y, double rad,
                 mpfr_prec_t prec, CBox& out) {
    Rat rx = Rat(x), ry = Rat(y), rr = Rat(rad);
    CBox B(RInterval(rx - rr, rx + rr, prec), RInterval(ry - rr, ry + rr, prec));
    for (int k = 0; k < 3; ++k) {
        CBox mid(RInterval(rx, prec), RInterval(ry, prec));
        CBox fm = eval_box(f, mid);
        CBox fpB = eval_box(fp, B);
        if (fpB.contains_zero()) return false;
        CBox N = mid - fm / fpB;
        // N inside interior of B?
        bool inside = mpfr_cmp(N.re.lo(), B.re.lo()) > 0 && mpfr_cmp(N.re.hi(), B.re.hi()) < 0 &&
                      mpfr_cmp(N.im.lo(), B.im.lo()) > 0 && mpfr_cmp(N.im.hi(), B.im.hi()) < 0;
        if (inside) {
            out = N;
            return true;
        }
        rad *= 4;  // try a wider box (Newton may contract from farther out)
        rr = Rat(rad);
        B = CBox(RInterval(rx - rr, rx + rr, prec), RInterval(ry - rr, ry + rr, prec));
    }
    return false;
}

Rat mpfr_to_rat(const mpfr_t& v) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, v);
    Rat r(q);
    mpq_clear(q);
    return r;
}

} // namespace

void AlgebraicNumber::refine() {
    ZPoly fp = derivative(minpoly);
    mpfr_prec_t prec = box.re.prec() + 32;
    Rat mx = (mpfr_to_rat(box.re.lo()) + mpfr_to_rat(box.re.hi())) / 2;
    Rat my = (mpfr_to_rat(box.im.lo()) + mpfr_to_rat(box.im.hi())) / 2;
    CBox mid(RInterval(mx, prec), RInterval(my, prec));
    CBox wide(RInterval(mpfr_to_rat(box.re.lo()), mpfr_to_rat(box.re.hi()), prec),
              RInterval(mpfr_to_rat(box.im.lo()), mpfr_to_rat(box.im.hi()), prec));
    CBox fm = eval_box(minpoly, mid);
    CBox fpB = eval_box(fp, wide);
    if (fpB.contains_zero()) return;  // cannot contract now
    CBox N = mid - fm / fpB;
    // intersect with the old box to guarantee monotone shrinking
    RInterval re(prec), im(prec);
    // manual intersection
    auto inter = [&](const RInterval& a, const RInterval& b) {
        Rat lo = std::max(mpfr_to_rat(a.lo()), mpfr_to_rat(b.lo()));
        Rat hi = std::min(mpfr_to_rat(a.hi()), mpfr_to_rat(b.hi()));
        if (lo > hi) throw inconsistency_error("AlgebraicNumber::refine: empty intersection");
        return RInterval(lo, hi, prec);
    };
    box = CBox(inter(N.re, wide.re), inter(N.im, wide.im));
}

void AlgebraicNumber::refine_until_width(double w, int max_iter) {
    for (int i = 0; i < max_iter; ++i) {
        if (box.re.width_approx() < w && box.im.width_approx() < w) return;
        refine();
    }
    if (!(box.re.width_approx() < w && box.im.width_approx() < w))
        throw precision_error("AlgebraicNumber: refinement stalled");
}

std::vector<AlgebraicNumber> isolate_complex_roots(const ZPoly& squarefree, mpfr_prec_t prec) {
    ZPoly f = primitive_part(squarefree);
    long d = f.deg();
    std::vector<AlgebraicNumber> out;
    if (d < 1) return out;
    ZPoly fp = derivative(f);
    int attempt = 0;
    for (mpfr_prec_t pr = prec; pr <= 8192; pr *= 2, ++attempt) {
        auto approx = durand_kerner(f, pr, 120 + 40 * static_cast<int>(d) + 120 * attempt);
        out.clear();
        bool ok = true;
        for (auto& [x, y] : approx) {
            CBox box(pr);
            bool cert = false;
            for (double rad = 1e-24; rad <= 1e-1; rad *= 10) {
                if (certify_box(f, fp, x, y, rad, pr, box)) {
                    cert = true;
                    break;
                }
            }
            if (!cert) { ok = false; break; }
            AlgebraicNumber a;
            a.minpoly = f;  // caller replaces by the true irreducible factor
            a.box = box;
            out.push_back(std::move(a));
        }
        if (!ok) continue;
        // pairwise disjoint => d distinct certified roots = all of them
        bool disjoint = true;
        for (size_t i = 0; i < out.size() && disjoint; ++i)
            for (size_t j = i + 1; j < out.size() && disjoint; ++j) {
                if (!out[i].box.re.disjoint(out[j].box.re) && !out[i].box.im.disjoint(out[j].box.im))
                    disjoint = false;
            }
        if (disjoint && static_cast<long>(out.size()) == d) return out;
    }
    throw precision_error("isolate_complex_roots: precision exhausted");
}

std::vector<CircleFactor> circle_structure(const ZPoly& P) {
    std::vector<CircleFactor> out;
    for (auto& [g, mult] : factor_poly(P)) {
        if (g.deg() < 2 || !is_self_reciprocal(g)) continue;
        if (g.deg() % 2 != 0) continue;  // odd self-reciprocal has root -1 handled upstream
        ZPoly tp = trace_polynomial(g);
        auto iso = isolate_real_roots(tp);
        CircleFactor cf;
        cf.factor = g;
        cf.tracepoly = tp;
        cf.mult = mult;
        for (auto& [lo, hi] : iso) {
            RealAlgebraic y(tp, lo, hi);
            if (y.compare(Rat(-2)) > 0 && y.compare(Rat(2)) < 0) cf.ys.push_back(y);
        }
        if (!cf.ys.empty()) out.push_back(std::move(cf));
    }
    return out;
}

RootClassification classify_roots(const ZPoly& P, mpfr_prec_t prec) {
    if (P.is_zero()) throw argument_error("classify_roots: zero polynomial");
    RootClassification rc;
    auto factors = factor_poly(P);
    for (auto& [g, mult] : factors) {
        if (g == ZPoly::x()) {
            AlgebraicNumber zero{g, CBox(RInterval(Rat(0), prec), RInterval(Rat(0), prec))};
            rc.inside.push_back({zero, mult});
            rc.count_inside += mult;
            continue;
        }
        // real-root bookkeeping
        {
            ZPoly sf = g;  // irreducible, hence squarefree
            auto chain = sturm_chain(sf);
            long in_open = sturm_count(chain, Rat(-1), Rat(1));
            if (eval(sf, Rat(1)) == 0) in_open -= 1;  // (a,b] convention
            long below = sturm_count_below(chain, Rat(-1));
            if (eval(sf, Rat(-1)) == 0) below -= 1;
            rc.eps1 += mult * in_open;
            rc.eps2 += mult * below;
        }
        long n_on = 0;
        if (g.deg() == 1) {
            // rational root
            Rat r(-g.coeff(0), g.coeff(1));
            r.canonicalize();
            Rat a2 = r * r;
            AlgebraicNumber an{g, CBox(RInterval(r, prec), RInterval(Rat(0), prec))};
            if (a2 < 1) { rc.inside.push_back({an, mult}); rc.count_inside += mult; }
            else if (a2 == 1) { rc.on.push_back({an, mult}); rc.count_on += mult; }
            else { rc.outside.push_back({an, mult}); rc.count_outside += mult; }
            continue;
        }
        if (is_self_reciprocal(g) && g.deg() % 2 == 0) {
            ZPoly tp = trace_polynomial(g);
            auto iso = isolate_real_roots(tp);
            for (auto& [lo, hi] : iso) {
                RealAlgebraic y(tp, lo, hi);
                if (y.compare(Rat(-2)) > 0 && y.compare(Rat(2)) < 0) n_on += 2;
            }
        }
        auto boxes = isolate_complex_roots(g, prec);
        for (auto& b : boxes) b.minpoly = g;
        // refine until exactly n_on straddle the circle
        for (int iter = 0;; ++iter) {
            long n_in = 0, n_out = 0, n_str = 0;
            for (auto& b : boxes) {
                RInterval m2 = b.box.norm2();
                if (m2.strictly_positive() && mpfr_cmp_ui(m2.hi(), 1) < 0) ++n_in;
                else if (mpfr_cmp_ui(m2.lo(), 1) > 0) ++n_out;
                else ++n_str;
            }
            if (n_str == n_on) {
                for (auto& b : boxes) {
                    RInterval m2 = b.box.norm2();
                    if (m2.strictly_positive() && mpfr_cmp_ui(m2.hi(), 1) < 0) {
                        rc.inside.push_back({b, mult});
                        rc.count_inside += mult;
                    } else if (mpfr_cmp_ui(m2.lo(), 1) > 0) {
                        rc.outside.push_back({b, mult});
                        rc.count_outside += mult;
                    } else {
                        rc.on.push_back({b, mult});
                        rc.count_on += mult;
                    }
                }
                break;
            }
            if (iter > 200) throw precision_error("classify_roots: precision exhausted");
            for (auto& b : boxes) b.refine();
        }
    }
    return rc;
}

} // namespace fad
