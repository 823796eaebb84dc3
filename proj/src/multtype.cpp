#include "fad/multtype.hpp"

#include <omp.h>

namespace fad {

MultTypeHandle mult_type_build(const IntMatrix& A) {
    if (!A.square()) throw argument_error("mult_type_build: non-square matrix");
    MultTypeHandle h;
    h.A = A;
    h.s = A.rows;
    h.charP = charpoly(A);
    // confinedness: no cyclotomic factor (phi(d) <= s forces d <= 2s^2+4)
    for (long d = 1; d <= 2 * h.s * h.s + 4; ++d) {
        if (euler_phi(d) > h.s) continue;
        if (gcd(h.charP, cyclotomic(d)).deg() > 0)
            throw not_confined_error("mult_type_build: eigenvalue is a primitive " +
                                     std::to_string(d) + "-th root of unity");
    }
    for (long k = 0; k <= h.s; ++k) {
        h.blocks.push_back(exterior_power(A, k));
        h.block_charpolys.push_back(charpoly(h.blocks.back()));
    }
    // real-eigenvalue counts (with multiplicity) and circle structure
    h.circle = circle_structure(h.charP);
    h.unit_circle_factor = ZPoly::constant(1);
    long on_count = 0;
    for (auto& cf : h.circle) {
        for (int i = 0; i < cf.mult; ++i) h.unit_circle_factor = h.unit_circle_factor * cf.factor;
        on_count += 2 * static_cast<long>(cf.ys.size()) * cf.mult;
    }
    h.hyperbolic = h.circle.empty();
    // eps1/eps2 and inside/outside counts
    long inside = 0, outside = 0;
    for (auto& [g, mult] : factor_poly(h.charP)) {
        auto chain = sturm_chain(g);
        long in_open = sturm_count(chain, Rat(-1), Rat(1));
        long below = sturm_count_below(chain, Rat(-1));
        h.eps1 += mult * in_open;
        h.eps2 += mult * below;
        long deg = g.deg();
        if (g == ZPoly::x()) {
            inside += mult;
            continue;
        }
        long g_on = 0;
        if (is_self_reciprocal(g) && deg % 2 == 0) {
            ZPoly tp = trace_polynomial(g);
            auto tpchain = sturm_chain(tp);
            g_on = 2 * sturm_count(tpchain, Rat(-2), Rat(2));
            // endpoints +-2 would be roots of unity, banned by confinedness
            inside += mult * (deg - g_on) / 2;
            outside += mult * (deg - g_on) / 2;
            continue;
        }
        // no circle roots; split by certified boxes (real parts via Sturm
        // are already counted inside eps bookkeeping, the modulus split
        // needs isolation only here)
        long real_out = sturm_count_below(chain, Rat(-1)) +
                        (sturm_count_all(chain) - sturm_count_below(chain, Rat(1)));
        long real_in = in_open;
        long real_total = sturm_count_all(chain);
        long cplx = deg - real_total;
        long cplx_in = 0, cplx_out = 0;
        if (cplx > 0) {
            auto boxes = isolate_complex_roots(g);
            for (int iter = 0;; ++iter) {
                cplx_in = cplx_out = 0;
                long undecided = 0;
                for (auto& b : boxes) {
                    if (!b.box.im.contains_zero()) {
                        RInterval m2 = b.box.norm2();
                        if (mpfr_cmp_ui(m2.hi(), 1) < 0) ++cplx_in;
                        else if (mpfr_cmp_ui(m2.lo(), 1) > 0) ++cplx_out;
                        else ++undecided;
                    }
                }
                if (undecided == 0 && cplx_in + cplx_out == cplx) break;
                if (iter > 200) throw precision_error("mult_type_build: modulus split stalled");
                for (auto& b : boxes) b.refine();
            }
        }
        inside += mult * (real_in + cplx_in);
        outside += mult * (real_out + cplx_out);
    }
    h.outside_count = outside;
    (void)inside;
    return h;
}

Int mult_d(const MultTypeHandle& h, unsigned long n) {
    if (n == 0) throw argument_error("mult_d: n must be >= 1");
    if (h.s == 0) return Int(1);
    IntMatrix P = mat_pow(h.A, n);
    for (long i = 0; i < h.s; ++i) P(i, i) -= 1;
    return det(P);
}

Int mult_d_expansion(const MultTypeHandle& h, unsigned long n) {
    Int acc(0);
    for (long k = 0; k <= h.s; ++k) {
        Int t = trace(mat_pow(h.blocks[static_cast<size_t>(k)], n));
        if ((h.s - k) % 2 == 1) acc -= t;
        else acc += t;
    }
    return acc;
}

int mult_sign(const MultTypeHandle& h, unsigned long n) {
    long e = h.eps1 + h.eps2 * static_cast<long>(n);
    return e % 2 == 0 ? 1 : -1;
}

std::vector<Int> mult_d_table(const MultTypeHandle& h, unsigned long N, bool parallel) {
    std::vector<Int> out(N + 1, Int(0));
    if (h.s == 0) {
        for (auto& x : out) x = 1;
        return out;
    }
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long n = 1; n <= static_cast<long>(N); ++n)
            out[static_cast<size_t>(n)] = mult_d(h, static_cast<unsigned long>(n));
    } else {
        // serial reference: incremental powers
        IntMatrix P = h.A;
        for (unsigned long n = 1; n <= N; ++n) {
            IntMatrix Q = P;
            for (long i = 0; i < h.s; ++i) Q(i, i) -= 1;
            out[n] = det(Q);
            if (n < N) P = P * h.A;
        }
    }
    return out;
}

std::vector<CirclePairRef> circle_generators(const MultTypeHandle& h) {
    std::vector<CirclePairRef> out;
    for (auto& cf : h.circle)
        for (auto& y : cf.ys)
            out.push_back({CircleGen{cf.factor, y}, cf.mult});
    return out;
}

RInterval u_n_interval(const MultTypeHandle& h, long n, mpfr_prec_t prec) {
    RInterval one(Rat(1), prec);
    if (h.hyperbolic) {
        if (n == 0) return one;  // empty product
        return one;
    }
    if (n == 0) return RInterval(Rat(0), prec);
    long nn = std::labs(n);
    // u_n = prod over pairs (2 - z_n(y_j))^mult, z_n the trace power sum
    for (int attempt = 0;; ++attempt) {
        mpfr_prec_t pr = prec + 64 * attempt;
        Rat width = Rat(1, Int(1) << (24 + 16 * attempt));
        RInterval acc(Rat(1), pr);
        bool ok = true;
        for (auto& cf : h.circle) {
            for (auto& y : cf.ys) {
                y.refine_below(width);
                RInterval yi = y.to_interval(pr);
                // z_n(y) by the Chebyshev-style recurrence z_k = y z_{k-1} - z_{k-2}
                RInterval z0(Rat(2), pr), z1 = yi;
                RInterval zn = (nn == 0) ? z0 : z1;
                for (long k = 2; k <= nn; ++k) {
                    RInterval z2 = yi * z1 - z0;
                    z0 = z1;
                    z1 = z2;
                    zn = z2;
                }
                RInterval factor = RInterval(Rat(2), pr) - zn;
                if (!factor.strictly_positive()) { ok = false; break; }
                for (int i = 0; i < cf.mult; ++i) acc = acc * factor;
            }
            if (!ok) break;
        }
        if (ok) return acc;
        if (attempt >= 12) throw precision_error("u_n_interval: positivity certification stalled");
    }
}

UnValue u_n(const MultTypeHandle& h, long n, mpfr_prec_t prec) {
    UnValue v{false, Rat(0), RInterval(prec)};
    if (h.hyperbolic) {
        v.exact = true;
        v.value = (n == 0) ? Rat(1) : Rat(1);  // empty product is 1 for every n
        v.interval = RInterval(v.value, prec);
        return v;
    }
    if (n == 0) {
        v.exact = true;
        v.value = Rat(0);
        v.interval = RInterval(Rat(0), prec);
        return v;
    }
    // route A: Chebyshev on trace-polynomial roots
    RInterval routeA = u_n_interval(h, n, prec);
    if (n < 0) {
        // the trigonometric route is the defining one for negative indices
        v.interval = routeA;
        return v;
    }
    // route B: integer resultant per carrying factor divided by its
    // certified off-circle part
    unsigned long nn = static_cast<unsigned long>(n);
    RInterval routeB(Rat(1), prec);
    for (auto& cf : h.circle) {
        IntMatrix C(cf.factor.deg(), cf.factor.deg());
        {
            long d = cf.factor.deg();
            for (long i = 1; i < d; ++i) C(i, i - 1) = 1;
            for (long i = 0; i < d; ++i) C(i, d - 1) = -cf.factor.coeff(i);
        }
        IntMatrix P = mat_pow(C, nn);
        for (long i = 0; i < cf.factor.deg(); ++i) P(i, i) -= 1;
        Int res = det(P);  // = prod over all roots of (xi^n - 1), +- Res(g, x^n-1)
        if (res == 0) throw inconsistency_error("u_n: resultant vanished for confined handle");
        // off-circle part of this factor
        CBox off(RInterval(Rat(1), prec), RInterval(Rat(0), prec));
        auto boxes = isolate_complex_roots(cf.factor, prec);
        // identify circle roots: those whose norm2 straddles 1 after refinement
        long expect_on = 2 * static_cast<long>(cf.ys.size());
        for (int iter = 0;; ++iter) {
            long undec = 0;
            for (auto& b : boxes) {
                RInterval m2 = b.box.norm2();
                if (!(mpfr_cmp_ui(m2.hi(), 1) < 0) && !(mpfr_cmp_ui(m2.lo(), 1) > 0)) ++undec;
            }
            if (undec == expect_on) break;
            if (iter > 200) throw precision_error("u_n: circle identification stalled");
            for (auto& b : boxes) b.refine();
        }
        for (auto& b : boxes) {
            RInterval m2 = b.box.norm2();
            bool on = !(mpfr_cmp_ui(m2.hi(), 1) < 0) && !(mpfr_cmp_ui(m2.lo(), 1) > 0);
            if (on) continue;
            CBox zn = pow_box(b.box, nn);
            zn.re = zn.re - RInterval(Rat(1), prec);
            off = off * zn;
        }
        if (off.norm2().contains_zero())
            throw precision_error("u_n: off-circle part not separated from zero");
        // (res / off)^mult; res real, off real up to conjugate pairing
        CBox resbox(RInterval::exact_int(res, prec), RInterval(Rat(0), prec));
        CBox quot = resbox / off;
        for (int i = 0; i < cf.mult; ++i) routeB = routeB * quot.re;
    }
    // the two routes must overlap
    if (routeA.disjoint(routeB))
        throw inconsistency_error("u_n: trigonometric and resultant routes disagree");
    v.interval = routeA;  // keep the tighter trig interval; overlap checked
    return v;
}

std::vector<std::pair<ZPoly, Int>> dominant_expansion_factors(const MultTypeHandle& h) {
    // |d_n| c^n = sum_k (-1)^(s-k+eps1) tr((c (-1)^eps2 wedge^k A)^n); group by
    // irreducible factors of the (sign-adjusted) block charpolys.
    std::map<std::vector<Int>, std::pair<ZPoly, Int>> agg;
    for (long k = 0; k <= h.s; ++k) {
        ZPoly cp = h.block_charpolys[static_cast<size_t>(k)];
        if (h.eps2 % 2 == 1) {
            cp = negate_arg(cp);
            if (cp.lead() < 0) cp = -cp;
        }
        Int sign = ((h.s - k + h.eps1) % 2 == 0) ? 1 : -1;
        for (auto& [g, mult] : factor_poly(cp)) {
            auto key = g.c;
            auto it = agg.find(key);
            if (it == agg.end()) agg[key] = {g, sign * mult};
            else it->second.second += sign * mult;
        }
    }
    std::vector<std::pair<ZPoly, Int>> out;
    for (auto& [key, val] : agg) {
        (void)key;
        if (val.second != 0) out.push_back(val);
    }
    return out;
}

DominantData dominant_data(const MultTypeHandle& h, const Rat& c, mpfr_prec_t prec) {
    if (c <= 0) throw argument_error("dominant_data: c must be positive");
    DominantData dd;
    dd.c = c;
    dd.eps1 = h.eps1;
    dd.eps2 = h.eps2;
    dd.hyperbolic = h.hyperbolic;
    dd.unit_circle_factor = h.unit_circle_factor;
    // Lambda/c = |mu|, mu the unique maximal-modulus (real) eigenvalue of
    // wedge^u A at u = number of outside eigenvalues
    long u = h.outside_count;
    const ZPoly& cp = h.block_charpolys[static_cast<size_t>(u)];
    RealAlgebraic lam = RealAlgebraic::from_rational(Rat(1));
    if (u == 0 && h.s == 0) {
        lam = RealAlgebraic::from_rational(Rat(1));
    } else {
        // the top real root in absolute value, with its true irreducible minpoly
        auto factors = factor_poly(cp);
        RealAlgebraic best = RealAlgebraic::from_rational(Rat(0));
        bool found = false;
        for (auto& [g, mult] : factors) {
            (void)mult;
            for (auto& [lo, hi] : isolate_real_roots(g)) {
                RealAlgebraic r(g, lo, hi);
                RealAlgebraic ra = r.abs();
                if (!found || ra.compare(best.abs()) > 0) {
                    best = r;
                    found = true;
                }
            }
        }
        if (!found) throw inconsistency_error("dominant_data: no real eigenvalue in the top block");
        lam = best.abs();
    }
    dd.Lambda = lam.scale(c);
    while (dd.Lambda.lo() <= 0) dd.Lambda.refine();  // Lambda > 0; tighten until certified
    dd.Lambda.refine_below(Rat(1, Int(1) << 48));
    dd.entropy = log_interval(dd.Lambda.to_interval(prec));
    // thetas: one enclosure per circle pair instance
    for (auto& cf : h.circle)
        for (auto& y : cf.ys) {
            CircleGen gen{cf.factor, y};
            RInterval th = circle_angle(gen, prec);
            for (int i = 0; i < cf.mult; ++i) dd.thetas.push_back(th);
        }
    // delta: distinct subset products of the circle eigenvalues with nonzero
    // aggregated coefficient
    if (h.hyperbolic) {
        dd.delta = 1;
        return dd;
    }
    auto gens = circle_generators(h);
    long m = static_cast<long>(gens.size());
    if (m == 1) {
        // powers xi^k, |k| <= mult, always distinct: delta = 2 mult + 1
        dd.delta = 2 * gens[0].mult + 1;
        return dd;
    }
    // enumerate exponent vectors k in prod [-mult_j, mult_j]; aggregate
    // binomial coefficients over verified equalities
    std::vector<long> radii;
    for (auto& g : gens) radii.push_back(g.mult);
    std::vector<std::vector<long>> vecs;
    std::vector<long> cur(static_cast<size_t>(m), 0);
    std::function<void(long)> rec = [&](long idx) {
        if (idx == m) {
            vecs.push_back(cur);
            return;
        }
        for (long k = -radii[static_cast<size_t>(idx)]; k <= radii[static_cast<size_t>(idx)]; ++k) {
            cur[static_cast<size_t>(idx)] = k;
            rec(idx + 1);
        }
    };
    rec(0);
    std::vector<CircleGen> gvec;
    for (auto& g : gens) gvec.push_back(g.gen);
    auto coeff_of = [&](const std::vector<long>& k) {
        Int coef(1);
        for (long j = 0, e = static_cast<long>(k.size()); j < e; ++j) {
            long mu = radii[static_cast<size_t>(j)];
            long kk = k[static_cast<size_t>(j)];
            Int b(1);
            // C(2mu, mu+kk)
            for (long i = 0; i < mu + kk; ++i) b = b * Int(2 * mu - i) / Int(i + 1);
            if (kk % 2 != 0) b = -b;
            coef *= b;
        }
        return coef;
    };
    std::vector<std::pair<std::vector<long>, Int>> groups;
    for (auto& k : vecs) {
        bool merged = false;
        for (auto& [rep, coef] : groups) {
            std::vector<long> diff(rep.size());
            for (size_t i = 0; i < rep.size(); ++i) diff[i] = k[i] - rep[i];
            if (unit_product_is_one(gvec, diff)) {
                coef += coeff_of(k);
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back({k, coeff_of(k)});
    }
    long delta = 0;
    for (auto& [rep, coef] : groups) {
        (void)rep;
        if (coef != 0) ++delta;
    }
    dd.delta = delta;
    return dd;
}

} // namespace fad
