#include "fad/orbit.hpp"

#include "fad/circlegroup.hpp"

#include <cmath>

#include <omp.h>

namespace fad {

namespace {

void require_positive_entropy(const FadParams& fp, DominantData& dd, mpfr_prec_t prec) {
    dd = dominant_data(fp.handle, fp.c, prec);
    if (!(dd.Lambda.compare(Rat(1)) > 0))
        throw argument_error("trivial dynamics: entropy is zero");
}

} // namespace

OrbitReport orbit_counts(const FadParams& fp, long N_max, bool parallel, mpfr_prec_t prec) {
    if (N_max < 1) throw argument_error("orbit_counts: N_max must be >= 1");
    std::vector<Rat> f(static_cast<size_t>(N_max) + 1, Rat(0));
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long n = 1; n <= N_max; ++n) f[static_cast<size_t>(n)] = fad_eval(fp, n);
    } else {
        for (long n = 1; n <= N_max; ++n) f[static_cast<size_t>(n)] = fad_eval(fp, n);
    }
    OrbitReport rep;
    rep.P.assign(static_cast<size_t>(N_max) + 1, Int(0));
    rep.pi.assign(static_cast<size_t>(N_max) + 1, Int(0));
    for (long ell = 1; ell <= N_max; ++ell) {
        Rat sum(0);
        for (long n : divisors(ell)) sum += Rat(mobius(ell / n)) * f[static_cast<size_t>(n)];
        Rat Pl = sum / Rat(ell);
        if (Pl < 0 || Pl.get_den() != 1)
            throw argument_error("not realizable: P_" + std::to_string(ell) + " = " + to_string(Pl));
        rep.P[static_cast<size_t>(ell)] = Pl.get_num();
        rep.pi[static_cast<size_t>(ell)] = rep.pi[static_cast<size_t>(ell - 1)] + rep.P[static_cast<size_t>(ell)];
    }
    DominantData dd = dominant_data(fp.handle, fp.c, prec);
    dd.Lambda.refine_below(Rat(1, Int(1) << 48));
    RInterval lam = dd.Lambda.to_interval(prec);
    rep.Pi.reserve(static_cast<size_t>(N_max) + 1);
    rep.Pi.push_back(RInterval(Rat(0), prec));
    for (long N = 1; N <= N_max; ++N) {
        RInterval num(Rat(Int(N) * rep.pi[static_cast<size_t>(N)]), prec);
        rep.Pi.push_back(num / lam.pow_ul(static_cast<unsigned long>(N)));
    }
    return rep;
}


ThetaResult theta(const FadParams& fp, mpfr_prec_t prec) {
    ThetaResult out;
    auto entries = dominant_expansion_factors(fp.handle);
    // Lambda as a real algebraic; all lambda values are c * |roots|
    DominantData dd = dominant_data(fp.handle, fp.c, prec);
    RealAlgebraic lam = dd.Lambda;  // = c * max-modulus
    // collect |rho|^2 values (as real algebraics) per factor with the signed
    // aggregate multiplicity
    struct Entry {
        RealAlgebraic mod2;  // (c |rho|)^2
        Int mult;
    };
    std::vector<Entry> values;
    Rat c2 = fp.c * fp.c;
    for (auto& [g, mult] : entries) {
        if (g == ZPoly::x()) continue;  // lambda = 0 contributes nothing
        // real roots: modulus from |root|
        auto iso = isolate_real_roots(g);
        for (auto& [lo, hi] : iso) {
            RealAlgebraic r0(g, lo, hi);
            RealAlgebraic r2 = r0.abs();
            if (r2.is_rational()) {
                Rat v = r2.rational_value();
                values.push_back({RealAlgebraic::from_rational(v * v * c2), mult});
                continue;
            }
            // square: minpoly of root^2 via companion power
            IntMatrix C(g.deg(), g.deg());
            for (long i = 1; i < g.deg(); ++i) C(i, i - 1) = 1;
            for (long i = 0; i < g.deg(); ++i) C(i, g.deg() - 1) = -g.coeff(i);
            ZPoly sq = charpoly(C * C);
            // locate root^2 among real roots of sq
            Rat a = r2.lo() * r2.lo(), b = r2.hi() * r2.hi();
            if (r2.lo() < 0) a = 0;
            // refine r2 until [a,b] isolates exactly one root of sqfree(sq)
            ZPoly sqf = squarefree_part(sq);
            auto chain = sturm_chain(sqf);
            while (sturm_count(chain, a, b) != 1) {
                r2.refine();
                a = r2.lo() * r2.lo();
                b = r2.hi() * r2.hi();
                if (r2.lo() < 0) a = 0;
            }
            // find the irreducible factor containing it
            for (auto& [gg, mm] : factor_poly(sqf)) {
                (void)mm;
                auto ch2 = sturm_chain(gg);
                if (sturm_count(ch2, a, b) == 1) {
                    values.push_back({RealAlgebraic(gg, a, b).scale(c2), mult});
                    break;
                }
            }
        }
        // complex roots: |rho|^2 from certified boxes against charpoly(C (x) C)
        long realcount = static_cast<long>(iso.size());
        if (realcount < g.deg()) {
            auto boxes = isolate_complex_roots(g, prec);
            IntMatrix C(g.deg(), g.deg());
            for (long i = 1; i < g.deg(); ++i) C(i, i - 1) = 1;
            for (long i = 0; i < g.deg(); ++i) C(i, g.deg() - 1) = -g.coeff(i);
            // Kronecker product C (x) C carries all rho_i rho_j
            IntMatrix K(g.deg() * g.deg(), g.deg() * g.deg());
            for (long i = 0; i < g.deg(); ++i)
                for (long j = 0; j < g.deg(); ++j)
                    for (long k = 0; k < g.deg(); ++k)
                        for (long l = 0; l < g.deg(); ++l)
                            K(i * g.deg() + k, j * g.deg() + l) = C(i, j) * C(k, l);
            ZPoly prod = squarefree_part(charpoly(K));
            auto chain = sturm_chain(prod);
            for (auto& b0 : boxes) {
                if (b0.box.im.contains_zero()) continue;  // real handled above
                // only keep one of each conjugate pair
                if (!b0.box.im.strictly_positive()) continue;
                AlgebraicNumber b = b0;
                for (int iter = 0;; ++iter) {
                    RInterval m2 = b.box.norm2();
                    // rational bounds
                    mpq_t qlo, qhi;
                    mpq_init(qlo);
                    mpq_init(qhi);
                    mpfr_get_q(qlo, m2.lo());
                    mpfr_get_q(qhi, m2.hi());
                    Rat a(qlo), bb(qhi);
                    mpq_clear(qlo);
                    mpq_clear(qhi);
                    if (a < 0) a = 0;
                    if (sturm_count(chain, a, bb) == 0 && eval(prod, a) == 0) {
                        // the modulus-squared value equals the rational endpoint
                        values.push_back({RealAlgebraic::from_rational(a * c2), mult});
                        break;
                    }
                    if (sturm_count(chain, a, bb) == 1) {
                        for (auto& [gg, mm] : factor_poly(prod)) {
                            (void)mm;
                            auto ch2 = sturm_chain(gg);
                            if (sturm_count(ch2, a, bb) == 1) {
                                values.push_back({RealAlgebraic(gg, a, bb).scale(c2), mult});
                                break;
                            }
                        }
                        break;
                    }
                    if (iter > 256) throw precision_error("theta: modulus isolation stalled");
                    b.refine();
                }
            }
        }
    }
    // Lambda^2 as real algebraic
    RealAlgebraic lam2 = [&] {
        const ZPoly& mp = lam.minpoly();
        if (lam.is_rational()) {
            Rat v = lam.rational_value();
            return RealAlgebraic::from_rational(v * v);
        }
        IntMatrix C(mp.deg(), mp.deg());
        for (long i = 1; i < mp.deg(); ++i) C(i, i - 1) = 1;
        // companion needs monic: normalize (minpoly primitive, not monic in general)
        // use the scaled representation instead: isolate roots of the power poly
        ZPoly sq = [&] {
            // minpoly of alpha^2 divides Res-style charpoly of companion^2 only
            // for monic; for non-monic minpoly use y = x^2 resultant route:
            // poly2(y) = +- Res_x(mp(x), x^2 - y); compute via even/odd split:
            // mp(x) = E(x^2) + x O(x^2)  =>  poly2(y) = E(y)^2 - y O(y)^2
            std::vector<Int> even, odd;
            for (long i = 0; i <= mp.deg(); ++i) {
                if (i % 2 == 0) even.push_back(mp.coeff(i));
                else odd.push_back(mp.coeff(i));
            }
            ZPoly E{std::vector<Int>(even)}, O{std::vector<Int>(odd)};
            return E * E - ZPoly::x() * O * O;
        }();
        ZPoly sqf = squarefree_part(sq);
        Rat a = lam.lo() * lam.lo(), b = lam.hi() * lam.hi();
        auto chain = sturm_chain(sqf);
        while (sturm_count(chain, a, b) != 1) {
            lam.refine();
            a = lam.lo() * lam.lo();
            b = lam.hi() * lam.hi();
        }
        for (auto& [gg, mm] : factor_poly(sqf)) {
            (void)mm;
            auto ch2 = sturm_chain(gg);
            if (sturm_count(ch2, a, b) == 1) return RealAlgebraic(gg, a, b);
        }
        throw inconsistency_error("theta: Lambda^2 isolation failed");
    }();
    // Theta' = max over negative-multiplicity entries strictly below Lambda
    std::optional<RealAlgebraic> best;  // modulus squared
    for (auto& e : values) {
        if (e.mult >= 0) continue;
        int cmp = e.mod2.compare(lam2);
        if (cmp >= 0) continue;  // dominant level excluded
        if (!best || e.mod2.compare(*best) > 0) best = e.mod2;
    }
    if (!best) {
        out.theta_prime = {true, Rat(0), RInterval(Rat(0), prec)};
        out.theta = {true, Rat(1, 2), RInterval(Rat(1, 2), prec)};
        return out;
    }
    // Theta' = log(M2)/log(Lambda) = log(best)/log(lam2)
    best->refine_below(Rat(1, Int(1) << 64));
    lam2.refine_below(Rat(1, Int(1) << 64));
    RInterval tp = log_interval(best->to_interval(prec)) / log_interval(lam2.to_interval(prec));
    out.theta_prime.enclosure = tp;
    // rationality detection: try q <= 24 with p from the midpoint
    out.theta_prime.is_rational = false;
    double mid = tp.mid_approx();
    for (long q = 1; q <= 24 && !out.theta_prime.is_rational; ++q) {
        double pd = mid * static_cast<double>(q);
        long pp = std::lround(pd);
        if (pp < 0 || std::abs(pd - static_cast<double>(pp)) > 0.25 / static_cast<double>(q)) continue;
        // verify best^q == lam2^p exactly via power minpolys + intervals
        auto power_ra = [&](const RealAlgebraic& x, long e) {
            if (e == 0) return RealAlgebraic::from_rational(Rat(1));
            if (x.is_rational()) return RealAlgebraic::from_rational(pow_rat(x.rational_value(), e));
            // roots of the e-th power polynomial Res_x(mp(x), x^e - y); build by
            // repeated squaring on the "even/odd" trick is messy, use the
            // companion route on the monicized polynomial instead
            ZPoly mp = x.minpoly();
            Int lead = mp.lead();
            // monicize y = lead * x: my(y) = lead^(d-1) mp(y/lead), roots lead*alpha
            long d = mp.deg();
            std::vector<Int> cc(mp.c.size());
            for (long i = 0; i <= d; ++i)
                cc[static_cast<size_t>(i)] = mp.coeff(i) * pow_int(lead, static_cast<unsigned long>(d - 1 - i >= 0 ? d - 1 - i : 0));
            cc[static_cast<size_t>(d)] = 1;
            ZPoly monic(std::move(cc));
            IntMatrix C(d, d);
            for (long i = 1; i < d; ++i) C(i, i - 1) = 1;
            for (long i = 0; i < d; ++i) C(i, d - 1) = -monic.coeff(i);
            IntMatrix Ce = mat_pow(C, static_cast<unsigned long>(e));
            ZPoly pw = squarefree_part(charpoly(Ce));  // roots (lead*alpha)^e
            // value = (lead*alpha)^e / lead^e: rescale roots by lead^{-e}
            ZPoly scaled = scale_arg(pw, Rat(pow_int(lead, static_cast<unsigned long>(e))));
            // interval for alpha^e
            x.refine_below(Rat(1, Int(1) << 48));
            Rat lo = pow_rat(Rat(x.lo()), e), hi = pow_rat(Rat(x.hi()), e);
            if (lo > hi) std::swap(lo, hi);
            ZPoly sqf2 = squarefree_part(scaled);
            auto ch = sturm_chain(sqf2);
            RealAlgebraic xr = x;
            while (sturm_count(ch, lo, hi) != 1) {
                xr.refine();
                lo = pow_rat(Rat(xr.lo()), e);
                hi = pow_rat(Rat(xr.hi()), e);
                if (lo > hi) std::swap(lo, hi);
            }
            for (auto& [gg, mm] : factor_poly(sqf2)) {
                (void)mm;
                auto ch2 = sturm_chain(gg);
                if (sturm_count(ch2, lo, hi) == 1) return RealAlgebraic(gg, lo, hi);
            }
            throw inconsistency_error("theta: power isolation failed");
        };
        RealAlgebraic lhs = power_ra(*best, q);
        RealAlgebraic rhs = power_ra(lam2, pp);
        if (lhs == rhs) {
            out.theta_prime.is_rational = true;
            out.theta_prime.value = Rat(pp, q);
        }
    }
    // Theta = max(1/2, Theta')
    if (out.theta_prime.is_rational) {
        Rat t = std::max(Rat(1, 2), out.theta_prime.value);
        out.theta = {true, t, RInterval(t, prec)};
    } else {
        if (mpfr_cmp_q(tp.hi(), Rat(1, 2).get_mpq_t()) < 0) {
            out.theta = {true, Rat(1, 2), RInterval(Rat(1, 2), prec)};
        } else if (mpfr_cmp_q(tp.lo(), Rat(1, 2).get_mpq_t()) > 0) {
            out.theta = {false, Rat(0), tp};
        } else {
            out.theta = {false, Rat(0), hull(RInterval(Rat(1, 2), prec), tp)};
        }
    }
    return out;
}

PntTerms pnt_main_term(const FadParams& fp, long N, mpfr_prec_t prec) {
    DominantData dd;
    require_positive_entropy(fp, dd, prec);
    dd.Lambda.refine_below(Rat(1, Int(1) << std::max<long>(64, N / 4)));
    RInterval lam = dd.Lambda.to_interval(prec + static_cast<mpfr_prec_t>(N));
    OrbitReport orep = orbit_counts(fp, N, false, prec);
    PntTerms out;
    out.M.assign(static_cast<size_t>(N) + 1, RInterval(Rat(0), prec));
    out.residual.assign(static_cast<size_t>(N) + 1, RInterval(Rat(0), prec));
    RInterval acc(Rat(0), prec + static_cast<mpfr_prec_t>(N));
    for (long ell = 1; ell <= N; ++ell) {
        // u_ell r_ell prod_p |ell|_p^{s} p^{-t |ell|^{-1}} Lambda^ell / ell
        RInterval u = u_n_interval(fp.handle, ell, prec);
        Rat factor = fp.r.eval(ell);
        for (long p : fp.S) {
            long ordp = 0, nn = ell;
            while (nn % p == 0) { nn /= p; ++ordp; }
            Rat se = fp.s.at(p).eval(ell) * Rat(-ordp);
            Rat te = fp.t.at(p).eval(ell) * Rat(-pow_int(Int(p), static_cast<unsigned long>(ordp)));
            if (se.get_den() != 1 || te.get_den() != 1)
                throw argument_error("pnt_main_term: irrational p-exponent");
            factor *= pow_rat(Rat(p), static_cast<long>(se.get_num().get_si()));
            factor *= pow_rat(Rat(p), static_cast<long>(te.get_num().get_si()));
        }
        RInterval term = u * RInterval(factor, prec) * lam.pow_ul(static_cast<unsigned long>(ell)) /
                         RInterval(Rat(ell), prec);
        acc = acc + term;
        out.M[static_cast<size_t>(ell)] = acc;
        out.residual[static_cast<size_t>(ell)] =
            RInterval(Rat(orep.pi[static_cast<size_t>(ell)]), prec) - acc;
    }
    return out;
}

AccumulationResult classify_accumulation(const FadParams& fp, mpfr_prec_t prec) {
    DominantData dd;
    require_positive_entropy(fp, dd, prec);
    AccumulationResult out;
    bool hyp = fp.handle.hyperbolic;
    if (!hyp) {
        out.cls = AccumulationClass::ContainsInterval;
        return out;
    }
    if (fp.p_part_trivial()) {
        out.cls = AccumulationClass::Finite;
        long varpi = fp.r.period();
        dd.Lambda.refine_below(Rat(1, Int(1) << 64));
        RInterval lam = dd.Lambda.to_interval(prec);
        RInterval lam_inv = RInterval(Rat(1), prec) / lam;
        for (long j = 0; j < varpi; ++j) {
            // L_j = (1 - Lambda^-varpi)^-1 sum_{i=0}^{varpi-1} r_{j+varpi-i} Lambda^{-i}
            RInterval s(Rat(0), prec);
            for (long i = 0; i < varpi; ++i) {
                long idx = j + varpi - i;
                while (idx < 1) idx += varpi;
                s = s + RInterval(fp.r.eval(idx), prec) * lam_inv.pow_ul(static_cast<unsigned long>(i));
            }
            RInterval denom = RInterval(Rat(1), prec) - lam_inv.pow_ul(static_cast<unsigned long>(varpi));
            out.limits.push_back(s / denom);
            if (dd.Lambda.is_rational()) {
                Rat L = dd.Lambda.rational_value();
                Rat ssum(0);
                for (long i = 0; i < varpi; ++i) {
                    long idx = j + varpi - i;
                    while (idx < 1) idx += varpi;
                    ssum += fp.r.eval(idx) * pow_rat(Rat(1) / L, i);
                }
                out.limits_exact.push_back(ssum / (Rat(1) - pow_rat(Rat(1) / L, varpi)));
            }
        }
        return out;
    }
    // hyperbolic, nontrivial p-part
    bool single = fp.S.size() == 1;
    bool s_nonzero = false, t_zero = true;
    for (auto& [p, sq] : fp.s) {
        (void)p;
        if (!sq.is_zero()) s_nonzero = true;
    }
    for (auto& [p, tq] : fp.t) {
        (void)p;
        if (!tq.is_zero()) t_zero = false;
    }
    if (single && s_nonzero && t_zero) out.cls = AccumulationClass::FiniteUnionCantor;
    else out.cls = AccumulationClass::UnknownMixedCase;
    return out;
}

DetectorDescriptor detector_structure(const FadParams& fp, long height) {
    DominantData dd;
    require_positive_entropy(fp, dd, 128);
    DetectorDescriptor out;
    out.varpi = fp.period();
    out.delta = dd.delta;
    out.S = fp.S;
    auto gens = circle_generators(fp.handle);
    long m = static_cast<long>(gens.size());
    Int s(out.varpi);
    long t_upper = m;
    if (m == 0) {
        out.t = 0;
        out.t_flag = RankFlag::Exact;
    } else {
        std::vector<CircleGen> gvec;
        for (auto& g : gens) gvec.push_back(g.gen);
        // bounded relation search over exponent vectors of height <= E
        std::vector<std::vector<long>> relations;
        std::vector<long> e(static_cast<size_t>(m), -height);
        bool done = false;
        while (!done) {
            bool zero = true, first_nonzero_pos = false;
            for (long i = 0; i < m; ++i) {
                if (e[static_cast<size_t>(i)] != 0) {
                    zero = false;
                    first_nonzero_pos = e[static_cast<size_t>(i)] > 0;
                    break;
                }
            }
            if (!zero && first_nonzero_pos) {  // canonical sign representative
                long ord = unit_product_torsion_order(gvec, e);
                if (ord >= 1) {
                    relations.push_back(e);
                    s = lcm(s, Int(ord));
                }
            }
            // increment
            long i = m - 1;
            while (i >= 0) {
                if (e[static_cast<size_t>(i)] < height) {
                    ++e[static_cast<size_t>(i)];
                    break;
                }
                e[static_cast<size_t>(i)] = -height;
                --i;
            }
            if (i < 0) done = true;
        }
        // rank of the relation lattice
        long rank = 0;
        if (!relations.empty()) {
            IntMatrix R(static_cast<long>(relations.size()), m);
            for (size_t i = 0; i < relations.size(); ++i)
                for (long j = 0; j < m; ++j)
                    R(static_cast<long>(i), j) = relations[i][static_cast<size_t>(j)];
            SmithFormZ snf = smith_form_Z(R);
            for (auto& a : snf.diag)
                if (a != 0) ++rank;
        }
        t_upper = m - rank;
        out.t = t_upper;
        // circle generators are never torsion, so the rank is at least 1
        out.t_flag = (t_upper <= 1) ? RankFlag::Exact : RankFlag::UpperBound;
    }
    // torsion orders of the eta_j (subset products within pair multiplicity)
    if (m >= 1) {
        std::vector<CircleGen> gvec;
        for (auto& g : gens) gvec.push_back(g.gen);
        std::vector<long> radii;
        for (auto& g : gens) radii.push_back(g.mult);
        std::vector<long> e(static_cast<size_t>(m), 0);
        std::function<void(long)> rec = [&](long idx) {
            if (idx == m) {
                bool zero = true;
                for (long v : e)
                    if (v) zero = false;
                if (zero) return;
                long ord = unit_product_torsion_order(gvec, e);
                if (ord >= 1) s = lcm(s, Int(ord));
                return;
            }
            for (long k = -radii[static_cast<size_t>(idx)]; k <= radii[static_cast<size_t>(idx)]; ++k) {
                e[static_cast<size_t>(idx)] = k;
                rec(idx + 1);
            }
        };
        rec(0);
    }
    out.s = s;
    Int s0(1);
    for (long p : fp.S) {
        Int q(1);
        Int ss = s;
        while (ss % p == 0) {
            ss /= p;
            q *= p;
        }
        s0 *= q;
    }
    out.s0 = s0;
    return out;
}

PntLimit pnt_limit(const FadParams& fp, mpfr_prec_t prec) {
    DominantData dd;
    require_positive_entropy(fp, dd, prec);
    PntLimit out;
    bool trivial = fp.S.empty() && fp.handle.hyperbolic && fp.r.period() == 1;
    if (!trivial) return out;
    out.exists = true;
    Rat r1 = fp.r.eval(1);
    if (dd.Lambda.is_rational()) {
        Rat L = dd.Lambda.rational_value();
        out.rational = true;
        out.value = r1 * L / (L - 1);
        out.enclosure = RInterval(out.value, prec);
    } else {
        dd.Lambda.refine_below(Rat(1, Int(1) << 64));
        RInterval lam = dd.Lambda.to_interval(prec);
        out.enclosure = RInterval(r1, prec) * lam / (lam - RInterval(Rat(1), prec));
    }
    return out;
}

} // namespace fad
