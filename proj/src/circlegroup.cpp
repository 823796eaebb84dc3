#include "fad/circlegroup.hpp"

namespace fad {

namespace {

IntMatrix companion(const ZPoly& f) {
    // f monic (self-reciprocal factors of charpolys are)
    long d = f.deg();
    if (f.lead() != 1) throw argument_error("companion: non-monic polynomial");
    IntMatrix C(d, d);
    for (long i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (long i = 0; i < d; ++i) C(i, d - 1) = -f.coeff(i);
    return C;
}

IntMatrix kronecker(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix K(A.rows * B.rows, A.cols * B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j) {
            if (A(i, j) == 0) continue;
            for (long k = 0; k < B.rows; ++k)
                for (long l = 0; l < B.cols; ++l)
                    K(i * B.rows + k, j * B.cols + l) = A(i, j) * B(k, l);
        }
    return K;
}

// The box of xi = e^{i theta} with 2cos(theta) = y, upper half plane.
CBox xi_box(const CircleGen& gen, mpfr_prec_t prec, const Rat& width) {
    gen.y.refine_below(width);
    RInterval c = gen.y.to_interval(prec) * RInterval(Rat(1, 2), prec);
    RInterval s2 = RInterval(Rat(1), prec) - c * c;
    RInterval s = sqrt_interval(s2);
    return CBox(c, s);
}

} // namespace

RInterval circle_angle(const CircleGen& gen, mpfr_prec_t prec) {
    gen.y.refine_below(Rat(1, Int(1) << 40));
    RInterval c = gen.y.to_interval(prec) * RInterval(Rat(1, 2), prec);
    return acos_interval(c);
}

bool unit_product_is_one(const std::vector<CircleGen>& gens, const std::vector<long>& exps) {
    if (gens.size() != exps.size()) throw argument_error("unit_product_is_one: size mismatch");
    // trivial cases
    bool all_zero = true;
    for (long e : exps)
        if (e != 0) all_zero = false;
    if (all_zero) return true;

    // cheap numeric filter on angles
    {
        mpfr_prec_t prec = 256;
        RInterval sum(Rat(0), prec);
        for (size_t j = 0; j < gens.size(); ++j) {
            if (exps[j] == 0) continue;
            RInterval th = circle_angle(gens[j], prec);
            sum = sum + th * RInterval(Rat(exps[j]), prec);
        }
        // sound reject: if [lo,hi] of sum/(2 pi) contains no integer, the
        // product is certainly not 1
        mpfr_t pi2d, pi2u, qlo, qhi;
        mpfr_init2(pi2d, prec);
        mpfr_init2(pi2u, prec);
        mpfr_init2(qlo, prec);
        mpfr_init2(qhi, prec);
        mpfr_const_pi(pi2d, MPFR_RNDD);
        mpfr_mul_ui(pi2d, pi2d, 2, MPFR_RNDD);
        mpfr_const_pi(pi2u, MPFR_RNDU);
        mpfr_mul_ui(pi2u, pi2u, 2, MPFR_RNDU);
        // conservative outward division (sum may be negative)
        mpfr_div(qlo, sum.lo(), mpfr_sgn(sum.lo()) >= 0 ? pi2u : pi2d, MPFR_RNDD);
        mpfr_div(qhi, sum.hi(), mpfr_sgn(sum.hi()) >= 0 ? pi2d : pi2u, MPFR_RNDU);
        mpfr_floor(qhi, qhi);
        mpfr_ceil(qlo, qlo);
        bool no_integer = mpfr_cmp(qhi, qlo) < 0;
        mpfr_clear(pi2d);
        mpfr_clear(pi2u);
        mpfr_clear(qlo);
        mpfr_clear(qhi);
        if (no_integer) return false;
    }

    // exact route: pi = prod xi_j^{e_j} is an eigenvalue of the Kronecker
    // product of companion(g_j)^{|e_j|}; negative exponents swap xi for
    // 1/xi, which is also a root of g_j, so the same matrix works.
    IntMatrix K = IntMatrix::identity(1);
    for (size_t j = 0; j < gens.size(); ++j) {
        if (exps[j] == 0) continue;
        IntMatrix P = mat_pow(companion(gens[j].g), static_cast<unsigned long>(std::abs(exps[j])));
        K = kronecker(K, P);
    }
    ZPoly Q = charpoly(K);
    // multiplicity of the root 1
    ZPoly xm1({Int(-1), Int(1)});
    ZPoly Q1 = Q;
    long mul1 = 0;
    while (eval(Q1, Int(1)) == 0) {
        Q1 = div_exact(Q1, xm1);
        ++mul1;
    }
    if (mul1 == 0) return false;  // 1 is not even an eigenvalue
    // separation: any root rho != 1 of Q has |rho - 1| >= 1 / (1+B)^(deg Q1)
    Rat B = root_bound(Q1);
    Rat eps0 = Rat(1) / pow_rat(B + 1, Q1.deg() == 0 ? 1 : Q1.deg());
    // Refine the product box until its distance criterion decides.
    for (int iter = 0; iter < 64; ++iter) {
        Rat width = Rat(1, Int(1) << (16 + 8 * iter));
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(128 + 64 * iter);
        CBox prod(RInterval(Rat(1), prec), RInterval(Rat(0), prec));
        for (size_t j = 0; j < gens.size(); ++j) {
            if (exps[j] == 0) continue;
            CBox xb = xi_box(gens[j], prec, width);
            if (exps[j] < 0) xb.im = -xb.im;  // conjugate = inverse on the circle
            prod = prod * pow_box(xb, static_cast<unsigned long>(std::abs(exps[j])));
        }
        // is the box within eps0/2 of node 1, or does it exclude 1?
        RInterval dre = prod.re - RInterval(Rat(1), prec);
        RInterval dim = prod.im;
        RInterval dist2 = dre * dre + dim * dim;
        Rat e2 = eps0 * eps0 / 4;
        if (mpfr_cmp_q(dist2.hi(), e2.get_mpq_t()) < 0) return true;   // forced equal
        if (mpfr_cmp_q(dist2.lo(), e2.get_mpq_t()) > 0) return false;  // separated
    }
    throw precision_error("unit_product_is_one: refinement exhausted");
}

long unit_product_torsion_order(const std::vector<CircleGen>& gens, const std::vector<long>& exps) {
    if (unit_product_is_one(gens, exps)) return 1;
    // the product generates a field of degree <= prod deg(g_j); torsion of
    // order k needs phi(k) <= that degree
    long D = 1;
    for (size_t j = 0; j < gens.size(); ++j)
        if (exps[j] != 0) D *= gens[j].g.deg();
    long kmax = 2 * D * D + 4;
    for (long k = 2; k <= kmax; ++k) {
        if (euler_phi(k) > D) continue;
        std::vector<long> ek(exps);
        bool overflow = false;
        for (auto& e : ek) {
            if (std::abs(e) > (1L << 40) / k) overflow = true;
            e *= k;
        }
        if (overflow) throw budget_error("unit_product_torsion_order: exponent overflow");
        if (unit_product_is_one(gens, ek)) return k;
    }
    return 0;
}

} // namespace fad
