#include "fad/interval.hpp"

#include <sstream>

namespace fad {

RInterval operator+(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RInterval operator-(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

RInterval operator-(const RInterval& a) {
    RInterval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

RInterval operator*(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lo = min of the four products rounded down, hi = max rounded up
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_mul(t, *pa, *pb, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, *pa, *pb, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

RInterval operator/(const RInterval& a, const RInterval& b) {
    if (b.contains_zero()) throw precision_error("interval division by interval containing zero");
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_div(t, *pa, *pb, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, *pa, *pb, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

RInterval hull(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RInterval log_interval(const RInterval& a) {
    if (!a.strictly_positive()) throw precision_error("log_interval: argument not positive");
    RInterval r(a.prec_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

RInterval acos_interval(const RInterval& a) {
    RInterval r(a.prec_);
    mpfr_t x;
    mpfr_init2(x, a.prec_);
    // acos decreasing: lo from hi endpoint, clamp to the domain
    mpfr_set(x, a.hi_, MPFR_RNDU);
    if (mpfr_cmp_ui(x, 1) > 0) mpfr_set_ui(x, 1, MPFR_RNDD);
    mpfr_acos(r.lo_, x, MPFR_RNDD);
    mpfr_set(x, a.lo_, MPFR_RNDD);
    if (mpfr_cmp_si(x, -1) < 0) mpfr_set_si(x, -1, MPFR_RNDU);
    mpfr_acos(r.hi_, x, MPFR_RNDU);
    mpfr_clear(x);
    return r;
}

RInterval sqrt_interval(const RInterval& a) {
    RInterval r(a.prec_);
    if (mpfr_sgn(a.lo_) < 0) {
        if (mpfr_sgn(a.hi_) < 0) throw precision_error("sqrt_interval: negative argument");
        mpfr_set_ui(r.lo_, 0, MPFR_RNDD);
    } else {
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::pow_ul(unsigned long n) const {
    RInterval r = RInterval(Rat(1), prec_);
    RInterval b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

RInterval eval_interval(const ZPoly& p, const RInterval& x) {
    RInterval acc(Rat(0), x.prec());
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = acc * x + RInterval::exact_int(p.c[i], x.prec());
    }
    return acc;
}

std::string RInterval::str(int digits) const {
    auto one = [&](const mpfr_t& v, mpfr_rnd_t rnd) {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*R*g", digits, rnd, v);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    };
    return "[" + one(lo_, MPFR_RNDD) + ", " + one(hi_, MPFR_RNDU) + "]";
}

} // namespace fad
