#include "fad/realalg.hpp"

namespace fad {

std::vector<ZPoly> sturm_chain(const ZPoly& f) {
    std::vector<ZPoly> ch;
    ZPoly p0 = primitive_part(f);
    if (p0.is_zero()) return ch;
    ch.push_back(p0);
    if (p0.deg() == 0) return ch;
    ZPoly p1 = primitive_part(derivative(p0));
    ch.push_back(p1);
    while (!ch.back().is_zero() && ch.back().deg() > 0) {
        const ZPoly& a = ch[ch.size() - 2];
        const ZPoly& b = ch.back();
        long steps = a.deg() - b.deg() + 1;
        ZPoly r = pseudo_rem(a, b);
        // pseudo_rem scales by lc(b)^steps; undo a negative scale so the
        // chain keeps the Sturm sign property
        if (b.lead() < 0 && steps % 2 == 1) r = -r;
        r = -r;
        if (!r.is_zero()) {
            Int cont = content(r);
            for (auto& x : r.c) x /= cont;  // cont > 0
        }
        ch.push_back(r);
        if (r.is_zero()) { ch.pop_back(); break; }
    }
    return ch;
}

namespace {

int sign_at(const ZPoly& p, const Rat& x) {
    Rat v = eval(p, x);
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
}

long variations(const std::vector<int>& s) {
    long v = 0;
    int prev = 0;
    for (int x : s) {
        if (x == 0) continue;
        if (prev != 0 && x != prev) ++v;
        prev = x;
    }
    return v;
}

long var_at(const std::vector<ZPoly>& chain, const Rat& x) {
    std::vector<int> s;
    s.reserve(chain.size());
    for (auto& p : chain) s.push_back(sign_at(p, x));
    return variations(s);
}

long var_at_inf(const std::vector<ZPoly>& chain, int dir) {  // dir=+1 or -1
    std::vector<int> s;
    for (auto& p : chain) {
        if (p.is_zero()) { s.push_back(0); continue; }
        int lead = p.lead() > 0 ? 1 : -1;
        if (dir < 0 && p.deg() % 2 == 1) lead = -lead;
        s.push_back(lead);
    }
    return variations(s);
}

} // namespace

long sturm_count(const std::vector<ZPoly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    return var_at(chain, a) - var_at(chain, b);
}

long sturm_count_all(const std::vector<ZPoly>& chain) {
    if (chain.empty()) return 0;
    return var_at_inf(chain, -1) - var_at_inf(chain, +1);
}

long sturm_count_below(const std::vector<ZPoly>& chain, const Rat& b) {
    if (chain.empty()) return 0;
    return var_at_inf(chain, -1) - var_at(chain, b);
}

Rat root_bound(const ZPoly& f) {
    if (f.deg() < 1) return Rat(1);
    Rat m(0);
    for (long i = 0; i < f.deg(); ++i) {
        Rat v = Rat(::abs(f.coeff(i))) / Rat(::abs(f.lead()));
        if (v > m) m = v;
    }
    return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly& f) {
    std::vector<std::pair<Rat, Rat>> out;
    ZPoly sf = squarefree_part(f);
    if (sf.deg() < 1) return out;
    auto chain = sturm_chain(sf);
    Rat B = root_bound(sf);
    struct Seg { Rat a, b; long cnt; };
    std::vector<Seg> work;
    long total = sturm_count(chain, -B, B);
    if (total > 0) work.push_back({-B, B, total});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.cnt == 1) {
            Rat a = s.a, b = s.b;
            if (sign_at(sf, b) == 0) {
                // the root is exactly b (rational root); re-center
                Rat eps = (b - a) / 2;
                while (sturm_count(chain, b - eps, b + eps) != 1 ||
                       sign_at(sf, b - eps) == 0 || sign_at(sf, b + eps) == 0)
                    eps = eps / 2;
                a = b - eps;
                b = b + eps;
            }
            out.push_back({a, b});
            continue;
        }
        Rat mid = (s.a + s.b) / 2;
        // nudge off a root
        while (sign_at(sf, mid) == 0) mid = (s.a + mid) / 2 + Rat(1, 1000000007);
        long left = sturm_count(chain, s.a, mid);
        long right = s.cnt - left;
        if (left > 0) work.push_back({s.a, mid, left});
        if (right > 0) work.push_back({mid, s.b, right});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

RealAlgebraic RealAlgebraic::from_rational(const Rat& r) {
    RealAlgebraic a;
    a.exact_ = true;
    a.lo_ = a.hi_ = r;
    a.poly_ = ZPoly({Int(-r.get_num()), Int(r.get_den())});
    return a;
}

RealAlgebraic::RealAlgebraic(ZPoly minpoly, Rat lo, Rat hi)
    : poly_(primitive_part(minpoly)), lo_(lo), hi_(hi), exact_(false) {
    if (poly_.deg() < 1) throw argument_error("RealAlgebraic: constant polynomial");
    if (poly_.deg() == 1) {
        exact_ = true;
        Rat v(-poly_.coeff(0), poly_.coeff(1));
        v.canonicalize();
        lo_ = hi_ = v;
    }
}

Rat RealAlgebraic::rational_value() const {
    if (!is_rational()) throw argument_error("RealAlgebraic: not rational");
    if (exact_) return lo_;
    Rat v(-poly_.coeff(0), poly_.coeff(1));
    v.canonicalize();
    return v;
}

const std::vector<ZPoly>& RealAlgebraic::chain() const {
    if (chain_.empty()) chain_ = sturm_chain(poly_);
    return chain_;
}

void RealAlgebraic::refine() const {
    if (exact_) return;
    Rat mid = (lo_ + hi_) / 2;
    Rat v = eval(poly_, mid);
    if (v == 0) {
        // root is rational-but-irreducible-degree>1 impossible; still, nudge
        Rat eps = (hi_ - lo_) / 1000;
        mid -= eps;
        v = eval(poly_, mid);
    }
    long leftcount = sturm_count(chain(), lo_, mid);
    if (leftcount >= 1) hi_ = mid;
    else lo_ = mid;
}

void RealAlgebraic::refine_below(const Rat& width) const {
    while (!exact_ && hi_ - lo_ >= width) refine();
}

RInterval RealAlgebraic::to_interval(mpfr_prec_t prec) const {
    return RInterval(lo_, hi_, prec);
}

int RealAlgebraic::sign() const {
    if (exact_) return lo_ == 0 ? 0 : (lo_ > 0 ? 1 : -1);
    // irreducible of degree > 1 never vanishes at 0
    return compare(Rat(0));
}

int RealAlgebraic::compare(const Rat& r) const {
    if (exact_) return lo_ == r ? 0 : (lo_ < r ? -1 : 1);
    if (eval(poly_, r) == 0) return 0;  // cannot happen for irreducible deg>1
    for (;;) {
        if (hi_ < r || (hi_ == r)) return -1;
        if (lo_ > r || (lo_ == r)) return 1;
        if (r > lo_ && r < hi_) {
            // decide which side of the root r falls on
            long below = sturm_count(chain(), lo_, r);
            return below >= 1 ? -1 : 1;
        }
        refine();
    }
}

int RealAlgebraic::compare(const RealAlgebraic& o) const {
    if (exact_ && o.exact_) return lo_ == o.lo_ ? 0 : (lo_ < o.lo_ ? -1 : 1);
    if (exact_) return -o.compare(lo_);
    if (o.exact_) return compare(o.lo_);
    if (real_algebraic_equal(poly_, lo_, hi_, o.poly_, o.lo_, o.hi_)) return 0;
    for (int iter = 0; iter < 100000; ++iter) {
        if (hi_ <= o.lo_) return -1;
        if (o.hi_ <= lo_) return 1;
        refine();
        o.refine();
    }
    throw precision_error("RealAlgebraic::compare failed to separate");
}

RealAlgebraic RealAlgebraic::negate() const {
    if (exact_) return from_rational(-lo_);
    RealAlgebraic r = *this;
    r.poly_ = primitive_part(negate_arg(poly_));
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    r.chain_.clear();
    return r;
}

RealAlgebraic RealAlgebraic::abs() const {
    return sign() >= 0 ? *this : negate();
}

RealAlgebraic RealAlgebraic::scale(const Rat& c) const {
    if (c == 0) return from_rational(Rat(0));
    if (exact_) return from_rational(lo_ * c);
    RealAlgebraic r = *this;
    r.poly_ = scale_arg(poly_, Rat(1) / c);  // roots scaled by c
    if (c > 0) {
        r.lo_ = lo_ * c;
        r.hi_ = hi_ * c;
    } else {
        r.lo_ = hi_ * c;
        r.hi_ = lo_ * c;
    }
    r.chain_.clear();
    return r;
}

bool real_algebraic_equal(const ZPoly& f, Rat flo, Rat fhi, const ZPoly& g, Rat glo, Rat ghi) {
    ZPoly w = gcd(squarefree_part(f), squarefree_part(g));
    if (w.deg() < 1) return false;
    auto chf = sturm_chain(squarefree_part(f));
    auto chg = sturm_chain(squarefree_part(g));
    auto chw = sturm_chain(w);
    for (int iter = 0; iter < 100000; ++iter) {
        if (fhi <= glo || ghi <= flo) return false;
        Rat lo = std::min(flo, glo), hi = std::max(fhi, ghi);
        // union isolates one root of each and one root of the gcd => equal
        if (sturm_count(chf, lo, hi) == 1 && sturm_count(chg, lo, hi) == 1 &&
            sturm_count(chw, lo, hi) == 1)
            return true;
        // refine both intervals
        auto step = [](const std::vector<ZPoly>& ch, const ZPoly& p, Rat& a, Rat& b) {
            Rat mid = (a + b) / 2;
            if (eval(p, mid) == 0) mid = (a + mid) / 2;
            if (sturm_count(ch, a, mid) >= 1) b = mid;
            else a = mid;
        };
        step(chf, squarefree_part(f), flo, fhi);
        step(chg, squarefree_part(g), glo, ghi);
    }
    throw precision_error("real_algebraic_equal: no decision");
}

} // namespace fad
