#include "fad/gcdseq.hpp"

namespace fad {

GcdSeq::GcdSeq(long period, std::map<long, Rat> values) : period_(period), values_(std::move(values)) {
    if (period_ < 1) throw argument_error("GcdSeq: period must be positive");
    for (long d : divisors(period_))
        if (!values_.count(d)) throw argument_error("GcdSeq: value missing on divisor " + std::to_string(d));
    // drop spurious keys
    for (auto it = values_.begin(); it != values_.end();) {
        if (period_ % it->first != 0) it = values_.erase(it);
        else ++it;
    }
    normalize();
}

void GcdSeq::normalize() {
    // minimal period: smallest divisor p' of period with
    // a_{gcd(d, p')} = a_d for every divisor d of the period
    for (long cand : divisors(period_)) {
        bool ok = true;
        for (long d : divisors(period_)) {
            long g = std::gcd(d, cand);
            if (values_.at(g) != values_.at(d)) { ok = false; break; }
        }
        if (ok) {
            if (cand != period_) {
                std::map<long, Rat> nv;
                for (long d : divisors(cand)) nv[d] = values_.at(d);
                values_ = std::move(nv);
                period_ = cand;
            }
            return;
        }
    }
}

GcdSeq GcdSeq::from_divisor_sums(const std::map<long, Rat>& d) {
    if (d.empty()) return GcdSeq();  // zero sequence, period 1
    long per = 1;
    for (auto& [j, v] : d) {
        if (j < 1) throw argument_error("from_divisor_sums: nonpositive index");
        (void)v;
        per = std::lcm(per, j);
    }
    std::map<long, Rat> vals;
    for (long dv : divisors(per)) {
        Rat s(0);
        for (auto& [j, v] : d)
            if (dv % j == 0) s += v;
        vals[dv] = s;
    }
    return GcdSeq(per, std::move(vals));
}

std::map<long, Rat> GcdSeq::divisor_sums() const {
    std::map<long, Rat> out;
    for (long j : divisors(period_)) {
        Rat s(0);
        for (long k : divisors(j)) s += Rat(mobius(j / k)) * values_.at(k);
        if (s != 0) out[j] = s;
    }
    return out;
}

Rat GcdSeq::eval(long n) const {
    if (n < 1) throw argument_error("GcdSeq::eval: n must be >= 1");
    return values_.at(std::gcd(n, period_));
}

bool GcdSeq::is_constant(const Rat& v) const {
    for (auto& [d, x] : values_) {
        (void)d;
        if (x != v) return false;
    }
    return true;
}

GcdSeq GcdSeq::pointwise(const GcdSeq& o, const std::function<Rat(const Rat&, const Rat&)>& f) const {
    long per = std::lcm(period_, o.period_);
    std::map<long, Rat> vals;
    for (long d : divisors(per)) vals[d] = f(eval(d), o.eval(d));
    return GcdSeq(per, std::move(vals));
}

GcdSeq GcdSeq::operator*(const GcdSeq& o) const {
    return pointwise(o, [](const Rat& a, const Rat& b) { return a * b; });
}

GcdSeq GcdSeq::operator+(const GcdSeq& o) const {
    return pointwise(o, [](const Rat& a, const Rat& b) { return a + b; });
}

GcdSeq GcdSeq::scale(const Rat& k) const {
    std::map<long, Rat> vals;
    for (auto& [d, v] : values_) vals[d] = v * k;
    return GcdSeq(period_, std::move(vals));
}

} // namespace fad
