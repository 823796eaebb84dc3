#ifndef FAD_GCDSEQ_HPP
#define FAD_GCDSEQ_HPP

#include "fad/numeric.hpp"

#include <functional>

namespace fad {

// A sequence with a_n = a_{gcd(n, period)}, stored by its values on the
// divisors of the period.  Always normalized to the minimal period.
class GcdSeq {
  public:
    GcdSeq() : period_(1) { values_[1] = Rat(0); }
    static GcdSeq constant(const Rat& v) {
        GcdSeq s;
        s.values_[1] = v;
        return s;
    }
    // values must be defined on every divisor of period
    GcdSeq(long period, std::map<long, Rat> values);

    // a_n = sum_{j in D, j | n} d_j
    static GcdSeq from_divisor_sums(const std::map<long, Rat>& d);
    // inverse direction (Moebius over divisors of the period); round-trips
    std::map<long, Rat> divisor_sums() const;

    Rat eval(long n) const;
    long period() const { return period_; }
    const std::map<long, Rat>& values() const { return values_; }

    bool is_constant(const Rat& v) const;
    bool is_zero() const { return is_constant(Rat(0)); }

    GcdSeq pointwise(const GcdSeq& o, const std::function<Rat(const Rat&, const Rat&)>& f) const;
    GcdSeq operator*(const GcdSeq& o) const;
    GcdSeq operator+(const GcdSeq& o) const;
    GcdSeq scale(const Rat& k) const;

    bool operator==(const GcdSeq& o) const { return period_ == o.period_ && values_ == o.values_; }

  private:
    long period_;
    std::map<long, Rat> values_;  // keys: divisors of period_
    void normalize();
};

} // namespace fad

#endif
