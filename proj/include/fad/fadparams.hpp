#ifndef FAD_FADPARAMS_HPP
#define FAD_FADPARAMS_HPP

#include "fad/gcdseq.hpp"
#include "fad/multtype.hpp"

#include <functional>
#include <set>

namespace fad {

// The quintuple (A, c, S, r, {s_p, t_p}) behind
//   f_n = |det(A^n-1)| c^n r_n prod_{p in S} |n|_p^{s_{p,n}} p^{-t_{p,n} |n|_p^{-1}}.
// All data exact; s_p and t_p have period coprime to p.
struct FadParams {
    MultTypeHandle handle;     // carries A
    Rat c = 1;
    std::set<long> S;
    GcdSeq r = GcdSeq::constant(Rat(1));
    std::map<long, GcdSeq> s;  // per p in S
    std::map<long, GcdSeq> t;  // per p in S

    bool p_part_trivial() const {
        for (auto& [p, sq] : s) { (void)p; if (!sq.is_zero()) return false; }
        for (auto& [p, tq] : t) { (void)p; if (!tq.is_zero()) return false; }
        return true;
    }
    long period() const {
        long per = r.period();
        for (auto& [p, q] : s) { (void)p; per = std::lcm(per, q.period()); }
        for (auto& [p, q] : t) { (void)p; per = std::lcm(per, q.period()); }
        return per;
    }
};

FadParams make_fad_params(IntMatrix A, Rat c, std::set<long> S, GcdSeq r,
                          std::map<long, GcdSeq> s, std::map<long, GcdSeq> t);

// Drops primes with s == t == 0 from S and re-normalizes periods; the
// normal form under which representations are unique.
void normalize_params(FadParams& fp);

// Exact evaluation; throws argument_error("irrational value") when a
// p-power exponent fails to be an integer (reachable only from raw input).
Rat fad_eval(const FadParams& fp, long n);

// Integer evaluation with positivity/integrality check.
Int fad_eval_int(const FadParams& fp, long n);

struct VerifyResult {
    bool ok;
    long first_mismatch;  // meaningful when !ok
};
VerifyResult fad_verify(const FadParams& fp, const std::function<Rat(long)>& oracle, long N);

FadParams fad_product(const FadParams& a, const FadParams& b);

// Bounded realizability test (Puri-Ward conditions up to N).
struct RealizableVerdict {
    bool pass;
    long witness;           // failing ell
    std::string reason;     // "nonnegativity" or "integrality"
};
RealizableVerdict realizable_check(const std::function<Int(long)>& f, long N);
// Variant with a growth envelope C^{n+1} D <= a_n <= C^{2n} D that makes
// nonnegativity automatic; only integrality is then tested.
RealizableVerdict realizable_check(const std::function<Int(long)>& f, long N,
                                   const Int& C, const Int& D);

// Necessary conditions for a FAD-sequence to be realizable.
std::vector<std::string> validate_realizable_params(const FadParams& fp);

} // namespace fad

#endif
