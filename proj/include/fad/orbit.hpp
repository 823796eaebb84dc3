#ifndef FAD_ORBIT_HPP
#define FAD_ORBIT_HPP

#include "fad/fadparams.hpp"

#include <optional>

namespace fad {

struct OrbitReport {
    std::vector<Int> P;         // P[ell], ell = 1..N (index 0 unused)
    std::vector<Int> pi;        // pi[N'] = sum_{ell <= N'} P_ell
    std::vector<RInterval> Pi;  // Pi[N'] = N' pi(N') / Lambda^N'
};

// P_ell by exact Moebius inversion; throws argument_error("not realizable")
// on a negative or fractional P_ell (corrupted raw descriptor).
OrbitReport orbit_counts(const FadParams& fp, long N_max, bool parallel = false,
                         mpfr_prec_t prec = 128);

struct ThetaValue {
    bool is_rational = false;
    Rat value;            // meaningful when is_rational
    RInterval enclosure;  // always valid
};
struct ThetaResult {
    ThetaValue theta_prime, theta;
};
// Error exponent of the PNT analogue from the exact multiplicity aggregation.
ThetaResult theta(const FadParams& fp, mpfr_prec_t prec = 128);

struct PntTerms {
    std::vector<RInterval> M;         // main term M_f(N') for N' <= N
    std::vector<RInterval> residual;  // pi(N') - M(N')
};
PntTerms pnt_main_term(const FadParams& fp, long N, mpfr_prec_t prec = 128);

enum class AccumulationClass { Finite, FiniteUnionCantor, ContainsInterval, UnknownMixedCase };
struct AccumulationResult {
    AccumulationClass cls;
    std::vector<RInterval> limits;   // the L_j enclosures when Finite
    std::vector<Rat> limits_exact;   // exact values when Lambda is rational
};
AccumulationResult classify_accumulation(const FadParams& fp, mpfr_prec_t prec = 128);

enum class RankFlag { Exact, UpperBound };
struct DetectorDescriptor {
    long varpi = 1;
    long delta = 1;
    long t = 0;
    RankFlag t_flag = RankFlag::Exact;
    Int s = 1;
    Int s0 = 1;
    std::set<long> S;
};
// Det_f = T^t x Z/sZ x_{Z/s0Z} prod_{p in S} Z_p.
DetectorDescriptor detector_structure(const FadParams& fp, long height = 6);

struct PntLimit {
    bool exists = false;
    bool rational = false;
    Rat value;            // r_1 Lambda/(Lambda-1) when rational
    RInterval enclosure;
};
PntLimit pnt_limit(const FadParams& fp, mpfr_prec_t prec = 128);

} // namespace fad

#endif
