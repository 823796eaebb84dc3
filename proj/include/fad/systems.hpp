#ifndef FAD_SYSTEMS_HPP
#define FAD_SYSTEMS_HPP

#include "fad/fadparams.hpp"
#include "fad/twisted.hpp"

#include <variant>

namespace fad {

struct TorusDesc {
    long p;
    IntMatrix M;
};
// entry = list of F_q coordinate arrays, phi-degree major
using TwistedPolyEnc = std::vector<std::vector<long>>;
struct VectorGroupDesc {
    long p;
    long nu;
    std::vector<long> modulus;  // monic, degree nu, over F_p
    std::vector<std::vector<TwistedPolyEnc>> sigma;  // r x r
};
struct SIntegerDesc {
    Int xi;
    std::set<long> S;
};
struct CADesc {
    long p;
    std::map<long, long> laurent;  // exponent -> coefficient mod p
};
struct EllipticDesc {
    long p;
    long m;
    bool ordinary;
};
struct SteinbergDesc {
    long p;
    Int c;        // positive p-power
    IntMatrix J;  // action on the invariant classes
    IntMatrix Z;  // action on the central-torus characters (possibly 0x0)
};
struct FiniteDesc {
    std::map<long, long> cycles;  // length -> count
};
struct RawFadDesc {
    IntMatrix A;
    Rat c;
    std::set<long> S;
    std::map<long, Rat> r;             // divisor -> value (period = lcm of keys' lcm structure)
    long r_period;
    std::map<long, std::map<long, Rat>> s;  // p -> (divisor -> value)
    std::map<long, long> s_period;
    std::map<long, std::map<long, Rat>> t;
    std::map<long, long> t_period;
};
struct ProductDesc;

using SystemDescriptor = std::variant<TorusDesc, VectorGroupDesc, SIntegerDesc, CADesc,
                                      EllipticDesc, SteinbergDesc, FiniteDesc, RawFadDesc,
                                      std::shared_ptr<ProductDesc>>;

struct ProductDesc {
    std::vector<SystemDescriptor> factors;
};

struct FixedPointReport {
    FadParams params;
    std::function<Int(long)> direct;  // the system's own fixed-point formula
    std::string provenance;
};

// p-adic extraction shared by the torus-like constructors: write
// |det(M^n-1)|_p = r_n |n|_p^{s_n}; stabilization caps and the verification
// window n <= 2*varpi*p are hard contracts.
struct PadicSplit {
    GcdSeq r, s;
};
PadicSplit torus_padic_split(const IntMatrix& M, long p);

FixedPointReport torus_system(long p, const IntMatrix& M);
FixedPointReport vector_group_system(long p, long nu, const std::vector<long>& modulus,
                                     const TwistedMatrix& sigma);
FixedPointReport s_integer_system(const Int& xi, const std::set<long>& S);
FixedPointReport ca_system(long p, const std::map<long, long>& laurent);
FixedPointReport elliptic_system(long p, long m, bool ordinary);
FixedPointReport steinberg_system(const SteinbergDesc& d);
FixedPointReport finite_system(const std::map<long, long>& cycles);
FixedPointReport build_system(const SystemDescriptor& desc);

// Chevalley/Steinberg convenience: the q-Frobenius count from invariant
// degrees and the central rank:  q^{sum(d_i - 1)} prod(q^{d_i}-1) (q-1)^z.
Int chevalley_count(const Int& q, const std::vector<long>& degrees, long central_rank);
// Descriptor for the q-Frobenius with the given type data.
SteinbergDesc q_frobenius_descriptor(long p, const Int& q, const std::vector<long>& degrees, long central_rank);

// ---- independent oracles ---------------------------------------------------

enum class TorusOracleMode { Snf, Enumerate };
Int torus_oracle(long p, const IntMatrix& M, long n, TorusOracleMode mode, long M_field = 0);

Int vector_group_oracle(long p, long nu, const std::vector<long>& modulus,
                        const TwistedMatrix& sigma, long n, long M_field);

Int ca_oracle(long p, const std::map<long, long>& laurent, long n);

// mult-by-m torsion count through division polynomials on an explicit curve
// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p.
Int elliptic_oracle(long p, long a2, long a4, long a6, long m, long n);

// OpenMP variant of the torus enumeration oracle plus its serial reference.
Int torus_oracle_enumerate_kernel(long p, const IntMatrix& M, long n, long M_field, bool parallel);

// ---- zeta-equality classification ------------------------------------------

enum class TorusEquivalence { EquivariantlyIsogenous, TimeReversedIsogenous, Distinct };
TorusEquivalence torus_zeta_equivalence(long p, const IntMatrix& M1, const IntMatrix& M2);

// twisted matrix construction from the descriptor encoding
TwistedMatrix decode_twisted(const FqPtr& F, const std::vector<std::vector<TwistedPolyEnc>>& entries);

} // namespace fad

#endif
