#ifndef FAD_TWISTED_HPP
#define FAD_TWISTED_HPP

#include "fad/gcdseq.hpp"
#include "fad/matrix.hpp"

#include <memory>

namespace fad {

// F_q = F_p[x]/(modulus), q = p^nu, modulus monic irreducible of degree nu.
// Elements are coefficient vectors over F_p.  Shared by value semantics.
struct FqField {
    long p;
    long nu;
    std::vector<long> modulus;  // length nu+1, monic
    // Frobenius x -> x^p as an F_p-linear map (nu x nu), and its inverse.
    std::vector<std::vector<long>> frob, frob_inv;

    FqField(long p, long nu, std::vector<long> modulus);
    static std::vector<long> default_modulus(long p, long nu);  // smallest lexicographic
};

using FqPtr = std::shared_ptr<const FqField>;

struct FqElem {
    std::vector<long> c;  // length nu over F_p
};

FqElem fq_zero(const FqPtr& F);
FqElem fq_one(const FqPtr& F);
FqElem fq_from_int(const FqPtr& F, long v);
FqElem fq_from_coords(const FqPtr& F, std::vector<long> coords);
bool fq_is_zero(const FqElem& a);
bool fq_eq(const FqElem& a, const FqElem& b);
FqElem fq_add(const FqPtr& F, const FqElem& a, const FqElem& b);
FqElem fq_sub(const FqPtr& F, const FqElem& a, const FqElem& b);
FqElem fq_neg(const FqPtr& F, const FqElem& a);
FqElem fq_mul(const FqPtr& F, const FqElem& a, const FqElem& b);
FqElem fq_inv(const FqPtr& F, const FqElem& a);
FqElem fq_frob(const FqPtr& F, const FqElem& a, long k = 1);      // a^(p^k)
FqElem fq_frob_inv(const FqPtr& F, const FqElem& a, long k = 1);  // p^k-th root

// Twisted polynomial sum a_i phi^i over F_q with phi a = a^p phi.
struct TwistedPoly {
    FqPtr F;
    std::vector<FqElem> c;  // phi-degree low-to-high, normalized
    void trim();
    bool is_zero() const { return c.empty(); }
    long deg() const { return static_cast<long>(c.size()) - 1; }
    long val() const;  // lowest nonzero index (v_phi); -1 for zero
};

TwistedPoly tp_zero(const FqPtr& F);
TwistedPoly tp_const(const FqPtr& F, const FqElem& a);
TwistedPoly tp_phi_power(const FqPtr& F, const FqElem& a, long k);  // a phi^k
TwistedPoly tp_add(const TwistedPoly& a, const TwistedPoly& b);
TwistedPoly tp_sub(const TwistedPoly& a, const TwistedPoly& b);
TwistedPoly tp_mul(const TwistedPoly& a, const TwistedPoly& b);
bool tp_eq(const TwistedPoly& a, const TwistedPoly& b);

// Right division a = q*b + r, deg r < deg b.
std::pair<TwistedPoly, TwistedPoly> tp_right_divmod(const TwistedPoly& a, const TwistedPoly& b);
// Left division a = b*q + r, deg r < deg b.
std::pair<TwistedPoly, TwistedPoly> tp_left_divmod(const TwistedPoly& a, const TwistedPoly& b);

// r x r matrices over the twisted ring.
struct TwistedMatrix {
    FqPtr F;
    long n = 0;
    std::vector<TwistedPoly> e;  // row-major
    TwistedPoly& at(long i, long j) { return e[static_cast<size_t>(i * n + j)]; }
    const TwistedPoly& at(long i, long j) const { return e[static_cast<size_t>(i * n + j)]; }
};

TwistedMatrix tm_zero(const FqPtr& F, long n);
TwistedMatrix tm_identity(const FqPtr& F, long n);
TwistedMatrix tm_add(const TwistedMatrix& a, const TwistedMatrix& b);
TwistedMatrix tm_sub(const TwistedMatrix& a, const TwistedMatrix& b);
TwistedMatrix tm_mul(const TwistedMatrix& a, const TwistedMatrix& b);
TwistedMatrix tm_pow(const TwistedMatrix& a, unsigned long k);
TwistedMatrix tm_scalar(const FqPtr& F, long n, const TwistedPoly& d);  // d*I
bool tm_eq(const TwistedMatrix& a, const TwistedMatrix& b);

// Smith diagonalization over the skew ring: u * tau * v = d diagonal, with
// explicit inverses certifying invertibility.  Pivot: minimal phi-degree,
// ties by row-major position; column reduction by right division, row
// reduction by left division.
struct TwistedSmith {
    TwistedMatrix u, v, d, u_inv, v_inv;
};
TwistedSmith tm_smith(const TwistedMatrix& tau);

// Dieudonne determinant profile: (sum deg_phi, sum v_phi) over the Smith
// diagonal; singular when some diagonal entry vanishes.
struct DdetProfile {
    bool singular = false;
    long degphi = 0;
    long vphi = 0;
};
DdetProfile ddet_profile(const TwistedMatrix& tau);

// Commutative embedding into M_{r*nu}(F_q[T]), T = phi^nu; entries are
// polynomials over F_q.  Used for the degree profile and the dual-route
// Dieudonne check  nu * deg_phi(ddet tau) = deg_T det(iota(tau)).
struct FqPoly {
    FqPtr F;
    std::vector<FqElem> c;
    void trim();
    long deg() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};
struct FqPolyMatrix {
    FqPtr F;
    long n = 0;
    std::vector<FqPoly> e;
    FqPoly& at(long i, long j) { return e[static_cast<size_t>(i * n + j)]; }
    const FqPoly& at(long i, long j) const { return e[static_cast<size_t>(i * n + j)]; }
};
FqPolyMatrix iota_embed(const TwistedMatrix& tau);
FqPoly fqp_det(const FqPolyMatrix& M);              // exact determinant
ZPoly fqp_charpoly_degrees(const FqPolyMatrix& M);  // deg_T of charpoly coeffs, see .cpp

long fqp_deg(const FqPoly& a);

// Leading-matrix invertibility (Def. of nonsingular endomorphisms).
bool is_nonsingular(const TwistedMatrix& sigma);

// reduction sigma mod phi as an F_q-matrix (entries = constant coefficients)
std::vector<std::vector<FqElem>> reduce_mod_phi(const TwistedMatrix& sigma);

// t^ins: sum over d | n of v_phi(ddet(Phi_d(sigma))), d ranging over the
// orders of root-of-unity eigenvalues of sigma mod phi.
GcdSeq insep_profile(const TwistedMatrix& sigma);

// deg(sigma^n - 1) = p^(a n - t_n |n|_p^{-1}).
struct DegProfile {
    long a = 0;
    GcdSeq t;  // t^deg
};
DegProfile deg_profile(const TwistedMatrix& sigma);

} // namespace fad

#endif
