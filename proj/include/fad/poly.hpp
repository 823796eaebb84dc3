#ifndef FAD_POLY_HPP
#define FAD_POLY_HPP

#include "fad/numeric.hpp"

#include <algorithm>
#include <optional>

namespace fad {

// Dense integer polynomial, coefficients low-to-high, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree -1.
struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> cc) : c(std::move(cc)) { trim(); }
    static ZPoly constant(const Int& a) { return a == 0 ? ZPoly() : ZPoly({a}); }
    static ZPoly x() { return ZPoly({Int(0), Int(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long deg() const { return static_cast<long>(c.size()) - 1; }
    const Int& lead() const {
        static const Int zero(0);
        return c.empty() ? zero : c.back();
    }
    Int coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c.size())) return Int(0);
        return c[static_cast<size_t>(i)];
    }
    bool operator==(const ZPoly& o) const { return c == o.c; }
    bool operator!=(const ZPoly& o) const { return c != o.c; }
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const Int& k);

Int content(const ZPoly& a);
ZPoly primitive_part(const ZPoly& a);  // content removed, leading coeff > 0
ZPoly derivative(const ZPoly& a);
Int eval(const ZPoly& a, const Int& x);
Rat eval(const ZPoly& a, const Rat& x);

// a = q*b + r with deg r < deg b; requires exact divisibility steps (b monic
// or the division exact); throws argument_error otherwise.
std::pair<ZPoly, ZPoly> divmod_exact(const ZPoly& a, const ZPoly& b);
ZPoly div_exact(const ZPoly& a, const ZPoly& b);

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b);

// Primitive gcd, leading coefficient > 0; gcd(0,0) = 0.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

// Resultant via subresultant PRS.
Int resultant(const ZPoly& a, const ZPoly& b);

ZPoly squarefree_part(const ZPoly& a);
// Yun decomposition: list of (factor, multiplicity), factors primitive.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& a);

ZPoly cyclotomic(long d);

// x^deg * a(1/x), normalized primitive with positive leading coefficient.
ZPoly reciprocal_normalized(const ZPoly& a);
bool is_self_reciprocal(const ZPoly& a);

// For self-reciprocal a of even degree 2m: the integer polynomial g of degree
// m with a(x) = x^m * g(x + 1/x) (exists after removing x±1 factors upstream).
ZPoly trace_polynomial(const ZPoly& a);

// z_n(y): x^n + x^(-n) as a polynomial in y = x + 1/x.
ZPoly power_sum_in_trace(long n);

// Substitutions used by the zeta machinery.
ZPoly compose_xk(const ZPoly& a, long k);          // a(x^k)
ZPoly scale_arg(const ZPoly& a, const Rat& s);     // primitive part of a(s*x)
ZPoly negate_arg(const ZPoly& a);                  // a(-x)

std::string to_string(const ZPoly& a, const std::string& var = "x");

// Truncated products/inverses for power series work (N = order, exclusive).
std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, long N);
std::vector<Rat> series_inv(const std::vector<Rat>& a, long N);  // a[0] != 0
std::vector<Rat> series_pow(const std::vector<Rat>& a, long e, long N);  // e may be negative

} // namespace fad

#endif
