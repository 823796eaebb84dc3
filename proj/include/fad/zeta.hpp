#ifndef FAD_ZETA_HPP
#define FAD_ZETA_HPP

#include "fad/fadparams.hpp"
#include "fad/systems.hpp"

namespace fad {

enum class ZetaKind { Rational, RootRational, ProductForm, NonHolonomic };

struct ZetaFactor {
    ZPoly Q;  // integer polynomial with Q(0) = 1
    Rat e;    // exponent
};

struct ZetaForm {
    ZetaKind kind = ZetaKind::Rational;
    ZPoly num = ZPoly::constant(1), den = ZPoly::constant(1);  // Rational / RootRational base
    long root_index = 1;            // RootRational: zeta^root_index = num/den
    std::vector<ZetaFactor> factors;  // always populated for the closed forms
    std::vector<Rat> series_prefix;   // NonHolonomic
    bool natural_boundary = false;    // NonHolonomic classification flag
};

// Closed form when all s_p, t_p vanish (product over the divisor-sum data of
// r of toral zetas with the sign correction); NonHolonomic otherwise, with
// the natural-boundary flag per its hypotheses (hyperbolic, integral t).
ZetaForm zeta_build(const FadParams& fp);

// Exact series coefficients of exp(sum f_n z^n / n) through degree N.
std::vector<Rat> zeta_series(const FadParams& fp, long N);

// Series of a closed ZetaForm (Rational: num/den; RootRational: the base).
std::vector<Rat> zeta_form_series(const ZetaForm& zf, long N);

// Cohomological consistency for a reductive descriptor: checks
// zeta_{|d_n| c^n}(z) == zeta^coh((-1)^eps2 c z)^((-1)^(r+eps1)) to the given
// series order, plus the entropy/spectral-radius identity Lambda = c*sp.
bool coh_zeta_check(const SteinbergDesc& d, long order = 20);

std::string zeta_form_to_string(const ZetaForm& zf);

} // namespace fad

#endif
