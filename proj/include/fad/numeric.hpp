#ifndef FAD_NUMERIC_HPP
#define FAD_NUMERIC_HPP

#include <gmpxx.h>
#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fad {

using Int = mpz_class;
using Rat = mpq_class;

// Domain errors. The CLI maps these to exit code 1; anything else is a bug.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_confined_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Dual-route disagreement; always a bug, never user input.
struct inconsistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw argument_error("pow_rat: zero to negative power");
    Rat inv = 1 / base;
    return pow_rat(inv, -e);
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Exact exponent of the prime p in n.  ord_p(0) is flagged as an error
// (the distinguished "infinite valuation" case).
inline long padic_ord(const Int& n, const Int& p) {
    if (!is_prime(p)) throw argument_error("padic_ord: p is not prime");
    if (n == 0) throw argument_error("padic_ord: infinite valuation (n = 0)");
    Int m = abs(n);
    long k = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return k;
        m = q;
        ++k;
    }
}

inline long padic_ord(const Rat& x, const Int& p) {
    if (x == 0) throw argument_error("padic_ord: infinite valuation (x = 0)");
    return padic_ord(Int(x.get_num()), p) - padic_ord(Int(x.get_den()), p);
}

// |n|_p = p^(-ord_p n) as an exact rational.
inline Rat padic_abs(const Int& n, const Int& p) {
    long k = padic_ord(n, p);
    Rat r(1);
    if (k >= 0) {
        r = Rat(1, pow_int(p, static_cast<unsigned long>(k)));
    } else {
        r = Rat(pow_int(p, static_cast<unsigned long>(-k)), 1);
    }
    return r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline int mobius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

inline std::map<long, int> factorize(long n) {
    std::map<long, int> f;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline std::string to_string(const Rat& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

} // namespace fad

#endif
