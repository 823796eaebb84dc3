#ifndef FAD_MATRIX_HPP
#define FAD_MATRIX_HPP

#include "fad/poly.hpp"

namespace fad {

// Dense integer matrix, row-major.  The 0x0 matrix is a legal value with
// det 1 and charpoly == constant 1.
struct IntMatrix {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c), Int(0)) {
        if (r < 0 || c < 0) throw argument_error("IntMatrix: negative dimension");
    }
    static IntMatrix identity(long n) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix scalar(long n, const Int& v) {
        IntMatrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = v;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rr) {
        IntMatrix m(static_cast<long>(rr.size()), rr.empty() ? 0 : static_cast<long>(rr[0].size()));
        for (long i = 0; i < m.rows; ++i) {
            if (static_cast<long>(rr[static_cast<size_t>(i)].size()) != m.cols)
                throw argument_error("IntMatrix: ragged rows");
            for (long j = 0; j < m.cols; ++j) m(i, j) = rr[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        return m;
    }

    Int& operator()(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
    const Int& operator()(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }
    bool square() const { return rows == cols; }
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B);
IntMatrix operator+(const IntMatrix& A, const IntMatrix& B);
IntMatrix operator-(const IntMatrix& A, const IntMatrix& B);
IntMatrix operator*(const IntMatrix& A, const Int& k);
IntMatrix mat_pow(const IntMatrix& A, unsigned long n);
IntMatrix block_diag(const IntMatrix& A, const IntMatrix& B);
IntMatrix transpose(const IntMatrix& A);

Int det(const IntMatrix& A);      // fraction-free Bareiss
Int trace(const IntMatrix& A);

// Monic charpoly det(xI - M), division-free (Berkowitz); 0x0 -> 1.
ZPoly charpoly(const IntMatrix& M);

// C(n,k) x C(n,k) matrix of the k-th exterior power, lexicographic basis.
IntMatrix exterior_power(const IntMatrix& M, long k);

// ord_p det(M^n - I), computed mod p^B with adaptive B (never materializes
// the full power).  Throws precision_error if the cap is hit.
long ord_p_det_power_minus_one(const IntMatrix& M, unsigned long n, const Int& p);

struct SmithFormZ {
    std::vector<Int> diag;        // a_1 | a_2 | ... , nonnegative
    IntMatrix u, v;               // u*M*v = diag(diag), both unimodular
};

// Deterministic Smith normal form: pivot = smallest nonzero absolute value,
// ties broken by row-major position.
SmithFormZ smith_form_Z(const IntMatrix& M);

} // namespace fad

#endif
