#include "fad/matrix.hpp"

namespace fad {

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows) throw argument_error("matrix product: shape mismatch");
    IntMatrix C(A.rows, B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long k = 0; k < A.cols; ++k) {
            const Int& aik = A(i, k);
            if (aik == 0) continue;
            for (long j = 0; j < B.cols; ++j)
                C(i, j) += aik * B(k, j);
        }
    return C;
}

IntMatrix operator+(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw argument_error("matrix sum: shape mismatch");
    IntMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

IntMatrix operator-(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw argument_error("matrix diff: shape mismatch");
    IntMatrix C(A.rows, A.cols);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    return C;
}

IntMatrix operator*(const IntMatrix& A, const Int& k) {
    IntMatrix C = A;
    for (auto& x : C.a) x *= k;
    return C;
}

IntMatrix mat_pow(const IntMatrix& A, unsigned long n) {
    if (!A.square()) throw argument_error("mat_pow: non-square");
    IntMatrix r = IntMatrix::identity(A.rows);
    IntMatrix b = A;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

IntMatrix block_diag(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix C(A.rows + B.rows, A.cols + B.cols);
    for (long i = 0; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (long i = 0; i < B.rows; ++i)
        for (long j = 0; j < B.cols; ++j) C(A.rows + i, A.cols + j) = B(i, j);
    return C;
}

IntMatrix transpose(const IntMatrix& A) {
    IntMatrix C(A.cols, A.rows);
    for (long i = 0; i < A.rows; ++i)
        for (long j = 0; j < A.cols; ++j) C(j, i) = A(i, j);
    return C;
}

Int det(const IntMatrix& A) {
    if (!A.square()) throw argument_error("det: non-square");
    long n = A.rows;
    if (n == 0) return Int(1);
    IntMatrix M = A;
    Int prev(1);
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (M(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (M(i, k) != 0) { piv = i; break; }
            if (piv < 0) return Int(0);
            for (long j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                M(i, j) = t / prev;
            }
            M(i, k) = 0;
        }
        prev = M(k, k);
    }
    return sign > 0 ? M(n - 1, n - 1) : -M(n - 1, n - 1);
}

Int trace(const IntMatrix& A) {
    if (!A.square()) throw argument_error("trace: non-square");
    Int t(0);
    for (long i = 0; i < A.rows; ++i) t += A(i, i);
    return t;
}

ZPoly charpoly(const IntMatrix& M) {
    if (!M.square()) throw argument_error("charpoly: non-square");
    long n = M.rows;
    if (n == 0) return ZPoly::constant(1);
    // Berkowitz: division-free, builds the charpoly by bordered minors.
    // Vectors store coefficients highest power first, length n+1 at the end.
    std::vector<Int> poly = {Int(1), -M(0, 0)};
    for (long k = 1; k < n; ++k) {
        // Toeplitz column entries for the k-th leading principal submatrix:
        // c_0 = 1, c_1 = -M(k,k), c_{j+1} = -(R * A^{j-1} * S) for j >= 1
        long m = k;  // previous principal block size
        std::vector<Int> c(static_cast<size_t>(k) + 2, Int(0));
        c[0] = 1;
        c[1] = -M(k, k);
        std::vector<Int> w(static_cast<size_t>(m));
        for (long i = 0; i < m; ++i) w[static_cast<size_t>(i)] = M(i, k);  // S column
        for (long j = 1; j <= k; ++j) {
            // c_{j+1} = - R . w  where R is the row M(k, 0..m-1)
            Int dot(0);
            for (long i = 0; i < m; ++i) dot += M(k, i) * w[static_cast<size_t>(i)];
            c[static_cast<size_t>(j) + 1] = -dot;
            if (j < k) {
                std::vector<Int> w2(static_cast<size_t>(m), Int(0));
                for (long i = 0; i < m; ++i) {
                    for (long l = 0; l < m; ++l)
                        if (M(i, l) != 0) w2[static_cast<size_t>(i)] += M(i, l) * w[static_cast<size_t>(l)];
                }
                w = std::move(w2);
            }
        }
        // poly := Toeplitz(c) * poly
        std::vector<Int> np(poly.size() + 1, Int(0));
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < c.size() && i + j < np.size(); ++j)
                np[i + j] += c[j] * poly[i];
        poly = std::move(np);
    }
    // poly is highest-first; convert
    std::vector<Int> lowfirst(poly.rbegin(), poly.rend());
    return ZPoly(std::move(lowfirst));
}

namespace {

std::vector<std::vector<long>> subsets_lex(long n, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> idx(static_cast<size_t>(k));
    for (long i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    if (k == 0) { out.push_back({}); return out; }
    if (k > n) return out;
    for (;;) {
        out.push_back(idx);
        long i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (long j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

Int minor_det(const IntMatrix& M, const std::vector<long>& r, const std::vector<long>& c) {
    long k = static_cast<long>(r.size());
    IntMatrix S(k, k);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            S(i, j) = M(r[static_cast<size_t>(i)], c[static_cast<size_t>(j)]);
    return det(S);
}

} // namespace

IntMatrix exterior_power(const IntMatrix& M, long k) {
    if (!M.square()) throw argument_error("exterior_power: non-square");
    long n = M.rows;
    if (k < 0 || k > n) throw argument_error("exterior_power: k out of range");
    auto subs = subsets_lex(n, k);
    long N = static_cast<long>(subs.size());
    IntMatrix E(N, N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            E(i, j) = minor_det(M, subs[static_cast<size_t>(i)], subs[static_cast<size_t>(j)]);
    return E;
}

namespace {

// Division-free determinant in Z/mod (Berkowitz with reduction), mod > 1.
Int det_mod(const IntMatrix& M, const Int& mod) {
    long n = M.rows;
    if (n == 0) return Int(1 % mod);
    auto red = [&](Int& x) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()); };
    std::vector<Int> poly = {Int(1), M(0, 0)};
    red(poly[1]);
    poly[1] = mod - poly[1];
    red(poly[1]);
    for (long k = 1; k < n; ++k) {
        long m = k;
        std::vector<Int> c(static_cast<size_t>(k) + 2, Int(0));
        c[0] = 1;
        c[1] = mod - (M(k, k) % mod + mod) % mod;
        red(c[1]);
        std::vector<Int> w(static_cast<size_t>(m));
        for (long i = 0; i < m; ++i) { w[static_cast<size_t>(i)] = M(i, k); red(w[static_cast<size_t>(i)]); }
        for (long j = 1; j <= k; ++j) {
            Int dot(0);
            for (long i = 0; i < m; ++i) dot += M(k, i) * w[static_cast<size_t>(i)];
            red(dot);
            c[static_cast<size_t>(j) + 1] = mod - dot;
            red(c[static_cast<size_t>(j) + 1]);
            if (j < k) {
                std::vector<Int> w2(static_cast<size_t>(m), Int(0));
                for (long i = 0; i < m; ++i) {
                    for (long l = 0; l < m; ++l)
                        if (M(i, l) != 0) w2[static_cast<size_t>(i)] += M(i, l) * w[static_cast<size_t>(l)];
                    red(w2[static_cast<size_t>(i)]);
                }
                w = std::move(w2);
            }
        }
        std::vector<Int> np(poly.size() + 1, Int(0));
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < c.size() && i + j < np.size(); ++j)
                np[i + j] += c[j] * poly[i];
        for (auto& x : np) red(x);
        poly = std::move(np);
    }
    // charpoly(0) = (-1)^n det
    Int d = poly.back();
    if (n % 2 == 1) d = mod - d;
    red(d);
    return d;
}

} // namespace

long ord_p_det_power_minus_one(const IntMatrix& M, unsigned long n, const Int& p) {
    if (!M.square()) throw argument_error("ord_p_det_power_minus_one: non-square");
    long s = M.rows;
    if (s == 0) throw argument_error("ord_p_det_power_minus_one: empty matrix has det 1");
    for (long B = 64; B <= (1L << 16); B *= 2) {
        Int mod = pow_int(p, static_cast<unsigned long>(B));
        IntMatrix R = IntMatrix::identity(s), A = M;
        for (auto& x : A.a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        unsigned long e = n;
        while (e > 0) {
            if (e & 1) {
                R = R * A;
                for (auto& x : R.a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
            }
            e >>= 1;
            if (e) {
                A = A * A;
                for (auto& x : A.a) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
            }
        }
        for (long i = 0; i < s; ++i) R(i, i) = (R(i, i) - 1 + mod) % mod;
        Int d = det_mod(R, mod);
        if (d != 0) {
            long o = padic_ord(d, p);
            if (o < B - 8) return o;
        }
    }
    throw precision_error("ord_p_det_power_minus_one: p-adic precision cap exhausted");
}

SmithFormZ smith_form_Z(const IntMatrix& M) {
    long r = M.rows, c = M.cols;
    IntMatrix A = M;
    IntMatrix U = IntMatrix::identity(r), V = IntMatrix::identity(c);

    auto row_swap = [&](long i, long j) {
        for (long k = 0; k < c; ++k) std::swap(A(i, k), A(j, k));
        for (long k = 0; k < r; ++k) std::swap(U(i, k), U(j, k));
    };
    auto col_swap = [&](long i, long j) {
        for (long k = 0; k < r; ++k) std::swap(A(k, i), A(k, j));
        for (long k = 0; k < c; ++k) std::swap(V(k, i), V(k, j));
    };
    auto row_add = [&](long dst, long src, const Int& f) {  // row dst += f*src
        for (long k = 0; k < c; ++k) A(dst, k) += f * A(src, k);
        for (long k = 0; k < r; ++k) U(dst, k) += f * U(src, k);
    };
    auto col_add = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < r; ++k) A(k, dst) += f * A(k, src);
        for (long k = 0; k < c; ++k) V(k, dst) += f * V(k, src);
    };
    auto row_neg = [&](long i) {
        for (long k = 0; k < c; ++k) A(i, k) = -A(i, k);
        for (long k = 0; k < r; ++k) U(i, k) = -U(i, k);
    };

    long t = std::min(r, c);
    for (long k = 0; k < t; ++k) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block, row-major ties
            long pi = -1, pj = -1;
            Int best(0);
            for (long i = k; i < r; ++i)
                for (long j = k; j < c; ++j) {
                    if (A(i, j) == 0) continue;
                    Int v = abs(A(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) { pi = -1; break; }
            if (pi != k) row_swap(k, pi);
            if (pj != k) col_swap(k, pj);
            if (A(k, k) < 0) row_neg(k);
            bool again = false;
            for (long i = k + 1; i < r; ++i) {
                if (A(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(i, k).get_mpz_t(), A(k, k).get_mpz_t());
                row_add(i, k, -q);
                if (A(i, k) != 0) again = true;
            }
            for (long j = k + 1; j < c; ++j) {
                if (A(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(k, j).get_mpz_t(), A(k, k).get_mpz_t());
                col_add(j, k, -q);
                if (A(k, j) != 0) again = true;
            }
            if (again) continue;
            // pivot row/col clean; enforce divisibility of the trailing block
            bool bad = false;
            for (long i = k + 1; i < r && !bad; ++i)
                for (long j = k + 1; j < c && !bad; ++j) {
                    Int rm;
                    mpz_mod(rm.get_mpz_t(), A(i, j).get_mpz_t(), A(k, k).get_mpz_t());
                    if (rm != 0) {
                        row_add(k, i, Int(1));  // pulls the offending row in
                        bad = true;
                    }
                }
            if (!bad) break;
        }
    }
    SmithFormZ out;
    out.u = U;
    out.v = V;
    for (long k = 0; k < t; ++k) out.diag.push_back(A(k, k) < 0 ? Int(-A(k, k)) : A(k, k));
    return out;
}

} // namespace fad
