#pragma once

#include "qll/numkernel/linalg.hpp"

namespace qll {

using IMat = Mat<Int>;

inline IMat imat_identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Smith normal form: returns (U, D, V) with U*M*V = D, U and V unimodular,
// D diagonal with d_1 | d_2 | ... >= 0.  Works for any integer matrix.
struct SmithResult {
    IMat U, D, V;
    std::vector<Int> diag; // the nonzero chain prefix then zeros
};

inline SmithResult smith_normal_form(IMat M) {
    int m = M.rows, n = M.cols;
    IMat U = imat_identity(m), V = imat_identity(n);

    auto row_op = [&](int i, int k, const Int& f) { // row i -= f * row k
        for (int j = 0; j < n; ++j) M[i][j] -= f * M[k][j];
        for (int j = 0; j < m; ++j) U[i][j] -= f * U[k][j];
    };
    auto col_op = [&](int j, int k, const Int& f) { // col j -= f * col k
        for (int i = 0; i < m; ++i) M[i][j] -= f * M[i][k];
        for (int i = 0; i < n; ++i) V[i][j] -= f * V[i][k];
    };
    auto row_swap = [&](int i, int k) {
        std::swap(M.a[i], M.a[k]);
        std::swap(U.a[i], U.a[k]);
    };
    auto col_swap = [&](int j, int k) {
        for (int i = 0; i < m; ++i) std::swap(M[i][j], M[i][k]);
        for (int i = 0; i < n; ++i) std::swap(V[i][j], V[i][k]);
    };

    int t = 0;
    while (t < m && t < n) {
        // find smallest nonzero |entry| in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (sgn(M[i][j]) != 0 &&
                    (pi < 0 || cmp(abs(M[i][j]), abs(M[pi][pj])) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
            if (sgn(M[i][t]) == 0) continue;
            Int q = M[i][t] / M[t][t];
            // round toward smaller remainder
            if (sgn(M[i][t] - q * M[t][t]) != 0 || true) row_op(i, t, q);
            if (sgn(M[i][t]) != 0) dirty = true;
        }
        for (int j = t + 1; j < n; ++j) {
            if (sgn(M[t][j]) == 0) continue;
            Int q = M[t][j] / M[t][t];
            col_op(j, t, q);
            if (sgn(M[t][j]) != 0) dirty = true;
        }
        if (dirty) continue; // pivot again with smaller entries
        // ensure pivot divides every remaining entry
        bool fixed = true;
        for (int i = t + 1; i < m && fixed; ++i)
            for (int j = t + 1; j < n && fixed; ++j)
                if (sgn(M[i][j] % M[t][t]) != 0) {
                    // add row i to row t and restart this pivot
                    row_op(t, i, Int(-1));
                    fixed = false;
                }
        if (!fixed) continue;
        if (sgn(M[t][t]) < 0) {
            for (int j = 0; j < n; ++j) M[t][j] = -M[t][j];
            for (int j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
        ++t;
    }
    SmithResult r{std::move(U), std::move(M), std::move(V), {}};
    for (int i = 0; i < std::min(m, n); ++i) r.diag.push_back(r.D[i][i]);
    return r;
}

// Row-style Hermite normal form (lower bookkeeping): returns H and U with
// U*M = H, U unimodular, H in row echelon with positive pivots and entries
// above pivots reduced.
struct HermiteResult {
    IMat H, U;
    std::vector<int> pivot_cols;
};

inline HermiteResult hermite_normal_form(IMat M) {
    int m = M.rows, n = M.cols;
    IMat U = imat_identity(m);
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < n && r < m; ++c) {
        // gcd elimination in column c among rows >= r
        while (true) {
            int p = -1;
            for (int i = r; i < m; ++i)
                if (sgn(M[i][c]) != 0 && (p < 0 || cmp(abs(M[i][c]), abs(M[p][c])) < 0)) p = i;
            if (p < 0) break;
            std::swap(M.a[p], M.a[r]);
            std::swap(U.a[p], U.a[r]);
            bool done = true;
            for (int i = r + 1; i < m; ++i) {
                if (sgn(M[i][c]) == 0) continue;
                Int q = M[i][c] / M[r][c];
                for (int j = 0; j < n; ++j) M[i][j] -= q * M[r][j];
                for (int j = 0; j < m; ++j) U[i][j] -= q * U[r][j];
                if (sgn(M[i][c]) != 0) done = false;
            }
            if (done) break;
        }
        if (r < m && sgn(M[r][c]) != 0) {
            if (sgn(M[r][c]) < 0) {
                for (int j = 0; j < n; ++j) M[r][j] = -M[r][j];
                for (int j = 0; j < m; ++j) U[r][j] = -U[r][j];
            }
            for (int i = 0; i < r; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), M[i][c].get_mpz_t(), M[r][c].get_mpz_t());
                if (sgn(q) != 0) {
                    for (int j = 0; j < n; ++j) M[i][j] -= q * M[r][j];
                    for (int j = 0; j < m; ++j) U[i][j] -= q * U[r][j];
                }
            }
            pivots.push_back(c);
            ++r;
        }
    }
    return {std::move(M), std::move(U), std::move(pivots)};
}

// Saturated integer kernel of an integer matrix (x with M x = 0), returned
// as a basis of the full kernel lattice (primitive vectors).
inline std::vector<std::vector<Int>> imat_kernel_saturated(const IMat& M) {
    // rational kernel, then clear denominators per vector, then HNF to get a
    // saturated basis: the kernel of M is automatically saturated in Z^n.
    Mat<Rat> Q(M.rows, M.cols);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) Q[i][j] = Rat(M[i][j]);
    auto ker = mat_kernel(Q, Rat(1));
    std::vector<std::vector<Int>> out;
    if (ker.empty()) return out;
    IMat K((int)ker.size(), M.cols);
    for (size_t i = 0; i < ker.size(); ++i) {
        Int l(1);
        for (auto& q : ker[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (int j = 0; j < M.cols; ++j) K[(int)i][j] = num(ker[i][j]) * (l / den(ker[i][j]));
        Int g(0);
        for (int j = 0; j < M.cols; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), K[(int)i][j].get_mpz_t());
        if (cmp(g, 1) > 0)
            for (int j = 0; j < M.cols; ++j) K[(int)i][j] /= g;
    }
    auto h = hermite_normal_form(std::move(K));
    for (int i = 0; i < (int)h.pivot_cols.size(); ++i) out.push_back(h.H.a[i]);
    return out;
}

// ---------------------------------------------------------------------------
// LLL reduction of a positive definite rational Gram matrix; returns the
// change of basis U (rows are new basis vectors in old coordinates) and the
// reduced Gram U G U^T.
// ---------------------------------------------------------------------------
struct LLLResult {
    IMat U;
    Mat<Rat> gram;
};

inline LLLResult lll_reduce_gram(Mat<Rat> G) {
    int n = G.rows;
    IMat U = imat_identity(n);
    auto dot = [&](int i, int j) { return G[i][j]; };
    // Gram-Schmidt data mu, B recomputed on demand (n is small here)
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    auto gso = [&]() {
        for (int i = 0; i < n; ++i) {
            B[i] = dot(i, i);
            for (int j = 0; j < i; ++j) {
                Rat m = dot(i, j);
                for (int k = 0; k < j; ++k) m -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = sgn(B[j]) == 0 ? Rat(0) : Rat(m / B[j]);
                B[i] -= mu[i][j] * mu[i][j] * B[j];
            }
        }
    };
    auto row_addmul = [&](int i, int j, const Int& q) {
        // b_i -= q b_j  (update U and G)
        for (int k = 0; k < n; ++k) U[i][k] -= q * U[j][k];
        Rat qq(q);
        for (int k = 0; k < n; ++k) {
            G[i][k] -= qq * G[j][k];
        }
        for (int k = 0; k < n; ++k) {
            G[k][i] -= qq * G[k][j];
        }
    };
    auto row_swap = [&](int i, int j) {
        std::swap(U.a[i], U.a[j]);
        std::swap(G.a[i], G.a[j]);
        for (int k = 0; k < n; ++k) std::swap(G[k][i], G[k][j]);
    };
    gso();
    int k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000) throw math_error("lll: did not terminate");
        for (int j = k - 1; j >= 0; --j) {
            Rat m = mu[k][j];
            Int q;
            // round to nearest
            Rat half = m + rat_of(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
            if (sgn(q) != 0) {
                row_addmul(k, j, q);
                gso();
            }
        }
        Rat lhs = B[k];
        Rat rhs = (rat_of(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs < rhs) {
            row_swap(k, k - 1);
            gso();
            k = std::max(1, k - 1);
        } else {
            ++k;
        }
    }
    return {std::move(U), std::move(G)};
}

// ---------------------------------------------------------------------------
// Enumeration of integer vectors with a prescribed value of a positive
// definite quadratic form around a rational center:
//     (x + w)^T A (x + w) == target,  x integer vector.
// Uses an LDL^T decomposition and exact rational interval bounds.
// ---------------------------------------------------------------------------
inline void enumerate_form_values(const Mat<Rat>& A, const std::vector<Rat>& w,
                                  const Rat& target,
                                  const std::function<void(const std::vector<Int>&)>& emit) {
    int n = A.rows;
    if (sgn(target) < 0) return;
    // LDL^T with L unit upper? use standard: A = L D L^T, L unit lower.
    Mat<Rat> L(n, n);
    std::vector<Rat> D(n);
    {
        Mat<Rat> Acopy = A;
        for (int j = 0; j < n; ++j) {
            Rat d = Acopy[j][j];
            for (int k = 0; k < j; ++k) d -= L[j][k] * L[j][k] * D[k];
            if (sgn(d) <= 0) throw math_error("enumerate_form_values: form not positive definite");
            D[j] = d;
            L[j][j] = Rat(1);
            for (int i = j + 1; i < n; ++i) {
                Rat v = Acopy[i][j];
                for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * D[k];
                L[i][j] = v / d;
            }
        }
    }
    // q(x) = sum_j D_j (y_j)^2 with y_j = (x_j + w_j) + sum_{i>j} L_ij (x_i + w_i)
    // backtrack from the last coordinate down.
    std::vector<Int> x(n);
    std::vector<Rat> partial(n + 1); // remaining budget
    partial[n] = target;

    // bounds for (y)^2 <= B/D: need floor/ceil of w +- sqrt(B/D)
    auto sqrt_bounds = [&](const Rat& bound, const Rat& center) -> std::pair<Int, Int> {
        // solve (t + center)^2 <= bound for integer t
        if (sgn(bound) < 0) return {Int(1), Int(0)};
        // s = sqrt(bound) upper/lower rational bounds via integer sqrt
        Int nu = num(bound), de = den(bound);
        // sqrt(nu/de) <= (isqrt(nu)+1)/isqrt(de) etc. use scaled isqrt
        Int scale = de * de;
        Int v = nu * de; // bound = v / de^2, sqrt = sqrt(v)/de
        Int s;
        mpz_sqrt(s.get_mpz_t(), v.get_mpz_t());
        // lower root bound: (s)/de <= sqrt <= (s+1)/de
        Rat lo = -center - Rat(s + 1, de);
        Rat hi = -center + Rat(s + 1, de);
        Int a, b;
        mpz_cdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        (void)scale;
        return {a, b};
    };

    std::function<void(int)> rec = [&](int j) {
        if (j < 0) {
            if (sgn(partial[0]) == 0) emit(x);
            return;
        }
        // y_j = (x_j + w_j) + sum_{i>j} L[i][j] (x_i + w_i)
        Rat shift = w[j];
        for (int i = j + 1; i < n; ++i) shift += L[i][j] * (Rat(x[i]) + w[i]);
        Rat budget = partial[j + 1] / D[j];
        auto [lo, hi] = sqrt_bounds(budget, shift);
        for (Int t = lo; cmp(t, hi) <= 0; ++t) {
            x[j] = t;
            Rat y = Rat(t) + shift;
            Rat used = D[j] * y * y;
            if (used > partial[j + 1]) continue;
            partial[j] = partial[j + 1] - used;
            rec(j - 1);
        }
    };
    rec(n - 1);
}

} // namespace qll
