#pragma once

// Independent brute-force reference implementations for the test suite.
// Everything here runs on plain nested std::vector arrays with hand-rolled
// elimination, so agreement with the Eigen-based library is meaningful.

#include <cmath>
#include <cstddef>
#include <vector>

#include "fpk/curvature.hpp"
#include "fpk/structure.hpp"

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

struct Structure {
    int n = 0, s = 0, dim = 0;
    Mat phi;
    Mat g;
    std::vector<Vec> xi;
    std::vector<Vec> eta;
};

inline Structure from(const fpk::FpkStructure& F) {
    Structure S;
    S.n = F.n;
    S.s = F.s;
    S.dim = F.dim;
    S.phi.assign(F.dim, Vec(F.dim, 0.0));
    S.g.assign(F.dim, Vec(F.dim, 0.0));
    for (int i = 0; i < F.dim; ++i)
        for (int j = 0; j < F.dim; ++j) {
            S.phi[i][j] = F.phi(i, j);
            S.g[i][j] = F.g(i, j);
        }
    S.xi.assign(F.s, Vec(F.dim, 0.0));
    S.eta.assign(F.s, Vec(F.dim, 0.0));
    for (int p = 0; p < F.s; ++p)
        for (int i = 0; i < F.dim; ++i) {
            S.xi[p][i] = F.xi[p](i);
            S.eta[p][i] = F.eta[p](i);
        }
    return S;
}

inline Vec mat_vec(const Mat& M, const Vec& v) {
    Vec out(M.size(), 0.0);
    for (std::size_t r = 0; r < M.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += M[r][c] * v[c];
    return out;
}

inline double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double inner(const Mat& g, const Vec& a, const Vec& b) {
    return dot(a, mat_vec(g, b));
}

// Direct term-by-term evaluation of the model curvature on one argument
// triple; returns the vector R(X,Y)Z.
inline Vec model_R_apply(const Structure& S, double F1, double F2, const Mat& Fij, const Vec& X,
                         const Vec& Y, const Vec& Z) {
    const int d = S.dim;
    const Vec pX = mat_vec(S.phi, X), pY = mat_vec(S.phi, Y), pZ = mat_vec(S.phi, Z);
    const Vec p2X = mat_vec(S.phi, pX), p2Y = mat_vec(S.phi, pY);
    const double g_pX_pZ = inner(S.g, pX, pZ);
    const double g_pY_pZ = inner(S.g, pY, pZ);
    const double g_Z_pY = inner(S.g, Z, pY);
    const double g_Z_pX = inner(S.g, Z, pX);
    const double g_X_pY = inner(S.g, X, pY);

    Vec out(d, 0.0);
    for (int r = 0; r < d; ++r) {
        out[r] += F1 * (g_pX_pZ * p2Y[r] - g_pY_pZ * p2X[r]);
        out[r] += F2 * (g_Z_pY * pX[r] - g_Z_pX * pY[r] + 2.0 * g_X_pY * pZ[r]);
    }
    for (int i = 0; i < S.s; ++i) {
        const double ei_X = dot(S.eta[i], X);
        const double ei_Y = dot(S.eta[i], Y);
        for (int j = 0; j < S.s; ++j) {
            const double f = Fij[i][j];
            if (f == 0.0) continue;
            const double ej_Z = dot(S.eta[j], Z);
            for (int r = 0; r < d; ++r) {
                out[r] += f * (ei_X * ej_Z * p2Y[r] - ei_Y * ej_Z * p2X[r]);
                out[r] += f * (g_pY_pZ * ei_X - g_pX_pZ * ei_Y) * S.xi[j][r];
            }
        }
    }
    return out;
}

// up[i][j][k] = the vector R(e_i,e_j)e_k on the standard basis.
inline std::vector<std::vector<std::vector<Vec>>> model_R(const Structure& S, double F1, double F2,
                                                          const Mat& Fij) {
    const int d = S.dim;
    std::vector<std::vector<std::vector<Vec>>> up(
        d, std::vector<std::vector<Vec>>(d, std::vector<Vec>(d)));
    Vec E(d, 0.0);
    std::vector<Vec> basis(d, E);
    for (int i = 0; i < d; ++i) basis[i][i] = 1.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                up[i][j][k] = model_R_apply(S, F1, F2, Fij, basis[i], basis[j], basis[k]);
    return up;
}

// Rows of H |-> H(R(X,Y)Z,W) + H(Z,R(X,Y)W) over an (unnormalized) basis of
// the chosen subspace; columns enumerate E_ii then E_ij+E_ji (symmetric) or
// E_ij-E_ji (skew), both over i <= j resp. i < j in row-major order.
inline Mat action_rows(const std::vector<std::vector<std::vector<Vec>>>& up, bool symmetric) {
    const int d = static_cast<int>(up.size());
    std::vector<Mat> basis;
    if (symmetric) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Mat H(d, Vec(d, 0.0));
                H[i][j] += 1.0;
                H[j][i] += 1.0;
                if (i == j) H[i][i] = 1.0;
                basis.push_back(H);
            }
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                Mat H(d, Vec(d, 0.0));
                H[i][j] = 1.0;
                H[j][i] = -1.0;
                basis.push_back(H);
            }
    }

    Mat rows;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) {
                    Vec row(basis.size(), 0.0);
                    for (std::size_t b = 0; b < basis.size(); ++b) {
                        double acc = 0.0;
                        for (int l = 0; l < d; ++l)
                            acc += up[i][j][k][l] * basis[b][l][m] +
                                   up[i][j][m][l] * basis[b][k][l];
                        row[b] = acc;
                    }
                    rows.push_back(std::move(row));
                }
    return rows;
}

// Rank by Gauss-Jordan elimination with partial pivoting; pivots smaller than
// rank_tol * max_abs * max(rows, cols) count as zero.
inline int nullity(Mat M, double rank_tol) {
    if (M.empty()) return 0;
    const int rows = static_cast<int>(M.size());
    const int cols = static_cast<int>(M[0].size());
    double max_abs = 0.0;
    for (const auto& r : M)
        for (double v : r) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) return cols;
    const double thresh = rank_tol * max_abs * std::max(rows, cols);

    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = rank;
        for (int r = rank + 1; r < rows; ++r)
            if (std::abs(M[r][c]) > std::abs(M[pivot][c])) pivot = r;
        if (std::abs(M[pivot][c]) <= thresh) continue;
        std::swap(M[rank], M[pivot]);
        const double p = M[rank][c];
        for (int cc = c; cc < cols; ++cc) M[rank][cc] /= p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const double f = M[r][c];
            if (f == 0.0) continue;
            for (int cc = c; cc < cols; ++cc) M[r][cc] -= f * M[rank][cc];
        }
        ++rank;
    }
    return cols - rank;
}

// Ricci by the trace route: S[j][k] = sum_i (R(e_i,e_j)e_k)_i. The trace of a
// linear map is basis independent, so this is valid in any frame.
inline Mat trace_ricci(const std::vector<std::vector<std::vector<Vec>>>& up) {
    const int d = static_cast<int>(up.size());
    Mat S(d, Vec(d, 0.0));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i) S[j][k] += up[i][j][k][i];
    return S;
}

// Least squares through the normal equations, solved by Gaussian elimination;
// returns the coefficient vector for columns(B) ~ y.
inline Vec lstsq(const Mat& B, const Vec& y) {
    const int rows = static_cast<int>(B.size());
    const int cols = rows ? static_cast<int>(B[0].size()) : 0;
    Mat A(cols, Vec(cols + 1, 0.0));
    for (int a = 0; a < cols; ++a) {
        for (int b = 0; b < cols; ++b)
            for (int r = 0; r < rows; ++r) A[a][b] += B[r][a] * B[r][b];
        for (int r = 0; r < rows; ++r) A[a][cols] += B[r][a] * y[r];
    }
    for (int c = 0; c < cols; ++c) {
        int pivot = c;
        for (int r = c + 1; r < cols; ++r)
            if (std::abs(A[r][c]) > std::abs(A[pivot][c])) pivot = r;
        std::swap(A[c], A[pivot]);
        const double p = A[c][c];
        if (p == 0.0) continue;
        for (int cc = c; cc <= cols; ++cc) A[c][cc] /= p;
        for (int r = 0; r < cols; ++r) {
            if (r == c) continue;
            const double f = A[r][c];
            for (int cc = c; cc <= cols; ++cc) A[r][cc] -= f * A[c][cc];
        }
    }
    Vec out(cols, 0.0);
    for (int c = 0; c < cols; ++c) out[c] = A[c][cols];
    return out;
}

inline double lstsq_residual(const Mat& B, const Vec& coeff, const Vec& y) {
    double acc = 0.0;
    for (std::size_t r = 0; r < B.size(); ++r) {
        double v = -y[r];
        for (std::size_t c = 0; c < coeff.size(); ++c) v += B[r][c] * coeff[c];
        acc += v * v;
    }
    return std::sqrt(acc);
}

}  // namespace oracle
