#include "fpk/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace fpk {

int subspace_dimension(Subspace sub, int d) {
    switch (sub) {
        case Subspace::full:
            return d * d;
        case Subspace::symmetric:
            return d * (d + 1) / 2;
        case Subspace::skew:
            return d * (d - 1) / 2;
    }
    return 0;
}

std::vector<BilinearForm> subspace_basis(Subspace sub, int d) {
    std::vector<BilinearForm> out;
    out.reserve(subspace_dimension(sub, d));
    const double r = 1.0 / std::sqrt(2.0);
    if (sub == Subspace::full) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d);
                E(i, j) = 1.0;
                out.push_back({E, Symmetry::general});
            }
    } else if (sub == Subspace::symmetric) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d);
                if (i == j)
                    E(i, i) = 1.0;
                else
                    E(i, j) = E(j, i) = r;
                out.push_back({E, Symmetry::symmetric});
            }
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d);
                E(i, j) = r;
                E(j, i) = -r;
                out.push_back({E, Symmetry::skew});
            }
    }
    return out;
}

Eigen::VectorXd vectorize_form(const Eigen::MatrixXd& H, Subspace sub) {
    const int d = static_cast<int>(H.rows());
    if (H.cols() != d) throw std::invalid_argument("vectorize_form: matrix must be square");
    Eigen::VectorXd v(subspace_dimension(sub, d));
    const double r = 1.0 / std::sqrt(2.0);
    int idx = 0;
    if (sub == Subspace::full) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(idx++) = H(i, j);
    } else if (sub == Subspace::symmetric) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                v(idx++) = (i == j) ? H(i, i) : (H(i, j) + H(j, i)) * r;
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) v(idx++) = (H(i, j) - H(j, i)) * r;
    }
    return v;
}

Eigen::MatrixXd devectorize_form(const Eigen::VectorXd& v, Subspace sub, int d) {
    if (v.size() != subspace_dimension(sub, d))
        throw std::invalid_argument("devectorize_form: coordinate size mismatch");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
    const double r = 1.0 / std::sqrt(2.0);
    int idx = 0;
    if (sub == Subspace::full) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) H(i, j) = v(idx++);
    } else if (sub == Subspace::symmetric) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                if (i == j)
                    H(i, i) = v(idx++);
                else
                    H(i, j) = H(j, i) = v(idx++) * r;
            }
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                H(i, j) = v(idx++) * r;
                H(j, i) = -H(i, j);
            }
    }
    return H;
}

Tensor4 curvature_action(const CurvatureTensor& R, const BilinearForm& H) {
    const int d = R.dim;
    if (H.matrix.rows() != d || H.matrix.cols() != d)
        throw std::invalid_argument("curvature_action: form shape mismatch");
    Tensor4 A(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) {
                    double acc = 0.0;
                    for (int l = 0; l < d; ++l)
                        acc += R.up(l, i, j, k) * H.matrix(l, m) +
                               R.up(l, i, j, m) * H.matrix(k, l);
                    A(i, j, k, m) = acc;
                }
    return A;
}

ActionMatrix assemble_action_matrix(const CurvatureTensor& R, Subspace sub) {
    const int d = R.dim;
    const int pairs = d * (d - 1) / 2;
    const auto basis = subspace_basis(sub, d);

    ActionMatrix M;
    M.subspace = sub;
    M.dim = d;
    M.entries.resize(pairs * d * d, static_cast<int>(basis.size()));

    for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
        const Eigen::MatrixXd& H = basis[col].matrix;
        int p = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j, ++p)
                for (int k = 0; k < d; ++k)
                    for (int m = 0; m < d; ++m) {
                        double acc = 0.0;
                        for (int l = 0; l < d; ++l)
                            acc += R.up(l, i, j, k) * H(l, m) + R.up(l, i, j, m) * H(k, l);
                        M.entries((p * d + k) * d + m, col) = acc;
                    }
    }
    return M;
}

KernelBasis nullspace(const ActionMatrix& M, double rank_tol) {
    if (rank_tol <= 0.0) throw std::domain_error("nullspace: rank_tol must be positive");
    KernelBasis K;
    K.subspace = M.subspace;
    K.rank_tolerance = rank_tol;

    const int cols = static_cast<int>(M.entries.cols());
    if (cols == 0) return K;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.entries, Eigen::ComputeThinV);
    K.singular_values = svd.singularValues();
    const double smax = K.singular_values.size() > 0 ? K.singular_values(0) : 0.0;
    K.threshold = rank_tol * smax * M.dim;

    const Symmetry sym = M.subspace == Subspace::symmetric ? Symmetry::symmetric
                         : M.subspace == Subspace::skew    ? Symmetry::skew
                                                           : Symmetry::general;
    for (int c = 0; c < cols; ++c) {
        const double sv = c < K.singular_values.size() ? K.singular_values(c) : 0.0;
        if (smax == 0.0 || sv <= K.threshold)
            K.elements.push_back(
                BilinearForm{devectorize_form(svd.matrixV().col(c), M.subspace, M.dim), sym});
    }
    return K;
}

std::vector<BilinearForm> structure_span_basis(const FpkStructure& F) {
    std::vector<BilinearForm> out;
    out.push_back(BilinearForm{F.g, Symmetry::symmetric});
    for (int a = 0; a < F.s; ++a)
        for (int b = a; b < F.s; ++b) {
            Eigen::MatrixXd H = 0.5 * (F.eta[a] * F.eta[b].transpose() +
                                       F.eta[b] * F.eta[a].transpose());
            out.push_back(BilinearForm{H, Symmetry::symmetric});
        }
    return out;
}

namespace {

// Spread over admissible (k,r) of sum_j (F_kj / F_kr) H(xi_j, xi_r).
double lambda_spread(const FpkStructure& F, const CurvatureParams& P, const Eigen::MatrixXd& H) {
    const int s = F.s;
    Eigen::MatrixXd Hxx(s, s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) Hxx(a, b) = F.xi[a].dot(H * F.xi[b]);

    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int k = 0; k < s; ++k)
        for (int r = 0; r < s; ++r) {
            if (P.Fij(k, r) == 0.0) continue;
            double lam = 0.0;
            for (int j = 0; j < s; ++j) lam += P.Fij(k, j) / P.Fij(k, r) * Hxx(j, r);
            if (!any) {
                lo = hi = lam;
                any = true;
            } else {
                lo = std::min(lo, lam);
                hi = std::max(hi, lam);
            }
        }
    return any ? hi - lo : 0.0;
}

}  // namespace

ClassificationReport classify_symmetric_kernel(const FpkStructure& F, const KernelBasis& K,
                                               const ActionMatrix& M, const CurvatureParams& P,
                                               double tol) {
    if (K.subspace != Subspace::symmetric || M.subspace != Subspace::symmetric)
        throw std::invalid_argument(
            "classify_symmetric_kernel: kernel and matrix must come from the symmetric subspace");
    if (tol <= 0.0) throw std::domain_error("classify_symmetric_kernel: tol must be positive");

    ClassificationReport rep;
    rep.tolerance = tol;
    rep.kernel_dim = K.dimension();

    const auto span = structure_span_basis(F);
    Eigen::MatrixXd B(subspace_dimension(Subspace::symmetric, F.dim),
                      static_cast<int>(span.size()));
    for (int j = 0; j < static_cast<int>(span.size()); ++j)
        B.col(j) = vectorize_form(span[j].matrix, Subspace::symmetric);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);

    bool contained = true;
    for (const auto& el : K.elements) {
        Eigen::VectorXd v = vectorize_form(el.matrix, Subspace::symmetric);
        const double nv = v.norm();
        if (nv > 0.0) v /= nv;
        const Eigen::VectorXd c = qr.solve(v);
        const double res = (B * c - v).norm();
        rep.projection_residuals.push_back(res);
        rep.coefficients.push_back(c);
        rep.lambda_spreads.push_back(
            lambda_spread(F, P, nv > 0.0 ? (el.matrix / nv).eval() : el.matrix));
        contained = contained && res < tol;
    }
    rep.verdict = contained ? Verdict::contained_in_span : Verdict::not_contained;

    // Reverse containment: residual of each span element under the action matrix,
    // relative to the matrix scale.
    const double mscale = M.entries.size() > 0 ? M.entries.norm() : 0.0;
    rep.span_in_kernel = true;
    for (const auto& sp : span) {
        Eigen::VectorXd u = vectorize_form(sp.matrix, Subspace::symmetric);
        const double nu = u.norm();
        if (nu > 0.0) u /= nu;
        const double res = mscale > 0.0 ? (M.entries * u).norm() / mscale : 0.0;
        rep.span_action_residuals.push_back(res);
        rep.span_in_kernel = rep.span_in_kernel && res < tol;
    }
    return rep;
}

TheoremReport verify_theorems(const FpkStructure& F, const CurvatureParams& P, double tol,
                              double rank_tol) {
    if (tol <= 0.0) throw std::domain_error("verify_theorems: tol must be positive");
    const CurvatureTensor R = model_curvature(F, P);

    TheoremReport rep;
    rep.tolerance = tol;
    rep.hypothesis_met = P.hypothesis_met();

    const ActionMatrix Msym = assemble_action_matrix(R, Subspace::symmetric);
    const KernelBasis Ksym = nullspace(Msym, rank_tol);
    rep.symmetric_kernel_dim = Ksym.dimension();
    rep.classification = classify_symmetric_kernel(F, Ksym, Msym, P, tol);

    const ActionMatrix Mskew = assemble_action_matrix(R, Subspace::skew);
    rep.skew_kernel_dim = nullspace(Mskew, rank_tol).dimension();

    rep.ricci = ricci_tensor(R, F.g);
    const auto span = structure_span_basis(F);
    Eigen::MatrixXd B(subspace_dimension(Subspace::symmetric, F.dim),
                      static_cast<int>(span.size()));
    for (int j = 0; j < static_cast<int>(span.size()); ++j)
        B.col(j) = vectorize_form(span[j].matrix, Subspace::symmetric);
    const Eigen::VectorXd v = vectorize_form(rep.ricci.matrix, Subspace::symmetric);
    rep.ricci_coefficients = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(B).solve(v);
    const double nv = v.norm();
    rep.ricci_membership_residual =
        (B * rep.ricci_coefficients - v).norm() / (nv > 0.0 ? nv : 1.0);
    rep.ricci_action_max = curvature_action(R, rep.ricci).max_abs();
    return rep;
}

}  // namespace fpk
