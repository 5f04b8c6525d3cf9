#include "fpk/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace fpk {

bool CurvatureParams::hypothesis_met() const {
    return Fij.size() > 0 && Fij.cwiseAbs().maxCoeff() > 0.0;
}

CurvatureParams preset_params(PresetKind kind, double c, int s, const std::vector<double>& extra) {
    if (s < 1) throw std::domain_error("preset_params: s must be >= 1");
    if (kind != PresetKind::s_space_form && s != 1)
        throw std::domain_error("preset_params: this preset requires s = 1");
    if (kind != PresetKind::generalized_sasakian && !extra.empty())
        throw std::domain_error("preset_params: extra values are only used by generalized_sasakian");

    CurvatureParams P;
    switch (kind) {
        case PresetKind::s_space_form:
            P.F1 = (c + 3.0 * s) / 4.0;
            P.F2 = (c - s) / 4.0;
            P.Fij = Eigen::MatrixXd::Ones(s, s);
            break;
        case PresetKind::sasakian:
            P.F1 = (c + 3.0) / 4.0;
            P.F2 = (c - 1.0) / 4.0;
            P.Fij = Eigen::MatrixXd::Constant(1, 1, 1.0);
            break;
        case PresetKind::kenmotsu:
            P.F1 = (c - 3.0) / 4.0;
            P.F2 = (c + 1.0) / 4.0;
            P.Fij = Eigen::MatrixXd::Constant(1, 1, -1.0);
            break;
        case PresetKind::cosymplectic:
            P.F1 = c / 4.0;
            P.F2 = c / 4.0;
            P.Fij = Eigen::MatrixXd::Zero(1, 1);
            break;
        case PresetKind::generalized_sasakian:
            if (extra.size() != 3)
                throw std::domain_error("preset_params: generalized_sasakian needs (f1, f2, f3)");
            P.F1 = extra[0];
            P.F2 = extra[1];
            P.Fij = Eigen::MatrixXd::Constant(1, 1, extra[0] - extra[2]);
            break;
    }
    return P;
}

CurvatureTensor model_curvature(const FpkStructure& F, const CurvatureParams& P) {
    if (P.s() != F.s || P.Fij.cols() != F.s)
        throw std::invalid_argument("model_curvature: parameter shape does not match the structure");
    const int d = F.dim;
    const int s = F.s;

    const Eigen::MatrixXd phi2 = F.phi * F.phi;
    const Eigen::MatrixXd gphi = F.g * F.phi;                     // gphi(k,j) = g(e_k, phi e_j)
    const Eigen::MatrixXd gpp = F.phi.transpose() * F.g * F.phi;  // gpp(i,k) = g(phi e_i, phi e_k)
    Eigen::MatrixXd etaM(s, d);                                   // etaM(p,i) = eta^p(e_i)
    for (int p = 0; p < s; ++p) etaM.row(p) = F.eta[p].transpose();

    CurvatureTensor R;
    R.dim = d;
    R.up = Tensor4(d);
    R.low = Tensor4(d);

    Eigen::VectorXd v(d), gv(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                v = P.F1 * (gpp(i, k) * phi2.col(j) - gpp(j, k) * phi2.col(i));
                v += P.F2 * (gphi(k, j) * F.phi.col(i) - gphi(k, i) * F.phi.col(j) +
                             2.0 * gphi(i, j) * F.phi.col(k));
                for (int p = 0; p < s; ++p) {
                    for (int q = 0; q < s; ++q) {
                        const double f = P.Fij(p, q);
                        if (f == 0.0) continue;
                        v += f * (etaM(p, i) * etaM(q, k) * phi2.col(j) -
                                  etaM(p, j) * etaM(q, k) * phi2.col(i) +
                                  gpp(j, k) * etaM(p, i) * F.xi[q] -
                                  gpp(i, k) * etaM(p, j) * F.xi[q]);
                    }
                }
                gv.noalias() = F.g * v;
                for (int l = 0; l < d; ++l) {
                    R.up(l, i, j, k) = v(l);
                    R.low(i, j, k, l) = gv(l);
                }
            }
        }
    }
    return R;
}

SymmetryReport symmetry_audit(const CurvatureTensor& R, double tol) {
    if (tol <= 0.0) throw std::domain_error("symmetry_audit: tol must be positive");
    const int d = R.dim;
    SymmetryReport rep;
    rep.tolerance = tol;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) {
                    const double r = R.low(i, j, k, m);
                    rep.skew12 = std::max(rep.skew12, std::abs(r + R.low(j, i, k, m)));
                    rep.skew34 = std::max(rep.skew34, std::abs(r + R.low(i, j, m, k)));
                    rep.pair_symmetry =
                        std::max(rep.pair_symmetry, std::abs(r - R.low(k, m, i, j)));
                    rep.first_bianchi = std::max(
                        rep.first_bianchi,
                        std::abs(r + R.low(j, k, i, m) + R.low(k, i, j, m)));
                }
    rep.skew12_pass = rep.skew12 < tol;
    rep.skew34_pass = rep.skew34 < tol;
    rep.pair_pass = rep.pair_symmetry < tol;
    rep.bianchi_pass = rep.first_bianchi < tol;
    return rep;
}

Eigen::VectorXd curvature_apply(const CurvatureTensor& R, const Eigen::VectorXd& X,
                                const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
    const int d = R.dim;
    if (X.size() != d || Y.size() != d || Z.size() != d)
        throw std::invalid_argument("curvature_apply: vector size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) {
        if (X(i) == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            const double xy = X(i) * Y(j);
            if (xy == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                const double c = xy * Z(k);
                if (c == 0.0) continue;
                for (int l = 0; l < d; ++l) out(l) += c * R.up(l, i, j, k);
            }
        }
    }
    return out;
}

double phi_sectional_curvature(const FpkStructure& F, const CurvatureTensor& R,
                               const Eigen::VectorXd& X) {
    if (X.size() != F.dim || R.dim != F.dim)
        throw std::invalid_argument("phi_sectional_curvature: dimension mismatch");
    constexpr double pre_tol = 1e-8;
    for (int i = 0; i < F.s; ++i)
        if (std::abs(F.eta[i].dot(X)) >= pre_tol)
            throw std::domain_error(
                "phi_sectional_curvature: X must be orthogonal to the structure vectors");
    const Eigen::VectorXd gX = F.g * X;
    if (std::abs(X.dot(gX) - 1.0) >= pre_tol)
        throw std::domain_error("phi_sectional_curvature: X must be a unit vector");

    const Eigen::VectorXd Y = F.phi * X;
    const Eigen::VectorXd gY = F.g * Y;
    const double gXX = X.dot(gX);
    const double gYY = Y.dot(gY);
    const double gXY = X.dot(gY);
    // K(X, phiX) = g(R(X,phiX)phiX, X) / (g(X,X) g(phiX,phiX) - g(X,phiX)^2)
    return curvature_apply(R, X, Y, Y).dot(gX) / (gXX * gYY - gXY * gXY);
}

BilinearForm ricci_tensor(const CurvatureTensor& R, const Eigen::MatrixXd& g) {
    const int d = R.dim;
    if (g.rows() != d || g.cols() != d)
        throw std::invalid_argument("ricci_tensor: metric shape mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (g + g.transpose()));
    if (llt.info() != Eigen::Success)
        throw std::domain_error("ricci_tensor: metric is not positive definite");
    // Columns of L^-T form a g-orthonormal frame u_a; S(Y,Z) = sum_a g(u_a, R(u_a,Y)Z).
    const Eigen::MatrixXd U =
        llt.matrixL().transpose().solve(Eigen::MatrixXd::Identity(d, d));
    const Eigen::MatrixXd GU = g * U;

    Eigen::MatrixXd S(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            double acc = 0.0;
            for (int a = 0; a < d; ++a) {
                double t = 0.0;
                for (int l = 0; l < d; ++l) {
                    double comp = 0.0;
                    for (int i = 0; i < d; ++i) comp += R.up(l, i, j, k) * U(i, a);
                    t += GU(l, a) * comp;
                }
                acc += t;
            }
            S(j, k) = acc;
        }
    }

    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    return BilinearForm{S, asym < 1e-10 ? Symmetry::symmetric : Symmetry::general};
}

}  // namespace fpk
