#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fpk/structure.hpp"
#include "fpk/tensor4.hpp"

namespace fpk {

enum class PresetKind { s_space_form, sasakian, kenmotsu, cosymplectic, generalized_sasakian };

// Pointwise curvature coefficients (F1, F2, F_ij) of a generalized f.pk-space form.
struct CurvatureParams {
    double F1 = 0.0;
    double F2 = 0.0;
    Eigen::MatrixXd Fij;  // s x s

    int s() const { return static_cast<int>(Fij.rows()); }
    bool hypothesis_met() const;  // at least one F_ij != 0
    double phi_sectional() const { return F1 + 3.0 * F2; }
};

// up(l,i,j,k): component l of R(e_i,e_j)e_k.  low(i,j,k,m) = g(R(e_i,e_j)e_k, e_m).
struct CurvatureTensor {
    int dim = 0;
    Tensor4 up;
    Tensor4 low;
};

struct SymmetryReport {
    double skew12 = 0.0;
    double skew34 = 0.0;
    double pair_symmetry = 0.0;
    double first_bianchi = 0.0;
    bool skew12_pass = false;
    bool skew34_pass = false;
    bool pair_pass = false;
    bool bianchi_pass = false;
    double tolerance = 0.0;

    bool all_pass() const { return skew12_pass && skew34_pass && pair_pass && bianchi_pass; }
};

// Named parameter families. c is the phi-sectional curvature; extra = (f1, f2, f3)
// is consumed only by generalized_sasakian (F1 = f1, F2 = f2, F11 = f1 - f3).
CurvatureParams preset_params(PresetKind kind, double c, int s,
                              const std::vector<double>& extra = {});

// Model curvature:
// R(X,Y)Z = F1 ( g(phiX,phiZ) phi^2 Y - g(phiY,phiZ) phi^2 X )
//         + F2 ( g(Z,phiY) phiX - g(Z,phiX) phiY + 2 g(X,phiY) phiZ )
//         + sum_ij F_ij ( eta^i(X) eta^j(Z) phi^2 Y - eta^i(Y) eta^j(Z) phi^2 X
//                         + g(phiY,phiZ) eta^i(X) xi_j - g(phiX,phiZ) eta^i(Y) xi_j )
CurvatureTensor model_curvature(const FpkStructure& F, const CurvatureParams& P);

SymmetryReport symmetry_audit(const CurvatureTensor& R, double tol);

// R(X,Y)Z from the raised components.
Eigen::VectorXd curvature_apply(const CurvatureTensor& R, const Eigen::VectorXd& X,
                                const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);

// Sectional curvature of the phi-section span{X, phi X}; X must be unit and
// orthogonal to every xi_i. Equals F1 + 3 F2 for the model curvature.
double phi_sectional_curvature(const FpkStructure& F, const CurvatureTensor& R,
                               const Eigen::VectorXd& X);

// S(Y,Z) = trace of X |-> R(X,Y)Z, computed in a g-orthonormal frame.
BilinearForm ricci_tensor(const CurvatureTensor& R, const Eigen::MatrixXd& g);

}  // namespace fpk
