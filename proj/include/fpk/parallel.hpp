#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fpk/curvature.hpp"
#include "fpk/structure.hpp"
#include "fpk/tensor4.hpp"

namespace fpk {

enum class Subspace { full, symmetric, skew };

int subspace_dimension(Subspace sub, int d);

// Fixed basis of the chosen subspace of bilinear forms, enumerated row-major:
// full {E_ij}; symmetric {E_ii} and (E_ij + E_ji)/sqrt(2) merged over i <= j;
// skew (E_ij - E_ji)/sqrt(2) over i < j. Vectorization is a Frobenius isometry.
std::vector<BilinearForm> subspace_basis(Subspace sub, int d);

Eigen::VectorXd vectorize_form(const Eigen::MatrixXd& H, Subspace sub);
Eigen::MatrixXd devectorize_form(const Eigen::VectorXd& v, Subspace sub, int d);

// A(H)(X,Y,Z,W) = H(R(X,Y)Z, W) + H(Z, R(X,Y)W), the curvature action whose
// kernel contains every second-order parallel tensor.
Tensor4 curvature_action(const CurvatureTensor& R, const BilinearForm& H);

// Matrix of H |-> A(H) on the chosen subspace. Rows enumerate the 4-tuples
// (i,j,k,m) with i < j as row = pair_index(i,j) * d^2 + k * d + m, where
// pair_index runs row-major over i < j; columns follow subspace_basis.
struct ActionMatrix {
    Eigen::MatrixXd entries;
    Subspace subspace = Subspace::full;
    int dim = 0;
};

ActionMatrix assemble_action_matrix(const CurvatureTensor& R, Subspace sub);

struct KernelBasis {
    std::vector<BilinearForm> elements;  // Frobenius-orthonormal
    Eigen::VectorXd singular_values;
    double rank_tolerance = 0.0;
    double threshold = 0.0;  // rank_tolerance * sigma_max * dim
    Subspace subspace = Subspace::full;

    int dimension() const { return static_cast<int>(elements.size()); }
};

// SVD nullspace: columns of V whose singular value is <= rank_tol * sigma_max * dim;
// an all-zero matrix yields the full subspace.
KernelBasis nullspace(const ActionMatrix& M, double rank_tol);

// {g} followed by the symmetrized products (eta^a (x) eta^b + eta^b (x) eta^a)/2
// for a <= b; the predicted span of symmetric parallel tensors.
std::vector<BilinearForm> structure_span_basis(const FpkStructure& F);

enum class Verdict { contained_in_span, not_contained };

struct ClassificationReport {
    int kernel_dim = 0;
    std::vector<double> projection_residuals;   // per element, Frobenius-relative
    std::vector<Eigen::VectorXd> coefficients;  // per element: lambda, then c_ab (a <= b)
    // Spread over admissible (k,r) of sum_j (F_kj / F_kr) H(xi_j, xi_r); the
    // derivation of the classification forces this to be (k,r)-independent.
    std::vector<double> lambda_spreads;
    std::vector<double> span_action_residuals;  // reverse containment, per span element
    bool span_in_kernel = false;
    Verdict verdict = Verdict::contained_in_span;
    double tolerance = 0.0;
};

ClassificationReport classify_symmetric_kernel(const FpkStructure& F, const KernelBasis& K,
                                               const ActionMatrix& M, const CurvatureParams& P,
                                               double tol);

struct TheoremReport {
    bool hypothesis_met = false;  // some F_ij != 0
    int symmetric_kernel_dim = 0;
    ClassificationReport classification;
    int skew_kernel_dim = 0;
    BilinearForm ricci;
    Eigen::VectorXd ricci_coefficients;
    double ricci_membership_residual = 0.0;
    double ricci_action_max = 0.0;  // max |A(S)|
    double tolerance = 0.0;

    // The kernel claims are conditional on the hypothesis; with all F_ij = 0 the
    // operator degenerates and no verdict is issued.
    bool symmetric_ok() const {
        return !hypothesis_met || classification.verdict == Verdict::contained_in_span;
    }
    bool skew_ok() const { return !hypothesis_met || skew_kernel_dim == 0; }
    bool ricci_ok() const { return ricci_membership_residual < tolerance; }
    bool pass() const { return symmetric_ok() && skew_ok() && ricci_ok(); }
};

TheoremReport verify_theorems(const FpkStructure& F, const CurvatureParams& P, double tol,
                              double rank_tol = 1e-9);

}  // namespace fpk
