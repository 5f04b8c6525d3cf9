#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fpk {

enum class Symmetry { symmetric, skew, general };

// (0,2)-tensor with declared symmetry type.
struct BilinearForm {
    Eigen::MatrixXd matrix;
    Symmetry symmetry = Symmetry::general;
};

// Residual of the declared symmetry: max |H - H^T| resp. max |H + H^T|, 0 for general.
double symmetry_residual(const BilinearForm& H);

// Pointwise metric f.pk-structure (phi, xi_i, eta^i, g) on R^{2n+s}.
// phi acts by columns: phi(e_j) = phi.col(j). eta^i is stored by components,
// applied as eta[i].dot(v).
struct FpkStructure {
    int n = 0;
    int s = 0;
    int dim = 0;  // 2n + s
    Eigen::MatrixXd phi;
    std::vector<Eigen::VectorXd> xi;
    std::vector<Eigen::VectorXd> eta;
    Eigen::MatrixXd g;
};

struct ValidationReport {
    std::vector<std::pair<std::string, double>> residuals;
    double tolerance = 0.0;
    double metric_min_eigenvalue = 0.0;
    bool pass = false;

    double max_residual() const;
    double residual(const std::string& name) const;
};

// Standard adapted frame e_1..e_n, f_1..f_n, xi_1..xi_s with
// phi e_a = f_a, phi f_a = -e_a, phi xi_i = 0 and g the identity.
FpkStructure canonical_structure(int n, int s);

// Residuals of the defining axioms: phi^3 + phi = 0, phi^2 = -I + eta^i (x) xi_i,
// eta^i(xi_j) = delta, phi xi_i = 0, eta^i o phi = 0,
// g(phi X, phi Y) = g(X,Y) - sum_i eta^i(X) eta^i(Y), g symmetric positive definite.
ValidationReport validate_structure(const FpkStructure& F, double tol);

// Phi(X,Y) = g(X, phi Y), skew-symmetric.
BilinearForm fundamental_two_form(const FpkStructure& F);

// Covariant transport of all fields under a seeded, well-conditioned basis change B:
// phi -> B^-1 phi B, g -> B^T g B, xi -> B^-1 xi, eta -> eta o B.
FpkStructure random_adapted_frame(const FpkStructure& F, std::uint64_t seed,
                                  double max_condition = 1e6);

}  // namespace fpk
