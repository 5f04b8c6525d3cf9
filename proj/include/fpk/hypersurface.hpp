#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fpk/curvature.hpp"
#include "fpk/parallel.hpp"
#include "fpk/structure.hpp"

namespace fpk {

// Pointwise hypersurface model: an admissible unit normal N in a single
// tangent space, with the induced decomposition phi X = TX + w(X) N.
// The structure vectors are required to be tangent (eta^i(N) = 0), which
// makes W = -phi N a unit tangent vector with phi W = N.
struct HypersurfaceModel {
    FpkStructure ambient;
    Eigen::VectorXd normal;
    std::vector<Eigen::VectorXd> tangent_basis;  // g-orthonormal, dim-1 vectors
    Eigen::VectorXd W;
    Eigen::MatrixXd T;   // T(i,j) = g(phi t_j, t_i)
    Eigen::VectorXd w;   // w(i) = g(t_i, W)

    int tangent_dim() const { return static_cast<int>(tangent_basis.size()); }
};

// Builds the model from a unit normal with eta^i(N) = 0 for all i.
// The tangent basis is ordered deterministically: for n >= 2 it starts with a
// phi-invariant pair (X0, phi X0) taken from the standard basis, then W, then
// the structure vectors, then a completion; for n = 1 the pair is absent.
// Throws std::domain_error if N is not unit or not admissible.
HypersurfaceModel make_hypersurface(const FpkStructure& F, const Eigen::VectorXd& N);

// Seeded Gaussian vector projected g-orthogonally off the structure vectors
// and normalized; always admissible for make_hypersurface.
Eigen::VectorXd random_admissible_normal(const FpkStructure& F, std::uint64_t seed);

struct TangentDecomposition {
    Eigen::VectorXd tangent_part;   // TX
    double normal_coefficient;      // w(X)
};

// Splits phi X into tangent and normal parts. X must be tangent.
TangentDecomposition phi_decomposition(const HypersurfaceModel& Hs, const Eigen::VectorXd& X);

struct NormalComponent {
    double value;      // g(R(X,Y)Z, N)
    double factored;   // F2 * (g(Z,phi Y) w(X) - g(Z,phi X) w(Y) + 2 g(X,phi Y) w(Z))
    double mismatch() const { return std::abs(value - factored); }
};

// Normal part of the curvature on tangent arguments, together with its
// closed-form factorization through F2.
NormalComponent normal_curvature_component(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                           const CurvatureParams& P, const Eigen::VectorXd& X,
                                           const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);

struct ObstructionWitness {
    Eigen::VectorXd X, Y, Z;
    double value;
};

struct WitnessResult {
    std::optional<ObstructionWitness> witness;
    double max_abs_scanned = 0.0;
    long triples_scanned = 0;
    double expected_magnitude = 0.0;  // 2 |F2|
};

// Deterministic scan for a tangent triple with nonzero normal curvature
// component: lexicographic over tangent-basis triples first, then 1000 seeded
// random tangent triples. A witness rules out a parallel second fundamental
// form; none exists when F2 = 0.
WitnessResult parallel_obstruction_witness(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                           const CurvatureParams& P, double tol = 1e-10,
                                           std::uint64_t seed = 0);

// Ambient curvature evaluated on tangent basis vectors and projected back to
// the tangent space, expressed in tangent coordinates (where the induced
// metric is the identity).
CurvatureTensor tangent_curvature(const HypersurfaceModel& Hs, const CurvatureTensor& R);

// Kernel of h -> R.h over symmetric bilinear forms on the tangent space.
// Nonempty kernel exhibits candidate semi-parallel second fundamental forms.
KernelBasis semi_parallel_kernel(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                 double rank_tol);

}  // namespace fpk
