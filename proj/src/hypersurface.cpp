#include "fpk/hypersurface.hpp"

#include <random>
#include <stdexcept>

namespace fpk {

namespace {

constexpr double kPreTol = 1e-8;

double g_inner(const FpkStructure& F, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.dot(F.g * b);
}

// Modified Gram-Schmidt step against an already g-orthonormal list.
Eigen::VectorXd g_project_off(const FpkStructure& F, Eigen::VectorXd v,
                              const std::vector<Eigen::VectorXd>& basis) {
    for (const auto& b : basis) v -= g_inner(F, v, b) * b;
    return v;
}

}  // namespace

HypersurfaceModel make_hypersurface(const FpkStructure& F, const Eigen::VectorXd& N) {
    if (N.size() != F.dim)
        throw std::invalid_argument("make_hypersurface: normal has wrong dimension");
    const double unit_res = std::abs(g_inner(F, N, N) - 1.0);
    if (unit_res > kPreTol)
        throw std::domain_error("make_hypersurface: normal is not a unit vector");
    for (int i = 0; i < F.s; ++i)
        if (std::abs(F.eta[i].dot(N)) > kPreTol)
            throw std::domain_error(
                "make_hypersurface: normal is not admissible (structure vector not tangent)");

    HypersurfaceModel Hs;
    Hs.ambient = F;
    Hs.normal = N;
    Hs.W = -(F.phi * N);

    const int d = F.dim;
    std::vector<Eigen::VectorXd> blockers;
    blockers.push_back(N);
    blockers.push_back(Hs.W);
    for (int i = 0; i < F.s; ++i) blockers.push_back(F.xi[i]);

    std::vector<Eigen::VectorXd> raw;
    if (F.n >= 2) {
        // Pick the standard basis vector farthest from the blocked directions.
        int best = 0;
        double best_norm = -1.0;
        Eigen::VectorXd best_vec;
        for (int k = 0; k < d; ++k) {
            Eigen::VectorXd v = g_project_off(F, Eigen::VectorXd::Unit(d, k), blockers);
            const double nn = std::sqrt(std::max(0.0, g_inner(F, v, v)));
            if (nn > best_norm) {
                best_norm = nn;
                best = k;
                best_vec = v;
            }
        }
        (void)best;
        Eigen::VectorXd X0 = best_vec / best_norm;
        raw.push_back(X0);
        raw.push_back(F.phi * X0);
    }
    raw.push_back(Hs.W);
    for (int i = 0; i < F.s; ++i) raw.push_back(F.xi[i]);
    for (int k = 0; k < d; ++k) raw.push_back(Eigen::VectorXd::Unit(d, k));

    std::vector<Eigen::VectorXd> ortho;
    ortho.push_back(N);
    for (const auto& cand : raw) {
        if (static_cast<int>(Hs.tangent_basis.size()) == d - 1) break;
        Eigen::VectorXd v = g_project_off(F, cand, ortho);
        const double nn = std::sqrt(std::max(0.0, g_inner(F, v, v)));
        if (nn < 1e-6) continue;
        v /= nn;
        ortho.push_back(v);
        Hs.tangent_basis.push_back(v);
    }
    if (static_cast<int>(Hs.tangent_basis.size()) != d - 1)
        throw std::domain_error("make_hypersurface: failed to complete a tangent basis");

    const int t = d - 1;
    Hs.T.resize(t, t);
    Hs.w.resize(t);
    for (int j = 0; j < t; ++j) {
        const Eigen::VectorXd pj = F.phi * Hs.tangent_basis[j];
        for (int i = 0; i < t; ++i) Hs.T(i, j) = g_inner(F, pj, Hs.tangent_basis[i]);
        Hs.w(j) = g_inner(F, Hs.tangent_basis[j], Hs.W);
    }
    return Hs;
}

Eigen::VectorXd random_admissible_normal(const FpkStructure& F, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::VectorXd v(F.dim);
        for (int k = 0; k < F.dim; ++k) v(k) = gauss(rng);
        for (int i = 0; i < F.s; ++i) v -= F.eta[i].dot(v) * F.xi[i];
        const double nn = std::sqrt(std::max(0.0, g_inner(F, v, v)));
        if (nn < 1e-6) continue;
        return v / nn;
    }
    throw std::domain_error("random_admissible_normal: degenerate draws");
}

TangentDecomposition phi_decomposition(const HypersurfaceModel& Hs, const Eigen::VectorXd& X) {
    if (X.size() != Hs.ambient.dim)
        throw std::invalid_argument("phi_decomposition: vector has wrong dimension");
    if (std::abs(g_inner(Hs.ambient, X, Hs.normal)) > kPreTol)
        throw std::domain_error("phi_decomposition: vector is not tangent");
    const double wx = g_inner(Hs.ambient, X, Hs.W);
    return {Hs.ambient.phi * X - wx * Hs.normal, wx};
}

NormalComponent normal_curvature_component(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                           const CurvatureParams& P, const Eigen::VectorXd& X,
                                           const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
    const FpkStructure& F = Hs.ambient;
    if (R.dim != F.dim)
        throw std::invalid_argument("normal_curvature_component: curvature dimension mismatch");
    for (const Eigen::VectorXd* v : {&X, &Y, &Z}) {
        if (v->size() != F.dim)
            throw std::invalid_argument("normal_curvature_component: vector has wrong dimension");
        if (std::abs(g_inner(F, *v, Hs.normal)) > kPreTol)
            throw std::domain_error("normal_curvature_component: arguments must be tangent");
    }

    NormalComponent out;
    out.value = g_inner(F, curvature_apply(R, X, Y, Z), Hs.normal);

    const Eigen::VectorXd pX = F.phi * X, pY = F.phi * Y;
    const double wX = g_inner(F, X, Hs.W);
    const double wY = g_inner(F, Y, Hs.W);
    const double wZ = g_inner(F, Z, Hs.W);
    out.factored = P.F2 * (g_inner(F, Z, pY) * wX - g_inner(F, Z, pX) * wY +
                           2.0 * g_inner(F, X, pY) * wZ);
    return out;
}

WitnessResult parallel_obstruction_witness(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                           const CurvatureParams& P, double tol,
                                           std::uint64_t seed) {
    if (tol <= 0.0) throw std::domain_error("parallel_obstruction_witness: tol must be positive");
    WitnessResult res;
    res.expected_magnitude = 2.0 * std::abs(P.F2);

    const int t = Hs.tangent_dim();
    auto probe = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                     const Eigen::VectorXd& Z) -> bool {
        const NormalComponent nc = normal_curvature_component(Hs, R, P, X, Y, Z);
        ++res.triples_scanned;
        res.max_abs_scanned = std::max(res.max_abs_scanned, std::abs(nc.value));
        if (std::abs(nc.value) > tol) {
            res.witness = ObstructionWitness{X, Y, Z, nc.value};
            return true;
        }
        return false;
    };

    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (int k = 0; k < t; ++k)
                if (probe(Hs.tangent_basis[i], Hs.tangent_basis[j], Hs.tangent_basis[k]))
                    return res;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_tangent = [&]() {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(Hs.ambient.dim);
        for (int i = 0; i < t; ++i) v += gauss(rng) * Hs.tangent_basis[i];
        return v;
    };
    for (int trial = 0; trial < 1000; ++trial)
        if (probe(random_tangent(), random_tangent(), random_tangent())) return res;
    return res;
}

CurvatureTensor tangent_curvature(const HypersurfaceModel& Hs, const CurvatureTensor& R) {
    const FpkStructure& F = Hs.ambient;
    if (R.dim != F.dim)
        throw std::invalid_argument("tangent_curvature: curvature dimension mismatch");
    const int t = Hs.tangent_dim();
    CurvatureTensor Rt{t, Tensor4(t), Tensor4(t)};
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (int k = 0; k < t; ++k) {
                const Eigen::VectorXd v =
                    curvature_apply(R, Hs.tangent_basis[i], Hs.tangent_basis[j],
                                    Hs.tangent_basis[k]);
                const Eigen::VectorXd gv = F.g * v;
                for (int f = 0; f < t; ++f) {
                    const double c = Hs.tangent_basis[f].dot(gv);
                    Rt.up(f, i, j, k) = c;
                    Rt.low(i, j, k, f) = c;
                }
            }
    return Rt;
}

KernelBasis semi_parallel_kernel(const HypersurfaceModel& Hs, const CurvatureTensor& R,
                                 double rank_tol) {
    const CurvatureTensor Rt = tangent_curvature(Hs, R);
    return nullspace(assemble_action_matrix(Rt, Subspace::symmetric), rank_tol);
}

}  // namespace fpk
