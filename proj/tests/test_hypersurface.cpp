#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "fpk/curvature.hpp"
#include "fpk/hypersurface.hpp"
#include "fpk/parallel.hpp"
#include "fpk/structure.hpp"
#include "oracles.hpp"

using namespace fpk;

namespace {

double model_invariants(const HypersurfaceModel& Hs) {
    const FpkStructure& F = Hs.ambient;
    const auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return a.dot(F.g * b);
    };
    double r = std::abs(ip(Hs.W, Hs.W) - 1.0);
    r = std::max(r, std::abs(ip(Hs.normal, Hs.W)));
    r = std::max(r, (F.phi * Hs.W - Hs.normal).cwiseAbs().maxCoeff());
    const int t = Hs.tangent_dim();
    for (int j = 0; j < t; ++j) {
        r = std::max(r, std::abs(ip(Hs.tangent_basis[j], Hs.normal)));
        for (int i = 0; i < t; ++i) {
            const double del = (i == j) ? 1.0 : 0.0;
            r = std::max(r, std::abs(ip(Hs.tangent_basis[i], Hs.tangent_basis[j]) - del));
        }
        // phi X = TX + w(X) N on the tangent basis
        Eigen::VectorXd rec = Hs.w(j) * Hs.normal;
        for (int i = 0; i < t; ++i) rec += Hs.T(i, j) * Hs.tangent_basis[i];
        r = std::max(r, (F.phi * Hs.tangent_basis[j] - rec).cwiseAbs().maxCoeff());
    }
    return r;
}

Eigen::VectorXd random_tangent(const HypersurfaceModel& Hs, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(Hs.ambient.dim);
    for (const auto& t : Hs.tangent_basis) v += gauss(rng) * t;
    return v;
}

}  // namespace

TEST_CASE("hypersurface from the canonical normal e2") {
    const FpkStructure F = canonical_structure(2, 1);
    const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
    CHECK(Hs.tangent_dim() == 4);
    CHECK((Hs.W + Eigen::VectorXd::Unit(5, 3)).cwiseAbs().maxCoeff() == 0.0);  // W = -f2
    CHECK(model_invariants(Hs) < 1e-12);

    // Basis comes out as e1, f1, W, xi; w is the covector dual to W.
    CHECK((Hs.tangent_basis[0] - Eigen::VectorXd::Unit(5, 0)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((Hs.tangent_basis[1] - Eigen::VectorXd::Unit(5, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(Hs.w(0) == doctest::Approx(0.0));
    CHECK(Hs.w(1) == doctest::Approx(0.0));
    CHECK(Hs.w(2) == doctest::Approx(1.0));
    CHECK(Hs.w(3) == doctest::Approx(0.0));
    CHECK(Hs.T(1, 0) == doctest::Approx(1.0));   // phi e1 = f1
    CHECK(Hs.T(0, 1) == doctest::Approx(-1.0));  // phi f1 = -e1
    CHECK(Hs.T.col(2).cwiseAbs().maxCoeff() < 1e-12);  // phi W = N has no tangent part
    CHECK(Hs.T.col(3).cwiseAbs().maxCoeff() < 1e-12);  // phi xi = 0
}

TEST_CASE("hypersurface rejects bad normals") {
    const FpkStructure F = canonical_structure(2, 1);
    CHECK_THROWS_AS((void)make_hypersurface(F, F.xi[0]), std::domain_error);
    CHECK_THROWS_AS((void)make_hypersurface(F, 2.0 * Eigen::VectorXd::Unit(5, 1)),
                    std::domain_error);
    CHECK_THROWS_AS((void)make_hypersurface(F, Eigen::VectorXd::Unit(4, 1)),
                    std::invalid_argument);
}

TEST_CASE("hypersurface invariants hold on random frames and normals") {
    for (int n : {1, 2, 3})
        for (int s : {1, 2}) {
            const FpkStructure F =
                random_adapted_frame(canonical_structure(n, s), 11 + n + 7 * s);
            for (std::uint64_t seed : {0, 1, 2}) {
                const Eigen::VectorXd N = random_admissible_normal(F, seed);
                const HypersurfaceModel Hs = make_hypersurface(F, N);
                CAPTURE(n);
                CAPTURE(s);
                CHECK(model_invariants(Hs) < 1e-12);
            }
        }
}

TEST_CASE("random admissible normals are deterministic and admissible") {
    const FpkStructure F = random_adapted_frame(canonical_structure(2, 2), 19);
    const Eigen::VectorXd A = random_admissible_normal(F, 7);
    const Eigen::VectorXd B = random_admissible_normal(F, 7);
    CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::VectorXd N = random_admissible_normal(F, seed);
        CHECK(std::abs(N.dot(F.g * N) - 1.0) < 1e-12);
        for (int i = 0; i < F.s; ++i) CHECK(std::abs(F.eta[i].dot(N)) < 1e-12);
    }
}

TEST_CASE("phi decomposition of tangent vectors") {
    const FpkStructure F = canonical_structure(2, 1);
    const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));

    const TangentDecomposition d1 = phi_decomposition(Hs, Eigen::VectorXd::Unit(5, 0));
    CHECK((d1.tangent_part - Eigen::VectorXd::Unit(5, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d1.normal_coefficient == doctest::Approx(0.0));

    const TangentDecomposition d2 = phi_decomposition(Hs, Hs.W);
    CHECK(d2.tangent_part.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d2.normal_coefficient == doctest::Approx(1.0));

    const TangentDecomposition d3 = phi_decomposition(Hs, F.xi[0]);
    CHECK(d3.tangent_part.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d3.normal_coefficient == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)phi_decomposition(Hs, Hs.normal), std::domain_error);
    CHECK_THROWS_AS((void)phi_decomposition(Hs, Eigen::VectorXd::Zero(4)),
                    std::invalid_argument);
}

TEST_CASE("normal curvature component and its factorization") {
    SUBCASE("Sasakian c=5 on the named triple") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        const NormalComponent nc =
            normal_curvature_component(Hs, R, P, Eigen::VectorXd::Unit(5, 0),
                                       Eigen::VectorXd::Unit(5, 2), Hs.W);
        CHECK(nc.value == doctest::Approx(-2.0));
        CHECK(nc.factored == doctest::Approx(-2.0));
        CHECK(nc.mismatch() < 1e-12);
    }

    SUBCASE("cosymplectic c=0 kills the normal part") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::cosymplectic, 0.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        std::mt19937_64 rng(2);
        for (int t = 0; t < 20; ++t) {
            const NormalComponent nc = normal_curvature_component(
                Hs, R, P, random_tangent(Hs, rng), random_tangent(Hs, rng),
                random_tangent(Hs, rng));
            CHECK(std::abs(nc.value) < 1e-12);
        }
    }

    SUBCASE("factorization agreement over random triples and parameters") {
        struct Case {
            int n, s;
            double F1, F2;
            std::vector<double> fij;
        };
        const std::vector<Case> cases = {
            {2, 1, -0.5, 0.5, {-1.0}},
            {2, 2, 1.0, 0.75, {1.0, 1.0, 1.0, 1.0}},
            {3, 2, 0.3, -0.7, {0.5, 2.0, -1.0, 0.25}},  // asymmetric family
        };
        for (const Case& tc : cases) {
            const FpkStructure F =
                random_adapted_frame(canonical_structure(tc.n, tc.s), 5);
            CurvatureParams P;
            P.F1 = tc.F1;
            P.F2 = tc.F2;
            P.Fij = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                   Eigen::RowMajor>>(tc.fij.data(), tc.s,
                                                                     tc.s);
            const CurvatureTensor R = model_curvature(F, P);
            const HypersurfaceModel Hs =
                make_hypersurface(F, random_admissible_normal(F, 3));
            std::mt19937_64 rng(100);
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                const NormalComponent nc = normal_curvature_component(
                    Hs, R, P, random_tangent(Hs, rng), random_tangent(Hs, rng),
                    random_tangent(Hs, rng));
                worst = std::max(worst, nc.mismatch());
            }
            CHECK(worst < 1e-10);
        }
    }

    SUBCASE("non-tangent arguments are rejected") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        CHECK_THROWS_AS((void)normal_curvature_component(Hs, R, P, Hs.normal,
                                                         Eigen::VectorXd::Unit(5, 0), Hs.W),
                        std::domain_error);
    }
}

TEST_CASE("obstruction witness scan") {
    SUBCASE("Sasakian c=5: first witness is (e1, f1, W) with value -2") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        const WitnessResult res = parallel_obstruction_witness(Hs, R, P);
        REQUIRE(res.witness.has_value());
        CHECK(res.witness->value == doctest::Approx(-2.0));
        CHECK(res.expected_magnitude == doctest::Approx(2.0));
        CHECK(res.triples_scanned == 7);
        CHECK((res.witness->X - Eigen::VectorXd::Unit(5, 0)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((res.witness->Y - Eigen::VectorXd::Unit(5, 2)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((res.witness->Z - Hs.W).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("cosymplectic c=0: no witness") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::cosymplectic, 0.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        const WitnessResult res = parallel_obstruction_witness(Hs, R, P);
        CHECK_FALSE(res.witness.has_value());
        CHECK(res.max_abs_scanned < 1e-10);
        CHECK(res.triples_scanned == 4 * 4 * 4 + 1000);
    }

    SUBCASE("all-ones family c=1, s=2: witness magnitude 1/2") {
        const FpkStructure F = canonical_structure(2, 2);
        const CurvatureParams P = preset_params(PresetKind::s_space_form, 1.0, 2);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(6, 1));
        const WitnessResult res = parallel_obstruction_witness(Hs, R, P);
        REQUIRE(res.witness.has_value());
        CHECK(std::abs(res.witness->value) == doctest::Approx(0.5));
    }

    SUBCASE("n=1: the normal part vanishes even when F2 != 0") {
        const FpkStructure F = canonical_structure(1, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(3, 0));
        const WitnessResult res = parallel_obstruction_witness(Hs, R, P);
        CHECK_FALSE(res.witness.has_value());
        CHECK(res.max_abs_scanned < 1e-10);
    }

    SUBCASE("tolerance must be positive") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        CHECK_THROWS_AS((void)parallel_obstruction_witness(Hs, R, P, 0.0), std::domain_error);
    }
}

TEST_CASE("tangent curvature restriction") {
    const FpkStructure F = canonical_structure(2, 1);
    const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
    const CurvatureTensor R = model_curvature(F, P);
    const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
    const CurvatureTensor Rt = tangent_curvature(Hs, R);
    REQUIRE(Rt.dim == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                const Eigen::VectorXd v = curvature_apply(
                    R, Hs.tangent_basis[i], Hs.tangent_basis[j], Hs.tangent_basis[k]);
                for (int f = 0; f < 4; ++f) {
                    const double want = Hs.tangent_basis[f].dot(F.g * v);
                    CHECK(Rt.up(f, i, j, k) == doctest::Approx(want));
                    CHECK(Rt.low(i, j, k, f) == doctest::Approx(want));
                }
            }
}

TEST_CASE("semi-parallel kernel") {
    SUBCASE("zero curvature: full symmetric space") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::cosymplectic, 0.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        CHECK(semi_parallel_kernel(Hs, R, 1e-9).dimension() == 10);
    }

    SUBCASE("Sasakian c=5: nonempty, matches the oracle, spanned inside the span") {
        const FpkStructure F = canonical_structure(2, 1);
        const CurvatureParams P = preset_params(PresetKind::sasakian, 5.0, 1);
        const CurvatureTensor R = model_curvature(F, P);
        const HypersurfaceModel Hs = make_hypersurface(F, Eigen::VectorXd::Unit(5, 1));
        const KernelBasis K = semi_parallel_kernel(Hs, R, 1e-9);
        REQUIRE(K.dimension() >= 1);

        const CurvatureTensor Rt = tangent_curvature(Hs, R);
        const int t = Rt.dim;
        std::vector<std::vector<std::vector<oracle::Vec>>> up(
            t, std::vector<std::vector<oracle::Vec>>(t, std::vector<oracle::Vec>(t)));
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j)
                for (int k = 0; k < t; ++k) {
                    oracle::Vec v(t, 0.0);
                    for (int l = 0; l < t; ++l) v[l] = Rt.up(l, i, j, k);
                    up[i][j][k] = v;
                }
        CHECK(K.dimension() ==
              oracle::nullity(oracle::action_rows(up, true), 1e-9));

        // Kernel elements project onto the tangent restrictions of g and
        // eta (x) eta; for this cell the kernel is the tangent metric line.
        const Eigen::MatrixXd gt = Eigen::MatrixXd::Identity(t, t);
        Eigen::VectorXd etat(t);
        for (int j = 0; j < t; ++j) etat(j) = F.eta[0].dot(Hs.tangent_basis[j]);
        for (const auto& el : K.elements) {
            oracle::Mat B(t * t, oracle::Vec(2, 0.0));
            oracle::Vec y(t * t, 0.0);
            for (int a = 0; a < t; ++a)
                for (int b = 0; b < t; ++b) {
                    B[a * t + b][0] = gt(a, b);
                    B[a * t + b][1] = etat(a) * etat(b);
                    y[a * t + b] = el.matrix(a, b);
                }
            const oracle::Vec coeff = oracle::lstsq(B, y);
            CHECK(oracle::lstsq_residual(B, coeff, y) < 1e-8);
        }
    }
}
