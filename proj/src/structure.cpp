#include "fpk/structure.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fpk {

double symmetry_residual(const BilinearForm& H) {
    switch (H.symmetry) {
        case Symmetry::symmetric:
            return (H.matrix - H.matrix.transpose()).cwiseAbs().maxCoeff();
        case Symmetry::skew:
            return (H.matrix + H.matrix.transpose()).cwiseAbs().maxCoeff();
        case Symmetry::general:
            return 0.0;
    }
    return 0.0;
}

double ValidationReport::max_residual() const {
    double r = 0.0;
    for (const auto& [name, v] : residuals) r = std::max(r, v);
    return r;
}

double ValidationReport::residual(const std::string& name) const {
    for (const auto& [key, v] : residuals)
        if (key == name) return v;
    throw std::invalid_argument("ValidationReport: unknown residual " + name);
}

FpkStructure canonical_structure(int n, int s) {
    if (n < 1 || s < 1) throw std::domain_error("canonical_structure: n and s must be >= 1");
    FpkStructure F;
    F.n = n;
    F.s = s;
    F.dim = 2 * n + s;
    F.phi = Eigen::MatrixXd::Zero(F.dim, F.dim);
    for (int a = 0; a < n; ++a) {
        F.phi(n + a, a) = 1.0;
        F.phi(a, n + a) = -1.0;
    }
    F.g = Eigen::MatrixXd::Identity(F.dim, F.dim);
    for (int i = 0; i < s; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(F.dim, 2 * n + i);
        F.xi.push_back(v);
        F.eta.push_back(v);
    }
    return F;
}

namespace {

void check_shapes(const FpkStructure& F) {
    const int d = F.dim;
    bool ok = F.n >= 1 && F.s >= 1 && d == 2 * F.n + F.s && F.phi.rows() == d &&
              F.phi.cols() == d && F.g.rows() == d && F.g.cols() == d &&
              static_cast<int>(F.xi.size()) == F.s && static_cast<int>(F.eta.size()) == F.s;
    if (ok) {
        for (const auto& v : F.xi) ok = ok && v.size() == d;
        for (const auto& v : F.eta) ok = ok && v.size() == d;
    }
    if (!ok) throw std::invalid_argument("FpkStructure: inconsistent field dimensions");
}

Eigen::MatrixXd seeded_orthogonal(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    return Q;
}

}  // namespace

ValidationReport validate_structure(const FpkStructure& F, double tol) {
    if (tol <= 0.0) throw std::domain_error("validate_structure: tol must be positive");
    check_shapes(F);
    const int d = F.dim;

    Eigen::MatrixXd eta_xi = Eigen::MatrixXd::Zero(d, d);   // sum_i xi_i (x) eta^i
    Eigen::MatrixXd eta_eta = Eigen::MatrixXd::Zero(d, d);  // sum_i eta^i (x) eta^i
    for (int i = 0; i < F.s; ++i) {
        eta_xi += F.xi[i] * F.eta[i].transpose();
        eta_eta += F.eta[i] * F.eta[i].transpose();
    }

    const Eigen::MatrixXd phi2 = F.phi * F.phi;

    double r_duality = 0.0, r_phi_xi = 0.0, r_eta_phi = 0.0;
    for (int i = 0; i < F.s; ++i) {
        for (int j = 0; j < F.s; ++j) {
            const double del = (i == j) ? 1.0 : 0.0;
            r_duality = std::max(r_duality, std::abs(F.eta[i].dot(F.xi[j]) - del));
        }
        r_phi_xi = std::max(r_phi_xi, (F.phi * F.xi[i]).cwiseAbs().maxCoeff());
        r_eta_phi = std::max(r_eta_phi, (F.phi.transpose() * F.eta[i]).cwiseAbs().maxCoeff());
    }

    ValidationReport rep;
    rep.tolerance = tol;
    rep.residuals = {
        {"phi_cubed", (F.phi * phi2 + F.phi).cwiseAbs().maxCoeff()},
        {"phi_squared",
         (phi2 + Eigen::MatrixXd::Identity(d, d) - eta_xi).cwiseAbs().maxCoeff()},
        {"eta_xi_duality", r_duality},
        {"phi_xi", r_phi_xi},
        {"eta_phi", r_eta_phi},
        {"metric_compatibility",
         (F.phi.transpose() * F.g * F.phi - F.g + eta_eta).cwiseAbs().maxCoeff()},
        {"g_symmetry", (F.g - F.g.transpose()).cwiseAbs().maxCoeff()},
    };

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (F.g + F.g.transpose()));
    rep.metric_min_eigenvalue = es.eigenvalues().minCoeff();
    rep.residuals.emplace_back("g_positive_definite", std::max(0.0, -rep.metric_min_eigenvalue));

    rep.pass = true;
    for (const auto& [name, r] : rep.residuals) rep.pass = rep.pass && r < tol;
    return rep;
}

BilinearForm fundamental_two_form(const FpkStructure& F) {
    check_shapes(F);
    return BilinearForm{F.g * F.phi, Symmetry::skew};
}

FpkStructure random_adapted_frame(const FpkStructure& F, std::uint64_t seed,
                                  double max_condition) {
    check_shapes(F);
    if (max_condition <= 0.0)
        throw std::domain_error("random_adapted_frame: max_condition must be positive");
    const int d = F.dim;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logu(-std::log(2.0), std::log(2.0));

    constexpr int max_retries = 8;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const Eigen::MatrixXd Q1 = seeded_orthogonal(d, rng);
        const Eigen::MatrixXd Q2 = seeded_orthogonal(d, rng);
        Eigen::VectorXd diag(d);
        for (int i = 0; i < d; ++i) diag(i) = std::exp(logu(rng));
        // B = Q1 D Q2 keeps cond(B) = cond(D) <= 4 while making g = B^T B non-trivial
        if (diag.maxCoeff() / diag.minCoeff() > max_condition) continue;

        const Eigen::MatrixXd B = Q1 * diag.asDiagonal() * Q2;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);

        FpkStructure out;
        out.n = F.n;
        out.s = F.s;
        out.dim = d;
        out.phi = lu.solve(F.phi * B);
        Eigen::MatrixXd g = B.transpose() * F.g * B;
        out.g = 0.5 * (g + g.transpose());
        for (int i = 0; i < F.s; ++i) {
            out.xi.push_back(lu.solve(F.xi[i]));
            out.eta.push_back(B.transpose() * F.eta[i]);
        }
        return out;
    }
    throw std::domain_error(
        "random_adapted_frame: no basis change below the condition bound after retries");
}

}  // namespace fpk
