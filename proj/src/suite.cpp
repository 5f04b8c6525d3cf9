#include "fpk/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"

namespace fpk {

std::string NormalSpec::str() const {
    return random ? std::string("random") : "index:" + std::to_string(index);
}

std::string preset_name(PresetKind k) {
    switch (k) {
        case PresetKind::s_space_form: return "s-space-form";
        case PresetKind::sasakian: return "sasakian";
        case PresetKind::kenmotsu: return "kenmotsu";
        case PresetKind::cosymplectic: return "cosymplectic";
        case PresetKind::generalized_sasakian: return "generalized-sasakian";
    }
    return "?";
}

std::string suite_name(SuiteKind k) {
    switch (k) {
        case SuiteKind::axioms: return "axioms";
        case SuiteKind::curvature: return "curvature";
        case SuiteKind::symmetric_kernel: return "symmetric_kernel";
        case SuiteKind::skew_kernel: return "skew_kernel";
        case SuiteKind::hypersurface: return "hypersurface";
        case SuiteKind::ricci: return "ricci";
        case SuiteKind::all: return "all";
    }
    return "?";
}

namespace {

double parse_number(const std::string& text, const char* flag) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": cannot parse number '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

Eigen::MatrixXd parse_fij(const std::string& text, int s) {
    const auto rows = split(text, ';');
    if (static_cast<int>(rows.size()) != s)
        throw UsageError("--fij must have s = " + std::to_string(s) + " rows separated by ';'");
    Eigen::MatrixXd M(s, s);
    for (int i = 0; i < s; ++i) {
        const auto cells = split(rows[i], ',');
        if (static_cast<int>(cells.size()) != s)
            throw UsageError("--fij row " + std::to_string(i + 1) + " must have s = " +
                             std::to_string(s) + " entries separated by ','");
        for (int j = 0; j < s; ++j) M(i, j) = parse_number(cells[j], "--fij");
    }
    return M;
}

PresetKind preset_from_name(const std::string& name) {
    static const std::unordered_map<std::string, PresetKind> map = {
        {"s-space-form", PresetKind::s_space_form},
        {"sasakian", PresetKind::sasakian},
        {"kenmotsu", PresetKind::kenmotsu},
        {"cosymplectic", PresetKind::cosymplectic},
        {"generalized-sasakian", PresetKind::generalized_sasakian},
    };
    return map.at(name);
}

SuiteKind suite_from_name(const std::string& name) {
    static const std::unordered_map<std::string, SuiteKind> map = {
        {"axioms", SuiteKind::axioms},
        {"curvature", SuiteKind::curvature},
        {"symmetric_kernel", SuiteKind::symmetric_kernel},
        {"skew_kernel", SuiteKind::skew_kernel},
        {"hypersurface", SuiteKind::hypersurface},
        {"ricci", SuiteKind::ricci},
        {"all", SuiteKind::all},
    };
    return map.at(name);
}

NormalSpec parse_normal(const std::string& text) {
    if (text == "random") return NormalSpec{true, 0};
    const std::string prefix = "index:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string tail = text.substr(prefix.size());
        try {
            std::size_t pos = 0;
            const int k = std::stoi(tail, &pos);
            if (pos != tail.size() || k < 0) throw std::invalid_argument(tail);
            return NormalSpec{false, k};
        } catch (const std::exception&) {
            throw UsageError("--normal index:k needs a nonnegative integer, got '" + tail + "'");
        }
    }
    throw UsageError("--normal expects 'random' or 'index:k', got '" + text + "'");
}

}  // namespace

SuiteConfig parse_config(const std::vector<std::string>& argv) {
    SuiteConfig cfg;
    CLI::App app{
        "Pointwise verification of model curvature identities, parallel-tensor kernels and "
        "hypersurface obstructions for metric f.pk-structures"};
    app.name("fpk-verify");

    std::string preset_str, fij_str, gsf_str;
    std::string suite_str = "all", format_str = "text", normal_str = "index:1";

    auto* n_opt = app.add_option("--n", cfg.n, "rank parameter n (the space has dimension 2n+s)");
    auto* s_opt = app.add_option("--s", cfg.s, "number of structure vector fields");
    auto* preset_opt =
        app.add_option("--preset", preset_str, "curvature parameter family")
            ->check(CLI::IsMember({"s-space-form", "sasakian", "kenmotsu", "cosymplectic",
                                   "generalized-sasakian"}));
    auto* c_opt = app.add_option("--c", cfg.c, "phi-sectional curvature for the chosen preset");
    auto* f1_opt = app.add_option("--f1", cfg.f1, "explicit F1 (requires --fij)");
    auto* f2_opt = app.add_option("--f2", cfg.f2, "explicit F2 (requires --fij)");
    auto* fij_opt = app.add_option("--fij", fij_str,
                                   "explicit s x s F_ij matrix, rows ';', entries ','");
    auto* gsf_opt = app.add_option("--gsf", gsf_str,
                                   "generalized-sasakian functions f1,f2,f3");
    auto* suite_opt =
        app.add_option("--suite", suite_str, "which checks to run")
            ->check(CLI::IsMember({"axioms", "curvature", "symmetric_kernel", "skew_kernel",
                                   "hypersurface", "ricci", "all"}));
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--tol", cfg.tol, "residual tolerance");
    app.add_option("--rank-tol", cfg.rank_tol, "relative singular-value threshold for kernels");
    app.add_option("--normal", normal_str, "hypersurface normal: index:k or random");
    app.add_option("--format", format_str, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--sweep", cfg.sweep, "run the full verification grid");
    auto* out_opt = app.add_option("--out", cfg.out_dir, "output directory for sweep reports");
    app.add_flag("--timing", cfg.timing, "record wall-clock duration in the report");

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.suite = suite_from_name(suite_str);
    cfg.format = format_str == "json" ? OutputFormat::json : OutputFormat::text;
    cfg.normal = parse_normal(normal_str);
    if (cfg.tol <= 0.0 || cfg.rank_tol <= 0.0)
        throw UsageError("--tol and --rank-tol must be positive");

    if (cfg.sweep) {
        if (!out_opt->count()) throw UsageError("--sweep requires --out DIR");
        for (const auto* opt : {n_opt, s_opt, preset_opt, c_opt, f1_opt, f2_opt, fij_opt, gsf_opt,
                                suite_opt})
            if (opt->count())
                throw UsageError(opt->get_name() +
                                 " cannot be combined with --sweep (the grid fixes it)");
        return cfg;
    }
    if (out_opt->count()) throw UsageError("--out is only used with --sweep");

    if (!n_opt->count() || !s_opt->count()) throw UsageError("--n and --s are required");
    if (cfg.n < 1 || cfg.s < 1) throw UsageError("--n and --s must be positive");

    const bool has_preset = preset_opt->count() > 0;
    const bool has_fij = fij_opt->count() > 0;
    if (has_preset == has_fij)
        throw UsageError("exactly one of --preset or --fij must be given");

    if (has_preset) {
        if (f1_opt->count() || f2_opt->count())
            throw UsageError("--f1/--f2 cannot be combined with --preset");
        cfg.preset = preset_from_name(preset_str);
        if (*cfg.preset == PresetKind::generalized_sasakian) {
            if (c_opt->count())
                throw UsageError("--preset generalized-sasakian takes --gsf, not --c");
            if (!gsf_opt->count())
                throw UsageError("--preset generalized-sasakian requires --gsf f1,f2,f3");
            const auto parts = split(gsf_str, ',');
            if (parts.size() != 3)
                throw UsageError("--gsf expects three comma-separated values");
            for (const auto& p : parts) cfg.gsf.push_back(parse_number(p, "--gsf"));
        } else {
            if (gsf_opt->count())
                throw UsageError("--gsf is only used with --preset generalized-sasakian");
            if (!c_opt->count()) throw UsageError("--preset requires --c");
        }
        if (*cfg.preset != PresetKind::s_space_form && cfg.s != 1)
            throw UsageError("preset '" + preset_str + "' is an s=1 family; use --s 1");
    } else {
        if (c_opt->count()) throw UsageError("--c is only used with --preset");
        if (gsf_opt->count())
            throw UsageError("--gsf is only used with --preset generalized-sasakian");
        cfg.explicit_params = true;
        cfg.fij = parse_fij(fij_str, cfg.s);
    }
    return cfg;
}

CurvatureParams params_from_config(const SuiteConfig& cfg) {
    if (cfg.preset) {
        if (*cfg.preset == PresetKind::generalized_sasakian)
            return preset_params(*cfg.preset, 0.0, cfg.s, cfg.gsf);
        return preset_params(*cfg.preset, cfg.c, cfg.s);
    }
    CurvatureParams P;
    P.F1 = cfg.f1;
    P.F2 = cfg.f2;
    P.Fij = cfg.fij;
    return P;
}

namespace {

double max_or_zero(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

double phi_sectional_max_deviation(const FpkStructure& F, const CurvatureTensor& R,
                                   const CurvatureParams& P, std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double dev = 0.0;
    int done = 0;
    while (done < samples) {
        Eigen::VectorXd v(F.dim);
        for (int k = 0; k < F.dim; ++k) v(k) = gauss(rng);
        for (int i = 0; i < F.s; ++i) v -= F.eta[i].dot(v) * F.xi[i];
        const double nn = std::sqrt(std::max(0.0, v.dot(F.g * v)));
        if (nn < 1e-6) continue;
        v /= nn;
        dev = std::max(dev, std::abs(phi_sectional_curvature(F, R, v) - P.phi_sectional()));
        ++done;
    }
    return dev;
}

double lowering_residual(const CurvatureTensor& R, const Eigen::MatrixXd& g) {
    const int d = R.dim;
    double res = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int m = 0; m < d; ++m) {
                    double acc = 0.0;
                    for (int l = 0; l < d; ++l) acc += g(m, l) * R.up(l, i, j, k);
                    res = std::max(res, std::abs(R.low(i, j, k, m) - acc));
                }
    return res;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    SuiteReport rep;
    rep.config = cfg;

    try {
        const FpkStructure F = canonical_structure(cfg.n, cfg.s);
        const CurvatureParams P = params_from_config(cfg);
        rep.params = P;

        const auto wants = [&](SuiteKind k) {
            return cfg.suite == k || cfg.suite == SuiteKind::all;
        };

        std::optional<CurvatureTensor> R;
        const auto curvature_of = [&]() -> const CurvatureTensor& {
            if (!R) R = model_curvature(F, P);
            return *R;
        };

        if (wants(SuiteKind::axioms)) {
            AxiomsResult ax;
            ax.seed = cfg.seed;
            ax.canonical = validate_structure(F, cfg.tol);
            ax.random_frame = validate_structure(random_adapted_frame(F, cfg.seed), cfg.tol);
            ax.pass = ax.canonical.pass && ax.random_frame.pass;
            rep.axioms = std::move(ax);
        }

        if (wants(SuiteKind::curvature)) {
            CurvatureResult cv;
            const CurvatureTensor& Rc = curvature_of();
            cv.audit = symmetry_audit(Rc, cfg.tol);
            cv.fij_symmetric = (P.Fij - P.Fij.transpose()).cwiseAbs().maxCoeff() == 0.0;
            cv.lowering_residual = lowering_residual(Rc, F.g);
            cv.phi_sectional_expected = P.phi_sectional();
            cv.phi_sectional_samples = 100;
            cv.phi_sectional_max_dev =
                phi_sectional_max_deviation(F, Rc, P, cfg.seed, cv.phi_sectional_samples);
            const bool audit_ok =
                cv.audit.skew12_pass && cv.audit.skew34_pass &&
                (!cv.fij_symmetric || (cv.audit.pair_pass && cv.audit.bianchi_pass));
            cv.pass = audit_ok && cv.lowering_residual < cfg.tol &&
                      cv.phi_sectional_max_dev < cfg.tol;
            rep.curvature = std::move(cv);
        }

        if (wants(SuiteKind::symmetric_kernel)) {
            SymKernelResult sk;
            sk.hypothesis_met = P.hypothesis_met();
            const ActionMatrix M = assemble_action_matrix(curvature_of(), Subspace::symmetric);
            const KernelBasis K = nullspace(M, cfg.rank_tol);
            sk.kernel_dim = K.dimension();
            sk.classification = classify_symmetric_kernel(F, K, M, P, cfg.tol);
            sk.pass = !sk.hypothesis_met ||
                      sk.classification.verdict == Verdict::contained_in_span;
            rep.symmetric_kernel = std::move(sk);
        }

        if (wants(SuiteKind::skew_kernel)) {
            SkewKernelResult sk;
            sk.hypothesis_met = P.hypothesis_met();
            sk.kernel_dim =
                nullspace(assemble_action_matrix(curvature_of(), Subspace::skew), cfg.rank_tol)
                    .dimension();
            sk.pass = !sk.hypothesis_met || sk.kernel_dim == 0;
            rep.skew_kernel = std::move(sk);
        }

        if (wants(SuiteKind::hypersurface)) {
            HypersurfaceResult hy;
            hy.normal = cfg.normal.str();
            Eigen::VectorXd N;
            if (cfg.normal.random) {
                N = random_admissible_normal(F, cfg.seed);
            } else {
                if (cfg.normal.index < 0 || cfg.normal.index >= F.dim)
                    throw std::invalid_argument("hypersurface normal index out of range (dim " +
                                                std::to_string(F.dim) + ")");
                N = Eigen::VectorXd::Unit(F.dim, cfg.normal.index);
            }
            const HypersurfaceModel Hs = make_hypersurface(F, N);
            const CurvatureTensor& Rc = curvature_of();
            hy.witness_expected = P.F2 != 0.0 && cfg.n >= 2;
            hy.witness = parallel_obstruction_witness(Hs, Rc, P, cfg.tol, cfg.seed);
            const int t = Hs.tangent_dim();
            double mism = 0.0;
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j)
                    for (int k = 0; k < t; ++k)
                        mism = std::max(
                            mism, normal_curvature_component(Hs, Rc, P, Hs.tangent_basis[i],
                                                             Hs.tangent_basis[j],
                                                             Hs.tangent_basis[k])
                                      .mismatch());
            hy.factorization_max_mismatch = mism;
            hy.semi_parallel_dim = semi_parallel_kernel(Hs, Rc, cfg.rank_tol).dimension();
            const bool witness_ok =
                hy.witness_expected
                    ? (hy.witness.witness.has_value() &&
                       std::abs(std::abs(hy.witness.witness->value) -
                                hy.witness.expected_magnitude) < cfg.tol)
                    : !hy.witness.witness.has_value();
            hy.pass = witness_ok && hy.factorization_max_mismatch < cfg.tol &&
                      hy.semi_parallel_dim >= 1;
            rep.hypersurface = std::move(hy);
        }

        if (wants(SuiteKind::ricci)) {
            RicciResult rc;
            const CurvatureTensor& Rc = curvature_of();
            const BilinearForm S = ricci_tensor(Rc, F.g);
            const auto span = structure_span_basis(F);
            Eigen::MatrixXd B(subspace_dimension(Subspace::symmetric, F.dim),
                              static_cast<int>(span.size()));
            for (int j = 0; j < static_cast<int>(span.size()); ++j)
                B.col(j) = vectorize_form(span[j].matrix, Subspace::symmetric);
            const Eigen::VectorXd v = vectorize_form(S.matrix, Subspace::symmetric);
            rc.coefficients = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(B).solve(v);
            const double nv = v.norm();
            rc.membership_residual = (B * rc.coefficients - v).norm() / (nv > 0.0 ? nv : 1.0);
            rc.action_max = curvature_action(Rc, S).max_abs();
            rc.semisymmetric = rc.action_max < 1e-9;
            rc.pass = rc.membership_residual < cfg.tol;
            rep.ricci = std::move(rc);
        }

        rep.pass = true;
        if (rep.axioms) rep.pass = rep.pass && rep.axioms->pass;
        if (rep.curvature) rep.pass = rep.pass && rep.curvature->pass;
        if (rep.symmetric_kernel) rep.pass = rep.pass && rep.symmetric_kernel->pass;
        if (rep.skew_kernel) rep.pass = rep.pass && rep.skew_kernel->pass;
        if (rep.hypersurface) rep.pass = rep.pass && rep.hypersurface->pass;
        if (rep.ricci) rep.pass = rep.pass && rep.ricci->pass;
    } catch (const std::exception& e) {
        rep.error = e.what();
        rep.pass = false;
    }

    if (cfg.timing)
        rep.duration_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    return rep;
}

namespace {

Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push(Json::number(v(i)));
    return a;
}

Json mat_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push(Json::number(m(i, j)));
        rows.push(std::move(r));
    }
    return rows;
}

Json dlist_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push(Json::number(x));
    return a;
}

Json validation_json(const ValidationReport& r) {
    Json o = Json::object();
    Json res = Json::object();
    for (const auto& [name, value] : r.residuals) res.set(name, Json::number(value));
    o.set("residuals", std::move(res));
    o.set("metric_min_eigenvalue", Json::number(r.metric_min_eigenvalue));
    o.set("max_residual", Json::number(r.max_residual()));
    o.set("tolerance", Json::number(r.tolerance));
    o.set("pass", Json::boolean(r.pass));
    return o;
}

}  // namespace

Json report_to_json(const SuiteReport& rep) {
    const SuiteConfig& cfg = rep.config;
    Json root = Json::object();
    root.set("schema_version", Json::integer(1));

    Json config = Json::object();
    config.set("n", Json::integer(cfg.n));
    config.set("s", Json::integer(cfg.s));
    Json params = Json::object();
    if (cfg.preset) {
        params.set("mode", Json::string("preset"));
        params.set("kind", Json::string(preset_name(*cfg.preset)));
        if (*cfg.preset == PresetKind::generalized_sasakian)
            params.set("gsf", dlist_json(cfg.gsf));
        else
            params.set("c", Json::number(cfg.c));
    } else {
        params.set("mode", Json::string("explicit"));
    }
    if (rep.params) {
        params.set("F1", Json::number(rep.params->F1));
        params.set("F2", Json::number(rep.params->F2));
        params.set("Fij", mat_json(rep.params->Fij));
    } else if (cfg.explicit_params) {
        params.set("F1", Json::number(cfg.f1));
        params.set("F2", Json::number(cfg.f2));
        params.set("Fij", mat_json(cfg.fij));
    }
    config.set("params", std::move(params));
    config.set("suite", Json::string(suite_name(cfg.suite)));
    config.set("seed", Json::integer(static_cast<std::int64_t>(cfg.seed)));
    config.set("tol", Json::number(cfg.tol));
    config.set("rank_tol", Json::number(cfg.rank_tol));
    config.set("normal", Json::string(cfg.normal.str()));
    config.set("format", Json::string(cfg.format == OutputFormat::json ? "json" : "text"));
    root.set("config", std::move(config));

    Json results = Json::object();
    if (rep.axioms) {
        Json o = Json::object();
        o.set("canonical", validation_json(rep.axioms->canonical));
        o.set("random_frame", validation_json(rep.axioms->random_frame));
        o.set("seed", Json::integer(static_cast<std::int64_t>(rep.axioms->seed)));
        o.set("pass", Json::boolean(rep.axioms->pass));
        results.set("axioms", std::move(o));
    }
    if (rep.curvature) {
        const auto& cv = *rep.curvature;
        Json o = Json::object();
        o.set("skew12", Json::number(cv.audit.skew12));
        o.set("skew34", Json::number(cv.audit.skew34));
        o.set("pair_symmetry", Json::number(cv.audit.pair_symmetry));
        o.set("first_bianchi", Json::number(cv.audit.first_bianchi));
        o.set("fij_symmetric", Json::boolean(cv.fij_symmetric));
        o.set("lowering_residual", Json::number(cv.lowering_residual));
        o.set("phi_sectional_expected", Json::number(cv.phi_sectional_expected));
        o.set("phi_sectional_max_dev", Json::number(cv.phi_sectional_max_dev));
        o.set("phi_sectional_samples", Json::integer(cv.phi_sectional_samples));
        o.set("pass", Json::boolean(cv.pass));
        results.set("curvature", std::move(o));
    }
    if (rep.symmetric_kernel) {
        const auto& sk = *rep.symmetric_kernel;
        Json o = Json::object();
        o.set("hypothesis_met", Json::boolean(sk.hypothesis_met));
        o.set("kernel_dim", Json::integer(sk.kernel_dim));
        o.set("projection_residuals", dlist_json(sk.classification.projection_residuals));
        Json coeffs = Json::array();
        for (const auto& c : sk.classification.coefficients) coeffs.push(vec_json(c));
        o.set("coefficients", std::move(coeffs));
        o.set("lambda_spreads", dlist_json(sk.classification.lambda_spreads));
        o.set("span_action_residuals", dlist_json(sk.classification.span_action_residuals));
        o.set("span_in_kernel", Json::boolean(sk.classification.span_in_kernel));
        o.set("verdict",
              Json::string(sk.classification.verdict == Verdict::contained_in_span
                               ? "contained_in_span"
                               : "not_contained"));
        o.set("pass", Json::boolean(sk.pass));
        results.set("symmetric_kernel", std::move(o));
    }
    if (rep.skew_kernel) {
        const auto& sk = *rep.skew_kernel;
        Json o = Json::object();
        o.set("hypothesis_met", Json::boolean(sk.hypothesis_met));
        o.set("kernel_dim", Json::integer(sk.kernel_dim));
        o.set("pass", Json::boolean(sk.pass));
        results.set("skew_kernel", std::move(o));
    }
    if (rep.hypersurface) {
        const auto& hy = *rep.hypersurface;
        Json o = Json::object();
        o.set("normal", Json::string(hy.normal));
        o.set("witness_expected", Json::boolean(hy.witness_expected));
        o.set("expected_magnitude", Json::number(hy.witness.expected_magnitude));
        if (hy.witness.witness) {
            Json w = Json::object();
            w.set("X", vec_json(hy.witness.witness->X));
            w.set("Y", vec_json(hy.witness.witness->Y));
            w.set("Z", vec_json(hy.witness.witness->Z));
            w.set("value", Json::number(hy.witness.witness->value));
            o.set("witness", std::move(w));
        } else {
            o.set("witness", Json());
        }
        o.set("max_abs_scanned", Json::number(hy.witness.max_abs_scanned));
        o.set("triples_scanned", Json::integer(hy.witness.triples_scanned));
        o.set("factorization_max_mismatch", Json::number(hy.factorization_max_mismatch));
        o.set("semi_parallel_dim", Json::integer(hy.semi_parallel_dim));
        o.set("pass", Json::boolean(hy.pass));
        results.set("hypersurface", std::move(o));
    }
    if (rep.ricci) {
        const auto& rc = *rep.ricci;
        Json o = Json::object();
        o.set("coefficients", vec_json(rc.coefficients));
        o.set("membership_residual", Json::number(rc.membership_residual));
        o.set("action_max", Json::number(rc.action_max));
        o.set("semisymmetric", Json::boolean(rc.semisymmetric));
        o.set("pass", Json::boolean(rc.pass));
        results.set("ricci", std::move(o));
    }
    if (rep.error) results.set("error", Json::string(*rep.error));
    root.set("results", std::move(results));
    root.set("pass", Json::boolean(rep.pass));
    root.set("duration_ms", Json::integer(rep.duration_ms));
    return root;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* pf(bool b) { return b ? "PASS" : "FAIL"; }

}  // namespace

std::string report_to_text(const SuiteReport& rep) {
    const SuiteConfig& cfg = rep.config;
    std::ostringstream os;

    os << "fpk-verify: n=" << cfg.n << " s=" << cfg.s;
    if (cfg.preset) {
        os << " preset=" << preset_name(*cfg.preset);
        if (*cfg.preset == PresetKind::generalized_sasakian) {
            os << " gsf=";
            for (std::size_t i = 0; i < cfg.gsf.size(); ++i)
                os << (i ? "," : "") << num(cfg.gsf[i]);
        } else {
            os << " c=" << num(cfg.c);
        }
    } else {
        os << " params=explicit";
    }
    os << " suite=" << suite_name(cfg.suite) << " seed=" << cfg.seed << "\n";
    if (rep.params)
        os << "params: F1=" << num(rep.params->F1) << " F2=" << num(rep.params->F2)
           << " phi-sectional=" << num(rep.params->phi_sectional()) << "\n";

    if (rep.axioms) {
        const auto& ax = *rep.axioms;
        os << "axioms: canonical max residual " << num(ax.canonical.max_residual())
           << ", random frame max residual " << num(ax.random_frame.max_residual()) << " -> "
           << pf(ax.pass) << "\n";
    }
    if (rep.curvature) {
        const auto& cv = *rep.curvature;
        os << "curvature: skew12 " << num(cv.audit.skew12) << ", skew34 " << num(cv.audit.skew34)
           << ", pair " << num(cv.audit.pair_symmetry) << ", bianchi "
           << num(cv.audit.first_bianchi);
        if (!cv.fij_symmetric) os << " (asymmetric F_ij: pair/Bianchi not required)";
        os << ", lowering " << num(cv.lowering_residual) << "; phi-sectional max dev "
           << num(cv.phi_sectional_max_dev) << " (expected " << num(cv.phi_sectional_expected)
           << ", " << cv.phi_sectional_samples << " samples) -> " << pf(cv.pass) << "\n";
    }
    if (rep.symmetric_kernel) {
        const auto& sk = *rep.symmetric_kernel;
        os << "symmetric kernel: dim " << sk.kernel_dim;
        if (!sk.hypothesis_met) {
            os << ", hypothesis not met (all F_ij = 0): no containment claim";
        } else {
            os << ", max projection residual "
               << num(max_or_zero(sk.classification.projection_residuals)) << ", verdict "
               << (sk.classification.verdict == Verdict::contained_in_span ? "contained_in_span"
                                                                           : "not_contained")
               << ", max span action residual "
               << num(max_or_zero(sk.classification.span_action_residuals));
        }
        os << " -> " << pf(sk.pass) << "\n";
    }
    if (rep.skew_kernel) {
        const auto& sk = *rep.skew_kernel;
        os << "skew kernel: dim " << sk.kernel_dim;
        if (!sk.hypothesis_met) os << ", hypothesis not met (all F_ij = 0): no claim";
        os << " -> " << pf(sk.pass) << "\n";
    }
    if (rep.hypersurface) {
        const auto& hy = *rep.hypersurface;
        os << "hypersurface (normal " << hy.normal << "): ";
        if (hy.witness.witness)
            os << "witness value " << num(hy.witness.witness->value) << " (expected magnitude "
               << num(hy.witness.expected_magnitude) << ")";
        else
            os << "no witness (max |normal component| " << num(hy.witness.max_abs_scanned) << ")";
        os << ", " << hy.witness.triples_scanned << " triples scanned, factorization mismatch "
           << num(hy.factorization_max_mismatch) << ", semi-parallel dim " << hy.semi_parallel_dim
           << " -> " << pf(hy.pass) << "\n";
    }
    if (rep.ricci) {
        const auto& rc = *rep.ricci;
        os << "ricci: membership residual " << num(rc.membership_residual) << ", coefficients [";
        for (int i = 0; i < rc.coefficients.size(); ++i)
            os << (i ? ", " : "") << num(rc.coefficients(i));
        os << "], action max " << num(rc.action_max) << ", semisymmetric "
           << (rc.semisymmetric ? "yes" : "no") << " -> " << pf(rc.pass) << "\n";
    }
    if (rep.error) os << "error: " << *rep.error << "\n";
    os << "overall: " << pf(rep.pass) << "\n";
    return os.str();
}

std::vector<SuiteConfig> sweep_grid(const SuiteConfig& base) {
    struct Cell {
        PresetKind kind;
        double c;
        int s;
    };
    std::vector<Cell> cells;
    for (double c : {-3.0, 1.0, 5.0}) cells.push_back({PresetKind::sasakian, c, 1});
    for (double c : {-1.0, 1.0}) cells.push_back({PresetKind::kenmotsu, c, 1});
    for (double c : {-2.0, 2.0}) cells.push_back({PresetKind::cosymplectic, c, 1});
    for (double c : {-1.0, 1.0, 5.0})
        for (int s : {2, 3}) cells.push_back({PresetKind::s_space_form, c, s});

    std::vector<SuiteConfig> grid;
    for (const Cell& cell : cells)
        for (int n : {1, 2, 3}) {
            SuiteConfig cfg = base;
            cfg.sweep = false;
            cfg.out_dir.clear();
            cfg.timing = false;
            cfg.format = OutputFormat::json;
            cfg.suite = SuiteKind::all;
            cfg.n = n;
            cfg.s = cell.s;
            cfg.preset = cell.kind;
            cfg.c = cell.c;
            cfg.explicit_params = false;
            cfg.f1 = 0.0;
            cfg.f2 = 0.0;
            cfg.gsf.clear();
            cfg.fij.resize(0, 0);
            grid.push_back(std::move(cfg));
        }
    return grid;
}

std::string sweep_cell_filename(const SuiteConfig& cell) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%s_c%g_n%d_s%d.json",
                  preset_name(*cell.preset).c_str(), cell.c, cell.n, cell.s);
    return buf;
}

int run_sweep(const SuiteConfig& cfg, std::ostream& out) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    bool all_pass = true;
    for (const SuiteConfig& cell : sweep_grid(cfg)) {
        const SuiteReport rep = run_suite(cell);
        const std::string fname = sweep_cell_filename(cell);
        std::ofstream f(fs::path(cfg.out_dir) / fname, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + fname + " for writing");
        f << report_to_json(rep).dump() << "\n";
        out << fname << ": " << pf(rep.pass) << "\n";
        all_pass = all_pass && rep.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace fpk
