#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fpk/curvature.hpp"
#include "fpk/hypersurface.hpp"
#include "fpk/json_writer.hpp"
#include "fpk/parallel.hpp"
#include "fpk/structure.hpp"

namespace fpk {

// Bad flags or flag combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by parse_config on --help; carries the help text.
struct HelpRequested {
    std::string text;
};

enum class SuiteKind { axioms, curvature, symmetric_kernel, skew_kernel, hypersurface, ricci, all };

enum class OutputFormat { text, json };

struct NormalSpec {
    bool random = false;
    int index = 1;

    std::string str() const;
};

struct SuiteConfig {
    int n = 0;
    int s = 0;
    std::optional<PresetKind> preset;
    double c = 0.0;
    std::vector<double> gsf;          // generalized-sasakian (f1, f2, f3)
    bool explicit_params = false;
    double f1 = 0.0;
    double f2 = 0.0;
    Eigen::MatrixXd fij;              // explicit mode only, s x s
    SuiteKind suite = SuiteKind::all;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    double rank_tol = 1e-9;
    NormalSpec normal;
    OutputFormat format = OutputFormat::text;
    bool sweep = false;
    std::string out_dir;
    bool timing = false;              // fill duration_ms with wall-clock time
};

// Parses flags (program name excluded). Throws UsageError on bad input and
// HelpRequested on --help.
SuiteConfig parse_config(const std::vector<std::string>& argv);

CurvatureParams params_from_config(const SuiteConfig& cfg);

struct AxiomsResult {
    ValidationReport canonical;
    ValidationReport random_frame;
    std::uint64_t seed = 0;
    bool pass = false;
};

struct CurvatureResult {
    SymmetryReport audit;
    bool fij_symmetric = true;        // pair symmetry and Bianchi are gated on this
    double lowering_residual = 0.0;
    double phi_sectional_expected = 0.0;
    double phi_sectional_max_dev = 0.0;
    int phi_sectional_samples = 0;
    bool pass = false;
};

struct SymKernelResult {
    bool hypothesis_met = false;
    int kernel_dim = 0;
    ClassificationReport classification;
    bool pass = false;
};

struct SkewKernelResult {
    bool hypothesis_met = false;
    int kernel_dim = 0;
    bool pass = false;
};

struct HypersurfaceResult {
    std::string normal;
    bool witness_expected = false;    // F2 != 0 and n >= 2
    WitnessResult witness;
    double factorization_max_mismatch = 0.0;
    int semi_parallel_dim = 0;
    bool pass = false;
};

struct RicciResult {
    Eigen::VectorXd coefficients;
    double membership_residual = 0.0;
    double action_max = 0.0;
    bool semisymmetric = false;       // informational: action_max < 1e-9
    bool pass = false;
};

struct SuiteReport {
    SuiteConfig config;
    std::optional<CurvatureParams> params;
    std::optional<AxiomsResult> axioms;
    std::optional<CurvatureResult> curvature;
    std::optional<SymKernelResult> symmetric_kernel;
    std::optional<SkewKernelResult> skew_kernel;
    std::optional<HypersurfaceResult> hypersurface;
    std::optional<RicciResult> ricci;
    std::optional<std::string> error;
    bool pass = false;
    std::int64_t duration_ms = 0;
};

// Deterministic for a fixed config; runtime errors are recorded in the report
// (pass = false) rather than propagated.
SuiteReport run_suite(const SuiteConfig& cfg);

Json report_to_json(const SuiteReport& rep);
std::string report_to_text(const SuiteReport& rep);

// The acceptance grid: sasakian c in {-3,1,5}, kenmotsu c in {-1,1},
// cosymplectic c in {-2,2} (all s=1), s-space-form c in {-1,1,5} with
// s in {2,3}; each crossed with n in {1,2,3}.
std::vector<SuiteConfig> sweep_grid(const SuiteConfig& base);

std::string sweep_cell_filename(const SuiteConfig& cell);

// Runs every grid cell with suite=all, writes one JSON report per cell into
// cfg.out_dir, prints one summary line per cell. Returns the process exit code.
int run_sweep(const SuiteConfig& cfg, std::ostream& out);

std::string preset_name(PresetKind k);
std::string suite_name(SuiteKind k);

}  // namespace fpk
