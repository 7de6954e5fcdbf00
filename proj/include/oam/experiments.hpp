#pragma once

// Experiment runners: each writes deterministic CSV artifacts into
// config.out_dir and returns the primary CSV path. Numeric columns are
// printed with 12 significant digits, so identical configs reproduce
// byte-identical files.

#include <filesystem>

#include "oam/config.hpp"
#include "oam/kinoform.hpp"

namespace oam {

/// One divergence-scaling data point.
struct ScalingRecord {
    int ell = 0;
    Convention convention = Convention::fixed_w0;
    double alpha_analytic = 0.0; // [rad]; 0 marks "no closed form" (kinoform)
    double alpha_numeric = 0.0;  // [rad]
    double r_imax = 0.0;         // waist-plane peak radius [m]
    double r_rms = 0.0;          // waist-plane rms radius [m]
};

/// Pupil-plane radii: rows (ell, r_imax, r_rms, ratio) for ell in range at
/// z = 0. The ratio cell is empty for ell = 0, where the peak radius is zero.
/// Writes fig1.csv.
std::filesystem::path run_fig1(const ExperimentConfig& cfg);

/// Divergence scaling for the fixed-waist and fixed-rms families: analytic
/// and propagation-fitted divergence per (ell, convention), plus alpha/alpha0
/// normalized to each family's ell = 0 divergence. The run aborts with
/// ToleranceError when numeric and analytic values disagree beyond 1%.
/// Writes fig2.csv.
std::filesystem::path run_fig2(const ExperimentConfig& cfg);

/// Spiral-phase beam family: fitted divergence per ell (kinoform_scaling.csv)
/// plus one p-spectrum CSV per ell (kinoform_pspec_ell<k>.csv). The
/// decomposition basis waist defaults to w0*(|ell|+1)^(-3/4), which keeps the
/// truncation remainder below 1% within the p_max limit.
std::filesystem::path run_kinoform(const ExperimentConfig& cfg);

/// Petal structure of (LG_{+ell} + LG_{-ell}) superpositions for both mode
/// families. Writes petals.csv.
std::filesystem::path run_petals(const ExperimentConfig& cfg);

/// Per-ell decomposition basis waist used by run_kinoform when the config
/// does not fix one.
double default_kinoform_basis_w0(int ell, double w0_illum);

struct GuardCheck {
    bool failed = false; // true = hard guard violation, false = warning
    std::string guard;   // "coverage", "sampling", "window", "paraxial"
    std::string message;
};

struct GuardReport {
    std::vector<GuardCheck> items;

    bool any_failure() const;
    std::string to_text() const;
};

/// Dry-runs every synthesis/propagation guard the configured experiments
/// would hit, without propagating anything. Failures are reported, never
/// thrown.
GuardReport validate_plan(const ExperimentConfig& cfg);

} // namespace oam
