#pragma once

// Plain-text key=value experiment configuration with [section] headers.
// '#' and ';' start comments. All lengths are in metres. Parse and
// validation errors cite the file and line number.

#include <filesystem>
#include <string>
#include <vector>

#include "oam/errors.hpp"

namespace oam {

enum class Convention { fixed_w0, fixed_rms, kinoform };

const char* to_string(Convention c);

struct ExperimentConfig {
    std::string name;             // experiment.name, free-form label
    double wavelength = 633e-9;   // experiment.wavelength
    double w0 = 1e-3;             // experiment.w0 (fixed-waist family / kinoform illumination)
    double r_rms0 = 1e-3;         // experiment.r_rms0 (fixed-rms family)
    bool w0_given = false;
    bool r_rms0_given = false;
    int ell_min = 0;              // experiment.ell_min
    int ell_max = 8;              // experiment.ell_max
    std::vector<Convention> conventions = {Convention::fixed_w0, Convention::fixed_rms};

    int grid_n = 1024;            // grid.n, power of two >= 64
    double grid_extent = 0.0;     // grid.extent; 0 = auto-sized per mode

    double z_window_lo = 5.0;     // propagation.z_min (units of the Rayleigh range)
    double z_window_hi = 20.0;    // propagation.z_max
    int z_count = 8;              // propagation.z_count
    int padding = 2;              // propagation.padding

    int p_max_limit = 64;         // kinoform.p_max
    double basis_w0 = 0.0;        // kinoform.basis_w0; 0 = per-ell default

    std::filesystem::path out_dir = "out"; // output.dir

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses a config file; unknown keys are errors.
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Parses config text (line numbers refer to the text). origin labels messages.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace oam
