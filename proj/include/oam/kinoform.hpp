#pragma once

// Spiral-phase ("forked grating first order") beams from Gaussian
// illumination, their radial-mode spectrum, divergence, and the petal
// structure of +/-ell superpositions.

#include <vector>

#include "oam/propagation.hpp"

namespace oam {

struct PSpectrumEntry {
    int p = 0;
    double power_fraction = 0.0; // |c_p|^2 for a unit-power field
    Complex coefficient;
};

/// Radial-mode power spectrum of a fixed-ell beam in an LG basis of waist
/// basis_w0. Truncation at p_max leaves the reported remainder.
struct PSpectrum {
    int ell = 0;
    double basis_w0 = 0.0;
    std::vector<PSpectrumEntry> weights;
    double remainder = 0.0;
    bool remainder_warning = false; // set when remainder > 5%

    double total_fraction() const;
};

/// First-order beam of an ideally blazed forked grating: Gaussian of waist
/// w0_illum times exp(i*ell*phi). Unit power; the intensity profile is that
/// of the illuminating Gaussian for every ell.
SampledField make_kinoform_beam(int ell, double w0_illum, const GridSpec& grid,
                                double wavelength);

/// Projects the field onto LG_{ell,p} for p = 0..p_max: c_p = <LG_p | field>.
/// The basis waist is an explicit choice; the weighting depends strongly on it.
PSpectrum decompose_p_spectrum(const SampledField& field, int ell, double basis_w0, int p_max);

/// decompose_p_spectrum with p_max growing from p_start (doubling) until the
/// remainder drops below remainder_target or p_limit is reached.
PSpectrum decompose_p_spectrum_auto(const SampledField& field, int ell, double basis_w0,
                                    int p_start = 16, int p_limit = 64,
                                    double remainder_target = 0.01);

/// Divergence of the spiral-phase beam measured by propagation fitting. The
/// default z-samples span [5, 20] x the beam's effective Rayleigh range.
DivergenceFit kinoform_divergence(int ell, double w0_illum, const GridSpec& grid,
                                  double wavelength,
                                  std::span<const double> z_samples = {});

enum class ModeFamily { fixed_waist, fixed_rms };

struct PetalReport {
    int ell = 0;
    int count = 0;                  // number of azimuthal intensity maxima
    double mean_angular_spacing = 0.0; // [rad]
    double spacing_stddev = 0.0;       // [rad]
    double ring_radius = 0.0;          // far-field ring radius [rad]
    double arc_spacing = 0.0;          // ring_radius * mean spacing [rad]
};

/// Builds (LG_{+ell} + LG_{-ell})/sqrt(2), transforms to the far field and
/// counts the intensity maxima on the brightest ring. size_param is w0 for
/// ModeFamily::fixed_waist and r_rms0 for ModeFamily::fixed_rms. Requires
/// ell >= 1; throws AnalysisError when no usable ring is found.
PetalReport petal_analysis(int ell, ModeFamily family, double size_param,
                           const GridSpec& grid, double wavelength);

} // namespace oam
