#pragma once

// Free-space propagation of sampled fields and divergence estimation.
//
// angular_spectrum uses the exact scalar transfer function
// exp(i*z*sqrt(k0^2 - kx^2 - ky^2)) on a zero-padded grid (evanescent
// components dropped); the output keeps dx and covers the padded extent.
// fraunhofer is the single-FFT far-zone transform whose output pitch scales
// with distance, useful when the angular-spectrum window guard cannot be met.

#include <functional>
#include <span>
#include <vector>

#include "oam/field_grid.hpp"

namespace oam {

enum class PropagationMethod { angular_spectrum, fraunhofer };

struct PropagationPlan {
    PropagationMethod method = PropagationMethod::angular_spectrum;
    double z = 0.0;  // propagation distance [m]
    int padding = 2; // zero-padding factor, one of {1, 2, 4}

    void validate() const;
};

/// Field at plane field.z + plan.z. Power is conserved (within the negligible
/// evanescent content of paraxial inputs). Throws PropagationWindowError when
/// the predicted beam would not fit the padded window.
SampledField propagate(const SampledField& field, const PropagationPlan& plan);

/// Fraunhofer transform to angular coordinates: a SampledField whose "dx" is
/// the angular pitch dtheta = wavelength/(n*dx) [rad] and whose rms radius is
/// a far-field divergence estimate. Power is preserved.
SampledField far_field(const SampledField& field);

/// rms transverse spatial-frequency radius of the field, expressed as an
/// angle: sqrt(<kx^2+ky^2>)/k0. For a waist field this is the far-field
/// divergence half-angle.
double spectral_theta_rms(const SampledField& field);

/// Distance at which diffractive growth overtakes the launch size,
/// r_rms(0)/theta_rms: equals the Rayleigh range for every pure LG mode and
/// generalizes it for arbitrary beams.
double effective_rayleigh_range(const SampledField& waist_field);

struct DivergenceFit {
    double alpha = 0.0;    // arctan of the fitted d r_rms/dz [rad]
    double residual = 0.0; // rms fit residual / mean r_rms over fitted samples
    std::vector<double> z_samples;
};

using FieldFactory = std::function<SampledField()>;

/// Propagates the factory's waist field to each z, measures r_rms, and fits
/// r_rms ~ alpha*z + c by least squares over the outer half of the samples
/// (z >= z_max/2; all samples when fewer than 3 remain). Needs >= 3 samples.
DivergenceFit fit_divergence(const FieldFactory& make_waist_field,
                             std::span<const double> z_samples, int padding = 2);

/// LG convenience overload: synthesizes the waist field on an automatically
/// sized launch grid (n doubles from n_min until the guards hold) and uses
/// default_z_samples when none are given.
DivergenceFit fit_divergence(const LGModeSpec& mode, double wavelength,
                             std::span<const double> z_samples = {}, int n_min = 64,
                             int padding = 2);

/// Eight log-spaced planes spanning [5, 20] * zR.
std::vector<double> default_z_samples(double zR);

} // namespace oam
