#pragma once

// Sampled complex scalar fields on uniform square grids: synthesis of
// Laguerre-Gaussian and Gaussian beams, superposition, phase masks, second
// moments and overlap integrals. The grid is the numerical counterpart of the
// closed forms in beam_math.

#include <complex>
#include <span>
#include <vector>

#include "oam/beam_math.hpp"

namespace oam {

using Complex = std::complex<double>;

/// Requested grid geometry. extent is the full side length [m]; the guard
/// factors are the defaults used when validating a synthesis against a mode:
/// extent >= coverage_factor * r_rms and dx <= w(z)/sampling_factor.
struct GridSpec {
    int n = 0;            // samples per axis; power of two, >= 64
    double extent = 0.0;  // [m]
    double coverage_factor = 8.0;
    double sampling_factor = 8.0;

    double dx() const { return extent / n; }
    void validate() const;
};

/// Complex amplitude sampled on an n x n grid at one z-plane. The beam axis
/// sits at the pixel center (n/2, n/2), i.e. x(i) = (i - n/2)*dx, which keeps
/// phase vortices reproducibly centered. Immutable after construction;
/// operations return new fields.
class SampledField {
public:
    SampledField(int n, double dx, double z, double wavelength, std::vector<Complex> values);

    int n() const { return n_; }
    double dx() const { return dx_; }
    double z() const { return z_; }
    double wavelength() const { return wavelength_; }
    double extent() const { return n_ * dx_; }
    double k0() const;

    std::span<const Complex> values() const { return values_; }
    const Complex& at(int ix, int iy) const { return values_[static_cast<size_t>(iy) * n_ + ix]; }
    double x(int i) const { return (i - n_ / 2) * dx_; }

    /// Total grid power sum(|u|^2)*dx^2.
    double power() const;

    bool same_grid(const SampledField& other) const;

private:
    int n_;
    double dx_;
    double z_;
    double wavelength_;
    std::vector<Complex> values_;
};

/// LG_{ell,p} complex field at plane z: Gaussian envelope, r^|ell| ring
/// factor, generalized Laguerre polynomial, azimuthal phase exp(i*ell*phi),
/// wavefront curvature and Gouy phase (2p+|ell|+1)*arctan(z/zR), plus the
/// plane-wave carrier exp(i*k0*z). Unit continuum power. Throws
/// GridResolutionError naming the violated guard ("coverage" or "sampling").
SampledField synthesize_lg(const LGModeSpec& mode, const BeamGeometry& geom,
                           const GridSpec& grid, double z);

/// Waist-plane fundamental Gaussian of waist w0, unit power.
SampledField synthesize_gaussian(double w0, const GridSpec& grid, double wavelength);

/// Multiplies each sample by exp(i*ell*phi) about the grid center. Pure phase
/// mask: |u| is unchanged pointwise, power exactly conserved.
SampledField apply_spiral_phase(const SampledField& field, int ell);

/// Pointwise linear combination sum_k c_k * f_k. No renormalization. All
/// fields must share one grid (n, dx, z, wavelength).
SampledField superpose(std::span<const SampledField> fields, std::span<const Complex> coefficients);

/// Power, rms radius about the grid center, and sub-pixel radius of the
/// azimuthally-averaged intensity peak. Throws DegenerateFieldError on a
/// field with no power.
RadialMoments measure_moments(const SampledField& field);

/// Azimuthally-averaged intensity profile with bin width dx; bin i covers
/// radii [i*dx, (i+1)*dx).
std::vector<double> radial_intensity_profile(const SampledField& field);

/// Discrete inner product <a|b> = sum conj(a)*b*dx^2.
Complex overlap(const SampledField& a, const SampledField& b);

/// Net phase winding (integer multiple of 2*pi, returned as the integer) on
/// the circle of radius r about the beam axis.
int winding_number(const SampledField& field, double r);

struct SkewMeasurement {
    double angle = 0.0;                // [rad]
    bool low_intensity_warning = false; // set when the circle lies outside the
                                        // annulus holding meaningful power
};

/// Mean azimuthal phase gradient on the circle of radius r, divided by k0:
/// the numerically measured Poynting skew angle. Requires r > 2*dx and
/// r inside the grid.
SkewMeasurement local_skew_angle(const SampledField& field, double r);

/// Grid sized for accurate moments/overlaps of one mode at plane z:
/// extent = coverage_factor * r_rms (general-p rms radius), given n samples.
GridSpec make_coverage_grid(const LGModeSpec& mode, const BeamGeometry& geom, double z, int n);

/// Grid sized for propagation headroom: dx = w0/sampling_factor exactly, so
/// the extent is the largest the sampling guard allows for n samples.
GridSpec make_launch_grid(const LGModeSpec& mode, int n);

} // namespace oam
