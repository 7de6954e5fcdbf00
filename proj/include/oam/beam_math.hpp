#pragma once

// Closed-form geometry of Laguerre-Gaussian beams: widths, characteristic
// radii, divergence angles and the Poynting-vector skew angle. All angles are
// half-angles measured from the beam axis; all lengths are in metres.

#include "oam/errors.hpp"

namespace oam {

/// One Laguerre-Gaussian mode: azimuthal index ell (signed topological
/// charge), radial index p >= 0, and Gaussian waist radius w0 [m].
struct LGModeSpec {
    int ell = 0;
    int p = 0;
    double w0 = 0.0;

    /// Throws DomainError unless w0 > 0 and p >= 0.
    void validate() const;
};

/// Wavelength-derived constants of a beam: k0 = 2*pi/wavelength and the
/// Rayleigh range zR = (1/2)*k0*w0^2 of the waist it was constructed from.
struct BeamGeometry {
    double wavelength = 0.0; // [m]
    double k0 = 0.0;         // [1/m]
    double zR = 0.0;         // [m]

    BeamGeometry(double wavelength_m, double waist_m);
};

/// Second-moment summary of a transverse intensity distribution.
struct RadialMoments {
    double power = 0.0;  // integrated intensity (dimensionless for unit-power fields)
    double r_rms = 0.0;  // intensity-weighted rms radius [m]
    double r_imax = 0.0; // radius of the azimuthally-averaged intensity peak [m]
};

/// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence
/// in p (stable for the moderate p <= ~64 used here).
double generalized_laguerre(int p, int alpha, double x);

/// Gaussian beam radius w(z) = w0*sqrt(1 + z^2/zR^2).
double beam_width(double w0, double z, double zR);

/// Intensity of the single-ringed (p = 0) mode at radius r and plane z,
///   I(r,z) = 2/(pi*w^2*|ell|!) * (sqrt(2)*r/w)^(2|ell|) * exp(-2 r^2/w^2),
/// normalized so the transverse plane integral is 1. Throws
/// UnsupportedModeError for p != 0.
double intensity_lg(const LGModeSpec& mode, double r, double z, const BeamGeometry& geom);

/// Radius of maximum intensity, sqrt(|ell|/2)*w; zero for ell = 0.
double radius_peak_intensity(int ell, double w_at_z);

/// Intensity-weighted rms radius, sqrt((|ell|+1)/2)*w.
double radius_rms(int ell, double w_at_z);

/// r_rms / r(I_max) = sqrt((|ell|+1)/|ell|); strictly decreasing toward 1.
/// Throws DomainError for ell = 0 (the peak radius vanishes).
double radius_ratio(int ell);

/// Far-field divergence half-angle of a p = 0 mode at fixed waist,
///   alpha = sqrt((|ell|+1)/2) * wavelength/(pi*w0),
/// the z->inf limit of divergence_local. Scales with sqrt(|ell|+1).
double divergence_fixed_waist(int ell, double w0, double wavelength);

/// Local divergence angle alpha(z) = arctan(d r_rms/dz)
///   = arctan(sqrt((|ell|+1)/2) * (w0^2/zR^2) * z/w(z)).
/// Zero at the waist, increasing toward the fixed-waist limit.
double divergence_local(int ell, const BeamGeometry& geom, double w0, double z);

/// Far-field divergence at fixed rms launch radius,
///   alpha = (|ell|+1)/(k0*r_rms0),
/// exactly linear in |ell|+1.
double divergence_fixed_rms(int ell, double r_rms0, double k0);

/// Waist that makes radius_rms(ell, w0) equal r_rms0:
///   w0 = r_rms0*sqrt(2/(|ell|+1)).
double waist_for_fixed_rms(int ell, double r_rms0);

/// Poynting-vector skew angle |ell|/(k0*r). Throws DomainError at r = 0.
double skew_angle(int ell, double r, double k0);

/// Half-angle above which results leave the paraxial regime; angle-returning
/// operations emit a stderr warning past this value.
inline constexpr double kParaxialWarnAngle = 0.1; // [rad]

/// True when the angle is within the paraxial warning threshold.
bool paraxial_ok(double angle);

} // namespace oam
