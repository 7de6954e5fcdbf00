#include "oam/beam_math.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace oam {

namespace {

constexpr double kPi = std::numbers::pi;

// Warn once per call site category; divergence formulas stay valid only for
// small angles, so loud-but-nonfatal is the right failure mode.
void warn_if_nonparaxial(double angle, const char* where)
{
    if (std::abs(angle) > kParaxialWarnAngle) {
        std::fprintf(stderr, "oam: warning: %s = %.3g rad exceeds the paraxial regime (> %.1g rad)\n",
                     where, angle, kParaxialWarnAngle);
    }
}

} // namespace

void LGModeSpec::validate() const
{
    if (!(w0 > 0.0))
        throw DomainError("LGModeSpec: waist w0 must be positive");
    if (p < 0)
        throw DomainError("LGModeSpec: radial index p must be non-negative");
}

BeamGeometry::BeamGeometry(double wavelength_m, double waist_m)
{
    if (!(wavelength_m > 0.0))
        throw DomainError("BeamGeometry: wavelength must be positive");
    if (!(waist_m > 0.0))
        throw DomainError("BeamGeometry: waist must be positive");
    wavelength = wavelength_m;
    k0 = 2.0 * kPi / wavelength_m;
    zR = 0.5 * k0 * waist_m * waist_m;
}

bool paraxial_ok(double angle)
{
    return std::abs(angle) <= kParaxialWarnAngle;
}

double generalized_laguerre(int p, int alpha, double x)
{
    if (p < 0)
        throw DomainError("generalized_laguerre: order p must be non-negative");
    if (p == 0)
        return 1.0;
    double lm1 = 1.0;              // L_0
    double l = 1.0 + alpha - x;    // L_1
    for (int k = 2; k <= p; ++k) {
        const double lk = ((2.0 * k - 1.0 + alpha - x) * l - (k - 1.0 + alpha) * lm1) / k;
        lm1 = l;
        l = lk;
    }
    return l;
}

double beam_width(double w0, double z, double zR)
{
    if (!(w0 > 0.0))
        throw DomainError("beam_width: w0 must be positive");
    if (!(zR > 0.0))
        throw DomainError("beam_width: zR must be positive");
    const double zr = z / zR;
    return w0 * std::sqrt(1.0 + zr * zr);
}

double intensity_lg(const LGModeSpec& mode, double r, double z, const BeamGeometry& geom)
{
    mode.validate();
    if (mode.p != 0)
        throw UnsupportedModeError("intensity_lg: closed form covers p = 0 only");
    if (r < 0.0)
        throw DomainError("intensity_lg: radius must be non-negative");

    const int a = std::abs(mode.ell);
    const double w = beam_width(mode.w0, z, geom.zR);
    if (r == 0.0)
        return a == 0 ? 2.0 / (kPi * w * w) : 0.0;

    const double x = std::sqrt(2.0) * r / w;
    // log-space keeps large-|ell| factors (x^(2|ell|), 1/|ell|!) from overflowing
    const double log_i = std::log(2.0 / (kPi * w * w)) + 2.0 * a * std::log(x)
                         - std::lgamma(a + 1.0) - x * x;
    return log_i < -745.0 ? 0.0 : std::exp(log_i);
}

double radius_peak_intensity(int ell, double w_at_z)
{
    if (!(w_at_z > 0.0))
        throw DomainError("radius_peak_intensity: beam width must be positive");
    return std::sqrt(std::abs(ell) / 2.0) * w_at_z;
}

double radius_rms(int ell, double w_at_z)
{
    if (!(w_at_z > 0.0))
        throw DomainError("radius_rms: beam width must be positive");
    return std::sqrt((std::abs(ell) + 1.0) / 2.0) * w_at_z;
}

double radius_ratio(int ell)
{
    if (ell == 0)
        throw DomainError("radius_ratio: undefined for ell = 0 (peak radius is zero)");
    const double a = std::abs(ell);
    return std::sqrt((a + 1.0) / a);
}

double divergence_fixed_waist(int ell, double w0, double wavelength)
{
    if (!(w0 > 0.0))
        throw DomainError("divergence_fixed_waist: w0 must be positive");
    if (!(wavelength > 0.0))
        throw DomainError("divergence_fixed_waist: wavelength must be positive");
    const double alpha = std::sqrt((std::abs(ell) + 1.0) / 2.0) * wavelength / (kPi * w0);
    warn_if_nonparaxial(alpha, "divergence_fixed_waist");
    return alpha;
}

double divergence_local(int ell, const BeamGeometry& geom, double w0, double z)
{
    if (!(w0 > 0.0))
        throw DomainError("divergence_local: w0 must be positive");
    const double w = beam_width(w0, z, geom.zR);
    const double slope = std::sqrt((std::abs(ell) + 1.0) / 2.0)
                         * (w0 * w0) / (geom.zR * geom.zR) * (z / w);
    const double alpha = std::atan(slope);
    warn_if_nonparaxial(alpha, "divergence_local");
    return alpha;
}

double divergence_fixed_rms(int ell, double r_rms0, double k0)
{
    if (!(r_rms0 > 0.0))
        throw DomainError("divergence_fixed_rms: r_rms0 must be positive");
    if (!(k0 > 0.0))
        throw DomainError("divergence_fixed_rms: k0 must be positive");
    const double alpha = (std::abs(ell) + 1.0) / (k0 * r_rms0);
    warn_if_nonparaxial(alpha, "divergence_fixed_rms");
    return alpha;
}

double waist_for_fixed_rms(int ell, double r_rms0)
{
    if (!(r_rms0 > 0.0))
        throw DomainError("waist_for_fixed_rms: r_rms0 must be positive");
    return r_rms0 * std::sqrt(2.0 / (std::abs(ell) + 1.0));
}

double skew_angle(int ell, double r, double k0)
{
    if (!(r > 0.0))
        throw DomainError("skew_angle: undefined on the beam axis (r = 0)");
    if (!(k0 > 0.0))
        throw DomainError("skew_angle: k0 must be positive");
    const double beta = std::abs(ell) / (k0 * r);
    warn_if_nonparaxial(beta, "skew_angle");
    return beta;
}

} // namespace oam
