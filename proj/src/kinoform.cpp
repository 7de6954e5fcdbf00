#include "oam/kinoform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace oam {

namespace {

constexpr double kPi = std::numbers::pi;

double sample_intensity_bilinear(const SampledField& f, double px, double py)
{
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    return std::norm(f.at(x0, y0)) * (1 - fx) * (1 - fy)
           + std::norm(f.at(x0 + 1, y0)) * fx * (1 - fy)
           + std::norm(f.at(x0, y0 + 1)) * (1 - fx) * fy
           + std::norm(f.at(x0 + 1, y0 + 1)) * fx * fy;
}

} // namespace

double PSpectrum::total_fraction() const
{
    double s = 0.0;
    for (const PSpectrumEntry& e : weights)
        s += e.power_fraction;
    return s;
}

SampledField make_kinoform_beam(int ell, double w0_illum, const GridSpec& grid,
                                double wavelength)
{
    return apply_spiral_phase(synthesize_gaussian(w0_illum, grid, wavelength), ell);
}

PSpectrum decompose_p_spectrum(const SampledField& field, int ell, double basis_w0, int p_max)
{
    if (p_max < 0)
        throw DomainError("decompose_p_spectrum: p_max must be >= 0");
    if (!(basis_w0 > 0.0))
        throw DomainError("decompose_p_spectrum: basis waist must be positive");

    const BeamGeometry geom(field.wavelength(), basis_w0);
    const GridSpec grid{field.n(), field.extent()};
    // the synthesis guards of the highest-order basis mode protect the whole set
    (void)synthesize_lg(LGModeSpec{ell, p_max, basis_w0}, geom, grid, field.z());

    const double field_power = field.power();
    if (!(field_power > 0.0))
        throw DegenerateFieldError("decompose_p_spectrum: field has no power");

    PSpectrum spec;
    spec.ell = ell;
    spec.basis_w0 = basis_w0;
    spec.weights.reserve(p_max + 1);
    for (int p = 0; p <= p_max; ++p) {
        const SampledField basis =
            synthesize_lg(LGModeSpec{ell, p, basis_w0}, geom, grid, field.z());
        const Complex c = overlap(basis, field);
        spec.weights.push_back(PSpectrumEntry{p, std::norm(c) / field_power, c});
    }
    spec.remainder = 1.0 - spec.total_fraction();
    spec.remainder_warning = spec.remainder > 0.05;
    if (spec.remainder_warning) {
        std::fprintf(stderr,
                     "oam: warning: p-spectrum remainder %.3f at p_max=%d (ell=%d, basis_w0=%g)\n",
                     spec.remainder, p_max, ell, basis_w0);
    }
    return spec;
}

PSpectrum decompose_p_spectrum_auto(const SampledField& field, int ell, double basis_w0,
                                    int p_start, int p_limit, double remainder_target)
{
    int p_max = std::min(p_start, p_limit);
    for (;;) {
        PSpectrum spec = decompose_p_spectrum(field, ell, basis_w0, p_max);
        if (spec.remainder < remainder_target || p_max >= p_limit)
            return spec;
        p_max = std::min(2 * p_max, p_limit);
    }
}

DivergenceFit kinoform_divergence(int ell, double w0_illum, const GridSpec& grid,
                                  double wavelength, std::span<const double> z_samples)
{
    const SampledField beam = make_kinoform_beam(ell, w0_illum, grid, wavelength);

    std::vector<double> zs_default;
    if (z_samples.empty()) {
        // [5, 20] x the beam's own far-field onset distance; reduces to the
        // Rayleigh-range window for a pure Gaussian (ell = 0)
        zs_default = default_z_samples(effective_rayleigh_range(beam));
        z_samples = zs_default;
    }
    const FieldFactory factory = [beam]() { return beam; };
    return fit_divergence(factory, z_samples, 2);
}

PetalReport petal_analysis(int ell, ModeFamily family, double size_param,
                           const GridSpec& grid, double wavelength)
{
    if (ell < 1)
        throw DomainError("petal_analysis: ell must be >= 1");
    if (!(size_param > 0.0))
        throw DomainError("petal_analysis: size parameter must be positive");

    const double w0 =
        family == ModeFamily::fixed_waist ? size_param : waist_for_fixed_rms(ell, size_param);
    const BeamGeometry geom(wavelength, w0);
    const SampledField plus = synthesize_lg(LGModeSpec{ell, 0, w0}, geom, grid, 0.0);
    const SampledField minus = synthesize_lg(LGModeSpec{-ell, 0, w0}, geom, grid, 0.0);
    const SampledField both[] = {plus, minus};
    const Complex coeffs[] = {Complex(1.0 / std::sqrt(2.0), 0.0),
                              Complex(1.0 / std::sqrt(2.0), 0.0)};
    const SampledField ff = far_field(superpose(both, coeffs));

    // brightest ring of the azimuthally-averaged far-field intensity
    const std::vector<double> prof = radial_intensity_profile(ff);
    const size_t peak = std::distance(prof.begin(), std::max_element(prof.begin(), prof.end()));
    if (peak == 0 || prof[peak] <= 0.0)
        throw AnalysisError("petal_analysis: no off-axis intensity ring found");
    const double r_ring = (static_cast<double>(peak) + 0.5) * ff.dx();

    // azimuthal intensity on the ring; strict local maxima above half the peak
    const int nsamples = std::max(720, 64 * ell);
    std::vector<double> az(nsamples);
    const int c = ff.n() / 2;
    for (int i = 0; i < nsamples; ++i) {
        const double th = 2.0 * kPi * i / nsamples;
        az[i] = sample_intensity_bilinear(ff, c + r_ring * std::cos(th) / ff.dx(),
                                          c + r_ring * std::sin(th) / ff.dx());
    }
    const double az_peak = *std::max_element(az.begin(), az.end());
    if (!(az_peak > 0.0))
        throw AnalysisError("petal_analysis: ring intensity is flat");

    std::vector<double> maxima_angles;
    for (int i = 0; i < nsamples; ++i) {
        const double prev = az[(i + nsamples - 1) % nsamples];
        const double next = az[(i + 1) % nsamples];
        if (az[i] > 0.5 * az_peak && az[i] > prev && az[i] > next)
            maxima_angles.push_back(2.0 * kPi * i / nsamples);
    }
    if (maxima_angles.empty())
        throw AnalysisError("petal_analysis: no azimuthal maxima above half the ring peak");

    // consecutive angular gaps around the circle
    std::vector<double> gaps;
    for (size_t i = 0; i + 1 < maxima_angles.size(); ++i)
        gaps.push_back(maxima_angles[i + 1] - maxima_angles[i]);
    gaps.push_back(2.0 * kPi - (maxima_angles.back() - maxima_angles.front()));

    double mean = 0.0;
    for (double g : gaps)
        mean += g;
    mean /= gaps.size();
    double var = 0.0;
    for (double g : gaps)
        var += (g - mean) * (g - mean);
    var /= gaps.size();

    PetalReport rep;
    rep.ell = ell;
    rep.count = static_cast<int>(maxima_angles.size());
    rep.mean_angular_spacing = mean;
    rep.spacing_stddev = std::sqrt(var);
    rep.ring_radius = r_ring;
    rep.arc_spacing = r_ring * mean;
    return rep;
}

} // namespace oam
