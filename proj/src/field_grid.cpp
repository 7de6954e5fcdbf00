#include "oam/field_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace oam {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

// rms radius of the general LG_{ell,p} mode: sqrt((2p+|ell|+1)/2)*w.
double radius_rms_general(int ell, int p, double w)
{
    return std::sqrt((2.0 * p + std::abs(ell) + 1.0) / 2.0) * w;
}

// Bilinear sample of the complex field at fractional pixel coordinates.
Complex sample_bilinear(const SampledField& f, double px, double py)
{
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    return f.at(x0, y0) * ((1 - fx) * (1 - fy)) + f.at(x0 + 1, y0) * (fx * (1 - fy))
           + f.at(x0, y0 + 1) * ((1 - fx) * fy) + f.at(x0 + 1, y0 + 1) * (fx * fy);
}

// Phase increments around the circle of radius r, sampled densely enough for
// |ell| <= 511. Returns the summed increment (2*pi * winding for a clean vortex).
double circle_phase_sum(const SampledField& f, double r, int nsamples = 2048)
{
    const int n = f.n();
    const int c = n / 2;
    double sum = 0.0;
    Complex prev = sample_bilinear(f, c + r / f.dx(), static_cast<double>(c));
    for (int i = 1; i <= nsamples; ++i) {
        const double th = 2.0 * kPi * i / nsamples;
        const double px = c + r * std::cos(th) / f.dx();
        const double py = c + r * std::sin(th) / f.dx();
        const Complex cur = sample_bilinear(f, px, py);
        sum += std::arg(cur * std::conj(prev));
        prev = cur;
    }
    return sum;
}

} // namespace

void GridSpec::validate() const
{
    if (!is_pow2(n) || n < 64)
        throw GridResolutionError("GridSpec: n must be a power of two >= 64");
    if (!(extent > 0.0))
        throw GridResolutionError("GridSpec: extent must be positive");
    if (!(coverage_factor > 0.0) || !(sampling_factor > 0.0))
        throw GridResolutionError("GridSpec: guard factors must be positive");
}

SampledField::SampledField(int n, double dx, double z, double wavelength,
                           std::vector<Complex> values)
    : n_(n), dx_(dx), z_(z), wavelength_(wavelength), values_(std::move(values))
{
    if (!is_pow2(n_) || n_ < 64)
        throw GridResolutionError("SampledField: n must be a power of two >= 64");
    if (!(dx_ > 0.0))
        throw GridResolutionError("SampledField: dx must be positive");
    if (!(wavelength_ > 0.0))
        throw DomainError("SampledField: wavelength must be positive");
    if (values_.size() != static_cast<size_t>(n_) * n_)
        throw ShapeMismatchError("SampledField: values size does not match n*n");
}

double SampledField::k0() const
{
    return 2.0 * kPi / wavelength_;
}

double SampledField::power() const
{
    double s = 0.0;
    for (const Complex& v : values_)
        s += std::norm(v);
    return s * dx_ * dx_;
}

bool SampledField::same_grid(const SampledField& other) const
{
    return n_ == other.n_ && dx_ == other.dx_ && z_ == other.z_
           && wavelength_ == other.wavelength_;
}

SampledField synthesize_lg(const LGModeSpec& mode, const BeamGeometry& geom,
                           const GridSpec& grid, double z)
{
    mode.validate();
    grid.validate();

    const int a = std::abs(mode.ell);
    const double w = beam_width(mode.w0, z, geom.zR);
    const double r_cov = radius_rms_general(mode.ell, mode.p, w);
    const double dx = grid.dx();

    if (grid.extent < grid.coverage_factor * r_cov) {
        std::ostringstream os;
        os << "synthesize_lg: coverage guard failed: extent " << grid.extent
           << " m < " << grid.coverage_factor << " * r_rms = "
           << grid.coverage_factor * r_cov << " m (ell=" << mode.ell
           << ", p=" << mode.p << "); enlarge the grid extent";
        throw GridResolutionError(os.str());
    }
    if (dx > w / grid.sampling_factor) {
        std::ostringstream os;
        os << "synthesize_lg: sampling guard failed: dx " << dx << " m > w(z)/"
           << grid.sampling_factor << " = " << w / grid.sampling_factor
           << " m; increase n or shrink the extent";
        throw GridResolutionError(os.str());
    }

    // unit-power normalization: C = sqrt(2 p! / (pi (p+|ell|)!)) / w,
    // evaluated through lgamma so large |ell| stays finite
    const double log_norm = 0.5 * (std::log(2.0 / kPi) + std::lgamma(mode.p + 1.0)
                                   - std::lgamma(mode.p + a + 1.0));

    const double inv_r_curv = z / (z * z + geom.zR * geom.zR); // 1/R(z), finite at z = 0
    const double gouy = (2.0 * mode.p + a + 1.0) * std::atan(z / geom.zR);
    const double carrier = geom.k0 * z;

    const int n = grid.n;
    std::vector<Complex> vals(static_cast<size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const double y = (iy - n / 2) * dx;
        for (int ix = 0; ix < n; ++ix) {
            const double x = (ix - n / 2) * dx;
            const double r2 = x * x + y * y;
            const double t = 2.0 * r2 / (w * w);

            double amp;
            if (r2 == 0.0) {
                amp = (a == 0) ? std::exp(log_norm) / w * generalized_laguerre(mode.p, a, 0.0)
                               : 0.0;
            } else {
                // log-space envelope; the polynomial factor is applied outside
                // the exponent and the far tail is clamped to zero before the
                // recurrence can overflow
                const double log_env = log_norm + 0.5 * a * std::log(t) - 0.5 * t;
                const double log_poly_bound =
                    mode.p * std::log(std::max(t, 1.0)) + std::lgamma(mode.p + a + 1.0)
                    - std::lgamma(mode.p + 1.0) - std::lgamma(a + 1.0);
                if (log_env + log_poly_bound < -745.0) {
                    amp = 0.0;
                } else {
                    amp = std::exp(log_env) / w * generalized_laguerre(mode.p, a, t);
                }
            }

            if (amp == 0.0) {
                vals[static_cast<size_t>(iy) * n + ix] = Complex(0.0, 0.0);
                continue;
            }
            const double phase = mode.ell * std::atan2(y, x)
                                 + 0.5 * geom.k0 * r2 * inv_r_curv - gouy + carrier;
            vals[static_cast<size_t>(iy) * n + ix] = std::polar(amp, phase);
        }
    }
    return SampledField(n, dx, z, geom.wavelength, std::move(vals));
}

SampledField synthesize_gaussian(double w0, const GridSpec& grid, double wavelength)
{
    return synthesize_lg(LGModeSpec{0, 0, w0}, BeamGeometry(wavelength, w0), grid, 0.0);
}

SampledField apply_spiral_phase(const SampledField& field, int ell)
{
    const int n = field.n();
    std::vector<Complex> vals(field.values().begin(), field.values().end());
    if (ell != 0) {
        for (int iy = 0; iy < n; ++iy) {
            const double y = field.x(iy);
            for (int ix = 0; ix < n; ++ix) {
                const double x = field.x(ix);
                vals[static_cast<size_t>(iy) * n + ix] *=
                    std::polar(1.0, ell * std::atan2(y, x));
            }
        }
    }
    return SampledField(n, field.dx(), field.z(), field.wavelength(), std::move(vals));
}

SampledField superpose(std::span<const SampledField> fields, std::span<const Complex> coefficients)
{
    if (fields.empty())
        throw ShapeMismatchError("superpose: no fields given");
    if (fields.size() != coefficients.size())
        throw ShapeMismatchError("superpose: fields and coefficients differ in length");
    const SampledField& first = fields.front();
    for (const SampledField& f : fields.subspan(1)) {
        if (!first.same_grid(f))
            throw ShapeMismatchError("superpose: fields must share one grid (n, dx, z, wavelength)");
    }

    std::vector<Complex> vals(first.values().size(), Complex(0.0, 0.0));
    for (size_t k = 0; k < fields.size(); ++k) {
        const auto src = fields[k].values();
        const Complex c = coefficients[k];
        for (size_t i = 0; i < vals.size(); ++i)
            vals[i] += c * src[i];
    }
    return SampledField(first.n(), first.dx(), first.z(), first.wavelength(), std::move(vals));
}

std::vector<double> radial_intensity_profile(const SampledField& field)
{
    const int n = field.n();
    const int nbins = n / 2;
    std::vector<double> sum(nbins, 0.0);
    std::vector<long> cnt(nbins, 0);
    for (int iy = 0; iy < n; ++iy) {
        const double y = field.x(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = field.x(ix);
            const int bin = static_cast<int>(std::sqrt(x * x + y * y) / field.dx());
            if (bin < nbins) {
                sum[bin] += std::norm(field.at(ix, iy));
                ++cnt[bin];
            }
        }
    }
    for (int i = 0; i < nbins; ++i)
        sum[i] = cnt[i] > 0 ? sum[i] / cnt[i] : 0.0;
    return sum;
}

RadialMoments measure_moments(const SampledField& field)
{
    const int n = field.n();
    double p = 0.0;
    double m2 = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double y = field.x(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = field.x(ix);
            const double inten = std::norm(field.at(ix, iy));
            p += inten;
            m2 += inten * (x * x + y * y);
        }
    }
    const double dx2 = field.dx() * field.dx();
    p *= dx2;
    if (!(p > 0.0))
        throw DegenerateFieldError("measure_moments: field has no power");
    m2 = m2 * dx2 / p;

    const std::vector<double> prof = radial_intensity_profile(field);
    const size_t peak = std::distance(prof.begin(), std::max_element(prof.begin(), prof.end()));
    double r_imax = 0.0;
    if (peak > 0 && peak + 1 < prof.size()) {
        // parabolic vertex through the peak bin and its neighbours (bin centers)
        const double d1 = prof[peak - 1];
        const double d2 = prof[peak];
        const double d3 = prof[peak + 1];
        const double denom = d1 - 2.0 * d2 + d3;
        const double shift = denom != 0.0 ? 0.5 * (d1 - d3) / denom : 0.0;
        r_imax = (static_cast<double>(peak) + 0.5 + std::clamp(shift, -0.5, 0.5)) * field.dx();
    }
    return RadialMoments{p, std::sqrt(m2), r_imax};
}

Complex overlap(const SampledField& a, const SampledField& b)
{
    if (!a.same_grid(b))
        throw ShapeMismatchError("overlap: fields must share one grid (n, dx, z, wavelength)");
    const auto va = a.values();
    const auto vb = b.values();
    Complex s(0.0, 0.0);
    for (size_t i = 0; i < va.size(); ++i)
        s += std::conj(va[i]) * vb[i];
    return s * (a.dx() * a.dx());
}

int winding_number(const SampledField& field, double r)
{
    if (!(r > 2.0 * field.dx()))
        throw DomainError("winding_number: radius must exceed 2*dx");
    if (r >= field.extent() / 2.0 - field.dx())
        throw DomainError("winding_number: circle leaves the grid");
    const double total = circle_phase_sum(field, r);
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

SkewMeasurement local_skew_angle(const SampledField& field, double r)
{
    if (!(r > 2.0 * field.dx()))
        throw DomainError("local_skew_angle: radius must exceed 2*dx");
    if (r >= field.extent() / 2.0 - field.dx())
        throw DomainError("local_skew_angle: circle leaves the grid");

    const double total = circle_phase_sum(field, r);
    SkewMeasurement out;
    out.angle = std::abs(total) / (2.0 * kPi * r * field.k0());

    const std::vector<double> prof = radial_intensity_profile(field);
    const double peak = *std::max_element(prof.begin(), prof.end());
    const size_t bin = static_cast<size_t>(r / field.dx());
    out.low_intensity_warning = bin >= prof.size() || prof[bin] < 0.01 * peak;
    return out;
}

GridSpec make_coverage_grid(const LGModeSpec& mode, const BeamGeometry& geom, double z, int n)
{
    GridSpec g;
    g.n = n;
    const double w = beam_width(mode.w0, z, geom.zR);
    g.extent = g.coverage_factor * radius_rms_general(mode.ell, mode.p, w);
    // never coarser than the sampling guard permits
    if (g.dx() > w / g.sampling_factor)
        g.extent = n * w / g.sampling_factor;
    return g;
}

GridSpec make_launch_grid(const LGModeSpec& mode, int n)
{
    GridSpec g;
    g.n = n;
    g.extent = n * mode.w0 / g.sampling_factor;
    return g;
}

} // namespace oam
