#include "oam/propagation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace oam {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner mutates global state; transforms themselves are re-entrant.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

// In-place 2-D c2c transform on an fftw buffer. sign = FFTW_FORWARD/BACKWARD;
// the inverse is normalized by 1/n^2 here.
void fft2_inplace(fftw_complex* data, int n, int sign)
{
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(n, n, data, data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD) {
        const double scale = 1.0 / (static_cast<double>(n) * n);
        for (size_t i = 0; i < static_cast<size_t>(n) * n; ++i) {
            data[i][0] *= scale;
            data[i][1] *= scale;
        }
    }
}

struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(size_t count)
        : data(static_cast<fftw_complex*>(fftw_malloc(count * sizeof(fftw_complex))))
    {
        if (!data)
            throw Error("fftw_malloc failed");
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

// Copies the field into the center of an n_out x n_out buffer (zero padding),
// keeping the beam axis on the (n_out/2, n_out/2) pixel.
void copy_centered(const SampledField& f, fftw_complex* out, int n_out)
{
    const int n = f.n();
    const int off = (n_out - n) / 2;
    std::fill_n(&out[0][0], 2 * static_cast<size_t>(n_out) * n_out, 0.0);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Complex v = f.at(ix, iy);
            fftw_complex& o = out[static_cast<size_t>(iy + off) * n_out + (ix + off)];
            o[0] = v.real();
            o[1] = v.imag();
        }
    }
}

// FFT-ordered angular wavenumber for bin i of an n-point axis with pitch dx.
double fft_wavenumber(int i, int n, double dx)
{
    const int m = i < n / 2 ? i : i - n;
    return 2.0 * kPi * m / (n * dx);
}

// <kx^2+ky^2> over the spectrum held in d (FFT order).
double spectrum_mean_k2(const fftw_complex* d, int n, double dx)
{
    double p = 0.0;
    double k2w = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double ky = fft_wavenumber(iy, n, dx);
        for (int ix = 0; ix < n; ++ix) {
            const double kx = fft_wavenumber(ix, n, dx);
            const fftw_complex& v = d[static_cast<size_t>(iy) * n + ix];
            const double inten = v[0] * v[0] + v[1] * v[1];
            p += inten;
            k2w += inten * (kx * kx + ky * ky);
        }
    }
    return p > 0.0 ? k2w / p : 0.0;
}

} // namespace

void PropagationPlan::validate() const
{
    if (padding != 1 && padding != 2 && padding != 4)
        throw DomainError("PropagationPlan: padding must be 1, 2 or 4");
    if (method == PropagationMethod::angular_spectrum && z < 0.0)
        throw DomainError("PropagationPlan: angular-spectrum distance must be >= 0");
    if (method == PropagationMethod::fraunhofer && !(z > 0.0))
        throw DomainError("PropagationPlan: fraunhofer distance must be positive");
}

double spectral_theta_rms(const SampledField& field)
{
    const int n = field.n();
    FftwBuffer buf(static_cast<size_t>(n) * n);
    copy_centered(field, buf.data, n);
    fft2_inplace(buf.data, n, FFTW_FORWARD);
    return std::sqrt(spectrum_mean_k2(buf.data, n, field.dx())) / field.k0();
}

double effective_rayleigh_range(const SampledField& waist_field)
{
    const RadialMoments m = measure_moments(waist_field);
    const double theta = spectral_theta_rms(waist_field);
    if (!(theta > 0.0))
        throw DegenerateFieldError("effective_rayleigh_range: field has no angular spread");
    return m.r_rms / theta;
}

namespace {

SampledField propagate_angular_spectrum(const SampledField& field, const PropagationPlan& plan)
{
    const int n = field.n();
    const int np = n * plan.padding;
    const double dx = field.dx();
    const double k0 = field.k0();

    FftwBuffer buf(static_cast<size_t>(np) * np);
    copy_centered(field, buf.data, np);
    fft2_inplace(buf.data, np, FFTW_FORWARD);

    // window guard from the measured moments of the input: the beam plus
    // three envelope widths must stay inside the padded half-extent
    const RadialMoments mom = measure_moments(field);
    const double theta = std::sqrt(spectrum_mean_k2(buf.data, np, dx)) / k0;
    const double r_pred = mom.r_rms + theta * plan.z;
    const double msq = std::max(1.0, k0 * theta * mom.r_rms);
    const double w_pred = std::sqrt(2.0) * r_pred / std::sqrt(msq);
    const double half = 0.5 * np * dx;
    if (r_pred + 3.0 * w_pred > half) {
        std::ostringstream os;
        os << "propagate: window guard failed at z = " << plan.z << " m: predicted r_rms + 3 widths = "
           << r_pred + 3.0 * w_pred << " m exceeds the padded half-extent " << half
           << " m; enlarge the grid extent/padding or use the two-step fraunhofer method";
        throw PropagationWindowError(os.str());
    }

    for (int iy = 0; iy < np; ++iy) {
        const double ky = fft_wavenumber(iy, np, dx);
        for (int ix = 0; ix < np; ++ix) {
            const double kx = fft_wavenumber(ix, np, dx);
            const double kz2 = k0 * k0 - kx * kx - ky * ky;
            fftw_complex& v = buf.data[static_cast<size_t>(iy) * np + ix];
            if (kz2 <= 0.0) {
                v[0] = 0.0; // evanescent: does not reach the output plane
                v[1] = 0.0;
                continue;
            }
            const double ph = plan.z * std::sqrt(kz2);
            const double c = std::cos(ph);
            const double s = std::sin(ph);
            const double re = v[0] * c - v[1] * s;
            const double im = v[0] * s + v[1] * c;
            v[0] = re;
            v[1] = im;
        }
    }
    fft2_inplace(buf.data, np, FFTW_BACKWARD);

    std::vector<Complex> vals(static_cast<size_t>(np) * np);
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = Complex(buf.data[i][0], buf.data[i][1]);
    return SampledField(np, dx, field.z() + plan.z, field.wavelength(), std::move(vals));
}

SampledField propagate_fraunhofer(const SampledField& field, const PropagationPlan& plan)
{
    const int n = field.n();
    const int np = n * plan.padding;
    const double dx = field.dx();
    const double k0 = field.k0();
    const double z = plan.z;
    const double lam = field.wavelength();

    // the quadratic input chirp must be sampled below pi per pixel at the edge
    const double z_min = (np * dx) * dx / lam;
    if (z < z_min) {
        std::ostringstream os;
        os << "propagate: fraunhofer chirp guard failed: z = " << z << " m < extent*dx/wavelength = "
           << z_min << " m; use the angular-spectrum method in the near zone";
        throw PropagationWindowError(os.str());
    }

    FftwBuffer buf(static_cast<size_t>(np) * np);
    copy_centered(field, buf.data, np);
    // input chirp exp(i k0 r^2 / (2 z)) about the beam axis
    for (int iy = 0; iy < np; ++iy) {
        const double y = (iy - np / 2) * dx;
        for (int ix = 0; ix < np; ++ix) {
            const double x = (ix - np / 2) * dx;
            const double ph = 0.5 * k0 * (x * x + y * y) / z;
            const double c = std::cos(ph);
            const double s = std::sin(ph);
            fftw_complex& v = buf.data[static_cast<size_t>(iy) * np + ix];
            const double re = v[0] * c - v[1] * s;
            const double im = v[0] * s + v[1] * c;
            v[0] = re;
            v[1] = im;
        }
    }
    fft2_inplace(buf.data, np, FFTW_FORWARD);

    const double dx_out = lam * z / (np * dx);
    // amplitude dx^2/(lambda z) conserves power; carrier, output chirp and the
    // axis-centering phase ramp complete the transform
    const double amp = dx * dx / (lam * z);
    std::vector<Complex> vals(static_cast<size_t>(np) * np);
    for (int iy = 0; iy < np; ++iy) {
        const int sy = (iy + np / 2) % np; // fftshift
        const double yo = (iy - np / 2) * dx_out;
        for (int ix = 0; ix < np; ++ix) {
            const int sx = (ix + np / 2) % np;
            const double xo = (ix - np / 2) * dx_out;
            const fftw_complex& v = buf.data[static_cast<size_t>(sy) * np + sx];
            // -pi*(ix+iy) undoes the phase ramp of the axis sitting at pixel np/2
            const double ph = k0 * z + 0.5 * k0 * (xo * xo + yo * yo) / z - 0.5 * kPi
                              + kPi * (ix + iy);
            const Complex rot = std::polar(amp, ph);
            vals[static_cast<size_t>(iy) * np + ix] = rot * Complex(v[0], v[1]);
        }
    }
    return SampledField(np, dx_out, field.z() + z, field.wavelength(), std::move(vals));
}

} // namespace

SampledField propagate(const SampledField& field, const PropagationPlan& plan)
{
    plan.validate();
    if (plan.method == PropagationMethod::angular_spectrum)
        return propagate_angular_spectrum(field, plan);
    return propagate_fraunhofer(field, plan);
}

SampledField far_field(const SampledField& field)
{
    const int n = field.n();
    FftwBuffer buf(static_cast<size_t>(n) * n);
    copy_centered(field, buf.data, n);
    fft2_inplace(buf.data, n, FFTW_FORWARD);

    const double dtheta = field.wavelength() / (n * field.dx());
    const double amp = field.k0() * field.dx() * field.dx() / (2.0 * kPi);
    std::vector<Complex> vals(static_cast<size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const int sy = (iy + n / 2) % n; // fftshift so theta = 0 sits on pixel n/2
        for (int ix = 0; ix < n; ++ix) {
            const int sx = (ix + n / 2) % n;
            const fftw_complex& v = buf.data[static_cast<size_t>(sy) * n + sx];
            vals[static_cast<size_t>(iy) * n + ix] = amp * Complex(v[0], v[1]);
        }
    }
    return SampledField(n, dtheta, field.z(), field.wavelength(), std::move(vals));
}

DivergenceFit fit_divergence(const FieldFactory& make_waist_field,
                             std::span<const double> z_samples, int padding)
{
    if (z_samples.size() < 3)
        throw DomainError("fit_divergence: need at least 3 z-samples");

    const SampledField waist = make_waist_field();
    const double z_max = *std::max_element(z_samples.begin(), z_samples.end());

    std::vector<double> zs(z_samples.begin(), z_samples.end());
    std::vector<double> rs(zs.size());
    for (size_t i = 0; i < zs.size(); ++i) {
        const SampledField out =
            propagate(waist, PropagationPlan{PropagationMethod::angular_spectrum, zs[i], padding});
        rs[i] = measure_moments(out).r_rms;
    }

    // fit the outer half only; the near-field curvature of r_rms(z) biases the
    // slope low if included
    std::vector<size_t> picked;
    for (size_t i = 0; i < zs.size(); ++i)
        if (zs[i] >= 0.5 * z_max)
            picked.push_back(i);
    if (picked.size() < 3) {
        picked.resize(zs.size());
        for (size_t i = 0; i < zs.size(); ++i)
            picked[i] = i;
    }

    double sz = 0.0, sr = 0.0, szz = 0.0, szr = 0.0;
    for (size_t i : picked) {
        sz += zs[i];
        sr += rs[i];
        szz += zs[i] * zs[i];
        szr += zs[i] * rs[i];
    }
    const double m = static_cast<double>(picked.size());
    const double slope = (m * szr - sz * sr) / (m * szz - sz * sz);
    const double icept = (sr - slope * sz) / m;

    double ss = 0.0;
    for (size_t i : picked) {
        const double d = rs[i] - (slope * zs[i] + icept);
        ss += d * d;
    }
    const double mean_r = sr / m;

    DivergenceFit fit;
    fit.alpha = std::atan(slope);
    fit.residual = std::sqrt(ss / m) / mean_r;
    fit.z_samples = std::move(zs);
    return fit;
}

DivergenceFit fit_divergence(const LGModeSpec& mode, double wavelength,
                             std::span<const double> z_samples, int n_min, int padding)
{
    mode.validate();
    const BeamGeometry geom(wavelength, mode.w0);

    std::vector<double> zs_default;
    if (z_samples.empty()) {
        zs_default = default_z_samples(geom.zR);
        z_samples = zs_default;
    }
    const double z_max = *std::max_element(z_samples.begin(), z_samples.end());

    // grid sizing: dx = w0/sampling so the window is as wide as the sampling
    // guard allows; n doubles until both the coverage guard at the waist and
    // the propagation window guard at z_max hold (5% margin)
    const double w_launch = beam_width(mode.w0, z_max, geom.zR);
    const double r_pred =
        std::sqrt((2.0 * mode.p + std::abs(mode.ell) + 1.0) / 2.0) * w_launch;
    const double r_waist =
        std::sqrt((2.0 * mode.p + std::abs(mode.ell) + 1.0) / 2.0) * mode.w0;
    int n = std::max(n_min, 64);
    while (n <= 16384) {
        const GridSpec g = make_launch_grid(mode, n);
        const bool coverage_ok = g.extent >= g.coverage_factor * r_waist
                                 && g.dx() <= mode.w0 / g.sampling_factor;
        const double half = 0.5 * padding * g.extent;
        const bool window_ok = 1.05 * (r_pred + 3.0 * w_launch) <= half;
        if (coverage_ok && window_ok)
            break;
        n *= 2;
    }
    if (n > 16384)
        throw PropagationWindowError("fit_divergence: no feasible grid up to n = 16384");

    const GridSpec grid = make_launch_grid(mode, n);
    const FieldFactory factory = [mode, geom, grid]() {
        return synthesize_lg(mode, geom, grid, 0.0);
    };
    return fit_divergence(factory, z_samples, padding);
}

std::vector<double> default_z_samples(double zR)
{
    if (!(zR > 0.0))
        throw DomainError("default_z_samples: zR must be positive");
    const int count = 8;
    const double lo = 5.0 * zR;
    const double hi = 20.0 * zR;
    std::vector<double> zs(count);
    for (int i = 0; i < count; ++i)
        zs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return zs;
}

} // namespace oam
