#include "oam/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace oam {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& filename)
{
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path path = cfg.out_dir / filename;
    std::ofstream os(path);
    if (!os)
        throw Error("cannot open " + path.string() + " for writing");
    return os;
}

std::vector<double> log_spaced(double lo, double hi, int count)
{
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return v;
}

std::vector<double> z_samples_for(const ExperimentConfig& cfg, double z_scale)
{
    return log_spaced(cfg.z_window_lo * z_scale, cfg.z_window_hi * z_scale, cfg.z_count);
}

double mode_waist(const ExperimentConfig& cfg, Convention conv, int ell)
{
    return conv == Convention::fixed_w0 ? cfg.w0 : waist_for_fixed_rms(ell, cfg.r_rms0);
}

double alpha_analytic_for(const ExperimentConfig& cfg, Convention conv, int ell)
{
    if (conv == Convention::fixed_w0)
        return divergence_fixed_waist(ell, cfg.w0, cfg.wavelength);
    const double k0 = 2.0 * std::numbers::pi / cfg.wavelength;
    return divergence_fixed_rms(ell, cfg.r_rms0, k0);
}

void write_scaling_header(std::ofstream& os)
{
    os << "ell,convention,alpha_analytic_rad,alpha_numeric_rad,"
          "alpha_ratio_analytic,alpha_ratio_numeric,fit_residual,r_imax_m,r_rms_m\n";
}

void write_scaling_row(std::ofstream& os, const ScalingRecord& rec, double alpha0,
                       double residual)
{
    const bool analytic = rec.alpha_analytic > 0.0;
    os << rec.ell << ',' << to_string(rec.convention) << ','
       << (analytic ? fmt(rec.alpha_analytic) : std::string()) << ','
       << fmt(rec.alpha_numeric) << ','
       << (analytic ? fmt(rec.alpha_analytic / alpha0) : std::string()) << ','
       << fmt(rec.alpha_numeric / alpha0) << ',' << fmt(residual) << ',' << fmt(rec.r_imax)
       << ',' << fmt(rec.r_rms) << '\n';
}

} // namespace

bool GuardReport::any_failure() const
{
    return std::any_of(items.begin(), items.end(),
                       [](const GuardCheck& c) { return c.failed; });
}

std::string GuardReport::to_text() const
{
    std::ostringstream os;
    if (items.empty()) {
        os << "all guards pass\n";
        return os.str();
    }
    for (const GuardCheck& c : items)
        os << (c.failed ? "FAIL" : "warn") << " [" << c.guard << "] " << c.message << "\n";
    return os.str();
}

double default_kinoform_basis_w0(int ell, double w0_illum)
{
    return w0_illum * std::pow(std::abs(ell) + 1.0, -0.75);
}

std::filesystem::path run_fig1(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::ofstream os = open_csv(cfg, "fig1.csv");
    os << "ell,r_imax_m,r_rms_m,ratio\n";
    for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
        const double r_imax = radius_peak_intensity(ell, cfg.w0);
        const double r_rms = radius_rms(ell, cfg.w0);
        os << ell << ',' << fmt(r_imax) << ',' << fmt(r_rms) << ','
           << (ell == 0 ? std::string() : fmt(radius_ratio(ell))) << '\n';
    }
    return cfg.out_dir / "fig1.csv";
}

std::filesystem::path run_fig2(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::ofstream os = open_csv(cfg, "fig2.csv");
    write_scaling_header(os);

    for (const Convention conv : cfg.conventions) {
        const double alpha0 = alpha_analytic_for(cfg, conv, 0);
        for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
            const double w0 = mode_waist(cfg, conv, ell);
            const BeamGeometry geom(cfg.wavelength, w0);
            const LGModeSpec mode{ell, 0, w0};
            const std::vector<double> zs = z_samples_for(cfg, geom.zR);
            const DivergenceFit fit =
                fit_divergence(mode, cfg.wavelength, zs, cfg.grid_n, cfg.padding);

            ScalingRecord rec;
            rec.ell = ell;
            rec.convention = conv;
            rec.alpha_analytic = alpha_analytic_for(cfg, conv, ell);
            rec.alpha_numeric = fit.alpha;
            rec.r_imax = radius_peak_intensity(ell, w0);
            rec.r_rms = radius_rms(ell, w0);
            write_scaling_row(os, rec, alpha0, fit.residual);

            const double rel = std::abs(rec.alpha_numeric / rec.alpha_analytic - 1.0);
            if (rel > 0.01) {
                std::ostringstream msg;
                msg << "run_fig2: fitted divergence off by " << rel * 100.0 << "% at ell="
                    << ell << " (" << to_string(conv) << ")";
                throw ToleranceError(msg.str());
            }
        }
    }
    return cfg.out_dir / "fig2.csv";
}

std::filesystem::path run_kinoform(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::ofstream os = open_csv(cfg, "kinoform_scaling.csv");
    write_scaling_header(os);

    const double alpha0 = divergence_fixed_waist(0, cfg.w0, cfg.wavelength);
    const GridSpec launch = make_launch_grid(LGModeSpec{0, 0, cfg.w0}, cfg.grid_n);

    double prev_alpha = 0.0;
    for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
        const SampledField beam = make_kinoform_beam(ell, cfg.w0, launch, cfg.wavelength);
        const RadialMoments mask = measure_moments(beam);

        const double r_expect = cfg.w0 / std::sqrt(2.0);
        if (std::abs(mask.r_rms / r_expect - 1.0) > 1e-3) {
            std::ostringstream msg;
            msg << "run_kinoform: mask-plane r_rms deviates from w0/sqrt(2) at ell=" << ell;
            throw ToleranceError(msg.str());
        }

        const std::vector<double> zs =
            z_samples_for(cfg, effective_rayleigh_range(beam));
        const DivergenceFit fit =
            kinoform_divergence(ell, cfg.w0, launch, cfg.wavelength, zs);

        if (ell > cfg.ell_min && fit.alpha <= prev_alpha) {
            std::ostringstream msg;
            msg << "run_kinoform: divergence not monotone at ell=" << ell;
            throw ToleranceError(msg.str());
        }
        prev_alpha = fit.alpha;

        ScalingRecord rec;
        rec.ell = ell;
        rec.convention = Convention::kinoform;
        rec.alpha_analytic = 0.0; // no closed form for the multi-p beam
        rec.alpha_numeric = fit.alpha;
        rec.r_imax = mask.r_imax;
        rec.r_rms = mask.r_rms;
        write_scaling_row(os, rec, alpha0, fit.residual);

        // p-spectrum on a grid that also covers the highest basis mode
        const double wb =
            cfg.basis_w0 > 0.0 ? cfg.basis_w0 : default_kinoform_basis_w0(ell, cfg.w0);
        GridSpec dgrid;
        dgrid.n = cfg.grid_n;
        const double basis_cover = dgrid.coverage_factor
                                   * std::sqrt((2.0 * cfg.p_max_limit + std::abs(ell) + 1.0) / 2.0)
                                   * wb;
        const double beam_cover = dgrid.coverage_factor * r_expect;
        dgrid.extent = std::max(basis_cover, beam_cover);
        while (dgrid.dx() > std::min(cfg.w0, wb) / dgrid.sampling_factor && dgrid.n < 8192)
            dgrid.n *= 2;

        const SampledField dbeam = make_kinoform_beam(ell, cfg.w0, dgrid, cfg.wavelength);
        const PSpectrum spec =
            decompose_p_spectrum_auto(dbeam, ell, wb, 16, cfg.p_max_limit);

        std::ofstream ps = open_csv(cfg, "kinoform_pspec_ell" + std::to_string(ell) + ".csv");
        ps << "ell,p,power_fraction,re_c,im_c,remainder\n";
        for (const PSpectrumEntry& e : spec.weights) {
            ps << ell << ',' << e.p << ',' << fmt(e.power_fraction) << ','
               << fmt(e.coefficient.real()) << ',' << fmt(e.coefficient.imag()) << ','
               << fmt(spec.remainder) << '\n';
        }
    }
    return cfg.out_dir / "kinoform_scaling.csv";
}

std::filesystem::path run_petals(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::ofstream os = open_csv(cfg, "petals.csv");
    os << "ell,family,count,mean_spacing_rad,spacing_stddev_rad,ring_radius_rad,"
          "arc_spacing_rad\n";

    const int ell_lo = std::max(1, cfg.ell_min);
    for (int ell = ell_lo; ell <= cfg.ell_max; ++ell) {
        int counts[2] = {0, 0};
        int idx = 0;
        for (const ModeFamily family : {ModeFamily::fixed_waist, ModeFamily::fixed_rms}) {
            const double size = family == ModeFamily::fixed_waist ? cfg.w0 : cfg.r_rms0;
            const double w0 = family == ModeFamily::fixed_waist
                                  ? cfg.w0
                                  : waist_for_fixed_rms(ell, cfg.r_rms0);
            const GridSpec grid = make_launch_grid(LGModeSpec{ell, 0, w0}, cfg.grid_n);
            const PetalReport rep = petal_analysis(ell, family, size, grid, cfg.wavelength);
            counts[idx++] = rep.count;
            os << ell << ','
               << (family == ModeFamily::fixed_waist ? "fixed_w0" : "fixed_rms") << ','
               << rep.count << ',' << fmt(rep.mean_angular_spacing) << ','
               << fmt(rep.spacing_stddev) << ',' << fmt(rep.ring_radius) << ','
               << fmt(rep.arc_spacing) << '\n';
        }
        if (counts[0] != 2 * ell || counts[1] != 2 * ell) {
            std::ostringstream msg;
            msg << "run_petals: expected " << 2 * ell << " petals at ell=" << ell << ", got "
                << counts[0] << " (fixed_w0) and " << counts[1] << " (fixed_rms)";
            throw ToleranceError(msg.str());
        }
    }
    return cfg.out_dir / "petals.csv";
}

GuardReport validate_plan(const ExperimentConfig& cfg)
{
    cfg.validate();
    GuardReport report;
    const double k0 = 2.0 * std::numbers::pi / cfg.wavelength;

    auto check_mode = [&](Convention conv, int ell) {
        const double w0 = mode_waist(cfg, conv, ell);
        const BeamGeometry geom(cfg.wavelength, w0);
        std::ostringstream tag;
        tag << "ell=" << ell << " (" << to_string(conv) << ")";

        GridSpec grid;
        if (cfg.grid_extent > 0.0) {
            grid.n = cfg.grid_n;
            grid.extent = cfg.grid_extent;
        } else {
            grid = make_launch_grid(LGModeSpec{ell, 0, w0}, cfg.grid_n);
        }

        const double r0 = radius_rms(ell, w0);
        if (grid.extent < grid.coverage_factor * r0) {
            report.items.push_back(
                {true, "coverage",
                 tag.str() + ": extent " + fmt(grid.extent) + " m < " + fmt(grid.coverage_factor)
                     + "*r_rms = " + fmt(grid.coverage_factor * r0) + " m"});
        }
        if (grid.dx() > w0 / grid.sampling_factor) {
            report.items.push_back(
                {true, "sampling",
                 tag.str() + ": dx " + fmt(grid.dx()) + " m > w0/" + fmt(grid.sampling_factor)
                     + " = " + fmt(w0 / grid.sampling_factor) + " m"});
        }

        // propagation window at the farthest z-sample
        const double z_max = cfg.z_window_hi * geom.zR;
        const double w_far = beam_width(w0, z_max, geom.zR);
        const double need = radius_rms(ell, w_far) + 3.0 * w_far;
        const double half = 0.5 * cfg.padding * grid.extent;
        if (need > half) {
            report.items.push_back(
                {true, "window",
                 tag.str() + ": predicted r_rms + 3 widths = " + fmt(need)
                     + " m exceeds padded half-extent " + fmt(half)
                     + " m at z_max; suggested extent >= " + fmt(2.0 * need / cfg.padding)
                     + " m"});
        } else if (need > 0.9 * half) {
            report.items.push_back(
                {false, "window",
                 tag.str() + ": window margin below 10% at z_max; suggested extent >= "
                     + fmt(2.0 * need / (0.9 * cfg.padding)) + " m"});
        }

        const double alpha = conv == Convention::fixed_w0
                                 ? divergence_fixed_waist(ell, w0, cfg.wavelength)
                                 : divergence_fixed_rms(ell, cfg.r_rms0, k0);
        if (!paraxial_ok(alpha)) {
            report.items.push_back(
                {false, "paraxial",
                 tag.str() + ": divergence " + fmt(alpha) + " rad exceeds the paraxial regime"});
        }
    };

    for (const Convention conv : cfg.conventions)
        for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell)
            check_mode(conv, ell);

    // kinoform decomposition syntheses: the highest basis mode dominates
    for (int ell = cfg.ell_min; ell <= cfg.ell_max; ++ell) {
        const double wb =
            cfg.basis_w0 > 0.0 ? cfg.basis_w0 : default_kinoform_basis_w0(ell, cfg.w0);
        GridSpec dgrid;
        dgrid.n = cfg.grid_n;
        dgrid.extent = std::max(dgrid.coverage_factor
                                    * std::sqrt((2.0 * cfg.p_max_limit + std::abs(ell) + 1.0) / 2.0)
                                    * wb,
                                dgrid.coverage_factor * cfg.w0 / std::sqrt(2.0));
        while (dgrid.dx() > std::min(cfg.w0, wb) / dgrid.sampling_factor && dgrid.n < 8192)
            dgrid.n *= 2;
        if (dgrid.dx() > std::min(cfg.w0, wb) / dgrid.sampling_factor) {
            std::ostringstream tag;
            tag << "kinoform decomposition ell=" << ell << ": sampling guard infeasible below n=8192";
            report.items.push_back({true, "sampling", tag.str()});
        }
    }
    return report;
}

} // namespace oam
