// oamdiv — command-line runner for the OAM beam divergence experiments.
//
// Subcommands: fig1, fig2, kinoform, petals, validate, field-dump.
// Exit codes: 0 success, 1 config error, 2 guard failure, 3 numerical
// tolerance failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "oam/experiments.hpp"
#include "oam/field_io.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int grid_n = 0;
    int ell_max = -1;
    std::string convention;
};

void add_common(CLI::App* cmd, CommonOpts& opts)
{
    cmd->add_option("--config", opts.config_path, "config file (key = value with [sections])")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory for CSV artifacts");
    cmd->add_option("--grid-n", opts.grid_n, "grid samples per axis (power of two >= 64)");
    cmd->add_option("--ell-max", opts.ell_max, "largest azimuthal index");
    cmd->add_option("--convention", opts.convention,
                    "mode family: fixed_w0, fixed_rms or both");
}

oam::ExperimentConfig load_config(const CommonOpts& opts)
{
    oam::ExperimentConfig cfg;
    if (!opts.config_path.empty())
        cfg = oam::parse_config_file(opts.config_path);
    if (!opts.out_dir.empty())
        cfg.out_dir = opts.out_dir;
    if (opts.grid_n > 0)
        cfg.grid_n = opts.grid_n;
    if (opts.ell_max >= 0)
        cfg.ell_max = opts.ell_max;
    if (!opts.convention.empty()) {
        if (opts.convention == "both") {
            cfg.conventions = {oam::Convention::fixed_w0, oam::Convention::fixed_rms};
        } else if (opts.convention == "fixed_w0") {
            cfg.conventions = {oam::Convention::fixed_w0};
        } else if (opts.convention == "fixed_rms") {
            cfg.conventions = {oam::Convention::fixed_rms};
        } else {
            throw oam::ConfigError("--convention must be fixed_w0, fixed_rms or both");
        }
    }
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Laguerre-Gaussian beam divergence experiments"};
    app.require_subcommand(1);

    CommonOpts opts;

    CLI::App* fig1 = app.add_subcommand("fig1", "pupil-plane peak vs rms radius per ell");
    CLI::App* fig2 = app.add_subcommand(
        "fig2", "divergence scaling for fixed-waist and fixed-rms families");
    CLI::App* kino = app.add_subcommand(
        "kinoform", "spiral-phase beam divergence and radial-mode spectra");
    CLI::App* petals = app.add_subcommand("petals", "petal structure of +/-ell superpositions");
    CLI::App* validate = app.add_subcommand("validate", "dry-run all grid and window guards");
    for (CLI::App* cmd : {fig1, fig2, kino, petals, validate})
        add_common(cmd, opts);

    CLI::App* dump = app.add_subcommand("field-dump", "synthesize one LG field and dump it");
    int dump_ell = 0;
    int dump_p = 0;
    double dump_w0 = 1e-3;
    double dump_wavelength = 633e-9;
    double dump_z = 0.0;
    int dump_n = 256;
    double dump_extent = 0.0;
    std::string dump_out = "field.oamf";
    std::string dump_csv;
    dump->add_option("--ell", dump_ell, "azimuthal index");
    dump->add_option("--p", dump_p, "radial index")->check(CLI::NonNegativeNumber);
    dump->add_option("--w0", dump_w0, "waist radius [m]");
    dump->add_option("--wavelength", dump_wavelength, "wavelength [m]");
    dump->add_option("--z", dump_z, "plane coordinate [m]");
    dump->add_option("--grid-n", dump_n, "grid samples per axis");
    dump->add_option("--extent", dump_extent, "grid side length [m] (default: auto)");
    dump->add_option("--out", dump_out, "output dump path");
    dump->add_option("--csv", dump_csv, "also write intensity CSV (x,y,I) to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dump->parsed()) {
            const oam::LGModeSpec mode{dump_ell, dump_p, dump_w0};
            const oam::BeamGeometry geom(dump_wavelength, dump_w0);
            oam::GridSpec grid;
            if (dump_extent > 0.0) {
                grid.n = dump_n;
                grid.extent = dump_extent;
            } else {
                grid = oam::make_coverage_grid(mode, geom, dump_z, dump_n);
            }
            const oam::SampledField field = oam::synthesize_lg(mode, geom, grid, dump_z);
            oam::write_field(field, dump_out);
            std::printf("wrote %s (n=%d, dx=%g m)\n", dump_out.c_str(), field.n(), field.dx());
            if (!dump_csv.empty()) {
                oam::write_intensity_csv(field, dump_csv);
                std::printf("wrote %s\n", dump_csv.c_str());
            }
            return 0;
        }

        const oam::ExperimentConfig cfg = load_config(opts);
        if (validate->parsed()) {
            const oam::GuardReport report = oam::validate_plan(cfg);
            std::fputs(report.to_text().c_str(), stdout);
            return report.any_failure() ? 2 : 0;
        }
        std::filesystem::path out;
        if (fig1->parsed())
            out = oam::run_fig1(cfg);
        else if (fig2->parsed())
            out = oam::run_fig2(cfg);
        else if (kino->parsed())
            out = oam::run_kinoform(cfg);
        else if (petals->parsed())
            out = oam::run_petals(cfg);
        std::printf("wrote %s\n", out.string().c_str());
        return 0;
    } catch (const oam::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const oam::GridResolutionError& e) {
        std::fprintf(stderr, "guard failure: %s\n", e.what());
        return 2;
    } catch (const oam::PropagationWindowError& e) {
        std::fprintf(stderr, "guard failure: %s\n", e.what());
        return 2;
    } catch (const oam::ToleranceError& e) {
        std::fprintf(stderr, "tolerance failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
