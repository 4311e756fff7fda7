#include "divuq/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "divuq/contour.hpp"
#include "divuq/divergence.hpp"
#include "divuq/experiments.hpp"
#include "divuq/gaussian_fit.hpp"
#include "divuq/io.hpp"
#include "divuq/lcp.hpp"
#include "divuq/mc_oracle.hpp"
#include "divuq/render.hpp"
#include "divuq/synthetic.hpp"

namespace divuq {

namespace {

namespace fs = std::filesystem;

std::vector<std::size_t> parse_count_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma - start);
        const auto value = parse_count_or_auto(item);
        if (!value) throw Error(ErrorKind::Usage, std::string(flag) + " does not accept 'auto'");
        out.push_back(*value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

const Colormap& pick_colormap(const std::string& lut, std::optional<Colormap>& storage) {
    if (lut.empty() || lut == "builtin") return Colormap::builtin();
    storage = Colormap::from_file(lut);
    return *storage;
}

bool has_extension(const fs::path& p, const char* ext) { return p.extension() == ext; }

struct Options {
    std::string threads = "auto";

    // gen
    std::string kind;
    std::size_t nx = 0, ny = 0, members = 0;
    double dx = 1.0, dy = 1.0, sigma = 0.0;
    std::uint64_t seed = 0;

    std::string in, out, in_mu, in_sigma, out_mu, out_sigma, out_mean, out_std, sse_against;
    std::vector<std::string> outs;
    std::size_t samples = 0;
    double iso = 0.0;
    std::string out_csv, summary_csv, mode = "scalar";
    double lo = 0.0, hi = 1.0;
    std::string lut = "builtin", contours, contour_color = "0,255,255";
    std::size_t bins = 50;
    int runs = 10;
    std::string samples_list = "500,1000,2000", threads_list = "1";

    // Single-vertex validation case by default.
    double mu_uim = 5.98, sigma_uim = 0.96, mu_uip = 6.40, sigma_uip = 0.38;
    double mu_vjm = 6.50, sigma_vjm = 0.94, mu_vjp = 4.30, sigma_vjp = 0.65;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uncertainty of finite-difference divergence for 2D vector-field ensembles", "divuq"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "Worker threads for kernels ('auto' or N)");

    auto* gen = app.add_subcommand("gen", "Write a seeded synthetic ensemble");
    gen->add_option("--kind", o.kind, "source-sink | vortex | wind-like")->required();
    gen->add_option("--nx", o.nx)->required()->check(CLI::Range(2ul, 1ul << 20));
    gen->add_option("--ny", o.ny)->required()->check(CLI::Range(2ul, 1ul << 20));
    gen->add_option("--dx", o.dx)->check(CLI::PositiveNumber);
    gen->add_option("--dy", o.dy)->check(CLI::PositiveNumber);
    gen->add_option("--members", o.members)->required()->check(CLI::Range(2ul, 1ul << 20));
    gen->add_option("--sigma", o.sigma, "Noise standard deviation")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out)->required();

    auto* fit = app.add_subcommand("fit", "Fit the per-vertex Gaussian model of an ensemble");
    fit->add_option("--in", o.in)->required();
    fit->add_option("--out-mu", o.out_mu)->required();
    fit->add_option("--out-sigma", o.out_sigma)->required();

    auto* div = app.add_subcommand("div", "Closed-form divergence mean and sigma");
    div->add_option("--in-mu", o.in_mu)->required();
    div->add_option("--in-sigma", o.in_sigma)->required();
    div->add_option("--out-mu", o.out_mu)->required();
    div->add_option("--out-sigma", o.out_sigma)->required();

    auto* mc = app.add_subcommand("mc", "Monte Carlo divergence mean and std");
    mc->add_option("--in-mu", o.in_mu)->required();
    mc->add_option("--in-sigma", o.in_sigma)->required();
    mc->add_option("--samples", o.samples)->required()->check(CLI::Range(2ul, 1ul << 40));
    mc->add_option("--seed", o.seed);
    mc->add_option("--out-mean", o.out_mean)->required();
    mc->add_option("--out-std", o.out_std)->required();
    mc->add_option("--sse-against", o.sse_against, "Write e_m,e_sigma,sse against the closed form to this CSV");

    auto* lcp_cmd = app.add_subcommand("lcp", "Level-crossing probability per cell");
    lcp_cmd->add_option("--in-mu", o.in_mu)->required();
    lcp_cmd->add_option("--in-sigma", o.in_sigma)->required();
    lcp_cmd->add_option("--iso", o.iso)->required();
    lcp_cmd->add_option("--out", o.outs, "Output path; .ppm renders, anything else is CSV")->required();
    lcp_cmd->add_option("--lut", o.lut, "Colormap file or 'builtin'");

    auto* contour = app.add_subcommand("contour", "Marching-squares isocontours as CSV polylines");
    contour->add_option("--in", o.in)->required();
    contour->add_option("--iso", o.iso)->required();
    contour->add_option("--out-csv", o.out_csv)->required();
    contour->add_option("--mode", o.mode,
                        "scalar: contour a scalar file; mean: divergence of the ensemble mean; "
                        "members: divergence of every member (spaghetti)")
        ->check(CLI::IsMember({"scalar", "mean", "members"}));

    auto* render = app.add_subcommand("render", "Colormap a scalar file or LCP CSV into a PPM");
    render->add_option("--in", o.in)->required();
    render->add_option("--lo", o.lo)->required();
    render->add_option("--hi", o.hi)->required();
    render->add_option("--lut", o.lut, "Colormap file or 'builtin'");
    render->add_option("--out", o.out)->required();
    render->add_option("--contours", o.contours, "Contour CSV to overlay");
    render->add_option("--contour-color", o.contour_color, "r,g,b");

    auto* gradmag = app.add_subcommand("gradmag", "Per-member gradient of velocity magnitude");
    gradmag->add_option("--in", o.in)->required();
    gradmag->add_option("--out", o.out)->required();

    auto* v1d = app.add_subcommand("validate-1d", "Single-vertex sampling check against the closed form");
    v1d->add_option("--mu-uim", o.mu_uim);
    v1d->add_option("--sigma-uim", o.sigma_uim)->check(CLI::NonNegativeNumber);
    v1d->add_option("--mu-uip", o.mu_uip);
    v1d->add_option("--sigma-uip", o.sigma_uip)->check(CLI::NonNegativeNumber);
    v1d->add_option("--mu-vjm", o.mu_vjm);
    v1d->add_option("--sigma-vjm", o.sigma_vjm)->check(CLI::NonNegativeNumber);
    v1d->add_option("--mu-vjp", o.mu_vjp);
    v1d->add_option("--sigma-vjp", o.sigma_vjp)->check(CLI::NonNegativeNumber);
    v1d->add_option("--dx", o.dx)->check(CLI::PositiveNumber);
    v1d->add_option("--dy", o.dy)->check(CLI::PositiveNumber);
    o.samples = 100000;
    v1d->add_option("--samples", o.samples)->check(CLI::Range(2ul, 1ul << 40));
    v1d->add_option("--seed", o.seed);
    v1d->add_option("--bins", o.bins)->check(CLI::Range(1ul, 1ul << 24));
    v1d->add_option("--out-csv", o.out_csv)->required();
    v1d->add_option("--summary-csv", o.summary_csv);

    auto* bench_cmd = app.add_subcommand("bench", "Analytic vs Monte Carlo timing and SSE table");
    bench_cmd->add_option("--in", o.in, "Ensemble file")->required();
    bench_cmd->add_option("--samples-list", o.samples_list);
    bench_cmd->add_option("--threads-list", o.threads_list);
    bench_cmd->add_option("--runs", o.runs)->check(CLI::Range(1, 1000000));
    bench_cmd->add_option("--seed", o.seed);
    bench_cmd->add_option("--out-csv", o.out_csv)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "divuq: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        ParallelConfig par{parse_count_or_auto(o.threads), std::nullopt};

        if (*gen) {
            const UniformGrid2 grid(o.nx, o.ny, o.dx, o.dy);
            write_ensemble(generate_synthetic(parse_synthetic_kind(o.kind), grid, o.members, o.sigma, o.seed),
                           o.out);
        } else if (*fit) {
            write_gaussian_model(fit_gaussian(read_ensemble(o.in), par), o.out_mu, o.out_sigma);
        } else if (*div) {
            const auto model = read_gaussian_model(o.in_mu, o.in_sigma);
            write_gaussian_scalar(propagate_divergence(model, par), o.out_mu, o.out_sigma);
        } else if (*mc) {
            const auto model = read_gaussian_model(o.in_mu, o.in_sigma);
            const auto estimate = mc_divergence(model, McConfig{o.samples, o.seed}, par);
            write_scalar_field(ScalarField2(estimate.grid, estimate.mean), o.out_mean);
            write_scalar_field(ScalarField2(estimate.grid, estimate.std), o.out_std);
            if (!o.sse_against.empty()) {
                const auto metrics = error_metrics(estimate, propagate_divergence(model, par));
                write_file_bytes(o.sse_against, metrics_to_csv(metrics));
            }
        } else if (*lcp_cmd) {
            const auto field = read_gaussian_scalar(o.in_mu, o.in_sigma);
            const LcpField result = lcp(field, o.iso, par);
            std::optional<Colormap> storage;
            for (const auto& path : o.outs) {
                if (has_extension(path, ".ppm")) {
                    write_ppm(render_colormap(result, 0.0, 1.0, pick_colormap(o.lut, storage)), path);
                } else {
                    write_file_bytes(path, lcp_to_csv(result));
                }
            }
        } else if (*contour) {
            std::vector<ContourSet> sets;
            if (o.mode == "scalar") {
                sets.push_back(marching_squares(read_scalar_field(o.in), o.iso));
            } else {
                const Ensemble2 ensemble = read_ensemble(o.in);
                if (o.mode == "mean") {
                    const VectorField2 mean =
                        ensemble.size() == 1 ? ensemble[0] : fit_gaussian(ensemble, par).mean_field();
                    sets.push_back(marching_squares(divergence_deterministic(mean, par), o.iso));
                } else {
                    for (const auto& member : ensemble.members()) {
                        sets.push_back(marching_squares(divergence_deterministic(member, par), o.iso));
                    }
                }
            }
            write_file_bytes(o.out_csv, contours_to_csv(sets));
        } else if (*render) {
            std::optional<Colormap> storage;
            const Colormap& cmap = pick_colormap(o.lut, storage);
            RgbRaster raster;
            std::optional<UniformGrid2> grid;
            if (has_extension(o.in, ".csv")) {
                const LcpField field = lcp_from_csv(read_file_bytes(o.in));
                raster = render_colormap(field, o.lo, o.hi, cmap);
                grid = field.grid();
            } else {
                const ScalarField2 field = read_scalar_field(o.in);
                raster = render_colormap(field, o.lo, o.hi, cmap);
                grid = field.grid();
            }
            if (!o.contours.empty()) {
                ContourSet set;
                set.polylines = contours_from_csv(read_file_bytes(o.contours));
                raster = overlay_contours(std::move(raster), set, *grid, parse_rgb(o.contour_color));
            }
            write_ppm(raster, o.out);
        } else if (*gradmag) {
            write_ensemble(gradient_ensemble(read_ensemble(o.in)), o.out);
        } else if (*v1d) {
            const DivergenceNeighbors nb{{o.mu_uim, o.sigma_uim},
                                         {o.mu_uip, o.sigma_uip},
                                         {o.mu_vjm, o.sigma_vjm},
                                         {o.mu_vjp, o.sigma_vjp}};
            const auto result = validate_1d(nb, o.dx, o.dy, McConfig{o.samples, o.seed}, o.bins);
            write_file_bytes(o.out_csv, validate_1d_csv(result));
            if (!o.summary_csv.empty()) write_file_bytes(o.summary_csv, validate_1d_summary_csv(result));
            out << "analytic_mean=" << format_double(result.analytic.mu) << "\n"
                << "analytic_std=" << format_double(result.analytic.sigma) << "\n"
                << "mc_mean=" << format_double(result.mc.mean) << "\n"
                << "mc_std=" << format_double(result.mc.std) << "\n"
                << "e_m=" << format_double(result.e_m) << "\n"
                << "e_sigma=" << format_double(result.e_sigma) << "\n";
        } else if (*bench_cmd) {
            const auto model = fit_gaussian(read_ensemble(o.in), par);
            const auto rows = run_benchmark(model, parse_count_list(o.samples_list, "--samples-list"),
                                            parse_count_list(o.threads_list, "--threads-list"), o.runs,
                                            o.seed);
            write_file_bytes(o.out_csv, benchmark_csv(rows));
        }
    } catch (const Error& e) {
        err << "divuq: " << e.what() << "\n";
        return e.kind() == ErrorKind::Usage ? 1 : 2;
    } catch (const std::exception& e) {
        err << "divuq: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace divuq
