#include "pbif/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "pbif/bifurcation.hpp"
#include "pbif/consistency.hpp"
#include "pbif/cubical.hpp"
#include "pbif/densities.hpp"
#include "pbif/io.hpp"
#include "pbif/kde.hpp"
#include "pbif/simplicial.hpp"
#include "pbif/stochastic.hpp"
#include "pbif/version.hpp"

namespace pbif {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path sidecar(const fs::path& out, const char* suffix) {
    fs::path p = out;
    p.replace_extension(suffix);
    return p;
}

// Every output gets a `<stem>.meta.json` next to it with the seed and the
// effective configuration, so runs are reproducible from the files alone.
void write_metadata(const fs::path& out, std::uint64_t seed, const json& config) {
    json meta;
    meta["seed"] = seed;
    meta["config"] = config;
    meta["version"] = kVersion;
    std::ofstream f(sidecar(out, ".meta.json"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write metadata for " + out.string());
    f << meta.dump(2) << '\n';
}

struct RangeSpec {
    double lo = 0, hi = 0;
    int count = 0;
};

RangeSpec parse_range(const std::string& text) {
    auto first = text.find(':');
    auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw CLI::ValidationError("range", "expected lo:hi:count, got '" + text + "'");
    RangeSpec r;
    r.lo = parse_double(text.substr(0, first));
    r.hi = parse_double(text.substr(first + 1, second - first - 1));
    r.count = static_cast<int>(parse_double(text.substr(second + 1)));
    if (r.count < 1) throw CLI::ValidationError("range", "count must be >= 1");
    return r;
}

std::vector<double> expand_range(const RangeSpec& r) {
    std::vector<double> out(r.count);
    if (r.count == 1) {
        out[0] = r.lo;
        return out;
    }
    // Convex form hits symmetric interior points (e.g. 0 in -1:1:21) exactly.
    const double denom = r.count - 1;
    for (int j = 0; j < r.count; ++j)
        out[j] = (r.lo * (denom - j) + r.hi * j) / denom;
    return out;
}

Window parse_window(const std::string& text) {
    auto parts = [&] {
        std::vector<double> v;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto pos = text.find(':', start);
            if (pos == std::string::npos) {
                v.push_back(parse_double(text.substr(start)));
                break;
            }
            v.push_back(parse_double(text.substr(start, pos - start)));
            start = pos + 1;
        }
        return v;
    }();
    if (parts.size() != 4)
        throw CLI::ValidationError("window", "expected xmin:xmax:ymin:ymax");
    return Window{parts[0], parts[1], parts[2], parts[3]};
}

// Family parameter flags shared by pdf-grid / simulate / bifurcation-plot.
struct FamilyOptions {
    std::string family = "duffing";
    double h = 0.0, q1 = 1.0, d11 = 1.0, kappa = 1.0, a = 1.0;
    bool h_set = false, kappa_set = false, a_set = false;

    void attach(CLI::App* cmd) {
        // --h is the bifurcation parameter, so the short help flag has to go.
        cmd->set_help_flag("--help", "print help and exit");
        cmd->add_option("--family", family, "density family (duffing|crater)")
            ->default_str(family);
        cmd->add_option("--h", h, "bifurcation parameter h")->each([this](const std::string&) {
            h_set = true;
        });
        cmd->add_option("--q1", q1, "noise amplitude");
        cmd->add_option("--d11", d11, "noise intensity D11");
        cmd->add_option("--kappa", kappa, "crater steepness")->each([this](const std::string&) {
            kappa_set = true;
        });
        cmd->add_option("--a", a, "crater rim radius squared")->each([this](const std::string&) {
            a_set = true;
        });
    }

    ParamMap overrides() const {
        ParamMap p;
        if (family == "duffing") {
            if (h_set) p["h"] = h;
            p["q1"] = q1;
            p["D11"] = d11;
        } else {
            if (kappa_set) p["kappa"] = kappa;
            if (a_set) p["a"] = a;
        }
        return p;
    }

    json to_json() const {
        json j;
        j["family"] = family;
        for (const auto& [k, v] : overrides()) j[k] = v;
        return j;
    }
};

json window_json(const Window& w) {
    return json{{"x_min", w.x_min}, {"x_max", w.x_max}, {"y_min", w.y_min}, {"y_max", w.y_max}};
}

std::vector<int> split_dims(const std::string& text) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(',', start);
        auto part = pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        if (!part.empty()) out.push_back(static_cast<int>(parse_double(part)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw CLI::ValidationError("dims", "no dimensions given");
    return out;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"P-bifurcation detection via superlevel persistent homology"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // ---- pdf-grid ----------------------------------------------------------
    auto* pdf = app.add_subcommand("pdf-grid", "evaluate an analytical density on a grid");
    FamilyOptions pdf_fam;
    pdf_fam.attach(pdf);
    std::string pdf_out, pdf_window = "-3:3:-3:3", pdf_model;
    int pdf_nx = 201, pdf_ny = 201;
    bool pdf_normalize = false;
    pdf->add_option("--out", pdf_out, "output grid CSV")->required();
    pdf->add_option("--window", pdf_window, "evaluation window xmin:xmax:ymin:ymax");
    pdf->add_option("--nx", pdf_nx, "grid cells in x");
    pdf->add_option("--ny", pdf_ny, "grid cells in y");
    pdf->add_flag("--normalize", pdf_normalize, "divide by the grid maximum");
    pdf->add_option("--model", pdf_model, "model spec JSON {family,params,window,nx,ny}");
    pdf->callback([&] {
        Window window = parse_window(pdf_window);
        DensityModel model;
        if (!pdf_model.empty()) {
            std::ifstream f(pdf_model);
            if (!f) throw std::runtime_error("cannot read model spec " + pdf_model);
            json spec = json::parse(f);
            ParamMap params;
            if (spec.contains("params"))
                for (auto& [k, v] : spec.at("params").items()) params[k] = v.get<double>();
            model = make_density(spec.at("family").get<std::string>(), params);
            if (spec.contains("window")) {
                auto& w = spec.at("window");
                window = Window{w.at("x_min").get<double>(), w.at("x_max").get<double>(),
                                w.at("y_min").get<double>(), w.at("y_max").get<double>()};
            }
            if (spec.contains("nx")) pdf_nx = spec.at("nx").get<int>();
            if (spec.contains("ny")) pdf_ny = spec.at("ny").get<int>();
        } else {
            model = make_density(pdf_fam.family, pdf_fam.overrides());
        }
        auto field = evaluate_on_grid(model, window, pdf_nx, pdf_ny);
        if (pdf_normalize) field = normalize_max(std::move(field));
        write_grid_csv(pdf_out, field);
        json cfg = pdf_fam.to_json();
        cfg["window"] = window_json(window);
        cfg["nx"] = pdf_nx;
        cfg["ny"] = pdf_ny;
        cfg["normalize"] = pdf_normalize;
        cfg["subcommand"] = "pdf-grid";
        write_metadata(pdf_out, 0, cfg);
    });

    // ---- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "sample the stationary response of a family's SDE");
    FamilyOptions sim_fam;
    sim_fam.attach(sim);
    std::string sim_out;
    double sim_dt = 0.01;
    std::size_t sim_burn = 10000, sim_stride = 10, sim_samples = 5000, sim_greedy = 0;
    std::uint64_t sim_seed = 0;
    std::vector<double> sim_x0{0.0, 0.0};
    sim->add_option("--out", sim_out, "output point CSV")->required();
    sim->add_option("--dt", sim_dt, "integration step");
    sim->add_option("--burn-in", sim_burn, "discarded initial steps");
    sim->add_option("--stride", sim_stride, "steps between retained samples");
    sim->add_option("--samples", sim_samples, "retained sample count");
    sim->add_option("--greedy", sim_greedy, "greedy-permutation subsample size (0 = keep all)");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--x0", sim_x0, "initial state")->expected(2);
    sim->callback([&] {
        auto sys = make_system(sim_fam.family, sim_fam.overrides());
        const std::size_t steps = sim_burn + sim_stride * (sim_samples - 1) + 1;
        auto traj = euler_maruyama(sys, State{sim_x0[0], sim_x0[1]}, sim_dt, steps, sim_seed);
        auto cloud = stationary_sample(traj, sim_burn, sim_stride);
        if (cloud.size() > sim_samples) cloud.coords.resize(sim_samples * cloud.dim);
        if (sim_greedy > 0) cloud = greedy_permutation(cloud, sim_greedy);
        write_points_csv(sim_out, cloud);
        json cfg = sim_fam.to_json();
        cfg["dt"] = sim_dt;
        cfg["burn_in"] = sim_burn;
        cfg["stride"] = sim_stride;
        cfg["samples"] = sim_samples;
        cfg["greedy"] = sim_greedy;
        cfg["x0"] = sim_x0;
        cfg["subcommand"] = "simulate";
        write_metadata(sim_out, sim_seed, cfg);
    });

    // ---- kde ---------------------------------------------------------------
    auto* kde_cmd = app.add_subcommand("kde", "kernel density estimate of a point cloud on a grid");
    std::string kde_in, kde_out, kde_window = "-3:3:-3:3";
    int kde_nx = 201, kde_ny = 201;
    bool kde_normalize = false;
    std::vector<double> kde_bw;
    kde_cmd->add_option("--points", kde_in, "input point CSV")->required();
    kde_cmd->add_option("--out", kde_out, "output grid CSV")->required();
    kde_cmd->add_option("--window", kde_window, "evaluation window xmin:xmax:ymin:ymax");
    kde_cmd->add_option("--nx", kde_nx, "grid cells in x");
    kde_cmd->add_option("--ny", kde_ny, "grid cells in y");
    kde_cmd->add_flag("--normalize", kde_normalize, "divide by the grid maximum");
    kde_cmd->add_option("--bandwidth", kde_bw, "per-dimension bandwidths (default: Scott)")
        ->expected(-1);
    kde_cmd->callback([&] {
        KdeModel model;
        model.samples = read_points_csv(kde_in);
        model.bandwidths = kde_bw.empty() ? scott_bandwidth(model.samples) : kde_bw;
        auto field = kde_on_grid(model, parse_window(kde_window), kde_nx, kde_ny);
        if (kde_normalize) field = normalize_max(std::move(field));
        write_grid_csv(kde_out, field);
        json cfg;
        cfg["points"] = kde_in;
        cfg["bandwidths"] = model.bandwidths;
        cfg["window"] = window_json(parse_window(kde_window));
        cfg["nx"] = kde_nx;
        cfg["ny"] = kde_ny;
        cfg["normalize"] = kde_normalize;
        cfg["subcommand"] = "kde";
        write_metadata(kde_out, 0, cfg);
    });

    // ---- persist -----------------------------------------------------------
    auto* per = app.add_subcommand("persist", "persistence diagram of a grid or point cloud");
    std::string per_grid, per_points, per_out, per_direction = "superlevel";
    double per_rmax = 1.0;
    int per_maxdim = 2;
    per->add_option("--grid", per_grid, "input grid CSV (cubical persistence)");
    per->add_option("--points", per_points, "input point CSV (Rips sublevel persistence)");
    per->add_option("--out", per_out, "output diagram CSV")->required();
    per->add_option("--direction", per_direction, "superlevel|sublevel (grids only)")
        ->check(CLI::IsMember({"superlevel", "sublevel"}));
    per->add_option("--rmax", per_rmax, "Rips scale cutoff (points only)");
    per->add_option("--max-dim", per_maxdim, "top simplex dimension (points only)");
    per->callback([&] {
        if (per_grid.empty() == per_points.empty())
            throw CLI::ValidationError("persist", "exactly one of --grid/--points is required");
        PersistenceDiagram diagram;
        json cfg;
        if (!per_grid.empty()) {
            auto field = read_grid_csv(per_grid);
            auto dir = per_direction == "superlevel" ? Direction::superlevel
                                                     : Direction::sublevel;
            diagram = persistence(build_filtration(field, dir));
            cfg["grid"] = per_grid;
            cfg["direction"] = per_direction;
        } else {
            auto cloud = read_points_csv(per_points);
            diagram = rips_persistence(rips_filtration(cloud, per_rmax, per_maxdim));
            cfg["points"] = per_points;
            cfg["rmax"] = per_rmax;
            cfg["max_dim"] = per_maxdim;
        }
        write_diagram_csv(per_out, diagram);
        cfg["subcommand"] = "persist";
        write_metadata(per_out, 0, cfg);
    });

    // ---- betti -------------------------------------------------------------
    auto* bet = app.add_subcommand("betti", "Betti vector of a persistence diagram");
    std::string bet_in, bet_out;
    int bet_dim = 0, bet_levels = 50;
    double bet_at = -1.0;
    bet->add_option("--diagram", bet_in, "input diagram CSV")->required();
    bet->add_option("--out", bet_out, "output CSV (L,beta)")->required();
    bet->add_option("--dim", bet_dim, "homology dimension");
    bet->add_option("--levels", bet_levels, "uniform level count in (0,1]");
    bet->add_option("--at", bet_at, "single level instead of a grid");
    bet->callback([&] {
        auto diagram = read_diagram_csv(bet_in);
        std::vector<double> levels =
            bet_at >= 0 ? std::vector<double>{bet_at} : uniform_levels(bet_levels);
        write_betti_csv(bet_out, betti_vector(diagram, levels, bet_dim));
        json cfg;
        cfg["diagram"] = bet_in;
        cfg["dim"] = bet_dim;
        cfg["levels"] = bet_levels;
        if (bet_at >= 0) cfg["at"] = bet_at;
        cfg["subcommand"] = "betti";
        write_metadata(bet_out, 0, cfg);
    });

    // ---- bifurcation-plot --------------------------------------------------
    auto* bif = app.add_subcommand("bifurcation-plot",
                                   "homological bifurcation plot over a parameter sweep");
    FamilyOptions bif_fam;
    bif_fam.attach(bif);
    bool bif_analytical = false, bif_estimated = false;
    std::string bif_out, bif_range = "-1:1:21", bif_window = "-3:3:-3:3", bif_dims = "0,1";
    std::string bif_estcfg;
    int bif_levels = 50, bif_nx = 201, bif_ny = 201;
    std::uint64_t bif_seed = 0;
    double bif_eps = 1e-5, bif_r = 0.0;
    std::size_t bif_samples = 5000, bif_n = 500;
    bif->add_flag("--analytical", bif_analytical, "use the family's analytical density");
    bif->add_flag("--estimated", bif_estimated, "simulate, estimate, and run the estimator");
    bif->add_option("--h-range", bif_range, "sweep range lo:hi:count");
    bif->add_option("--levels", bif_levels, "uniform level count in (0,1]");
    bif->add_option("--dims", bif_dims, "homology dimensions, comma separated");
    bif->add_option("--window", bif_window, "grid window (analytical)");
    bif->add_option("--nx", bif_nx, "grid cells in x (analytical)");
    bif->add_option("--ny", bif_ny, "grid cells in y (analytical)");
    PipelineConfig bif_pipe;
    bif->add_option("--seed", bif_seed, "master seed (estimated)");
    bif->add_option("--epsilon", bif_eps, "estimator level offset (estimated)");
    bif->add_option("--r", bif_r, "estimator ball radius (estimated; 0 = clamped bandwidth)");
    bif->add_option("--samples", bif_samples, "stationary sample count (estimated)");
    bif->add_option("--n", bif_n, "greedy subsample size (estimated)");
    bif->add_option("--dt", bif_pipe.dt, "integration step (estimated)");
    bif->add_option("--burn-in", bif_pipe.burn_in, "discarded initial steps (estimated)");
    bif->add_option("--stride", bif_pipe.stride, "steps between retained samples (estimated)");
    bif->add_option("--estimator-config", bif_estcfg,
                    "estimator JSON {epsilon,r,n,levels[],dims[]}");
    bif->add_option("--out", bif_out, "output plot CSV")->required();
    bif->callback([&] {
        if (bif_analytical == bif_estimated)
            throw CLI::ValidationError("bifurcation-plot",
                                       "exactly one of --analytical/--estimated is required");
        std::vector<int> dims = split_dims(bif_dims);
        auto params = expand_range(parse_range(bif_range));
        std::vector<double> levels = uniform_levels(bif_levels);
        if (!bif_estcfg.empty()) {
            std::ifstream f(bif_estcfg);
            if (!f) throw std::runtime_error("cannot read estimator config " + bif_estcfg);
            json spec = json::parse(f);
            if (spec.contains("epsilon")) bif_eps = spec.at("epsilon").get<double>();
            if (spec.contains("r")) bif_r = spec.at("r").get<double>();
            if (spec.contains("n")) bif_n = spec.at("n").get<std::size_t>();
            if (spec.contains("levels")) levels = spec.at("levels").get<std::vector<double>>();
            if (spec.contains("dims")) dims = spec.at("dims").get<std::vector<int>>();
        }

        BifurcationPlot plot;
        if (bif_analytical) {
            GridSpec grid{parse_window(bif_window), bif_nx, bif_ny};
            plot = analytical_plot(make_density(bif_fam.family, bif_fam.overrides()), params,
                                   levels, dims, grid);
        } else {
            PipelineConfig cfg = bif_pipe;
            cfg.epsilon = bif_eps;
            cfg.r = bif_r;
            cfg.samples = bif_samples;
            cfg.subsample = bif_n;
            plot = estimated_plot(bif_fam.family, bif_fam.overrides(), params, levels, dims, cfg,
                                  bif_seed);
        }
        write_plot_csv(bif_out, plot);

        json summary;
        for (int d : dims) {
            auto transitions = detect_transitions(plot, d);
            summary["transitions"][std::to_string(d)] = transitions;
        }
        std::ofstream sf(sidecar(bif_out, ".summary.json"), std::ios::binary);
        if (!sf) throw std::runtime_error("cannot write summary for " + bif_out);
        sf << summary.dump(2) << '\n';

        json cfg = bif_fam.to_json();
        cfg["mode"] = bif_analytical ? "analytical" : "estimated";
        cfg["h_range"] = bif_range;
        cfg["levels"] = bif_levels;
        cfg["dims"] = dims;
        if (bif_analytical) {
            cfg["window"] = window_json(parse_window(bif_window));
            cfg["nx"] = bif_nx;
            cfg["ny"] = bif_ny;
        } else {
            cfg["epsilon"] = bif_eps;
            cfg["r"] = bif_r;
            cfg["samples"] = bif_samples;
            cfg["n"] = bif_n;
        }
        cfg["subcommand"] = "bifurcation-plot";
        write_metadata(bif_out, bif_seed, cfg);
    });

    // ---- error-plot ----------------------------------------------------------
    auto* err = app.add_subcommand("error-plot", "signed difference of two bifurcation plots");
    std::string err_true, err_est, err_out;
    err->add_option("--true", err_true, "reference plot CSV")->required();
    err->add_option("--est", err_est, "estimated plot CSV")->required();
    err->add_option("--out", err_out, "output error CSV")->required();
    err->callback([&] {
        auto truth = read_plot_csv(err_true);
        auto est = read_plot_csv(err_est);
        write_plot_csv(err_out, error_plot(truth, est));
        json cfg;
        cfg["true"] = err_true;
        cfg["est"] = err_est;
        cfg["subcommand"] = "error-plot";
        write_metadata(err_out, 0, cfg);
    });

    // ---- render ----------------------------------------------------------------
    auto* ren = app.add_subcommand("render", "SVG heatmap of one dimension of a plot CSV");
    std::string ren_in, ren_out;
    int ren_dim = 0;
    ren->add_option("--plot", ren_in, "input plot CSV")->required();
    ren->add_option("--dim", ren_dim, "homology dimension to render");
    ren->add_option("--out", ren_out, "output SVG")->required();
    ren->callback([&] {
        render_svg(ren_in, ren_dim, ren_out);
        json cfg;
        cfg["plot"] = ren_in;
        cfg["dim"] = ren_dim;
        cfg["subcommand"] = "render";
        write_metadata(ren_out, 0, cfg);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        std::cerr << "pbif: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
    try {
        return run(args);
    } catch (const std::exception& e) {
        std::cerr << "pbif: " << e.what() << '\n';
        return 1;
    }
}

int dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args);
}

void render_svg(const std::filesystem::path& plot_csv, int dim,
                const std::filesystem::path& out) {
    const auto plot = read_plot_csv(plot_csv);
    const auto& m = plot.matrix(dim);
    const std::size_t cols = plot.parameters.size(), rows = plot.levels.size();

    // Discrete palette; values beyond the palette cycle.
    static const char* palette[] = {"#30123b", "#2fb2f4", "#a2fc3c", "#fb7e21", "#7a0403",
                                    "#c7519c", "#1fa187"};
    constexpr int n_colors = 7;

    const double cell_w = 14.0, cell_h = 8.0, margin = 42.0;
    const double width = margin * 2 + cell_w * cols, height = margin * 2 + cell_h * rows;

    std::ofstream svg(out, std::ios::binary);
    if (!svg) throw std::runtime_error("cannot open for writing: " + out.string());
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Levels increase upward; parameters left to right.
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < rows; ++k) {
            int v = m[j][k];
            const char* color = palette[((v % n_colors) + n_colors) % n_colors];
            double x = margin + j * cell_w;
            double y = margin + (rows - 1 - k) * cell_h;
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
                << "\" height=\"" << cell_h << "\" fill=\"" << color << "\"/>\n";
        }

    svg << "<text x=\"" << margin + cols * cell_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">h</text>\n";
    svg << "<text x=\"14\" y=\"" << margin + rows * cell_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\">L</text>\n";
    svg << "<text x=\"" << margin << "\" y=\"" << height - 24
        << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(plot.parameters.front())
        << "</text>\n";
    svg << "<text x=\"" << margin + cols * cell_w << "\" y=\"" << height - 24
        << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(plot.parameters.back())
        << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << margin + rows * cell_h
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(plot.levels.front())
        << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 8
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(plot.levels.back())
        << "</text>\n";
    svg << "<text x=\"" << margin + cols * cell_w / 2 << "\" y=\"" << margin - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">H" << dim << "</text>\n";
    svg << "</svg>\n";
}

}  // namespace pbif
