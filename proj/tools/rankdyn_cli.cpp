// Command-line front end: ingest ranking CSV, fit rank-distribution models,
// compute rank-dynamics measures, and run the random-walk generator.
//
// Exit codes: 0 ok, 2 input/validation error, 3 fit failure,
// 4 not enough snapshots.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rankdyn/csv.hpp"
#include "rankdyn/dynamics.hpp"
#include "rankdyn/gof.hpp"
#include "rankdyn/json_io.hpp"
#include "rankdyn/models.hpp"
#include "rankdyn/svg.hpp"
#include "rankdyn/walker.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFitFailure = 3;
constexpr int kExitTooFewSnapshots = 4;

int exit_code_for(const rankdyn::Error& e) {
    switch (e.kind()) {
        case rankdyn::ErrorKind::FitDiverged:
        case rankdyn::ErrorKind::InsufficientData:
        case rankdyn::ErrorKind::NonPositiveScore:
            return kExitFitFailure;
        case rankdyn::ErrorKind::TooFewSnapshots:
            return kExitTooFewSnapshots;
        default:
            return kExitValidation;
    }
}

rankdyn::RankingSeries load_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    return rankdyn::parse_ranking_csv(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << content;
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

// Snapshot selector: first | last | exact time label | 0-based index.
std::size_t select_snapshot(const rankdyn::RankingSeries& series, const std::string& selector) {
    if (selector == "first") return 0;
    if (selector == "last") return series.size() - 1;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series.snapshots[i].time_label == selector) return i;
    try {
        std::size_t pos = 0;
        long idx = std::stol(selector, &pos);
        if (pos == selector.size() && idx >= 0 && static_cast<std::size_t>(idx) < series.size())
            return static_cast<std::size_t>(idx);
    } catch (...) {
    }
    throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                         "snapshot selector '" + selector + "' matches nothing");
}

std::vector<rankdyn::ModelId> parse_model_list(const std::string& list) {
    std::vector<rankdyn::ModelId> models;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto model = rankdyn::model_from_name(item);
        if (!model)
            throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                                 "unknown model '" + item + "' (expected m1..m5)");
        models.push_back(*model);
    }
    if (models.empty())
        throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument, "empty model list");
    return models;
}

void emit_svg(const rankdyn::svg::Chart& chart, const std::filesystem::path& path) {
    std::ostringstream out;
    chart.render(out);
    write_text_file(path.string(), out.str());
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitArgs {
    std::string input;
    std::string time_selector = "last";
    std::string models = "m1,m2,m3,m4,m5";
    int top = 0;
    int n_bootstrap = 200;
    int sample_size = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    std::string svg_dir;
};

int run_fit(const FitArgs& args) {
    auto models = parse_model_list(args.models);
    rankdyn::RankingSeries series = load_series(args.input);
    if (args.top > 0) series = rankdyn::truncate_top_n(series, static_cast<std::size_t>(args.top));
    std::size_t snap_idx = select_snapshot(series, args.time_selector);
    const rankdyn::Snapshot& snap = series.snapshots[snap_idx];
    if (!snap.has_scores())
        throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                             "snapshot '" + snap.time_label +
                                 "' has no score column; fitting needs scores");

    // Zero scores cannot enter a log-space fit; keep the positive part.
    std::vector<rankdyn::RankScore> data;
    data.reserve(snap.depth());
    for (std::size_t i = 0; i < snap.depth(); ++i)
        if (snap.scores[i] > 0.0) data.push_back({static_cast<int>(i + 1), snap.scores[i]});
    if (data.empty())
        throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                             "snapshot '" + snap.time_label + "' has no positive scores");

    std::vector<rankdyn::DistributionFit> fits;
    for (rankdyn::ModelId model : models) {
        rankdyn::DistributionFit fit;
        fit.model = model;
        fit.params = rankdyn::fit_model(model, data);
        rankdyn::GofReport gof = rankdyn::ks_p_value(data, model, fit.params, args.n_bootstrap,
                                                     args.sample_size, args.seed, args.threads);
        fit.r_squared = gof.r_squared;
        fit.ks_statistic = gof.ks_statistic;
        fit.ks_p = gof.ks_p;
        fit.n_bootstrap = gof.n_bootstrap;
        fit.seed = gof.seed;
        fits.push_back(fit);
    }

    nlohmann::json report;
    report["metadata"] = {
        {"command", "fit"},        {"input", args.input},
        {"time", snap.time_label}, {"n", snap.depth()},
        {"t", series.size()},      {"points_used", data.size()},
        {"models", args.models},   {"bootstrap", args.n_bootstrap},
        {"sample_size", args.sample_size}, {"seed", args.seed},
        {"version", kVersion},
    };
    report["fits"] = nlohmann::json::array();
    for (const auto& fit : fits) report["fits"].push_back(rankdyn::to_json(fit));
    emit_json(report, args.out);

    if (!args.svg_dir.empty()) {
        std::filesystem::create_directories(args.svg_dir);
        rankdyn::svg::Chart chart;
        chart.title = "Rank distribution (" + snap.time_label + ")";
        chart.x_label = "rank k";
        chart.y_label = "score";
        chart.log_x = true;
        chart.log_y = true;
        rankdyn::svg::Series points;
        points.label = "data";
        points.color = "#1f77b4";
        points.line = false;
        for (const auto& rs : data)
            points.points.emplace_back(static_cast<double>(rs.rank), rs.score);
        chart.series.push_back(std::move(points));
        static const char* palette[] = {"#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
        for (std::size_t i = 0; i < fits.size(); ++i) {
            rankdyn::svg::Series curve;
            curve.label = rankdyn::model_name(fits[i].model);
            curve.color = palette[i % 5];
            for (const auto& rs : data) {
                double v = rankdyn::eval_model(fits[i].model, fits[i].params, rs.rank);
                if (v > 0.0) curve.points.emplace_back(static_cast<double>(rs.rank), v);
            }
            chart.series.push_back(std::move(curve));
        }
        emit_svg(chart, std::filesystem::path(args.svg_dir) / "rank_distribution.svg");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dynamics
// ---------------------------------------------------------------------------

struct DynamicsArgs {
    std::string input;
    int top = 0; // 0: use the minimum depth across snapshots
    std::string out;
    std::string csv_out;
    std::string svg_dir;
    std::string spaghetti_out;
};

void emit_dynamics_svgs(const rankdyn::DynamicsProfile& profile, const std::string& dir) {
    namespace svg = rankdyn::svg;
    std::filesystem::create_directories(dir);
    auto ranks_of = [&](const std::vector<double>& curve) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(curve.size());
        for (std::size_t k = 1; k <= curve.size(); ++k)
            pts.emplace_back(static_cast<double>(k), curve[k - 1]);
        return pts;
    };
    auto phi_curve = [&](const rankdyn::SigmoidFit& fit, std::size_t n) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(n);
        for (std::size_t k = 1; k <= n; ++k)
            pts.emplace_back(static_cast<double>(k), rankdyn::sigmoid_value(fit, k));
        return pts;
    };

    { // diversity + Phi
        svg::Chart chart;
        chart.title = "Rank diversity";
        chart.x_label = "rank k";
        chart.y_label = "d(k)";
        chart.log_x = true;
        chart.y_min = 0.0;
        chart.y_max = 1.0;
        chart.series.push_back({"d(k)", "#1f77b4", false, ranks_of(profile.diversity)});
        if (profile.sigmoid)
            chart.series.push_back(
                {"Phi fit", "#d62728", true, phi_curve(*profile.sigmoid, profile.n)});
        emit_svg(chart, std::filesystem::path(dir) / "diversity.svg");
    }
    { // change probability + its own Phi
        svg::Chart chart;
        chart.title = "Change probability";
        chart.x_label = "rank k";
        chart.y_label = "p(k)";
        chart.log_x = true;
        chart.y_min = 0.0;
        chart.y_max = 1.0;
        chart.series.push_back({"p(k)", "#2ca02c", false, ranks_of(profile.p_change)});
        try {
            rankdyn::SigmoidFit fit = rankdyn::fit_sigmoid(profile.p_change);
            chart.series.push_back({"Phi fit", "#d62728", true, phi_curve(fit, profile.n)});
        } catch (const rankdyn::Error&) {
            // constant curve: nothing to fit, plot the points alone
        }
        emit_svg(chart, std::filesystem::path(dir) / "change_probability.svg");
    }
    { // p(k) vs d(k)
        svg::Chart chart;
        chart.title = "Change probability vs rank diversity";
        chart.x_label = "d(k)";
        chart.y_label = "p(k)";
        chart.y_min = 0.0;
        chart.y_max = 1.0;
        svg::Series s{"(d, p) per rank", "#9467bd", false, {}};
        for (std::size_t k = 0; k < profile.n; ++k)
            s.points.emplace_back(profile.diversity[k], profile.p_change[k]);
        chart.series.push_back(std::move(s));
        emit_svg(chart, std::filesystem::path(dir) / "p_vs_d.svg");
    }
    { // entropy + complexity
        svg::Chart chart;
        chart.title = "Rank entropy and rank complexity";
        chart.x_label = "rank k";
        chart.y_label = "E(k), C(k)";
        chart.log_x = true;
        chart.y_min = 0.0;
        chart.y_max = 1.0;
        chart.series.push_back({"E(k)", "#d62728", false, ranks_of(profile.entropy)});
        chart.series.push_back({"C(k)", "#ff7f0e", false, ranks_of(profile.complexity)});
        emit_svg(chart, std::filesystem::path(dir) / "entropy_complexity.svg");
    }
    { // collapse: (log10 k - mu)/sigma against the unit normal CDF
        svg::Chart chart;
        chart.title = "Diversity collapse";
        chart.x_label = "(log10 k - mu) / sigma";
        chart.y_label = "d(k)";
        chart.y_min = 0.0;
        chart.y_max = 1.0;
        svg::Series pts{"collapsed d(k)", "#1f77b4", false, {}};
        if (profile.sigmoid) {
            for (std::size_t k = 1; k <= profile.n; ++k)
                pts.points.emplace_back(rankdyn::collapse_transform(k, *profile.sigmoid),
                                        profile.diversity[k - 1]);
        } else {
            for (std::size_t k = 1; k <= profile.n; ++k)
                pts.points.emplace_back(std::log10(static_cast<double>(k)),
                                        profile.diversity[k - 1]);
        }
        double z_lo = pts.points.front().first;
        double z_hi = pts.points.back().first;
        svg::Series ref{"unit normal CDF", "#d62728", true, {}};
        for (int i = 0; i <= 200; ++i) {
            double z = z_lo + (z_hi - z_lo) * static_cast<double>(i) / 200.0;
            ref.points.emplace_back(z, rankdyn::normal_cdf(z));
        }
        chart.series.push_back(std::move(pts));
        chart.series.push_back(std::move(ref));
        emit_svg(chart, std::filesystem::path(dir) / "collapse.svg");
    }
}

void emit_spaghetti_svg(const rankdyn::RankingSeries& series, const std::string& path) {
    namespace svg = rankdyn::svg;
    const std::size_t top = std::min<std::size_t>(series.depth(), 8);
    // Track every element that ever visits the top ranks.
    std::vector<rankdyn::ElementId> tracked;
    for (const auto& snap : series.snapshots)
        for (std::size_t i = 0; i < top; ++i) {
            const auto& id = snap.elements[i];
            if (std::find(tracked.begin(), tracked.end(), id) == tracked.end())
                tracked.push_back(id);
        }
    svg::Chart chart;
    chart.title = "Rank trajectories (top " + std::to_string(top) + ")";
    chart.x_label = "snapshot";
    chart.y_label = "rank";
    chart.invert_y = true;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    std::size_t color_idx = 0;
    for (const auto& id : tracked) {
        svg::Series s{id, palette[color_idx % 10], true, {}};
        ++color_idx;
        for (std::size_t t = 0; t < series.size(); ++t) {
            const auto& snap = series.snapshots[t];
            for (std::size_t i = 0; i < snap.depth(); ++i) {
                if (snap.elements[i] == id) {
                    s.points.emplace_back(static_cast<double>(t), static_cast<double>(i + 1));
                    break;
                }
            }
        }
        chart.series.push_back(std::move(s));
    }
    emit_svg(chart, path);
}

int run_dynamics(const DynamicsArgs& args) {
    rankdyn::RankingSeries series = load_series(args.input);
    std::size_t depth = args.top > 0 ? static_cast<std::size_t>(args.top) : series.depth();
    series = rankdyn::truncate_top_n(series, depth);
    rankdyn::DynamicsProfile profile = rankdyn::compute_dynamics(series);

    nlohmann::json report;
    report["metadata"] = {
        {"command", "dynamics"}, {"input", args.input}, {"n", profile.n},
        {"t", profile.t},        {"top", depth},        {"version", kVersion},
    };
    report["dynamics"] = rankdyn::to_json(profile);
    emit_json(report, args.out);

    if (!args.csv_out.empty()) {
        std::ostringstream out;
        rankdyn::write_dynamics_csv(profile, out);
        write_text_file(args.csv_out, out.str());
    }
    if (!args.svg_dir.empty()) emit_dynamics_svgs(profile, args.svg_dir);
    if (!args.spaghetti_out.empty()) emit_spaghetti_svg(series, args.spaghetti_out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::size_t n = 0;
    std::size_t t = 0;
    double sigma = -1.0;
    std::string calibrate_from;
    int top = 0;
    std::size_t replicates = 10;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    std::string report_out;
};

int run_simulate(const SimulateArgs& args) {
    double sigma = args.sigma;
    nlohmann::json report;
    bool have_report = false;

    std::size_t n = args.n;
    std::size_t t = args.t;
    if (!args.calibrate_from.empty()) {
        rankdyn::RankingSeries empirical = load_series(args.calibrate_from);
        std::size_t depth = args.top > 0 ? static_cast<std::size_t>(args.top) : empirical.depth();
        empirical = rankdyn::truncate_top_n(empirical, depth);
        rankdyn::DynamicsProfile profile = rankdyn::compute_dynamics(empirical);
        if (n == 0) n = profile.n;
        if (t == 0) t = profile.t;
        rankdyn::CalibrationResult calibration = rankdyn::calibrate_sigma(
            profile.diversity, profile.n, profile.t, args.replicates, args.seed, args.threads);
        sigma = calibration.sigma_hat_star;
        report["metadata"] = {
            {"command", "simulate"},
            {"calibrate_from", args.calibrate_from},
            {"n", n},
            {"t", t},
            {"replicates", args.replicates},
            {"seed", args.seed},
            {"version", kVersion},
        };
        report["calibration"] = rankdyn::to_json(calibration);
        have_report = true;
    } else {
        if (sigma < 0.0)
            throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                                 "simulate needs --sigma or --calibrate-from");
        if (n == 0 || t == 0)
            throw rankdyn::Error(rankdyn::ErrorKind::InvalidArgument,
                                 "simulate needs positive --n and --t");
    }

    rankdyn::WalkConfig config;
    config.n = n;
    config.t = t;
    config.sigma_hat = sigma;
    config.replicates = args.replicates;
    config.seed = args.seed;
    rankdyn::RankingSeries series = rankdyn::simulate(config);

    std::ostringstream csv;
    rankdyn::write_ranking_csv(series, csv);
    if (args.out.empty())
        std::cout << csv.str();
    else
        write_text_file(args.out, csv.str());

    if (have_report) emit_json(report, args.report_out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankdyn: rank-distribution fitting, rank-dynamics measures, and the "
                 "rank-proportional random-walk model"};
    app.require_subcommand(1);

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit models m1..m5 to one snapshot's scores");
    fit->add_option("--input", fit_args.input, "ranking CSV (time,rank,element,score)")->required();
    fit->add_option("--time", fit_args.time_selector, "snapshot: first|last|index|label");
    fit->add_option("--models", fit_args.models, "comma list of m1..m5");
    fit->add_option("--top", fit_args.top, "truncate to top N before fitting");
    fit->add_option("--bootstrap", fit_args.n_bootstrap, "bootstrap replicates for the KS index");
    fit->add_option("--sample-size", fit_args.sample_size, "bootstrap sample size");
    fit->add_option("--seed", fit_args.seed, "RNG seed");
    fit->add_option("--threads", fit_args.threads, "worker threads (output-invariant)");
    fit->add_option("--out", fit_args.out, "JSON report path (default stdout)");
    fit->add_option("--svg", fit_args.svg_dir, "directory for rank_distribution.svg");

    DynamicsArgs dyn_args;
    CLI::App* dynamics = app.add_subcommand("dynamics", "Rank-dynamics measures d, p, E, C, closure");
    dynamics->add_option("--input", dyn_args.input, "ranking CSV")->required();
    dynamics->add_option("--top", dyn_args.top, "truncate to top N (default: minimum depth)");
    dynamics->add_option("--out", dyn_args.out, "JSON report path (default stdout)");
    dynamics->add_option("--csv", dyn_args.csv_out, "tidy per-rank CSV (k,d,p,E,C)");
    dynamics->add_option("--svg", dyn_args.svg_dir, "directory for the five measure plots");
    dynamics->add_option("--spaghetti", dyn_args.spaghetti_out, "rank-trajectory SVG path");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate a random-walk ranking series");
    simulate->add_option("--n", sim_args.n, "number of elements");
    simulate->add_option("--t", sim_args.t, "number of snapshots");
    simulate->add_option("--sigma", sim_args.sigma, "noise amplitude sigma-hat");
    simulate->add_option("--calibrate-from", sim_args.calibrate_from,
                         "fit sigma-hat to this file's diversity curve first");
    simulate->add_option("--top", sim_args.top, "truncate calibration input to top N");
    simulate->add_option("--replicates", sim_args.replicates, "replicates per calibration step");
    simulate->add_option("--seed", sim_args.seed, "RNG seed");
    simulate->add_option("--threads", sim_args.threads, "worker threads (output-invariant)");
    simulate->add_option("--out", sim_args.out, "series CSV path (default stdout)");
    simulate->add_option("--report", sim_args.report_out, "calibration JSON path (default stdout)");

    try {
        app.parse(argc, argv);
        if (fit->parsed()) return run_fit(fit_args);
        if (dynamics->parsed()) return run_dynamics(dyn_args);
        if (simulate->parsed()) return run_simulate(sim_args);
        return kExitValidation;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const rankdyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
