#include "chenflow/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "chenflow/brownian.hpp"
#include "chenflow/clifford.hpp"
#include "chenflow/flows.hpp"
#include "chenflow/heat_kernel.hpp"
#include "chenflow/output.hpp"
#include "chenflow/signature.hpp"
#include "chenflow/stats.hpp"

namespace chenflow::cli {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open input file '" + path + "'");
    return in;
}

// "A:B:N" -> N log-spaced points from A to B; "dyadic:P:Q" -> 2^-P .. 2^-Q.
std::vector<double> parse_tgrid(const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    std::vector<double> grid;
    if (parts.size() == 3 && parts[0] == "dyadic") {
        const int p = std::stoi(parts[1]);
        const int q = std::stoi(parts[2]);
        for (int e = std::min(p, q); e <= std::max(p, q); ++e) grid.push_back(std::pow(2.0, -e));
    } else if (parts.size() == 3) {
        const double a = parse_scalar<double>(parts[0]);
        const double b = parse_scalar<double>(parts[1]);
        const int n = std::stoi(parts[2]);
        if (n < 2 || a <= 0 || b <= 0) throw config_error("tgrid needs n >= 2 positive bounds");
        for (int i = 0; i < n; ++i)
            grid.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1)));
    } else {
        throw config_error("tgrid must be 'A:B:N' or 'dyadic:P:Q'");
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

void emit(const std::string& out_base, const std::string& csv,
          const nlohmann::ordered_json& summary, const std::string& format) {
    if (out_base.empty()) {
        if (format == "json")
            std::cout << summary.dump(2) << "\n";
        else
            std::cout << csv;
        return;
    }
    if (format == "csv" || format == "both") write_file(out_base + ".csv", csv);
    if (format == "json" || format == "both")
        write_file(out_base + ".json", summary.dump(2) + "\n");
}

// ---------------------------------------------------------------- sig

int run_sig(const std::string& path_file, int degree, const std::string& grading_name,
            bool with_log, bool with_lambda, const std::string& out, const std::string& format) {
    const Grading grading =
        grading_name == "length" ? Grading::length : Grading::scaling;
    auto in = open_input(path_file);
    const PiecewiseLinearPath<Rat> path = parse_path<Rat>(in);
    const TensorSeries<Rat> sig = path_signature(path, degree, grading);

    ConfigEcho config{{"path", path_file},
                      {"degree", std::to_string(degree)},
                      {"grading", grading_name},
                      {"log", with_log ? "true" : "false"},
                      {"lambda", with_lambda ? "true" : "false"}};
    nlohmann::ordered_json summary = config_json("sig", config);
    std::string text;
    text += "# version=" + version_string() + "\n";
    text += "# signature degree=" + std::to_string(degree) + " grading=" + grading_name + "\n";
    text += serialize(sig);
    nlohmann::ordered_json jsig;
    for (const auto& [w, c] : sig.coefficients()) jsig[word_to_string(w)] = scalar_to_string(c);
    summary["signature"] = jsig;
    if (with_log) {
        const TensorSeries<Rat> logsig = ts_log(sig);
        text += "# log-signature\n";
        text += serialize(logsig);
        nlohmann::ordered_json jlog;
        for (const auto& [w, c] : logsig.coefficients())
            jlog[word_to_string(w)] = scalar_to_string(c);
        summary["log_signature"] = jlog;
    }
    if (with_lambda) {
        const auto lambda = chen_strichartz_coeffs(sig, degree);
        text += "# lambda\n";
        for (const auto& [w, c] : lambda)
            text += word_to_string(w) + " : " + scalar_to_string(c) + "\n";
        nlohmann::ordered_json jl;
        for (const auto& [w, c] : lambda) jl[word_to_string(w)] = scalar_to_string(c);
        summary["lambda"] = jl;
    }
    if (out.empty()) {
        if (format == "json")
            std::cout << summary.dump(2) << "\n";
        else
            std::cout << text;
    } else {
        write_file(out, format == "json" ? summary.dump(2) + "\n" : text);
    }
    return 0;
}

// ---------------------------------------------------------------- bch

int run_bch(const std::string& vectors_file, int degree, const std::string& out,
            const std::string& format) {
    auto in = open_input(vectors_file);
    std::vector<std::vector<Rat>> ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<Rat> y;
        std::string tok;
        while (ls >> tok) y.push_back(parse_scalar<Rat>(tok));
        ys.push_back(std::move(y));
    }
    if (ys.empty()) throw config_error("vectors file is empty");
    const int alphabet = static_cast<int>(ys[0].size()) - 1;
    for (const auto& y : ys)
        if (static_cast<int>(y.size()) != alphabet + 1)
            throw config_error("all vectors must have the same length d+1");
    const LieSeries<Rat> series = bch_dynkin(ys, alphabet, degree);

    ConfigEcho config{{"vectors", vectors_file},
                      {"degree", std::to_string(degree)},
                      {"factors", std::to_string(ys.size())}};
    nlohmann::ordered_json summary = config_json("bch", config);
    std::string text;
    text += "# version=" + version_string() + "\n";
    nlohmann::ordered_json jc;
    for (const auto& [w, c] : series.coefficients()) {
        text += word_to_string(w) + " : " + scalar_to_string(c) + "\n";
        jc[word_to_string(w)] = scalar_to_string(c);
    }
    summary["lie_series"] = jc;
    if (out.empty()) {
        if (format == "json")
            std::cout << summary.dump(2) << "\n";
        else
            std::cout << text;
    } else {
        write_file(out, format == "json" ? summary.dump(2) + "\n" : text);
    }
    return 0;
}

// ---------------------------------------------------------------- moments

int run_moments(int dim, double t, int degree, std::size_t samples, int level,
                std::uint64_t seed, int workers, const std::string& out,
                const std::string& format) {
    const McSignature mc = expected_signature_mc(dim, t, degree, samples, level, seed, workers);
    ConfigEcho config{{"dim", std::to_string(dim)},
                      {"time", format_double(t)},
                      {"degree", std::to_string(degree)},
                      {"samples", std::to_string(samples)},
                      {"level", std::to_string(level)},
                      {"seed", std::to_string(seed)}};
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (int w = 0; w < mc.table->size(); ++w) {
        const Word& word = mc.table->word(w);
        const double exact = stratonovich_moment<double>(word, t);
        const double diff = mc.mean[w] - exact;
        const double z = diff == 0.0 ? 0.0 : diff / mc.std_error[w];
        rows.push_back({word_to_string(word), format_double(mc.mean[w]),
                        format_double(mc.std_error[w]), format_double(exact),
                        format_double(z)});
        nlohmann::ordered_json r;
        r["word"] = word_to_string(word);
        r["estimate"] = mc.mean[w];
        r["std_error"] = mc.std_error[w];
        r["exact"] = exact;
        r["z_score"] = z;
        jrows.push_back(r);
    }
    const std::string csv = csv_artifact("moments", config,
                                         {"word", "estimate", "std_error", "exact", "z_score"},
                                         rows);
    nlohmann::ordered_json summary = config_json("moments", config);
    summary["rows"] = jrows;
    emit(out, csv, summary, format);
    return 0;
}

// ---------------------------------------------------------------- castell

Polynomial<double> default_quartic(int n) {
    Polynomial<double> out(n);
    for (int i = 1; i <= n; ++i) {
        Polynomial<double> xi = Polynomial<double>::variable(n, i);
        out += xi * xi * xi * xi;
        for (int j = i + 1; j <= n; ++j) {
            Polynomial<double> xj = Polynomial<double>::variable(n, j);
            out += xi * xi * xj * xj;
        }
    }
    return out;
}

int run_castell(const std::string& system_file, const std::string& mode, int order,
                const std::string& tgrid, std::size_t samples, int level, std::uint64_t seed,
                int workers, double tol, const std::string& observable_expr,
                const std::string& out, const std::string& format) {
    auto in = open_input(system_file);
    const DrivenSystem<double> system = to_double_system(parse_system<Rat>(in));
    ExperimentConfig config;
    config.castell_degree = order;
    config.t_grid = parse_tgrid(tgrid);
    config.samples = samples;
    config.level = level;
    config.seed = seed;
    config.workers = workers;
    config.ode.rel_tol = tol;
    config.ode.abs_tol = tol * 1e-2;

    ErrorTable table;
    if (mode == "strong") {
        table = strong_error_experiment(system, config);
    } else if (mode == "weak") {
        Polynomial<double> observable =
            observable_expr.empty()
                ? default_quartic(system.state_dimension())
                : parse_polynomial<double>(observable_expr, system.state_dimension());
        table = weak_error_experiment(system, observable, config);
    } else {
        throw config_error("castell mode must be strong or weak");
    }

    ConfigEcho echo{{"system", system_file},
                    {"mode", mode},
                    {"order", std::to_string(order)},
                    {"tgrid", tgrid},
                    {"samples", std::to_string(samples)},
                    {"level", std::to_string(level)},
                    {"seed", std::to_string(seed)},
                    {"tol", format_double(tol)},
                    {"observable", observable_expr}};
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const ErrorRow& r : table.rows) {
        rows.push_back({format_double(r.t), format_double(r.error), format_double(r.std_error)});
        nlohmann::ordered_json jr;
        jr["t"] = r.t;
        jr["error"] = r.error;
        jr["std_error"] = r.std_error;
        jrows.push_back(jr);
    }
    const std::string csv = csv_artifact("castell", echo, {"t", "error", "stderr"}, rows);
    nlohmann::ordered_json summary = config_json("castell", echo);
    summary["rows"] = jrows;
    summary["fitted_slope"] = table.fitted_slope;
    summary["slope_std_error"] = table.slope_std_error;
    summary["slope_ci95"] = {table.fitted_slope - 1.96 * table.slope_std_error,
                             table.fitted_slope + 1.96 * table.slope_std_error};
    summary["theory_slope"] = 0.5 * (order + 1);
    emit(out, csv, summary, format);
    return 0;
}

// ---------------------------------------------------------------- heat

int run_heat(const std::string& omega_name, int dim, const std::string& tgrid,
             const std::string& mode, std::size_t samples, int level, std::uint64_t seed,
             int workers, const std::string& out, const std::string& format) {
    StructureConstants omega = [&] {
        if (omega_name == "zero") return StructureConstants::zero(dim);
        if (omega_name == "su2-epsilon") return StructureConstants::su2_epsilon();
        auto in = open_input(omega_name);
        return StructureConstants::parse(in, dim);
    }();
    const int d = omega.dimension();
    const std::vector<double> grid = parse_tgrid(tgrid);
    const bool with_mc = mode == "mc" || mode == "both";

    const A1Check check = a1_expansion_check(omega, grid);
    std::vector<std::vector<std::vector<double>>> mc_samples;
    if (with_mc) mc_samples = tangent_samples_on_grid(omega, grid, level, samples, seed, workers);

    ConfigEcho echo{{"omega", omega_name},
                    {"dim", std::to_string(d)},
                    {"tgrid", tgrid},
                    {"mode", mode},
                    {"samples", std::to_string(samples)},
                    {"level", std::to_string(level)},
                    {"seed", std::to_string(seed)}};
    std::vector<std::string> columns{"t", "q", "normalized"};
    if (with_mc) {
        columns.push_back("mc_density");
        columns.push_back("mc_normalized");
    }
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    const std::vector<double> origin(d, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double q = check.normalized[i] * std::pow(2 * std::numbers::pi * t, -0.5 * d);
        std::vector<std::string> row{format_double(t), format_double(q),
                                     format_double(check.normalized[i])};
        nlohmann::ordered_json jr;
        jr["t"] = t;
        jr["q"] = q;
        jr["normalized"] = check.normalized[i];
        if (with_mc) {
            const auto bw = silverman_bandwidths(mc_samples[i], 0.5);
            const KdeRefined kde = kde_density_refined(mc_samples[i], origin, bw);
            const double mcn = kde.value * std::pow(2 * std::numbers::pi * t, 0.5 * d);
            row.push_back(format_double(kde.value));
            row.push_back(format_double(mcn));
            jr["mc_density"] = kde.value;
            jr["mc_normalized"] = mcn;
            jr["mc_density_coarse"] = kde.coarse;
        }
        rows.push_back(row);
        jrows.push_back(jr);
    }
    const std::string csv = csv_artifact("heat", echo, columns, rows);
    nlohmann::ordered_json summary = config_json("heat", echo);
    summary["rows"] = jrows;
    summary["fitted_slope"] = check.fitted_slope;
    summary["slope_std_error"] = check.slope_std_error;
    summary["expected_slope"] = check.expected_slope;
    summary["sum_omega_squared"] = omega.sum_of_squares();
    emit(out, csv, summary, format);
    return 0;
}

// ---------------------------------------------------------------- gauss-bonnet

int run_gauss_bonnet(const std::string& model, const std::string& curvature_file, int dim,
                     double radius, const std::string& out, const std::string& format) {
    ConfigEcho echo{{"model", model},
                    {"curvature", curvature_file},
                    {"dim", std::to_string(dim)},
                    {"radius", format_double(radius)}};
    nlohmann::ordered_json summary = config_json("gauss-bonnet", echo);
    if (!model.empty()) {
        const ModelSpace space = [&] {
            if (model == "sphere-d2") return ModelSpace::sphere_d2;
            if (model == "sphere-d4") return ModelSpace::sphere_d4;
            if (model == "flat-torus-d2") return ModelSpace::flat_torus_d2;
            throw config_error("model must be sphere-d2, sphere-d4 or flat-torus-d2");
        }();
        const GaussBonnetResult result = gauss_bonnet_model(space, radius);
        summary["dimension"] = result.dimension;
        summary["sectional_curvature"] = result.sectional_curvature;
        summary["omega"] = result.omega;
        summary["supertrace_side"] = result.supertrace_side;
        summary["discrepancy"] = result.discrepancy;
        summary["volume_analytic"] = result.volume_analytic;
        summary["volume_quadrature"] = result.volume_quadrature;
        summary["chi"] = result.chi;
        summary["convention"] = result.convention;
    } else if (!curvature_file.empty()) {
        auto in = open_input(curvature_file);
        const CurvatureTensor<double> r = parse_curvature<double>(in, dim);
        const ChernIdentity identity = local_chern_identity_check(r);
        summary["dimension"] = dim;
        summary["omega"] = identity.euler_side;
        summary["supertrace_side"] = identity.supertrace_side;
        summary["discrepancy"] = identity.discrepancy;
    } else {
        throw config_error("gauss-bonnet needs --model or --curvature");
    }
    if (out.empty())
        std::cout << summary.dump(2) << "\n";
    else
        write_file(out, summary.dump(2) + "\n");
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Chen-series machinery: signatures, flows, heat kernels, Gauss-Bonnet"};
    app.require_subcommand(1);

    // shared flags
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
    int level = 10;
    int degree = 4;
    int workers = 0;
    double tol = 1e-10;
    std::string out, format = "both";

    auto add_common = [&](CLI::App* cmd, bool mc) {
        cmd->add_option("--out", out, "output base path (omit for stdout)");
        cmd->add_option("--format", format, "csv, json or both")
            ->check(CLI::IsMember({"csv", "json", "both"}));
        if (mc) {
            cmd->add_option("--seed", seed, "RNG seed");
            cmd->add_option("--samples", samples, "Monte Carlo sample count");
            cmd->add_option("--level", level, "dyadic refinement level (2^level segments)");
            cmd->add_option("--workers", workers, "worker threads (0 = auto)");
        }
    };

    // sig
    auto* sig = app.add_subcommand("sig", "signature / log-signature of a path file");
    std::string path_file, grading_name = "scaling";
    bool with_log = false, with_lambda = false;
    sig->add_option("--path", path_file, "path file")->required();
    sig->add_option("--degree", degree, "truncation degree")->required();
    sig->add_option("--grading", grading_name, "scaling or length")
        ->check(CLI::IsMember({"scaling", "length"}));
    sig->add_flag("--log", with_log, "also emit the log-signature");
    sig->add_flag("--lambda", with_lambda, "also emit the bracket coefficients");
    add_common(sig, false);

    // bch
    auto* bch = app.add_subcommand("bch", "Lie series of a product of exponentials");
    std::string vectors_file;
    bch->add_option("--vectors", vectors_file, "file with one vector per line")->required();
    bch->add_option("--degree", degree, "truncation degree")->required();
    add_common(bch, false);

    // moments
    auto* moments = app.add_subcommand("moments", "Brownian signature moments, exact vs MC");
    int dim = 2;
    double t = 1.0;
    moments->add_option("--dim", dim, "Brownian dimension");
    moments->add_option("--time", t, "time horizon");
    moments->add_option("--degree", degree, "truncation degree");
    add_common(moments, true);

    // castell
    auto* castell = app.add_subcommand("castell", "flow approximation error tables");
    std::string system_file, mode = "strong", tgrid = "dyadic:4:9", observable;
    int order = 2;
    castell->add_option("--system", system_file, "system definition file")->required();
    castell->add_option("--mode", mode, "strong or weak")
        ->check(CLI::IsMember({"strong", "weak"}));
    castell->add_option("--order", order, "truncation order N");
    castell->add_option("--tgrid", tgrid, "'A:B:N' log grid or 'dyadic:P:Q'");
    castell->add_option("--tol", tol, "ODE relative tolerance");
    castell->add_option("--observable", observable, "polynomial observable (weak mode)");
    add_common(castell, true);

    // heat
    auto* heat = app.add_subcommand("heat", "tangent-variable density q_t(0) and a1 slope");
    std::string omega_name = "su2-epsilon", heat_mode = "quadrature", heat_tgrid = "1e-3:1e-2:8";
    heat->add_option("--omega", omega_name, "zero, su2-epsilon, or a file");
    heat->add_option("--dim", dim, "dimension for zero/file presets");
    heat->add_option("--tgrid", heat_tgrid, "'A:B:N' log grid or 'dyadic:P:Q'");
    heat->add_option("--mode", heat_mode, "quadrature, mc or both")
        ->check(CLI::IsMember({"quadrature", "mc", "both"}));
    add_common(heat, true);

    // gauss-bonnet
    auto* gb = app.add_subcommand("gauss-bonnet", "Euler form, supertrace identity and chi");
    std::string model, curvature_file;
    double radius = 1.0;
    gb->add_option("--model", model, "sphere-d2, sphere-d4 or flat-torus-d2");
    gb->add_option("--curvature", curvature_file, "curvature tensor file");
    gb->add_option("--dim", dim, "dimension for curvature files");
    gb->add_option("--radius", radius, "model radius");
    add_common(gb, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sig->parsed())
            return run_sig(path_file, degree, grading_name, with_log, with_lambda, out, format);
        if (bch->parsed()) return run_bch(vectors_file, degree, out, format);
        if (moments->parsed())
            return run_moments(dim, t, degree, samples, level, seed, workers, out, format);
        if (castell->parsed())
            return run_castell(system_file, mode, order, tgrid, samples, level, seed, workers,
                               tol, observable, out, format);
        if (heat->parsed())
            return run_heat(omega_name, dim, heat_tgrid, heat_mode, samples, level, seed,
                            workers, out, format);
        if (gb->parsed())
            return run_gauss_bonnet(model, curvature_file, dim, radius, out, format);
        return 2;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace chenflow::cli
