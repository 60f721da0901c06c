// Command-line front end: scenario runner plus small stability utilities.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "ido/config.hpp"
#include "ido/csv.hpp"
#include "ido/plot.hpp"
#include "ido/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::size_t decimate = 1;
    bool plot = false;
};

std::string config_stem(const std::string& path) { return fs::path(path).stem().string(); }

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    std::cout << "wrote " << path.string() << "\n";
}

void emit_run(const RunOptions& opt, const std::string& stem, const ido::RunResult& result,
              const std::string& echo) {
    const fs::path dir(opt.out_dir);
    write_file(dir / (stem + ".csv"), [&](std::ostream& out) {
        ido::write_trace_csv(out, result.trace, result.metrics, echo, opt.decimate);
    });
    write_file(dir / (stem + "_metrics.txt"), [&](std::ostream& out) {
        ido::write_metrics_report(out, result.trace, result.metrics);
    });
    if (opt.plot)
        write_file(dir / (stem + ".svg"),
                   [&](std::ostream& out) { ido::write_trace_svg(out, result.trace); });
}

int run_scenario(const RunOptions& opt) {
    auto parsed = ido::parse_scenario_file(opt.config_path);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << "error: " << e << "\n";
        return 1;
    }
    const ido::ScenarioSpec& spec = *parsed.spec;
    const std::string echo = ido::scenario_to_json(spec).dump();
    const std::string stem = config_stem(opt.config_path);
    fs::create_directories(opt.out_dir);

    // Surface semantic observer problems before running.
    auto validation = ido::validate(spec.observer);
    if (!validation.ok()) {
        for (const auto& d : validation.diagnostics) std::cerr << "error: observer: " << d << "\n";
        return 1;
    }
    if (spec.scheme.dt > validation.config->suggested_max_dt())
        std::cerr << "warning: dt=" << spec.scheme.dt << " exceeds the suggested stiffness cap "
                  << validation.config->suggested_max_dt() << " (epsilon^(n+1)/10)\n";

    switch (spec.tag) {
        case ido::ScenarioTag::SignalTracking: {
            const auto result = ido::run_signal_tracking(spec);
            emit_run(opt, stem, result, echo);
            if (result.trace.diverged) {
                std::cerr << "error: integration diverged at t=" << result.trace.diverged_at << "\n";
                return 1;
            }
            return 0;
        }
        case ido::ScenarioTag::PidClosedLoop: {
            const auto result = ido::run_pid_closed_loop(spec);
            emit_run(opt, stem, result, echo);
            if (result.trace.diverged) {
                std::cerr << "error: integration diverged at t=" << result.trace.diverged_at << "\n";
                return 1;
            }
            return 0;
        }
        case ido::ScenarioTag::DriftStudy: {
            const auto report = ido::run_drift_study(spec);
            emit_run(opt, stem, report.run, echo);
            write_file(fs::path(opt.out_dir) / (stem + "_drift_report.txt"),
                       [&](std::ostream& out) { ido::write_drift_report(out, report); });
            return report.run.trace.diverged ? 1 : 0;
        }
        case ido::ScenarioTag::EpsilonSweep: {
            const auto report = ido::run_epsilon_sweep(spec);
            bool any_invalid = false;
            for (const auto& entry : report.entries) {
                if (!entry.result) {
                    any_invalid = true;
                    for (const auto& d : entry.diagnostics)
                        std::cerr << "error: epsilon=" << entry.epsilon << ": " << d << "\n";
                    continue;
                }
                RunOptions member = opt;
                emit_run(member, stem + "_eps" + ido::format_number(entry.epsilon), *entry.result, echo);
            }
            write_file(fs::path(opt.out_dir) / (stem + "_sweep_report.txt"),
                       [&](std::ostream& out) { ido::write_sweep_report(out, report); });
            return any_invalid ? 1 : 0;
        }
    }
    return 1;
}

int check_config(const std::string& path) {
    auto parsed = ido::parse_scenario_file(path);
    bool ok = parsed.ok();
    for (const auto& e : parsed.errors) std::cout << "config error: " << e << "\n";
    if (parsed.ok()) {
        const auto validation = ido::validate(parsed.spec->observer);
        for (const auto& d : validation.diagnostics) std::cout << "observer error: " << d << "\n";
        ok = ok && validation.ok();
        if (validation.ok()) {
            const auto& chain = validation.config->chain();
            std::cout << "observer ok: n=" << validation.config->n() << " p=" << validation.config->p()
                      << " exponent chain:";
            for (double a : chain.alphas()) std::cout << " " << ido::format_number(a);
            std::cout << "\n";
        }
    }
    std::cout << (ok ? "config ok" : "config invalid") << "\n";
    return ok ? 0 : 1;
}

int print_alpha_chain(int n, double alpha_n) {
    try {
        const ido::ExponentChain chain(n, alpha_n);
        for (int i = 1; i <= chain.order(); ++i)
            std::cout << "alpha_" << i << " = " << ido::format_number(chain.alpha(i)) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int print_routh(const std::vector<double>& coeffs) {
    try {
        const auto table = ido::routh_hurwitz(coeffs);
        std::cout << "first column:";
        for (double v : table.first_column) std::cout << " " << ido::format_number(v);
        std::cout << "\n";
        if (!table.note.empty()) std::cout << "note: " << table.note << "\n";
        std::cout << "verdict: " << ido::to_string(table.verdict) << "\n";
        return table.verdict == ido::StabilityVerdict::Hurwitz ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral-derivative observer toolkit"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run a scenario config and write CSV/metrics");
    run->add_option("config", run_opt.config_path, "scenario config file (JSON)")->required();
    run->add_option("--out", run_opt.out_dir, "output directory (default .)");
    run->add_option("--decimate", run_opt.decimate, "keep every m-th CSV row")->check(CLI::PositiveNumber);
    run->add_flag("--plot", run_opt.plot, "also emit an SVG plot");

    std::string check_path;
    auto* check = app.add_subcommand("check-config", "validate a config and print all diagnostics");
    check->add_option("config", check_path, "scenario config file (JSON)")->required();

    int alpha_n_order = 0;
    double alpha_terminal = 0.0;
    auto* alpha = app.add_subcommand("alpha", "print the exponent chain for (n, alpha_n)");
    alpha->add_option("n", alpha_n_order, "system order")->required();
    alpha->add_option("alpha_n", alpha_terminal, "terminal exponent in (0,1]")->required();

    std::vector<double> routh_coeffs;
    auto* routh = app.add_subcommand("routh", "Routh table and Hurwitz verdict (descending coefficients)");
    routh->add_option("coefficients", routh_coeffs, "polynomial coefficients, leading first")
        ->required()
        ->expected(-2);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_scenario(run_opt);
        if (check->parsed()) return check_config(check_path);
        if (alpha->parsed()) return print_alpha_chain(alpha_n_order, alpha_terminal);
        if (routh->parsed()) return print_routh(routh_coeffs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
