#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "cddo/harness.hpp"

namespace cddo::cli {

namespace {

Interval parse_interval(const std::string& text, const char* name) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError(fmt::format("--{} expects MIN:MAX, got '{}'", name, text));
    }
    const auto lo = parse_real(std::string_view(text).substr(0, colon));
    const auto hi = parse_real(std::string_view(text).substr(colon + 1));
    if (!lo || !hi) throw UsageError(fmt::format("--{} expects MIN:MAX, got '{}'", name, text));
    return Interval{*lo, *hi};
}

std::vector<suite::FunctionId> parse_functions(const std::string& text) {
    try {
        return suite::parse_function_list(text);
    } catch (const suite::LookupError& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

CliConfig parse_args(int argc, const char* const* argv) {
    CliConfig cfg;
    CLI::App app{"Child Drawing Development Optimization: runs, experiments and rankings",
                 "cddo"};
    app.option_defaults()->always_capture_default();

    std::string mode;
    std::string function;
    std::string functions;
    std::string format = "csv";
    std::string output;
    std::string fixture;
    std::string results;
    std::string high = "0.6:1";
    std::string low = "0:0.5";
    auto& opt = cfg.optimizer;

    app.add_option("mode", mode, "run | experiment | rank")
        ->required()
        ->check(CLI::IsMember({"run", "experiment", "rank"}));
    app.add_option("--function", function, "Function id for run mode, e.g. F1");
    app.add_option("--functions", functions, "Function list for experiments, e.g. F1-F19");
    app.add_option("--dim", cfg.dim, "Dimension of F1-F13")->check(CLI::Range(2, 100000));
    app.add_option("--agents", opt.agents, "Number of drawings")->check(CLI::Range(2, 1000000));
    app.add_option("--iterations", opt.iterations, "Iterations per run")
        ->check(CLI::Range(1, 100000000));
    app.add_option("--cr", opt.cr, "Creativity rate")->check(CLI::PositiveNumber);
    app.add_option("--gr-tolerance", opt.gr_tolerance,
                   "Accepted distance from the golden ratio")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--pm-capacity", opt.pm_capacity, "Pattern memory size")
        ->check(CLI::Range(1, 1000000));
    app.add_option("--lr-sr-high", high, "HIGH skill/level interval MIN:MAX");
    app.add_option("--lr-sr-low", low, "LOW skill/level interval MIN:MAX");
    app.add_option("--trials", cfg.trials, "Trials per function")->check(CLI::Range(1, 1000000));
    app.add_option("--seed", opt.seed, "Seed (base seed for experiments)");
    app.add_option("--threads", cfg.threads, "Worker threads for experiments (0 = all cores)");
    app.add_option("--output", output, "Output path (stdout when omitted)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--convergence-log", cfg.convergence_log,
                 "Also write per-iteration global-best traces");
    app.add_option("--fixture", fixture, "Published averages table (rank mode)");
    app.add_option("--results", results, "Own summary CSV (rank mode)");
    app.add_option("--label", cfg.label, "Algorithm name for own results (rank mode)");
    app.set_config("--config", "", "Flat key = value file; keys are flag names without dashes");
    app.allow_config_extras(CLI::config_extras_mode::error);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::ConfigError& e) {
        throw UsageError(fmt::format("config file: {}", e.what()));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.mode = mode == "run" ? Mode::Run : mode == "experiment" ? Mode::Experiment : Mode::Rank;
    cfg.format = format == "json" ? report::Format::Json : report::Format::Csv;
    opt.lr_sr_high = parse_interval(high, "lr-sr-high");
    opt.lr_sr_low = parse_interval(low, "lr-sr-low");
    if (!output.empty()) cfg.output = output;
    if (!fixture.empty()) cfg.fixture = fixture;
    if (!results.empty()) cfg.results = results;

    if (!function.empty() && !functions.empty()) {
        throw UsageError("use either --function or --functions, not both");
    }
    const std::string& selection = function.empty() ? functions : function;
    if (!selection.empty()) cfg.functions = parse_functions(selection);

    switch (cfg.mode) {
        case Mode::Run:
            if (cfg.functions.size() != 1) {
                throw UsageError("run mode needs exactly one function (--function F1)");
            }
            break;
        case Mode::Experiment:
            if (cfg.functions.empty()) {
                throw UsageError("experiment mode needs --functions (e.g. F1-F19)");
            }
            break;
        case Mode::Rank:
            if (!cfg.fixture || !cfg.results) {
                throw UsageError("rank mode needs --fixture and --results");
            }
            break;
    }
    if (cfg.convergence_log && !cfg.output) {
        throw UsageError("--convergence-log needs --output to derive the log path");
    }
    try {
        opt.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

CliConfig parse_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("cddo");
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string convergence_path(const std::string& output, report::Format format,
                             std::optional<suite::FunctionId> function) {
    std::filesystem::path path(output);
    std::string stem = path.stem().string();
    if (function) stem += "_" + suite::to_string(*function);
    stem += "_convergence";
    stem += format == report::Format::Json ? ".json" : ".csv";
    return (path.parent_path() / stem).string();
}

namespace {

void emit_summary(const CliConfig& cfg, std::span<const harness::SummaryRow> rows,
                  std::ostream& out) {
    if (cfg.output) {
        report::write_summary_file(*cfg.output, rows, cfg.format);
    } else {
        report::write_summary(out, rows, cfg.format);
    }
}

int run_single(const CliConfig& cfg, std::ostream& out) {
    const auto id = cfg.functions.front();
    const auto record = harness::run_trial(id, cfg.dim, cfg.optimizer, cfg.optimizer.seed);
    const std::vector<RunRecord> records{record};
    const std::vector<harness::SummaryRow> rows{harness::summarize(id, records)};
    emit_summary(cfg, rows, out);
    if (cfg.convergence_log) {
        report::write_convergence_file(convergence_path(*cfg.output, cfg.format), record.trace,
                                       cfg.format);
    }
    return kSuccess;
}

int run_experiment(const CliConfig& cfg, std::ostream& out) {
    harness::ExperimentPlan plan;
    plan.function_ids = cfg.functions;
    plan.trials = cfg.trials;
    plan.config = cfg.optimizer;
    plan.base_seed = cfg.optimizer.seed;
    plan.dim = cfg.dim;
    plan.threads = cfg.threads;
    const auto rows = harness::run_experiment(plan);
    emit_summary(cfg, rows, out);
    if (cfg.convergence_log) {
        for (const auto& row : rows) {
            report::write_convergence_file(
                convergence_path(*cfg.output, cfg.format, row.function_id), row.mean_trace,
                cfg.format);
        }
    }
    return kSuccess;
}

int run_rank(const CliConfig& cfg, std::ostream& out) {
    std::ifstream fixture_in(*cfg.fixture);
    if (!fixture_in) throw report::IoError(fmt::format("cannot open '{}'", *cfg.fixture));
    auto table = harness::parse_average_table(fixture_in);
    const auto own = report::read_summary_csv(*cfg.results);

    std::set<suite::FunctionId> covered;
    for (const auto& rec : own) covered.insert(rec.function_id);
    std::vector<std::string> missing;
    for (const auto& [id, values] : table.rows) {
        if (!covered.contains(id)) missing.push_back(suite::to_string(id));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw harness::InputError(fmt::format("own results do not cover: {}", list));
    }
    if (std::find(table.algorithms.begin(), table.algorithms.end(), cfg.label) !=
        table.algorithms.end()) {
        throw harness::InputError(
            fmt::format("fixture already has a column named '{}'", cfg.label));
    }
    for (const auto& rec : own) {
        if (table.rows.contains(rec.function_id)) table.set(rec.function_id, cfg.label, rec.avg);
    }

    const auto groups = harness::standard_groups();
    const auto ranked = harness::rank_algorithms(table, groups, cfg.label);
    report::print_rank_table(out, ranked);
    if (cfg.output) {
        std::ofstream file(*cfg.output, std::ios::binary | std::ios::trunc);
        if (!file) throw report::IoError(fmt::format("cannot open '{}' for writing", *cfg.output));
        report::write_rank_table(file, ranked, cfg.format);
        file.flush();
        if (!file) throw report::IoError(fmt::format("failed writing '{}'", *cfg.output));
    }
    return kSuccess;
}

}  // namespace

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.mode) {
            case Mode::Run: return run_single(cfg, out);
            case Mode::Experiment: return run_experiment(cfg, out);
            case Mode::Rank: return run_rank(cfg, out);
        }
    } catch (const report::IoError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kIoError;
    } catch (const harness::InputError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    }
    return kUsageError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const UsageError& e) {
        fmt::print(err, "usage error: {}\nRun with --help for usage.\n", e.what());
        return kUsageError;
    }
    if (cfg.help) {
        out << cfg.help_text;
        return kSuccess;
    }
    return execute(cfg, out, err);
}

}  // namespace cddo::cli
