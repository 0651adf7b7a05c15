#include "cddo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/core.h>

#include "cddo/optimizer.hpp"

namespace cddo::harness {

// Salt separating the F7 noise stream from the optimizer stream of a trial.
constexpr std::uint64_t kNoiseSalt = 0x6E6F697365ULL;

RunRecord run_trial(FunctionId id, std::size_t dim, const OptimizerConfig& config,
                    std::uint64_t seed) {
    const auto spec = suite::spec_of(id, dim);
    OptimizerConfig trial_config = config;
    trial_config.seed = seed;
    const auto objective = suite::make_objective(id, mix_seed(seed ^ kNoiseSalt));
    return optimize(objective, spec.space, trial_config);
}

SummaryRow summarize(FunctionId id, std::span<const RunRecord> records) {
    if (records.empty()) throw InputError("summarize: no trial records");
    SummaryRow row;
    row.function_id = id;
    row.single_trial = records.size() == 1;
    row.finals.reserve(records.size());
    for (const auto& r : records) row.finals.push_back(r.best_fitness);

    const auto n = static_cast<double>(records.size());
    double sum = 0.0;
    for (double v : row.finals) sum += v;
    row.avg = sum / n;
    if (!row.single_trial) {
        double ss = 0.0;
        for (double v : row.finals) ss += (v - row.avg) * (v - row.avg);
        row.stddev = std::sqrt(ss / (n - 1.0));
    }
    const auto [lo, hi] = std::minmax_element(row.finals.begin(), row.finals.end());
    row.best = *lo;
    row.worst = *hi;

    const std::size_t length = records.front().trace.size();
    row.mean_trace.assign(length, 0.0);
    for (const auto& r : records) {
        if (r.trace.size() != length) throw InputError("summarize: trace lengths differ");
        for (std::size_t t = 0; t < length; ++t) row.mean_trace[t] += r.trace[t];
    }
    for (double& v : row.mean_trace) v /= n;
    return row;
}

std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan) {
    if (plan.trials < 1) throw ConfigError("experiment needs at least one trial");
    if (plan.function_ids.empty()) throw ConfigError("experiment needs at least one function");
    plan.config.validate();

    struct Job {
        std::size_t function_index;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t f = 0; f < plan.function_ids.size(); ++f) {
        for (std::size_t t = 0; t < plan.trials; ++t) jobs.push_back({f, t});
    }

    std::vector<std::vector<RunRecord>> records(plan.function_ids.size(),
                                                std::vector<RunRecord>(plan.trials));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const Job job = jobs[j];
            const FunctionId id = plan.function_ids[job.function_index];
            try {
                records[job.function_index][job.trial] =
                    run_trial(id, plan.dim, plan.config, trial_seed(plan.base_seed, job.trial));
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::make_exception_ptr(std::runtime_error(
                        fmt::format("{} trial {} failed: {}", suite::to_string(id), job.trial,
                                    e.what())));
                }
                next = jobs.size();
            }
        }
    };

    std::size_t threads = plan.threads ? plan.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, jobs.size());
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<SummaryRow> rows;
    rows.reserve(plan.function_ids.size());
    for (std::size_t f = 0; f < plan.function_ids.size(); ++f) {
        rows.push_back(summarize(plan.function_ids[f], records[f]));
    }
    return rows;
}

RunRecord random_search_baseline(FunctionId id, std::size_t dim, std::size_t agents,
                                 std::size_t iterations, std::uint64_t seed) {
    const auto spec = suite::spec_of(id, dim);
    const auto objective = suite::make_objective(id, mix_seed(seed ^ kNoiseSalt));
    RandomStream rng(seed);

    RunRecord record;
    record.best_fitness = std::numeric_limits<double>::infinity();
    record.trace.reserve(iterations);
    Position x(spec.dim);
    for (std::size_t t = 0; t < iterations; ++t) {
        for (std::size_t a = 0; a < agents; ++a) {
            for (std::size_t k = 0; k < spec.dim; ++k) {
                x[k] = rng.uniform(spec.space.lower()[k], spec.space.upper()[k]);
            }
            const double f = sanitize_fitness(objective(x));
            if (f < record.best_fitness || record.best_position.empty()) {
                record.best_fitness = f;
                record.best_position = x;
            }
        }
        record.trace.push_back(record.best_fitness);
    }
    return record;
}

// ---------------------------------------------------------------------------

void AverageTable::set(FunctionId id, const std::string& algorithm, std::optional<double> value) {
    if (std::find(algorithms.begin(), algorithms.end(), algorithm) == algorithms.end()) {
        algorithms.push_back(algorithm);
    }
    rows[id][algorithm] = value;
}

std::vector<FunctionGroup> standard_groups() {
    auto range = [](int from, int to) {
        std::vector<FunctionId> ids;
        for (int n = from; n <= to; ++n) ids.push_back(static_cast<FunctionId>(n));
        return ids;
    };
    return {{"F1-F7", range(1, 7)}, {"F8-F13", range(8, 13)}, {"F14-F19", range(14, 19)}};
}

int RankTable::target_rank(FunctionId id) const {
    for (const auto& f : per_function) {
        if (f.function_id != id) continue;
        const auto it = f.ranks.find(target);
        if (it == f.ranks.end()) break;
        return it->second;
    }
    throw InputError(fmt::format("{} is not ranked on {}", target, suite::to_string(id)));
}

RankSubtotal rank_subtotal(std::string label, std::span<const int> ranks) {
    RankSubtotal s{std::move(label), 0, ranks.size()};
    for (int r : ranks) s.rank_sum += r;
    return s;
}

RankTable rank_algorithms(const AverageTable& averages, std::span<const FunctionGroup> groups,
                          const std::string& target) {
    if (averages.rows.empty() || averages.algorithms.empty()) {
        throw InputError("rank_algorithms: empty average table");
    }

    RankTable table;
    table.target = target;
    for (const auto& [id, values] : averages.rows) {
        std::vector<std::pair<double, std::string>> present;
        for (const auto& [algorithm, value] : values) {
            if (value) present.emplace_back(*value, algorithm);
        }
        std::sort(present.begin(), present.end());

        FunctionRanking ranking;
        ranking.function_id = id;
        for (std::size_t i = 0; i < present.size(); ++i) {
            if (i == 0 || present[i].first != present[i - 1].first) ranking.tiers.emplace_back();
            ranking.tiers.back().push_back(present[i].second);
            ranking.ranks[present[i].second] = static_cast<int>(ranking.tiers.size());
        }
        if (!ranking.ranks.contains(target)) {
            throw InputError(fmt::format("target algorithm {} has no value for {}", target,
                                         suite::to_string(id)));
        }
        table.per_function.push_back(std::move(ranking));
    }

    std::vector<int> all_ranks;
    for (const auto& f : table.per_function) all_ranks.push_back(f.ranks.at(target));
    table.overall = rank_subtotal("Overall", all_ranks);

    for (const auto& group : groups) {
        std::vector<int> ranks;
        for (FunctionId id : group.functions) {
            if (averages.rows.contains(id)) ranks.push_back(table.target_rank(id));
        }
        if (!ranks.empty()) table.subtotals.push_back(rank_subtotal(group.label, ranks));
    }
    return table;
}

AverageTable parse_average_table(std::istream& in) {
    AverageTable table;
    std::vector<std::string> header;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (header.empty()) {
            if (tokens[0] != "function") {
                throw InputError(fmt::format("line {}: header must start with 'function'",
                                             line_no));
            }
            header.assign(tokens.begin() + 1, tokens.end());
            table.algorithms = header;
            continue;
        }
        if (tokens.size() != header.size() + 1) {
            throw InputError(fmt::format("line {}: expected {} columns, got {}", line_no,
                                         header.size() + 1, tokens.size()));
        }
        FunctionId id;
        try {
            id = suite::parse_function_id(tokens[0]);
        } catch (const suite::LookupError& e) {
            throw InputError(fmt::format("line {}: {}", line_no, e.what()));
        }
        if (table.rows.contains(id)) {
            throw InputError(fmt::format("line {}: duplicate row for {}", line_no, tokens[0]));
        }
        auto& row = table.rows[id];  // may stay empty when the header has no algorithms
        for (std::size_t c = 0; c < header.size(); ++c) {
            const std::string& cell = tokens[c + 1];
            if (cell == "N/A" || cell == "NA") {
                row[header[c]] = std::nullopt;
                continue;
            }
            const auto value = parse_real(cell);
            if (!value) {
                throw InputError(
                    fmt::format("line {}: cannot parse '{}' as a number", line_no, cell));
            }
            row[header[c]] = *value;
        }
    }
    if (header.empty()) throw InputError("average table has no header");
    if (table.rows.empty()) throw InputError("average table has no rows");

    return table;
}

AverageTable read_average_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot open average table '{}'", path));
    return parse_average_table(in);
}

}  // namespace cddo::harness
