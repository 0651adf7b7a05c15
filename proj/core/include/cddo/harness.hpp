#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cddo/test_functions.hpp"
#include "cddo/types.hpp"

namespace cddo::harness {

using suite::FunctionId;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentPlan {
    std::vector<FunctionId> function_ids;
    std::size_t trials = 30;
    OptimizerConfig config;  // config.seed is ignored; trial t uses base_seed + t
    std::uint64_t base_seed = 0;
    std::size_t dim = suite::kDefaultScalableDim;  // F1-F13 only
    /// Worker threads for independent trials; 0 picks hardware concurrency.
    /// Results do not depend on this value.
    std::size_t threads = 1;
};

struct SummaryRow {
    FunctionId function_id = FunctionId::F1;
    double avg = 0.0;
    double stddev = 0.0;  // sample (n-1) standard deviation; 0 for one trial
    double best = 0.0;
    double worst = 0.0;
    std::vector<double> mean_trace;
    std::vector<double> finals;  // per-trial final best fitness, in trial order
    bool single_trial = false;   // stddev undefined, reported as 0
};

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) noexcept {
    return base_seed + trial;
}

/// One optimize() run of function `id` with the given seed. F7 noise is
/// drawn from a stream derived from the same seed.
RunRecord run_trial(FunctionId id, std::size_t dim, const OptimizerConfig& config,
                    std::uint64_t seed);

/// Aggregates per-trial records into avg/stddev/extremes and the mean trace.
SummaryRow summarize(FunctionId id, std::span<const RunRecord> records);

std::vector<SummaryRow> run_experiment(const ExperimentPlan& plan);

/// Uniform sampling of the function's box with budget agents * iterations
/// evaluations; the trace records the running best after each batch of
/// `agents` samples, so its length is `iterations`.
RunRecord random_search_baseline(FunctionId id, std::size_t dim, std::size_t agents,
                                 std::size_t iterations, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Ranking

/// Per-function averages of several algorithms; nullopt marks a missing
/// value ("N/A").
struct AverageTable {
    std::vector<std::string> algorithms;
    std::map<FunctionId, std::map<std::string, std::optional<double>>> rows;

    void set(FunctionId id, const std::string& algorithm, std::optional<double> value);
};

struct FunctionGroup {
    std::string label;  // e.g. "F1-F7"
    std::vector<FunctionId> functions;
};

/// The unimodal / multimodal / fixed-dimension split.
std::vector<FunctionGroup> standard_groups();

struct FunctionRanking {
    FunctionId function_id = FunctionId::F1;
    /// Algorithms by ascending average; tied algorithms share a tier.
    std::vector<std::vector<std::string>> tiers;
    /// Rank of every ranked algorithm (1-based tier index).
    std::map<std::string, int> ranks;
};

struct RankSubtotal {
    std::string label;
    int rank_sum = 0;
    std::size_t count = 0;
    double value() const { return count ? static_cast<double>(rank_sum) / count : 0.0; }
};

struct RankTable {
    std::string target;
    std::vector<FunctionRanking> per_function;
    std::vector<RankSubtotal> subtotals;
    RankSubtotal overall;

    /// Rank of the target algorithm on one function.
    int target_rank(FunctionId id) const;
};

/// Ranks algorithms per function by ascending average (minimization).
/// Ties share the better rank and the next distinct value takes the next
/// rank. Missing values exclude that algorithm from the function. Subtotals
/// and the overall rank average the target algorithm's ranks.
/// Throws InputError on an empty table or when the target is missing.
RankTable rank_algorithms(const AverageTable& averages, std::span<const FunctionGroup> groups,
                          const std::string& target);

/// Subtotal arithmetic alone, for precomputed per-function ranks.
RankSubtotal rank_subtotal(std::string label, std::span<const int> ranks);

/// Reads a whitespace-separated table: a header line "function ALG1 ALG2 ..."
/// followed by one row per function; "N/A" marks a missing value and '#'
/// starts a comment. Throws InputError on malformed input.
AverageTable parse_average_table(std::istream& in);
AverageTable read_average_table(const std::string& path);

}  // namespace cddo::harness
