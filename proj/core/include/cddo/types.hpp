#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <optional>
#include <string_view>
#include <vector>

namespace cddo {

/// Golden ratio, (1 + sqrt(5)) / 2.
inline constexpr double kGoldenRatio = 1.6180339887498949;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Position = std::vector<double>;

/// Axis-aligned box of decision variables. Requires at least two dimensions
/// because the length/width ratio needs two distinct coordinates.
class SearchSpace {
public:
    SearchSpace(Position lower, Position upper);

    /// Same bounds on every axis.
    static SearchSpace uniform(std::size_t dim, double lower, double upper);

    std::size_t dim() const noexcept { return lower_.size(); }
    const Position& lower() const noexcept { return lower_; }
    const Position& upper() const noexcept { return upper_; }

    /// Smallest lower bound and largest upper bound over all axes.
    double global_lower() const noexcept;
    double global_upper() const noexcept;

    bool contains(std::span<const double> x) const noexcept;

    friend bool operator==(const SearchSpace&, const SearchSpace&) = default;

private:
    Position lower_;
    Position upper_;
};

/// One search agent.
struct Drawing {
    Position position;
    double fitness = 0.0;
    Position best_position;
    double best_fitness = 0.0;
};

struct Interval {
    double min = 0.0;
    double max = 1.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct OptimizerConfig {
    std::size_t agents = 30;
    std::size_t iterations = 500;
    double cr = 0.1;
    // Half-width of the window around the golden ratio that admits the
    // creativity update.
    double gr_tolerance = 0.5;
    std::size_t pm_capacity = 10;
    Interval lr_sr_high{0.6, 1.0};
    Interval lr_sr_low{0.0, 0.5};
    std::uint64_t seed = 0;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Outcome of one optimization run.
struct RunRecord {
    Position best_position;
    double best_fitness = 0.0;
    /// Global-best fitness after each iteration.
    std::vector<double> trace;
};

/// Maps NaN and infinities to +inf so they rank behind every finite value.
double sanitize_fitness(double value) noexcept;

/// Parses the whole of `text` as a double, including subnormals, "inf" and
/// "nan". nullopt when anything is left over or nothing parses.
std::optional<double> parse_real(std::string_view text) noexcept;

}  // namespace cddo
