#include "cddo/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace cddo {

SearchSpace::SearchSpace(Position lower, Position upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
        throw DimensionError(fmt::format("bounds length mismatch: lower has {}, upper has {}",
                                         lower_.size(), upper_.size()));
    }
    if (lower_.size() < 2) {
        throw DimensionError(
            fmt::format("search space needs at least 2 dimensions, got {}", lower_.size()));
    }
    for (std::size_t k = 0; k < lower_.size(); ++k) {
        if (!(lower_[k] < upper_[k])) {
            throw ConfigError(fmt::format("empty interval on axis {}: [{}, {}]", k, lower_[k],
                                          upper_[k]));
        }
    }
}

SearchSpace SearchSpace::uniform(std::size_t dim, double lower, double upper) {
    return SearchSpace(Position(dim, lower), Position(dim, upper));
}

double SearchSpace::global_lower() const noexcept {
    return *std::min_element(lower_.begin(), lower_.end());
}

double SearchSpace::global_upper() const noexcept {
    return *std::max_element(upper_.begin(), upper_.end());
}

bool SearchSpace::contains(std::span<const double> x) const noexcept {
    if (x.size() != dim()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] >= lower_[k] && x[k] <= upper_[k])) return false;
    }
    return true;
}

namespace {

void check_interval(const Interval& interval, const char* name) {
    if (!(interval.min <= interval.max) || interval.min < 0.0 || interval.max > 1.0) {
        throw ConfigError(fmt::format("{} must satisfy 0 <= min <= max <= 1, got [{}, {}]", name,
                                      interval.min, interval.max));
    }
}

}  // namespace

void OptimizerConfig::validate() const {
    if (agents < 2) throw ConfigError(fmt::format("agents must be >= 2, got {}", agents));
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(cr > 0.0) || !std::isfinite(cr)) {
        throw ConfigError(fmt::format("cr must be positive, got {}", cr));
    }
    if (!(gr_tolerance >= 0.0)) {
        throw ConfigError(fmt::format("gr_tolerance must be >= 0, got {}", gr_tolerance));
    }
    if (pm_capacity < 1) throw ConfigError("pm_capacity must be >= 1");
    check_interval(lr_sr_high, "lr_sr_high");
    check_interval(lr_sr_low, "lr_sr_low");
}

double sanitize_fitness(double value) noexcept {
    return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

std::optional<double> parse_real(std::string_view text) noexcept {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    // Underflow to a subnormal still yields the nearest value.
    if (end != text.data() + text.size()) return std::nullopt;
    if (ec != std::errc{} && ec != std::errc::result_out_of_range) return std::nullopt;
    return value;
}

}  // namespace cddo
