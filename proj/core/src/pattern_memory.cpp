#include "cddo/pattern_memory.hpp"

#include <algorithm>
#include <cmath>

namespace cddo {

PatternMemory::PatternMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("pattern memory capacity must be positive");
    entries_.reserve(capacity_ + 1);
}

bool PatternMemory::contains(std::span<const double> position) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(), [&](const PatternEntry& e) {
        return std::equal(e.position.begin(), e.position.end(), position.begin(), position.end());
    });
}

bool PatternMemory::insert(std::span<const double> position, double fitness) {
    if (!std::isfinite(fitness)) return false;
    if (entries_.size() == capacity_ && !(fitness < entries_.back().fitness)) return false;
    if (contains(position)) return false;

    const auto at = std::upper_bound(
        entries_.begin(), entries_.end(), fitness,
        [](double f, const PatternEntry& e) { return f < e.fitness; });
    entries_.insert(at, PatternEntry{Position(position.begin(), position.end()), fitness});
    if (entries_.size() > capacity_) entries_.pop_back();
    return true;
}

}  // namespace cddo
