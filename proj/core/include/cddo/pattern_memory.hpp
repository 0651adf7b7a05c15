#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cddo/types.hpp"

namespace cddo {

struct PatternEntry {
    Position position;
    double fitness = 0.0;
};

/// Fixed-capacity archive of the best drawings seen so far, kept sorted
/// ascending by fitness. Positions are unique (bitwise equality).
class PatternMemory {
public:
    explicit PatternMemory(std::size_t capacity = 10);

    /// Inserts a candidate in fitness order, evicting the worst entry when
    /// over capacity. Returns false when the candidate was rejected (duplicate
    /// position, non-finite fitness, or worse than a full archive).
    bool insert(std::span<const double> position, double fitness);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<PatternEntry>& entries() const noexcept { return entries_; }
    const PatternEntry& operator[](std::size_t i) const { return entries_.at(i); }
    const PatternEntry& best() const { return entries_.front(); }

    bool contains(std::span<const double> position) const noexcept;

private:
    std::size_t capacity_;
    std::vector<PatternEntry> entries_;
};

}  // namespace cddo
