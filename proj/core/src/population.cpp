#include "cddo/population.hpp"

#include <algorithm>

#include <fmt/core.h>

namespace cddo {

namespace {

void check_length(std::size_t got, const SearchSpace& space) {
    if (got != space.dim()) {
        throw DimensionError(
            fmt::format("position has {} components, search space has {}", got, space.dim()));
    }
}

}  // namespace

Position clamp(std::span<const double> position, const SearchSpace& space) {
    Position out(position.begin(), position.end());
    clamp_in_place(out, space);
    return out;
}

void clamp_in_place(Position& position, const SearchSpace& space) {
    check_length(position.size(), space);
    const auto& lo = space.lower();
    const auto& hi = space.upper();
    for (std::size_t k = 0; k < position.size(); ++k) {
        // NaN components land on the lower bound.
        position[k] = position[k] >= lo[k] ? std::min(position[k], hi[k]) : lo[k];
    }
}

std::vector<Drawing> init_population(const Objective& objective, const SearchSpace& space,
                                     const OptimizerConfig& config, RandomStream& rng) {
    if (config.agents < 2) {
        throw ConfigError(fmt::format("agents must be >= 2, got {}", config.agents));
    }
    std::vector<Drawing> population(config.agents);
    for (auto& drawing : population) {
        drawing.position.resize(space.dim());
        for (std::size_t k = 0; k < space.dim(); ++k) {
            drawing.position[k] = rng.uniform(space.lower()[k], space.upper()[k]);
        }
        drawing.fitness = sanitize_fitness(objective(drawing.position));
        drawing.best_position = drawing.position;
        drawing.best_fitness = drawing.fitness;
    }
    return population;
}

}  // namespace cddo
