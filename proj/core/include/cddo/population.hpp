#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cddo/random.hpp"
#include "cddo/types.hpp"

namespace cddo {

using Objective = std::function<double(std::span<const double>)>;

/// Projects each component onto [lower[k], upper[k]].
Position clamp(std::span<const double> position, const SearchSpace& space);

/// In-place variant of clamp.
void clamp_in_place(Position& position, const SearchSpace& space);

/// Samples config.agents drawings uniformly in the box and evaluates them.
/// Personal bests start at the sampled point.
std::vector<Drawing> init_population(const Objective& objective, const SearchSpace& space,
                                     const OptimizerConfig& config, RandomStream& rng);

}  // namespace cddo
