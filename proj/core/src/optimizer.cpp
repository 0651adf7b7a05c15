#include "cddo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/core.h>

namespace cddo {

namespace {

void check_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(fmt::format("{}: vector lengths differ ({} vs {})", what, a, b));
    }
}

void resample_rates(CddoState& state, const Interval& interval, RandomStream& rng) {
    state.sr = rng.uniform(interval.min, interval.max);
    state.lr = rng.uniform(interval.min, interval.max);
}

// Pulls the best personal best into the global best; strict improvement only.
void refresh_global_best(CddoState& state) {
    for (const auto& drawing : state.population) {
        if (drawing.best_fitness < state.global_best_fitness) {
            state.global_best_fitness = drawing.best_fitness;
            state.global_best_position = drawing.best_position;
        }
    }
}

}  // namespace

double random_hand_pressure(const SearchSpace& space, RandomStream& rng) {
    return rng.uniform(space.global_lower(), space.global_upper());
}

double select_hand_pressure(const Drawing& drawing, RandomStream& rng) {
    if (drawing.position.empty()) throw DimensionError("select_hand_pressure: empty position");
    return drawing.position[rng.uniform_index(drawing.position.size())];
}

std::pair<std::size_t, std::size_t> pick_length_width(std::size_t dim, RandomStream& rng) {
    if (dim < 2) {
        throw DimensionError(fmt::format("length/width selection needs dim >= 2, got {}", dim));
    }
    const std::size_t l = rng.uniform_index(dim);
    std::size_t w = rng.uniform_index(dim);
    while (w == l) w = rng.uniform_index(dim);
    return {l, w};
}

std::optional<double> drawing_golden_ratio(const Drawing& drawing, std::size_t l_index,
                                           std::size_t w_index) {
    const auto& x = drawing.position;
    if (l_index >= x.size() || w_index >= x.size()) {
        throw DimensionError(fmt::format("length/width index ({}, {}) out of range for dim {}",
                                         l_index, w_index, x.size()));
    }
    const double length = x[l_index];
    if (!(std::abs(length) > kDegenerateLength)) return std::nullopt;
    return (length + x[w_index]) / length;
}

Position scribble_update(const Drawing& drawing, std::span<const double> gbest, double gr,
                         double sr, double lr) {
    const auto& x = drawing.position;
    const auto& lbest = drawing.best_position;
    check_same_length(x.size(), lbest.size(), "scribble_update");
    check_same_length(x.size(), gbest.size(), "scribble_update");
    Position next(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        next[k] = gr + sr * (lbest[k] - x[k]) + lr * (gbest[k] - x[k]);
    }
    return next;
}

Position creativity_update(std::span<const double> pm_entry, std::span<const double> gbest,
                           double cr) {
    check_same_length(pm_entry.size(), gbest.size(), "creativity_update");
    Position next(pm_entry.size());
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = pm_entry[k] + cr * gbest[k];
    return next;
}

PatternMemory update_pattern_memory(PatternMemory pm, std::span<const double> candidate_position,
                                    double candidate_fitness) {
    pm.insert(candidate_position, candidate_fitness);
    return pm;
}

IterationDraws draw_iteration(const SearchSpace& space, RandomStream& rng) {
    IterationDraws draws;
    draws.rhp = random_hand_pressure(space, rng);
    draws.hand_index = rng.uniform_index(space.dim());
    std::tie(draws.length_index, draws.width_index) = pick_length_width(space.dim(), rng);
    return draws;
}

CddoState init_state(const Objective& objective, const SearchSpace& space,
                     const OptimizerConfig& config, RandomStream& rng) {
    config.validate();
    CddoState state;
    state.population = init_population(objective, space, config, rng);
    state.pattern_memory = PatternMemory(config.pm_capacity);

    state.global_best_position = state.population.front().best_position;
    state.global_best_fitness = std::numeric_limits<double>::infinity();
    refresh_global_best(state);

    std::vector<std::size_t> order(state.population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return state.population[a].fitness < state.population[b].fitness;
    });
    for (std::size_t i : order) {
        if (state.pattern_memory.size() == state.pattern_memory.capacity()) break;
        state.pattern_memory.insert(state.population[i].position, state.population[i].fitness);
    }

    state.sr = rng.uniform01();
    state.lr = rng.uniform01();
    return state;
}

StepReport apply_step(CddoState& state, const Objective& objective, const SearchSpace& space,
                      const OptimizerConfig& config, const IterationDraws& draws,
                      RandomStream& rng) {
    StepReport report{.draws = draws, .branches = {}};
    report.branches.reserve(state.population.size());

    // Global best and pattern memory stay frozen while the population moves.
    const Position gbest = state.global_best_position;

    for (auto& drawing : state.population) {
        check_same_length(drawing.position.size(), space.dim(), "cddo_step");
        const double hand_pressure = drawing.position[draws.hand_index];
        const auto ratio = drawing_golden_ratio(drawing, draws.length_index, draws.width_index);

        Branch branch = Branch::Unchanged;
        if (hand_pressure < draws.rhp) {
            // An undefined ratio contributes no golden-ratio offset.
            drawing.position = scribble_update(drawing, gbest, ratio.value_or(0.0), state.sr,
                                               state.lr);
            resample_rates(state, config.lr_sr_high, rng);
            branch = Branch::Scribble;
        } else if (ratio && std::abs(*ratio - kGoldenRatio) <= config.gr_tolerance &&
                   !state.pattern_memory.empty()) {
            const auto& entry =
                state.pattern_memory[rng.uniform_index(state.pattern_memory.size())];
            drawing.position = creativity_update(entry.position, gbest, config.cr);
            resample_rates(state, config.lr_sr_low, rng);
            branch = Branch::Creativity;
        }

        if (branch != Branch::Unchanged) {
            clamp_in_place(drawing.position, space);
            drawing.fitness = sanitize_fitness(objective(drawing.position));
            if (drawing.fitness < drawing.best_fitness) {
                drawing.best_fitness = drawing.fitness;
                drawing.best_position = drawing.position;
            }
        }
        report.branches.push_back(branch);
    }

    refresh_global_best(state);
    state.pattern_memory.insert(state.global_best_position, state.global_best_fitness);
    ++state.iteration;
    return report;
}

StepReport cddo_step(CddoState& state, const Objective& objective, const SearchSpace& space,
                     const OptimizerConfig& config, RandomStream& rng) {
    const IterationDraws draws = draw_iteration(space, rng);
    return apply_step(state, objective, space, config, draws, rng);
}

RunRecord optimize(const Objective& objective, const SearchSpace& space,
                   const OptimizerConfig& config) {
    RandomStream rng(config.seed);
    CddoState state = init_state(objective, space, config, rng);

    RunRecord record;
    record.trace.reserve(config.iterations);
    for (std::size_t t = 0; t < config.iterations; ++t) {
        cddo_step(state, objective, space, config, rng);
        record.trace.push_back(state.global_best_fitness);
    }
    record.best_position = state.global_best_position;
    record.best_fitness = state.global_best_fitness;
    return record;
}

}  // namespace cddo
