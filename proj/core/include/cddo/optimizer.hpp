#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cddo/pattern_memory.hpp"
#include "cddo/population.hpp"
#include "cddo/random.hpp"
#include "cddo/types.hpp"

namespace cddo {

/// Below this magnitude the length coordinate is treated as zero and the
/// drawing's length/width ratio is undefined.
inline constexpr double kDegenerateLength = 1e-12;

struct CddoState {
    std::vector<Drawing> population;
    PatternMemory pattern_memory;
    Position global_best_position;
    double global_best_fitness = 0.0;
    double sr = 0.0;  // skill rate
    double lr = 0.0;  // level rate
    std::size_t iteration = 0;
};

/// Scalar drawn uniformly between the smallest lower bound and the largest
/// upper bound of the box; compared against each drawing's hand pressure.
double random_hand_pressure(const SearchSpace& space, RandomStream& rng);

/// A uniformly chosen coordinate of the drawing's position.
double select_hand_pressure(const Drawing& drawing, RandomStream& rng);

/// Two distinct coordinate indices (length, width) in [0, dim). Throws
/// DimensionError when dim < 2.
std::pair<std::size_t, std::size_t> pick_length_width(std::size_t dim, RandomStream& rng);

/// (x[l] + x[w]) / x[l], or nullopt when |x[l]| <= kDegenerateLength.
std::optional<double> drawing_golden_ratio(const Drawing& drawing, std::size_t l_index,
                                           std::size_t w_index);

/// gr + sr * (best_position - position) + lr * (gbest - position), with the
/// scalar gr added to every component. The result is not clamped.
Position scribble_update(const Drawing& drawing, std::span<const double> gbest, double gr,
                         double sr, double lr);

/// pm_entry + cr * gbest, componentwise. The result is not clamped.
Position creativity_update(std::span<const double> pm_entry, std::span<const double> gbest,
                           double cr);

/// Returns pm with the candidate inserted (see PatternMemory::insert).
PatternMemory update_pattern_memory(PatternMemory pm, std::span<const double> candidate_position,
                                    double candidate_fitness);

/// Random quantities drawn once per iteration, before the drawing loop.
struct IterationDraws {
    double rhp = 0.0;           // random hand pressure
    std::size_t hand_index = 0;  // coordinate read as each drawing's hand pressure
    std::size_t length_index = 0;
    std::size_t width_index = 1;
};

IterationDraws draw_iteration(const SearchSpace& space, RandomStream& rng);

enum class Branch {
    Scribble,    // hand pressure below RHP: golden-ratio/best-guided update
    Creativity,  // ratio near phi: pattern memory + creativity update
    Unchanged,
};

struct StepReport {
    IterationDraws draws;
    std::vector<Branch> branches;  // one per drawing
};

/// Builds the initial state: population, pattern memory seeded with the
/// pm_capacity best initial drawings, global best, and sr/lr uniform in [0,1].
CddoState init_state(const Objective& objective, const SearchSpace& space,
                     const OptimizerConfig& config, RandomStream& rng);

/// One iteration with the per-iteration draws supplied by the caller.
StepReport apply_step(CddoState& state, const Objective& objective, const SearchSpace& space,
                      const OptimizerConfig& config, const IterationDraws& draws,
                      RandomStream& rng);

/// One full iteration: draw_iteration followed by apply_step.
StepReport cddo_step(CddoState& state, const Objective& objective, const SearchSpace& space,
                     const OptimizerConfig& config, RandomStream& rng);

/// Runs config.iterations steps from a fresh state seeded by config.seed.
RunRecord optimize(const Objective& objective, const SearchSpace& space,
                   const OptimizerConfig& config);

}  // namespace cddo
