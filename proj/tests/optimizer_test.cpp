#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cddo/optimizer.hpp"
#include "cddo/test_functions.hpp"
#include "oracles.hpp"

using namespace cddo;

namespace {

Drawing drawing_at(Position x) {
    Drawing d;
    d.position = x;
    d.best_position = x;
    return d;
}

const Objective kSphere = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
};

// Single-drawing state with a one-entry pattern memory.
CddoState single_state(Position x, const Objective& f, double sr, double lr) {
    CddoState s;
    Drawing d = drawing_at(x);
    d.fitness = d.best_fitness = f(x);
    s.population = {d};
    s.pattern_memory = PatternMemory(10);
    s.pattern_memory.insert(x, d.fitness);
    s.global_best_position = x;
    s.global_best_fitness = d.fitness;
    s.sr = sr;
    s.lr = lr;
    return s;
}

}  // namespace

TEST_CASE("random_hand_pressure") {
    RandomStream rng(1);
    const auto box = SearchSpace::uniform(4, -100, 100);
    const auto rastrigin_box = SearchSpace::uniform(30, -5.12, 5.12);
    const SearchSpace mixed({-1, -7}, {9, 2});
    for (int i = 0; i < 20000; ++i) {
        const double v = random_hand_pressure(box, rng);
        REQUIRE((v >= -100 && v < 100));
        const double w = random_hand_pressure(rastrigin_box, rng);
        REQUIRE((w >= -5.12 && w < 5.12));
        const double m = random_hand_pressure(mixed, rng);
        REQUIRE((m >= -7 && m < 9));
    }
    RandomStream a(42);
    RandomStream b(42);
    CHECK(random_hand_pressure(box, a) == random_hand_pressure(box, b));
}

TEST_CASE("select_hand_pressure") {
    RandomStream rng(3);
    CHECK(select_hand_pressure(drawing_at({3, 3, 3}), rng) == 3);
    CHECK_THROWS_AS(select_hand_pressure(Drawing{}, rng), DimensionError);

    SUBCASE("index forced to 1") {
        // Find a seed whose first index draw over two slots is 1.
        std::uint64_t seed = 0;
        for (;; ++seed) {
            RandomStream probe(seed);
            if (probe.uniform_index(2) == 1) break;
        }
        RandomStream forced(seed);
        CHECK(select_hand_pressure(drawing_at({1, 2}), forced) == 2);
    }

    SUBCASE("uniform over components") {
        Position x;
        for (int k = 0; k <= 10; ++k) x.push_back(k);
        const auto d = drawing_at(x);
        RandomStream r(17);
        double sum = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) sum += select_hand_pressure(d, r);
        CHECK(std::abs(sum / n - 5.0) < 0.1);
    }
}

TEST_CASE("pick_length_width") {
    RandomStream rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto [l, w] = pick_length_width(2, rng);
        REQUIRE(((l == 0 && w == 1) || (l == 1 && w == 0)));
    }
    CHECK_THROWS_AS(pick_length_width(1, rng), DimensionError);

    RandomStream a(30);
    RandomStream b(30);
    CHECK(pick_length_width(30, a) == pick_length_width(30, b));

    SUBCASE("ordered pairs are uniform at dim 5") {
        std::map<std::pair<std::size_t, std::size_t>, int> counts;
        RandomStream r(2024);
        const int n = 100000;
        for (int i = 0; i < n; ++i) ++counts[pick_length_width(5, r)];
        CHECK(counts.size() == 20);
        for (const auto& [pair, c] : counts) {
            CHECK(pair.first != pair.second);
            CHECK(std::abs(static_cast<double>(c) / n - 1.0 / 20.0) < 0.01);
        }
    }
}

TEST_CASE("drawing_golden_ratio") {
    CHECK(*drawing_golden_ratio(drawing_at({1, 0.6180339887}), 0, 1) ==
          doctest::Approx(1.6180339887).epsilon(1e-12));
    CHECK(*drawing_golden_ratio(drawing_at({2, 2}), 0, 1) == 2.0);
    CHECK(*drawing_golden_ratio(drawing_at({-1, 3}), 0, 1) == (-1.0 + 3.0) / -1.0);
    CHECK(*drawing_golden_ratio(drawing_at({-1, 3}), 0, 1) == -2.0);
    CHECK_FALSE(drawing_golden_ratio(drawing_at({0, 3}), 0, 1).has_value());
    CHECK_FALSE(drawing_golden_ratio(drawing_at({1e-13, 3}), 0, 1).has_value());
    CHECK(drawing_golden_ratio(drawing_at({2e-12, 3}), 0, 1).has_value());
    CHECK_THROWS_AS(drawing_golden_ratio(drawing_at({1, 2}), 0, 2), DimensionError);

    SUBCASE("width = length * (phi - 1) gives phi") {
        RandomStream r(4);
        for (int i = 0; i < 1000; ++i) {
            double length = r.uniform(-1000, 1000);
            if (std::abs(length) < 1e-6) continue;
            const auto gr = drawing_golden_ratio(
                drawing_at({length, length * (kGoldenRatio - 1.0)}), 0, 1);
            REQUIRE(std::abs(*gr - kGoldenRatio) < 1e-9);
        }
    }
}

TEST_CASE("scribble_update") {
    Drawing d = drawing_at({2});
    d.best_position = {3};
    const auto next = scribble_update(d, std::vector<double>{4}, 1.618, 0.8, 0.7);
    CHECK(next[0] == doctest::Approx(1.618 + 0.8 * 1 + 0.7 * 2).epsilon(1e-15));
    CHECK(next[0] == doctest::Approx(3.818));

    const auto same = drawing_at({5, -2, 7});
    for (double v : scribble_update(same, same.position, 1.25, 0.9, 0.3)) CHECK(v == 1.25);

    Drawing apart = drawing_at({1, 2});
    apart.best_position = {-4, 8};
    for (double v : scribble_update(apart, std::vector<double>{10, 10}, -0.5, 0, 0)) {
        CHECK(v == -0.5);
    }

    CHECK_THROWS_AS(scribble_update(apart, std::vector<double>{1}, 1, 1, 1), DimensionError);

    SUBCASE("matches the scalar oracle") {
        RandomStream r(55);
        for (int i = 0; i < 50; ++i) {
            const std::size_t n = 1 + r.uniform_index(6);
            Drawing dr;
            Position g;
            for (std::size_t k = 0; k < n; ++k) {
                dr.position.push_back(r.uniform(-50, 50));
                dr.best_position.push_back(r.uniform(-50, 50));
                g.push_back(r.uniform(-50, 50));
            }
            const double gr = r.uniform(-3, 3);
            const double sr = r.uniform01();
            const double lr = r.uniform01();
            const auto got = scribble_update(dr, g, gr, sr, lr);
            const auto want = oracle::scribble(dr.position, dr.best_position, g, gr, sr, lr);
            for (std::size_t k = 0; k < n; ++k) REQUIRE(oracle::rel_close(got[k], want[k], 1e-12));
        }
    }
}

TEST_CASE("creativity_update") {
    CHECK(creativity_update(std::vector<double>{1.0}, std::vector<double>{2.0}, 0.1)[0] ==
          doctest::Approx(1.2).epsilon(1e-15));
    const Position pm{3, -4, 5};
    CHECK(creativity_update(pm, std::vector<double>{0, 0, 0}, 0.1) == pm);
    const auto v = creativity_update(std::vector<double>{0, 0}, std::vector<double>{10, -10}, 0.1);
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(creativity_update(pm, std::vector<double>{1}, 0.1), DimensionError);
}

TEST_CASE("apply_step branches") {
    const auto box = SearchSpace::uniform(2, -100, 100);
    OptimizerConfig cfg;
    RandomStream rng(5);

    SUBCASE("ratio equal to phi with high hand pressure takes the creativity branch") {
        auto state = single_state({1.0, kGoldenRatio - 1.0}, kSphere, 0.9, 0.9);
        const Position pm_entry = state.pattern_memory.best().position;
        const Position gbest = state.global_best_position;
        const IterationDraws draws{.rhp = -100.0, .hand_index = 0, .length_index = 0,
                                   .width_index = 1};
        const auto report = apply_step(state, kSphere, box, cfg, draws, rng);
        REQUIRE(report.branches.size() == 1);
        CHECK(report.branches[0] == Branch::Creativity);
        const auto want = clamp(oracle::creativity(pm_entry, gbest, cfg.cr), box);
        CHECK(state.population[0].position == want);
        CHECK(state.sr >= 0.0);
        CHECK(state.sr < 0.5);
        CHECK(state.lr >= 0.0);
        CHECK(state.lr < 0.5);
        CHECK(state.iteration == 1);
    }

    SUBCASE("hand pressure below RHP takes the scribble branch") {
        auto state = single_state({1.0, 3.0}, kSphere, 0.2, 0.3);
        const IterationDraws draws{.rhp = 50.0, .hand_index = 1, .length_index = 0,
                                   .width_index = 1};
        const auto report = apply_step(state, kSphere, box, cfg, draws, rng);
        CHECK(report.branches[0] == Branch::Scribble);
        // lbest = gbest = x, so the move is the constant ratio (1 + 3) / 1.
        CHECK(state.population[0].position == Position{4.0, 4.0});
        CHECK(state.population[0].fitness == 32.0);
        // Not greedy for the position, greedy for the personal best.
        CHECK(state.population[0].best_fitness == 10.0);
        CHECK(state.global_best_fitness == 10.0);
        CHECK(state.sr >= 0.6);
        CHECK(state.lr >= 0.6);
    }

    SUBCASE("otherwise the drawing is unchanged") {
        auto state = single_state({1.0, 5.0}, kSphere, 0.2, 0.3);
        const IterationDraws draws{.rhp = -50.0, .hand_index = 0, .length_index = 0,
                                   .width_index = 1};
        const auto report = apply_step(state, kSphere, box, cfg, draws, rng);
        CHECK(report.branches[0] == Branch::Unchanged);
        CHECK(state.population[0].position == Position{1.0, 5.0});
        CHECK(state.sr == 0.2);
        CHECK(state.lr == 0.3);
    }

    SUBCASE("degenerate ratio never takes the creativity branch") {
        auto state = single_state({0.0, 0.0}, kSphere, 0.2, 0.3);
        cfg.gr_tolerance = 1e9;
        const IterationDraws draws{.rhp = -50.0, .hand_index = 0, .length_index = 0,
                                   .width_index = 1};
        CHECK(apply_step(state, kSphere, box, cfg, draws, rng).branches[0] == Branch::Unchanged);

        // Scribbling from a degenerate ratio drops the ratio term; with
        // x = lbest = gbest nothing else is left either.
        auto at_zero = single_state({0.0, 4.0}, kSphere, 0.5, 0.5);
        const IterationDraws low{.rhp = 50.0, .hand_index = 0, .length_index = 0,
                                 .width_index = 1};
        const auto report = apply_step(at_zero, kSphere, box, cfg, low, rng);
        CHECK(report.branches[0] == Branch::Scribble);
        CHECK(at_zero.population[0].position == Position{0.0, 0.0});
    }

    SUBCASE("a drawing at the optimum never loses its best") {
        auto state = single_state({0.0, 0.0}, kSphere, 0.0, 0.0);
        for (int i = 0; i < 200; ++i) {
            cddo_step(state, kSphere, box, cfg, rng);
            REQUIRE(state.population[0].best_fitness == 0.0);
            REQUIRE(state.global_best_fitness == 0.0);
        }
    }

    SUBCASE("scribble result is clamped before evaluation") {
        auto state = single_state({1.0, 99.0}, kSphere, 0.2, 0.3);
        const IterationDraws draws{.rhp = 100.0, .hand_index = 0, .length_index = 0,
                                   .width_index = 1};
        apply_step(state, kSphere, box, cfg, draws, rng);
        CHECK(state.population[0].position == Position{100.0, 100.0});
        CHECK(state.population[0].fitness == 20000.0);
    }
}

TEST_CASE("step invariants over full runs") {
    for (auto id : {suite::FunctionId::F1, suite::FunctionId::F9, suite::FunctionId::F12,
                    suite::FunctionId::F15, suite::FunctionId::F19}) {
        const auto spec = suite::spec_of(id, 10);
        OptimizerConfig cfg;
        cfg.iterations = 150;
        cfg.seed = static_cast<std::uint64_t>(id) * 31u;
        bool outside = false;
        const auto inner = suite::make_objective(id);
        const Objective watched = [&](std::span<const double> x) {
            if (!spec.space.contains(x)) outside = true;
            return inner(x);
        };

        RandomStream rng(cfg.seed);
        auto state = init_state(watched, spec.space, cfg, rng);
        CHECK(state.sr >= 0.0);
        CHECK(state.sr < 1.0);
        REQUIRE(state.pattern_memory.size() == cfg.pm_capacity);
        CHECK(state.pattern_memory.best().fitness == state.global_best_fitness);

        double previous = state.global_best_fitness;
        for (std::size_t t = 0; t < cfg.iterations; ++t) {
            const auto report = cddo_step(state, watched, spec.space, cfg, rng);
            REQUIRE(report.branches.size() == cfg.agents);
            REQUIRE(state.global_best_fitness <= previous);
            previous = state.global_best_fitness;
            REQUIRE(state.pattern_memory.best().fitness == state.global_best_fitness);
            REQUIRE(state.pattern_memory.contains(state.global_best_position));
            const bool high = state.sr >= 0.6 && state.lr >= 0.6;
            const bool low = state.sr < 0.5 && state.lr < 0.5;
            const bool untouched = std::none_of(report.branches.begin(), report.branches.end(),
                                                [](Branch b) { return b != Branch::Unchanged; });
            REQUIRE((high || low || untouched));
            for (const auto& d : state.population) {
                REQUIRE(spec.space.contains(d.position));
                REQUIRE(d.best_fitness <= d.fitness);
                REQUIRE(d.best_fitness >= state.global_best_fitness);
            }
        }
        CHECK_FALSE(outside);
    }
}

TEST_CASE("optimize") {
    const auto spec = suite::spec_of(suite::FunctionId::F1, 30);
    const auto f1 = suite::make_objective(suite::FunctionId::F1);
    OptimizerConfig cfg;
    cfg.seed = 2;
    cfg.iterations = 120;

    const auto run = optimize(f1, spec.space, cfg);
    CHECK(run.trace.size() == cfg.iterations);
    CHECK(run.best_fitness == run.trace.back());
    CHECK(f1(run.best_position) == run.best_fitness);
    for (std::size_t t = 1; t < run.trace.size(); ++t) REQUIRE(run.trace[t] <= run.trace[t - 1]);

    RandomStream rng(cfg.seed);
    const auto initial = init_state(f1, spec.space, cfg, rng);
    CHECK(run.best_fitness <= initial.global_best_fitness);

    SUBCASE("seed replay is bit-exact") {
        const auto again = optimize(f1, spec.space, cfg);
        CHECK(again.trace == run.trace);
        CHECK(again.best_position == run.best_position);
        auto other = cfg;
        other.seed = 3;
        CHECK(optimize(f1, spec.space, other).trace != run.trace);
    }

    SUBCASE("invalid configuration is rejected") {
        auto bad = cfg;
        bad.cr = -1;
        CHECK_THROWS_AS(optimize(f1, spec.space, bad), ConfigError);
    }

    SUBCASE("non-finite objective regions never become bests") {
        const Objective holes = [](std::span<const double> x) {
            return x[0] > 0 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0] + x[1] * x[1];
        };
        const auto box = SearchSpace::uniform(2, -10, 10);
        auto c = cfg;
        c.iterations = 200;
        const auto r = optimize(holes, box, c);
        CHECK(std::isfinite(r.best_fitness));
        CHECK(r.best_position[0] <= 0);
    }
}
