#include <doctest.h>

#include <algorithm>

#include "cife/population.hpp"
#include "cife/rng.hpp"
#include "oracles.hpp"

using namespace cife;

TEST_CASE("random_population degenerate pool of one") {
    const auto pop = random_population(20, 1, 3);
    for (const auto& mask : pop) {
        CHECK(mask.size() == 1);
        CHECK(mask.count() == 1);
    }
}

TEST_CASE("random_population cardinality is uniform on [1, pool]") {
    const auto pop = random_population(500, 150, 99);
    double mean = 0.0;
    for (const auto& mask : pop) {
        CHECK(mask.count() >= 1);
        CHECK(mask.count() <= 150);
        mean += static_cast<double>(mask.count());
    }
    mean /= 500.0;
    CHECK(mean == doctest::Approx(75.5).epsilon(5.0 / 75.5));
}

TEST_CASE("random_population determinism") {
    const auto a = random_population(50, 20, 7);
    const auto b = random_population(50, 20, 7);
    CHECK(a == b);
    const auto c = random_population(50, 20, 8);
    CHECK(a != c);
}

TEST_CASE("aggregate_pair_score spans [1, 32]") {
    CHECK(aggregate_pair_score({0, 0, 0, 0, 0}) == 1.0);
    CHECK(aggregate_pair_score({1, 1, 1, 1, 1}) == 32.0);
    CHECK(aggregate_pair_score({0.1, 0.2, 0, 0, 0}) == doctest::Approx(1.32).epsilon(1e-12));
}

TEST_CASE("rank_pairs mixes error and diversity") {
    // single pair, alpha 0.5
    const auto ranked = rank_pairs({0.2}, {0.3}, 0.5, 2);
    REQUIRE(ranked.entries.size() == 1);
    CHECK(ranked.entries[0].score == doctest::Approx(0.25).epsilon(1e-15));

    const auto zero = rank_pairs({0.0}, {0.0}, 0.5, 2);
    CHECK(zero.entries[0].score == 0.0);

    CHECK_THROWS(rank_pairs({0.1}, {0.1}, 0.0, 2));
    CHECK_THROWS(rank_pairs({0.1}, {0.1, 0.2}, 0.5, 2));
}

TEST_CASE("rank_pairs is a sorted permutation with lexicographic ties") {
    Rng rng(17);
    const std::size_t n = 12;
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<double> dc(pairs), err(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
        dc[p] = rng.below(4) / 4.0;  // coarse grid forces ties
        err[p] = rng.below(4) / 4.0;
    }
    const auto ranked = rank_pairs(dc, err, 0.5, n);
    REQUIRE(ranked.entries.size() == pairs);
    for (std::size_t p = 1; p < pairs; ++p) {
        const auto& prev = ranked.entries[p - 1];
        const auto& cur = ranked.entries[p];
        const bool ordered = prev.score < cur.score ||
                             (prev.score == cur.score &&
                              (prev.i < cur.i || (prev.i == cur.i && prev.j < cur.j)));
        CHECK(ordered);
    }
    // permutation: every pair appears once
    std::vector<bool> seen(pairs, false);
    for (const auto& e : ranked.entries) {
        const std::size_t idx = e.i * (2 * n - e.i - 1) / 2 + (e.j - e.i - 1);
        CHECK_FALSE(seen[idx]);
        seen[idx] = true;
    }

    // all-equal scores fall back to pure lexicographic order
    const auto flat = rank_pairs(std::vector<double>(pairs, 0.5),
                                 std::vector<double>(pairs, 0.5), 0.5, n);
    CHECK(flat.entries.front().i == 0);
    CHECK(flat.entries.front().j == 1);
    CHECK(flat.entries.back().i == n - 2);
    CHECK(flat.entries.back().j == n - 1);
}

namespace {

// The worked 15-row ranked list over six classifiers (1-based in the source,
// 0-based here).
RankedPairList worked_ranked_list() {
    RankedPairList ranked;
    const std::vector<std::tuple<int, int, double>> rows = {
        {2, 4, 0.064}, {4, 5, 0.169}, {1, 5, 0.210}, {2, 6, 0.265}, {2, 5, 0.308},
        {1, 6, 0.400}, {1, 2, 0.487}, {3, 6, 0.519}, {4, 6, 0.634}, {3, 5, 0.636},
        {5, 6, 0.643}, {1, 4, 0.673}, {2, 3, 0.693}, {1, 3, 0.821}, {3, 4, 0.872}};
    for (const auto& [i, j, score] : rows)
        ranked.entries.push_back({static_cast<std::uint32_t>(i - 1),
                                  static_cast<std::uint32_t>(j - 1), score});
    return ranked;
}

}  // namespace

TEST_CASE("build_histogram reproduces the worked six-classifier fixture") {
    const auto hist = build_histogram(worked_ranked_list(), 6);
    CHECK(hist.cut_row == 8);
    CHECK(hist.frequency == std::vector<std::size_t>{3, 4, 1, 2, 3, 3});
}

TEST_CASE("build_histogram minimality: dropping the last row loses coverage") {
    const auto ranked = worked_ranked_list();
    const auto hist = build_histogram(ranked, 6);
    RankedPairList truncated;
    truncated.entries.assign(ranked.entries.begin(),
                             ranked.entries.begin() + static_cast<long>(hist.cut_row - 1));
    CHECK_THROWS(build_histogram(truncated, 6));
}

TEST_CASE("build_histogram edge shapes") {
    RankedPairList two;
    two.entries.push_back({0, 1, 0.5});
    const auto hist = build_histogram(two, 2);
    CHECK(hist.cut_row == 1);
    CHECK(hist.frequency == std::vector<std::size_t>{1, 1});

    // perfect matching in the first n/2 rows
    RankedPairList matching;
    matching.entries.push_back({0, 1, 0.1});
    matching.entries.push_back({2, 3, 0.2});
    matching.entries.push_back({4, 5, 0.3});
    matching.entries.push_back({0, 2, 0.4});
    const auto m = build_histogram(matching, 6);
    CHECK(m.cut_row == 3);
    CHECK(m.frequency == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});

    CHECK_THROWS(build_histogram(two, 1));
}

TEST_CASE("roulette_pick follows the frequency weights") {
    ClassifierHistogram hist;
    hist.frequency = {3, 4, 1, 2, 3, 3};  // selection probabilities /16
    Rng rng(12345);
    std::vector<int> hits(6, 0);
    const int draws = 100000;
    for (int s = 0; s < draws; ++s) hits[roulette_pick(hist, rng)]++;
    for (std::size_t i = 0; i < 6; ++i) {
        const double expected = hist.frequency[i] / 16.0;
        CHECK(hits[i] / static_cast<double>(draws) ==
              doctest::Approx(expected).epsilon(0.01 / expected));
    }
    CHECK(hits[1] / static_cast<double>(draws) == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("roulette_population respects distinctness and the pool") {
    ClassifierHistogram hist;
    hist.frequency = {1, 1};
    const auto pop = roulette_population(hist, 200, 2, 3);
    for (const auto& mask : pop) {
        CHECK(mask.count() >= 1);
        if (mask.count() == 2) {
            CHECK(mask.test(0));
            CHECK(mask.test(1));
        }
    }
    // cardinality 2 forces both classifiers; it must occur in 200 draws
    CHECK(std::any_of(pop.begin(), pop.end(),
                      [](const EnsembleMask& m) { return m.count() == 2; }));

    ClassifierHistogram bad;
    bad.frequency = {1, 0};
    CHECK_THROWS(roulette_population(bad, 5, 2, 0));
}

TEST_CASE("tuning pipeline end-to-end determinism") {
    Rng rng(55);
    const auto lm = oracle::random_label_matrix(rng, 10, 40, 3);
    const auto table = build_pair_table(lm);
    const auto a = tuning_population(lm, table, 30, 5);
    const auto b = tuning_population(lm, table, 30, 5);
    CHECK(a == b);
    for (const auto& mask : a) CHECK(mask.count() >= 1);

    const auto art = tuning_artifacts(lm, table);
    CHECK(art.ranked.entries.size() == table.entries.size());
    // rescaled combined scores live in [0,1]
    for (double s : art.score_dc) {
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
    TuningOptions raw;
    raw.rescale_combined = false;
    const auto art_raw = tuning_artifacts(lm, table, raw);
    for (double s : art_raw.score_dc) {
        CHECK(s >= 1.0);
        CHECK(s <= 32.0);
    }
}
