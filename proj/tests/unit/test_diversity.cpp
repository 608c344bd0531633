#include <doctest.h>

#include <sstream>

#include "cife/diversity.hpp"
#include "oracles.hpp"

using namespace cife;

TEST_CASE("measures on the worked contingency table") {
    const ContingencyFractions ct{0.5, 0.2, 0.2, 0.1};
    CHECK(measure(MeasureKind::DM, ct) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(measure(MeasureKind::DFM, ct) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(measure(MeasureKind::QSTAT, ct) == doctest::Approx(0.01 / 0.09).epsilon(1e-12));
    CHECK(measure(MeasureKind::COR, ct) == doctest::Approx(0.01 / 0.21).epsilon(1e-12));
    CHECK(measure(MeasureKind::IA, ct) == doctest::Approx(0.16 / 0.42).epsilon(1e-12));
}

TEST_CASE("measures degenerate cases") {
    // ad == bc
    const ContingencyFractions balanced{0.4, 0.2, 0.2, 0.1};
    CHECK(measure(MeasureKind::QSTAT, balanced) == 0.0);
    CHECK(measure(MeasureKind::COR, balanced) == 0.0);

    const ContingencyFractions perfect{1.0, 0.0, 0.0, 0.0};
    CHECK(measure(MeasureKind::DM, perfect) == 0.0);
    CHECK(measure(MeasureKind::DFM, perfect) == 0.0);
    // denominators vanish: totality conventions
    CHECK(measure(MeasureKind::COR, perfect) == 0.0);
    CHECK(measure(MeasureKind::QSTAT, perfect) == 0.0);
}

TEST_CASE("orient_normalize conventions") {
    CHECK(orient_normalize(MeasureKind::DM, 0.4) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(orient_normalize(MeasureKind::QSTAT, -1.0) == 0.0);
    CHECK(orient_normalize(MeasureKind::COR, 0.01 / 0.21) ==
          doctest::Approx((0.01 / 0.21 + 1.0) / 2.0).epsilon(1e-12));
    CHECK(orient_normalize(MeasureKind::DFM, 0.3) == 0.3);
    CHECK_THROWS(orient_normalize(MeasureKind::DM, 1.5));
    CHECK_THROWS(orient_normalize(MeasureKind::COR, -1.1));
    // the interrater formula reaches past 1 on unbalanced pairs: saturate
    CHECK(measure(MeasureKind::IA, {0.5, 0.0, 0.5, 0.0}) == doctest::Approx(2.0));
    CHECK(orient_normalize(MeasureKind::IA, 1.5) == 1.0);
    CHECK(orient_normalize(MeasureKind::IA, -1.8) == 0.0);
    CHECK_THROWS(orient_normalize(MeasureKind::IA, 2.5));
}

TEST_CASE("pair_combined is the mean of the oriented scores") {
    CHECK(pair_combined({0, 0, 0, 0, 0}) == 0.0);
    CHECK(pair_combined({1, 1, 1, 1, 1}) == 1.0);
    const std::array<double, 5> running = {0.6, 0.1, (0.01 / 0.21 + 1) / 2, (0.16 / 0.42 + 1) / 2,
                                           (0.01 / 0.09 + 1) / 2};
    double mean = 0;
    for (double v : running) mean += v / 5;
    CHECK(pair_combined(running) == doctest::Approx(mean).epsilon(1e-15));
    CHECK(pair_combined(running) == doctest::Approx(0.49397).epsilon(1e-4));
}

TEST_CASE("five measures match the exact-count oracle on random pairs") {
    Rng rng(2024);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const int classes = rep % 2 ? 2 : 5;
        const auto lm = oracle::random_label_matrix(rng, 2, 50, classes);
        const auto ct = contingency(lm.rows[0], lm.rows[1], lm.truth);
        const auto counts = oracle::count_pair(lm.rows[0], lm.rows[1], lm.truth);
        const auto expected = oracle::measures_from_counts(counts);
        for (std::size_t k = 0; k < kAllMeasures.size(); ++k) {
            CHECK(measure(kAllMeasures[k], ct) ==
                  doctest::Approx(static_cast<double>(expected[k])).epsilon(1e-12));
        }
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("oriented scores and d_c stay in the unit interval") {
    Rng rng(7);
    for (int rep = 0; rep < 100; ++rep) {
        const auto lm = oracle::random_label_matrix(rng, 2, 30, 3);
        const auto ct = contingency(lm.rows[0], lm.rows[1], lm.truth);
        std::array<double, 5> oriented{};
        for (std::size_t k = 0; k < kAllMeasures.size(); ++k) {
            oriented[k] = orient_normalize(kAllMeasures[k], measure(kAllMeasures[k], ct));
            CHECK(oriented[k] >= 0.0);
            CHECK(oriented[k] <= 1.0);
        }
        const double dc = pair_combined(oriented);
        CHECK(dc >= 0.0);
        CHECK(dc <= 1.0);
    }
}

TEST_CASE("oriented DM decreases as disagreement grows") {
    const std::size_t m = 20;
    std::vector<int> truth(m, 0);
    std::vector<int> row_i(m, 0);  // always correct
    std::vector<int> row_j(m, 0);
    double prev = 2.0;
    for (std::size_t flips = 0; flips <= m; ++flips) {
        const auto ct = contingency(row_i, row_j, truth);
        const double oriented = orient_normalize(MeasureKind::DM, measure(MeasureKind::DM, ct));
        CHECK(oriented <= prev);
        prev = oriented;
        if (flips < m) row_j[flips] = 1;
    }
    CHECK(prev == 0.0);  // fully disagreeing pair
}

namespace {

PairDiversityTable fake_table(std::size_t n, const std::vector<double>& dcs) {
    PairDiversityTable table;
    table.pool_size = n;
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            PairEntry e;
            e.i = static_cast<std::uint32_t>(i);
            e.j = static_cast<std::uint32_t>(j);
            e.d_c = dcs[p];
            table.entries.push_back(e);
        }
    return table;
}

}  // namespace

TEST_CASE("ensemble_diversity pair means") {
    const auto table = fake_table(3, {0.2, 0.4, 0.6});

    EnsembleMask two(3);
    two.set(0);
    two.set(1);
    CHECK(ensemble_diversity(two, table) == doctest::Approx(0.2));

    EnsembleMask three(3);
    three.set(0);
    three.set(1);
    three.set(2);
    CHECK(ensemble_diversity(three, table) == doctest::Approx(0.4));

    // constant pair scores: mean equals the constant
    const auto flat = fake_table(4, std::vector<double>(6, 0.37));
    EnsembleMask all(4);
    for (std::size_t i = 0; i < 4; ++i) all.set(i);
    CHECK(ensemble_diversity(all, flat) == doctest::Approx(0.37));

    EnsembleMask singleton(3);
    singleton.set(1);
    CHECK(ensemble_diversity(singleton, table) == 1.0);

    // printed-equation compatibility mode divides by |C*| instead
    CHECK(ensemble_diversity(three, table, DiversityNorm::ActiveCountCompat) ==
          doctest::Approx(1.2 / 3.0));
}

TEST_CASE("pair table equals brute-force recomputation") {
    Rng rng(11);
    const auto lm = oracle::random_label_matrix(rng, 8, 40, 3);
    const auto table = build_pair_table(lm, 2);
    REQUIRE(table.entries.size() == 8 * 7 / 2);

    EnsembleMask mask(8);
    mask.set(1);
    mask.set(3);
    mask.set(4);
    mask.set(7);
    const double dm = ensemble_diversity(mask, table);

    // oracle: recompute d_c for the active pairs straight from the matrix
    const std::vector<std::size_t> active = {1, 3, 4, 7};
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t x = 0; x < active.size(); ++x) {
        for (std::size_t y = x + 1; y < active.size(); ++y) {
            const auto counts = oracle::count_pair(lm.rows[active[x]], lm.rows[active[y]], lm.truth);
            const auto raw = oracle::measures_from_counts(counts);
            double dc = 0.0;
            dc += (static_cast<double>(raw[0]) + 1) / 2;
            dc += static_cast<double>(raw[1]);
            dc += 1.0 - static_cast<double>(raw[2]);
            dc += (static_cast<double>(raw[3]) + 1) / 2;
            dc += (static_cast<double>(raw[4]) + 1) / 2;
            sum += dc / 5.0;
            ++pairs;
        }
    }
    CHECK(dm == doctest::Approx(sum / pairs).epsilon(1e-12));
}

TEST_CASE("pair table CSV export") {
    Rng rng(3);
    const auto lm = oracle::random_label_matrix(rng, 3, 10, 2);
    const auto table = build_pair_table(lm);
    std::ostringstream out;
    write_pair_table_csv(out, table);
    const std::string csv = out.str();
    CHECK(csv.find("i,j,a,b,c,d") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 pairs
}
