#include <doctest.h>

#include "cife/baselines.hpp"
#include "oracles.hpp"

using namespace cife;

TEST_CASE("kappa of full agreement is exactly one") {
    MultiClassContingency ct;
    ct.class_count = 3;
    ct.counts = {10, 0, 0, 0, 25, 0, 0, 0, 15};
    ct.m = 50;
    CHECK(kappa(ct) == 1.0);
}

TEST_CASE("kappa worked example") {
    MultiClassContingency ct;
    ct.class_count = 2;
    ct.counts = {40, 10, 10, 40};
    ct.m = 100;
    CHECK(kappa(ct) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("kappa of independent classifiers is near zero") {
    Rng rng(500);
    const std::size_t m = 10000;
    std::vector<int> a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = static_cast<int>(rng.below(3));
        b[i] = static_cast<int>(rng.below(3));
    }
    const auto ct = contingency_table(a, b, 3);
    CHECK(std::abs(kappa(ct)) < 0.05);
}

TEST_CASE("kappa symmetry and self-agreement") {
    Rng rng(77);
    std::vector<int> a(200), b(200);
    for (auto& v : a) v = static_cast<int>(rng.below(4));
    for (auto& v : b) v = static_cast<int>(rng.below(4));
    const auto ct = contingency_table(a, b, 4);
    const auto tr = contingency_table(b, a, 4);
    CHECK(kappa(ct) == doctest::Approx(kappa(tr)).epsilon(1e-12));
    CHECK(kappa(contingency_table(a, a, 4)) == 1.0);
}

TEST_CASE("kappa degenerate constant-label convention") {
    // both classifiers always answer the same single label: theta2 = 1
    std::vector<int> same(10, 1);
    CHECK(kappa(contingency_table(same, same, 2)) == 1.0);
}

TEST_CASE("kappa_prune walks the lowest-kappa pairs first") {
    LabelMatrix lm;
    lm.truth = {0, 0, 1, 1};
    lm.rows = {
        {0, 0, 1, 1},  // r0
        {1, 1, 0, 0},  // r1: never agrees with r0 -> kappa -1
        {0, 1, 0, 1},  // r2
        {0, 1, 0, 1},  // r3 == r2 -> kappa 1
    };
    const auto mask = kappa_prune(lm, 2);
    CHECK(mask.count() == 2);
    CHECK(mask.test(0));
    CHECK(mask.test(1));
}

TEST_CASE("kappa_prune budget edges") {
    Rng rng(21);
    const auto lm = oracle::random_label_matrix(rng, 6, 30, 2);

    const auto full = kappa_prune(lm, 6);
    CHECK(full.count() == 6);

    LabelMatrix two;
    two.truth = lm.truth;
    two.rows = {lm.rows[0], lm.rows[1]};
    const auto both = kappa_prune(two, 2);
    CHECK(both.count() == 2);

    CHECK_THROWS(kappa_prune(lm, 1));
    CHECK_THROWS(kappa_prune(lm, 7));
}

TEST_CASE("kappa_prune lands within one classifier of the budget") {
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto lm = oracle::random_label_matrix(rng, 12, 40, 3);
        for (std::size_t budget : {2UL, 5UL, 9UL}) {
            const auto mask = kappa_prune(lm, budget);
            CHECK(mask.count() >= budget);
            CHECK(mask.count() <= budget + 1);
        }
    }
}

TEST_CASE("bagging_full equals the all-ones evaluation") {
    Rng rng(90);
    const auto lm = oracle::random_label_matrix(rng, 9, 35, 4);
    EnsembleMask all(9);
    for (std::size_t i = 0; i < 9; ++i) all.set(i);
    const auto a = bagging_full(lm);
    const auto b = evaluate(all, lm);
    CHECK(a.test_accuracy == b.test_accuracy);
    CHECK(a.ensemble_size == 9);

    LabelMatrix one;
    one.truth = lm.truth;
    one.rows = {lm.rows[0]};
    CHECK(bagging_full(one).test_accuracy == doctest::Approx(accuracy(lm.rows[0], lm.truth)));
}
