#include <doctest.h>

#include <map>

#include "cife/learners.hpp"
#include "cife/rng.hpp"
#include "oracles.hpp"

using namespace cife;

namespace {

Standardizer identity_standardizer(std::size_t width) {
    Standardizer s;
    s.mean.assign(width, 0.0);
    s.scale.assign(width, 1.0);
    return s;
}

}  // namespace

TEST_CASE("gaussian NB separates two well-separated gaussians") {
    // means +-5, unit variance: the Bayes boundary at 0 misclassifies
    // essentially nothing
    Rng rng(100);
    Matrix X(200, 1);
    std::vector<int> y(200);
    for (int i = 0; i < 200; ++i) {
        const int label = i % 2;
        X.at(i, 0) = rng.normal(label == 0 ? -5.0 : 5.0, 1.0);
        y[i] = label;
    }
    const auto clf = train(Technique::gaussian_nb(), X, y, 2, 1);
    CHECK(accuracy(clf.predict(X), y) >= 0.99);
}

TEST_CASE("knn(1) memorises its training points") {
    Matrix X(20, 2);
    std::vector<int> y(20);
    for (int i = 0; i < 20; ++i) {
        X.at(i, 0) = i;  // distinct grid points
        X.at(i, 1) = 2.0 * i;
        y[i] = i % 3;
    }
    const auto clf = train(Technique::knn(1), X, y, 3, 1);
    CHECK(accuracy(clf.predict(X), y) == 1.0);
}

TEST_CASE("single-class training data yields a constant classifier") {
    Matrix X(5, 2);
    std::vector<int> y(5, 2);
    for (int i = 0; i < 5; ++i) {
        X.at(i, 0) = i;
        X.at(i, 1) = -i;
    }
    for (auto technique : {Technique::perceptron(), Technique::knn(3), Technique::decision_tree(),
                           Technique::gaussian_nb(), Technique::mlp()}) {
        const auto clf = train(technique, X, y, 4, 9);
        Matrix probe(3, 2);
        probe.at(0, 0) = 100;
        probe.at(1, 1) = -7;
        probe.at(2, 0) = 0.5;
        CHECK(clf.predict(probe) == std::vector<int>{2, 2, 2});
    }
}

TEST_CASE("hand-built perceptron decides by the sign of the dot product") {
    TrainedClassifier clf;
    clf.technique = Technique::perceptron();
    clf.class_count = 2;
    clf.standardizer = identity_standardizer(2);
    PerceptronModel model;
    model.weights = Matrix(2, 2, 0.0);
    model.weights.at(0, 0) = -1.0;  // class 0 scores -x0
    model.weights.at(1, 0) = 1.0;   // class 1 scores +x0
    model.bias = {0.0, 0.0};
    clf.model = model;

    Matrix X(2, 2);
    X.at(0, 0) = 2.0;
    X.at(0, 1) = 7.0;
    X.at(1, 0) = -2.0;
    X.at(1, 1) = 7.0;
    CHECK(clf.predict(X) == std::vector<int>{1, 0});
}

TEST_CASE("constant classifier predicts identically everywhere") {
    TrainedClassifier clf;
    clf.technique = Technique::gaussian_nb();
    clf.class_count = 3;
    clf.standardizer = identity_standardizer(1);
    clf.model = ConstantModel{1};
    Matrix X(5, 1);
    for (int i = 0; i < 5; ++i) X.at(i, 0) = i * 3.0;
    CHECK(clf.predict(X) == std::vector<int>(5, 1));
}

TEST_CASE("training rejects bad input") {
    Matrix empty(0, 2);
    CHECK_THROWS(train(Technique::perceptron(), empty, {}, 2, 0));

    Matrix X(2, 2, 1.0);
    X.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(train(Technique::perceptron(), X, {0, 1}, 2, 0));
}

TEST_CASE("predict rejects width mismatch") {
    Matrix X(4, 3, 1.0);
    std::vector<int> y = {0, 1, 0, 1};
    X.at(1, 0) = 5;
    X.at(3, 2) = -2;
    const auto clf = train(Technique::decision_tree(), X, y, 2, 0);
    Matrix narrow(1, 2, 0.0);
    CHECK_THROWS(clf.predict(narrow));
}

TEST_CASE("training is deterministic in the seed") {
    Rng rng(5);
    Matrix X(30, 3);
    std::vector<int> y(30);
    for (int i = 0; i < 30; ++i) {
        for (int f = 0; f < 3; ++f) X.at(i, f) = rng.normal();
        y[i] = static_cast<int>(rng.below(2));
    }
    for (auto technique : {Technique::perceptron(), Technique::mlp()}) {
        const auto a = train(technique, X, y, 2, 77);
        const auto b = train(technique, X, y, 2, 77);
        CHECK(a.model == b.model);
        const auto c = train(technique, X, y, 2, 78);
        CHECK(a.predict(X) == a.predict(X));
        (void)c;
    }
}

namespace {

FoldSplit simple_split(std::size_t n) {
    FoldSplit split;
    for (std::size_t i = 0; i < n; ++i) {
        switch (i % 4) {
            case 0:
            case 1: split.train_idx.push_back(i); break;
            case 2: (i % 8 < 4 ? split.val1_idx : split.val2_idx).push_back(i); break;
            default: split.test_idx.push_back(i); break;
        }
    }
    return split;
}

}  // namespace

TEST_CASE("build_pool keeps everything when nothing must be pruned") {
    const auto ds = oracle::make_two_blobs(80, 42);
    const auto split = simple_split(80);
    const auto pool = build_pool(PoolMode::P, split, ds, 3, 3, 5);
    CHECK(pool.size() == 3);
    CHECK(pool.members[0].val1_accuracy >= pool.members[1].val1_accuracy);
    CHECK(pool.members[1].val1_accuracy >= pool.members[2].val1_accuracy);
    CHECK(pool.val1.rows.size() == 3);
    CHECK(pool.val1.truth.size() == split.val1_idx.size());
    CHECK(pool.test.truth.size() == split.test_idx.size());
}

TEST_CASE("build_pool retains the top-k of the full candidate ranking") {
    const auto ds = oracle::make_two_blobs(60, 9, 1.8);  // noisier blobs spread accuracies
    const auto split = simple_split(60);
    const auto full = build_pool(PoolMode::M, split, ds, 22, 22, 31);
    const auto pruned = build_pool(PoolMode::M, split, ds, 8, 22, 31);
    REQUIRE(pruned.size() == 8);
    for (std::size_t r = 0; r < 8; ++r) {
        CHECK(pruned.members[r].candidate_index == full.members[r].candidate_index);
        CHECK(pruned.members[r].val1_accuracy == full.members[r].val1_accuracy);
        CHECK(pruned.val1.rows[r] == full.val1.rows[r]);
    }
    // min retained >= max discarded
    CHECK(pruned.members.back().val1_accuracy >= full.members[8].val1_accuracy);
}

TEST_CASE("mode M cycles uniformly over the eleven techniques") {
    const auto ds = oracle::make_two_blobs(60, 3);
    const auto split = simple_split(60);
    const auto pool = build_pool(PoolMode::M, split, ds, 22, 22, 7);
    std::map<std::string, int> counts;
    for (const auto& member : pool.members) counts[member.clf.technique.name()]++;
    CHECK(counts.size() == 11);
    for (const auto& [name, count] : counts) {
        INFO(name);
        CHECK(count == 2);
    }
}

TEST_CASE("build_pool is deterministic across worker counts") {
    const auto ds = oracle::make_two_blobs(60, 4);
    const auto split = simple_split(60);
    const auto serial = build_pool(PoolMode::M, split, ds, 6, 12, 99, 1);
    const auto parallel = build_pool(PoolMode::M, split, ds, 6, 12, 99, 4);
    CHECK(serial.checksum == parallel.checksum);
    for (std::size_t r = 0; r < serial.size(); ++r) {
        CHECK(serial.members[r].candidate_index == parallel.members[r].candidate_index);
        CHECK(serial.val1.rows[r] == parallel.val1.rows[r]);
        CHECK(serial.val2.rows[r] == parallel.val2.rows[r]);
        CHECK(serial.test.rows[r] == parallel.test.rows[r]);
    }
}

TEST_CASE("build_pool validates sizes") {
    const auto ds = oracle::make_two_blobs(40, 1);
    const auto split = simple_split(40);
    CHECK_THROWS(build_pool(PoolMode::P, split, ds, 10, 5, 0));
    CHECK_THROWS(build_pool(PoolMode::P, split, ds, 0, 5, 0));
}
