#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "cife/dataset.hpp"
#include "oracles.hpp"

using namespace cife;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "cife_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_csv single row") {
    TempCsv csv("1,2,A\n");
    const Dataset ds = load_csv(csv.path);
    CHECK(ds.n_instances() == 1);
    CHECK(ds.n_attributes() == 2);
    CHECK(ds.class_count == 1);
    CHECK(ds.labels == std::vector<int>{0});
    CHECK(ds.features.at(0, 0) == 1.0);
    CHECK(ds.features.at(0, 1) == 2.0);
}

TEST_CASE("load_csv first-appearance label encoding") {
    TempCsv csv("1,b\n2,a\n3,b\n");
    const Dataset ds = load_csv(csv.path);
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.class_names == std::vector<std::string>{"b", "a"});
}

TEST_CASE("load_csv header auto-detection") {
    TempCsv with_header("sepal,petal,species\n1.0,2.0,x\n3.0,4.0,y\n");
    const Dataset a = load_csv(with_header.path);
    CHECK(a.n_instances() == 2);
    CHECK(a.class_count == 2);

    TempCsv without_header("1.0,2.0,x\n3.0,4.0,y\n");
    const Dataset b = load_csv(without_header.path);
    CHECK(b.n_instances() == 2);
}

TEST_CASE("load_csv label column override") {
    TempCsv csv("x,1.5,2.5\ny,3.5,4.5\n");
    const Dataset ds = load_csv(csv.path, LabelColumn::at(0));
    CHECK(ds.n_attributes() == 2);
    CHECK(ds.class_names == std::vector<std::string>{"x", "y"});
    CHECK(ds.features.at(1, 0) == 3.5);
}

TEST_CASE("load_csv error paths") {
    TempCsv empty("");
    CHECK_THROWS(load_csv(empty.path));

    TempCsv bad("1,2,a\n1,oops,b\n");
    CHECK_THROWS_WITH_AS(load_csv(bad.path), doctest::Contains("row 2"), std::runtime_error);

    TempCsv ragged("1,2,a\n1,b\n");
    CHECK_THROWS(load_csv(ragged.path));

    TempCsv nonfinite("1,inf,a\n");
    CHECK_THROWS(load_csv(nonfinite.path));

    CHECK_THROWS(load_csv("does_not_exist.csv"));
}

TEST_CASE("load_csv warns about tiny classes") {
    TempCsv csv("1,a\n2,a\n3,a\n4,a\n5,a\n6,a\n7,b\n");
    std::vector<std::string> warnings;
    load_csv(csv.path, LabelColumn::last(), &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("'b'") != std::string::npos);
}

namespace {

Dataset synthetic_dataset(std::size_t n, const std::vector<std::size_t>& class_sizes) {
    Dataset ds;
    ds.name = "synthetic";
    ds.class_count = static_cast<int>(class_sizes.size());
    ds.features = Matrix(n, 1);
    ds.labels.reserve(n);
    for (std::size_t c = 0; c < class_sizes.size(); ++c)
        for (std::size_t i = 0; i < class_sizes[c]; ++i) ds.labels.push_back(static_cast<int>(c));
    for (std::size_t i = 0; i < n; ++i) ds.features.at(i, 0) = static_cast<double>(i);
    for (std::size_t c = 0; c < class_sizes.size(); ++c) ds.class_names.push_back("c");
    return ds;
}

}  // namespace

TEST_CASE("make_folds balances 625 instances into 104/105 test partitions") {
    const Dataset ds = synthetic_dataset(625, {288, 49, 288});
    const auto folds = make_folds(ds, 6, 7);
    REQUIRE(folds.size() == 6);
    for (const auto& f : folds) {
        CHECK(f.test_idx.size() >= 104);
        CHECK(f.test_idx.size() <= 105);
    }
}

TEST_CASE("make_folds is a rotation partition") {
    const Dataset ds = synthetic_dataset(100, {60, 40});
    const auto folds = make_folds(ds, 6, 3);

    // each index is in test exactly once across the runs
    std::vector<int> test_hits(100, 0);
    for (const auto& f : folds)
        for (std::size_t i : f.test_idx) test_hits[i]++;
    for (int h : test_hits) CHECK(h == 1);

    // within a run: disjoint cover of everything
    for (const auto& f : folds) {
        std::set<std::size_t> all;
        std::size_t total = 0;
        for (const auto* part : {&f.train_idx, &f.val1_idx, &f.val2_idx, &f.test_idx}) {
            all.insert(part->begin(), part->end());
            total += part->size();
        }
        CHECK(all.size() == 100);
        CHECK(total == 100);
    }

    // train draws from exactly 3 of the 6 partitions
    CHECK(folds[0].train_idx.size() ==
          100 - folds[0].test_idx.size() - folds[0].val1_idx.size() - folds[0].val2_idx.size());
}

TEST_CASE("make_folds stratification keeps per-class chunks within one of each other") {
    const Dataset ds = synthetic_dataset(337, {200, 88, 49});
    const std::size_t k = 6;
    const auto folds = make_folds(ds, k, 11);
    const std::vector<std::size_t> class_sizes = {200, 88, 49};
    for (const auto& f : folds) {
        std::vector<std::size_t> per_class(3, 0);
        for (std::size_t i : f.test_idx) per_class[ds.labels[i]]++;
        for (int c = 0; c < 3; ++c) {
            CHECK(per_class[c] >= class_sizes[c] / k);
            CHECK(per_class[c] <= class_sizes[c] / k + 1);
        }
    }
}

TEST_CASE("make_folds determinism and errors") {
    const Dataset ds = synthetic_dataset(60, {30, 30});
    const auto a = make_folds(ds, 6, 99);
    const auto b = make_folds(ds, 6, 99);
    for (std::size_t r = 0; r < a.size(); ++r) {
        CHECK(a[r].train_idx == b[r].train_idx);
        CHECK(a[r].test_idx == b[r].test_idx);
    }
    const auto c = make_folds(ds, 6, 100);
    bool same = true;
    for (std::size_t r = 0; r < a.size(); ++r)
        if (a[r].test_idx != c[r].test_idx) same = false;
    CHECK_FALSE(same);

    CHECK_THROWS(make_folds(ds, 3, 0));
    CHECK_THROWS(make_folds(ds, 61, 0));
}

TEST_CASE("folds export to JSON") {
    const Dataset ds = synthetic_dataset(24, {12, 12});
    const auto folds = make_folds(ds, 6, 1);
    const std::string j = folds_to_json(folds);
    CHECK(j.find("\"format\": \"cife-folds\"") != std::string::npos);
    CHECK(j.find("\"train\"") != std::string::npos);
}

TEST_CASE("bootstrap basics") {
    const std::vector<std::size_t> single = {7};
    const auto s = bootstrap(single, 5);
    CHECK(s.indices == std::vector<std::size_t>{7});

    const std::vector<std::size_t> train = {2, 4, 6, 8, 10};
    const auto a = bootstrap(train, 123);
    const auto b = bootstrap(train, 123);
    CHECK(a.indices == b.indices);
    CHECK(a.indices.size() == train.size());
    for (std::size_t i : a.indices)
        CHECK(std::find(train.begin(), train.end(), i) != train.end());

    CHECK_THROWS(bootstrap({}, 0));
}

TEST_CASE("bootstrap hits the 0.632 distinct fraction") {
    // distinct fraction of an n-sample converges to 1 - (1-1/n)^n
    std::vector<std::size_t> train(1000);
    for (std::size_t i = 0; i < train.size(); ++i) train[i] = i;
    double distinct_sum = 0.0;
    const int reps = 30;
    for (int r = 0; r < reps; ++r) {
        const auto s = bootstrap(train, 1000 + r);
        std::set<std::size_t> uniq(s.indices.begin(), s.indices.end());
        distinct_sum += static_cast<double>(uniq.size()) / 1000.0;
    }
    CHECK(distinct_sum / reps == doctest::Approx(0.632).epsilon(0.02 / 0.632));
}
