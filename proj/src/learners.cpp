#include "cife/learners.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cife/parallel.hpp"
#include "cife/rng.hpp"

namespace cife {

namespace {

constexpr double kPerceptronLearningRate = 1.0;
constexpr int kPerceptronEpochs = 100;
constexpr int kTreeMaxDepth = 10;
constexpr std::size_t kTreeMinLeaf = 1;
constexpr double kNbVarianceFloor = 1e-9;
constexpr std::size_t kMlpHiddenUnits = 100;
constexpr int kMlpEpochs = 200;
constexpr double kMlpLearningRate = 0.01;
constexpr std::size_t kMlpBatchSize = 200;  // capped at the training-set size

void shuffle_order(std::vector<std::size_t>& order, Rng& rng) {
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
}

int argmax_lowest(std::span<const double> scores) {
    int best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = static_cast<int>(c);
    return best;
}

PerceptronModel train_perceptron(const Matrix& X, const std::vector<int>& y, int class_count,
                                 Rng& rng) {
    PerceptronModel model;
    model.weights = Matrix(class_count, X.cols, 0.0);
    model.bias.assign(class_count, 0.0);
    std::vector<std::size_t> order(X.rows);
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < kPerceptronEpochs; ++epoch) {
        shuffle_order(order, rng);
        for (std::size_t idx : order) {
            const auto x = X.row(idx);
            for (int c = 0; c < class_count; ++c) {
                const double target = y[idx] == c ? 1.0 : -1.0;
                auto w = model.weights.row(c);
                double score = model.bias[c];
                for (std::size_t f = 0; f < x.size(); ++f) score += w[f] * x[f];
                if (target * score <= 0.0) {
                    for (std::size_t f = 0; f < x.size(); ++f)
                        w[f] += kPerceptronLearningRate * target * x[f];
                    model.bias[c] += kPerceptronLearningRate * target;
                }
            }
        }
    }
    return model;
}

int predict_perceptron(const PerceptronModel& model, std::span<const double> x) {
    std::vector<double> scores(model.bias.size());
    for (std::size_t c = 0; c < scores.size(); ++c) {
        const auto w = model.weights.row(c);
        double s = model.bias[c];
        for (std::size_t f = 0; f < x.size(); ++f) s += w[f] * x[f];
        scores[c] = s;
    }
    return argmax_lowest(scores);
}

int predict_knn(const KnnModel& model, std::span<const double> x, int class_count) {
    const std::size_t n = model.train_features.rows;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(model.k), n);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = model.train_features.row(i);
        double d2 = 0.0;
        for (std::size_t f = 0; f < x.size(); ++f) {
            const double diff = x[f] - t[f];
            d2 += diff * diff;
        }
        dist[i] = {d2, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::vector<int> votes(class_count, 0);
    for (std::size_t i = 0; i < k; ++i) votes[model.train_labels[dist[i].second]]++;
    int best = 0;
    for (int c = 1; c < class_count; ++c)
        if (votes[c] > votes[best]) best = c;
    return best;
}

double gini(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (std::size_t n : counts) {
        const double p = static_cast<double>(n) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

int majority_label(std::span<const std::size_t> counts) {
    int best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
        if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    return best;
}

struct TreeBuilder {
    const Matrix& X;
    const std::vector<int>& y;
    int class_count;
    TreeModel model;

    int build(std::vector<std::size_t>& idx, int depth) {
        std::vector<std::size_t> counts(class_count, 0);
        for (std::size_t i : idx) counts[y[i]]++;
        const int leaf_label = majority_label(counts);
        const bool pure =
            counts[static_cast<std::size_t>(leaf_label)] == idx.size();

        const int node_id = static_cast<int>(model.nodes.size());
        model.nodes.push_back({});
        model.nodes[node_id].label = leaf_label;
        if (pure || depth >= kTreeMaxDepth || idx.size() < 2 * kTreeMinLeaf) return node_id;

        // exhaustive split search: best (gini, feature, threshold)
        double best_impurity = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;
        std::vector<std::size_t> sorted = idx;
        std::vector<std::size_t> left_counts(class_count);
        for (std::size_t f = 0; f < X.cols; ++f) {
            std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
                const double va = X.at(a, f), vb = X.at(b, f);
                return va < vb || (va == vb && a < b);
            });
            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::vector<std::size_t> right_counts = counts;
            for (std::size_t pos = 1; pos < sorted.size(); ++pos) {
                const int moved = y[sorted[pos - 1]];
                left_counts[moved]++;
                right_counts[moved]--;
                const double prev = X.at(sorted[pos - 1], f);
                const double cur = X.at(sorted[pos], f);
                if (prev == cur) continue;
                if (pos < kTreeMinLeaf || sorted.size() - pos < kTreeMinLeaf) continue;
                const double impurity =
                    (static_cast<double>(pos) * gini(left_counts, pos) +
                     static_cast<double>(sorted.size() - pos) *
                         gini(right_counts, sorted.size() - pos)) /
                    static_cast<double>(sorted.size());
                if (impurity < best_impurity) {
                    best_impurity = impurity;
                    best_feature = static_cast<int>(f);
                    best_threshold = prev + (cur - prev) / 2.0;
                }
            }
        }
        if (best_feature < 0) return node_id;  // all feature values identical

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (X.at(i, best_feature) <= best_threshold)
                left_idx.push_back(i);
            else
                right_idx.push_back(i);
        }
        const int left = build(left_idx, depth + 1);
        const int right = build(right_idx, depth + 1);
        model.nodes[node_id].feature = best_feature;
        model.nodes[node_id].threshold = best_threshold;
        model.nodes[node_id].left = left;
        model.nodes[node_id].right = right;
        return node_id;
    }
};

TreeModel train_tree(const Matrix& X, const std::vector<int>& y, int class_count) {
    TreeBuilder builder{X, y, class_count, {}};
    std::vector<std::size_t> idx(X.rows);
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx, 0);
    return builder.model;
}

int predict_tree(const TreeModel& model, std::span<const double> x) {
    int node = 0;
    while (model.nodes[node].feature >= 0) {
        const auto& n = model.nodes[node];
        node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return model.nodes[node].label;
}

GaussianNbModel train_nb(const Matrix& X, const std::vector<int>& y, int class_count) {
    GaussianNbModel model;
    model.mean = Matrix(class_count, X.cols, 0.0);
    model.var = Matrix(class_count, X.cols, 0.0);
    model.log_prior.assign(class_count, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> counts(class_count, 0);
    for (std::size_t i = 0; i < X.rows; ++i) {
        counts[y[i]]++;
        for (std::size_t f = 0; f < X.cols; ++f) model.mean.at(y[i], f) += X.at(i, f);
    }
    for (int c = 0; c < class_count; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t f = 0; f < X.cols; ++f) model.mean.at(c, f) /= counts[c];
        model.log_prior[c] =
            std::log(static_cast<double>(counts[c]) / static_cast<double>(X.rows));
    }
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t f = 0; f < X.cols; ++f) {
            const double diff = X.at(i, f) - model.mean.at(y[i], f);
            model.var.at(y[i], f) += diff * diff;
        }
    }
    for (int c = 0; c < class_count; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t f = 0; f < X.cols; ++f) {
            double v = model.var.at(c, f) / counts[c];
            model.var.at(c, f) = std::max(v, kNbVarianceFloor);
        }
    }
    return model;
}

int predict_nb(const GaussianNbModel& model, std::span<const double> x) {
    const std::size_t class_count = model.log_prior.size();
    std::vector<double> scores(class_count, -std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < class_count; ++c) {
        if (!std::isfinite(model.log_prior[c])) continue;
        double s = model.log_prior[c];
        for (std::size_t f = 0; f < x.size(); ++f) {
            const double v = model.var.at(c, f);
            const double diff = x[f] - model.mean.at(c, f);
            s += -0.5 * std::log(2.0 * 3.14159265358979323846 * v) - diff * diff / (2.0 * v);
        }
        scores[c] = s;
    }
    return argmax_lowest(scores);
}

// Minibatch SGD with softmax cross-entropy, batches of min(200, n) as in the
// usual library default.
MlpModel train_mlp(const Matrix& X, const std::vector<int>& y, int class_count, Rng& rng) {
    const std::size_t hidden = kMlpHiddenUnits;
    MlpModel model;
    model.w1 = Matrix(hidden, X.cols);
    model.b1.assign(hidden, 0.0);
    model.w2 = Matrix(class_count, hidden);
    model.b2.assign(class_count, 0.0);
    const double s1 = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(X.cols, 1)));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (double& w : model.w1.data) w = rng.normal(0.0, s1);
    for (double& w : model.w2.data) w = rng.normal(0.0, s2);

    const std::size_t batch_size = std::min<std::size_t>(kMlpBatchSize, X.rows);
    std::vector<std::size_t> order(X.rows);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> h(hidden), z(class_count), p(class_count), dh(hidden);
    Matrix gw1(hidden, X.cols), gw2(class_count, hidden);
    std::vector<double> gb1(hidden), gb2(class_count);
    for (int epoch = 0; epoch < kMlpEpochs; ++epoch) {
        shuffle_order(order, rng);
        for (std::size_t begin = 0; begin < X.rows; begin += batch_size) {
            const std::size_t end = std::min(begin + batch_size, X.rows);
            std::fill(gw1.data.begin(), gw1.data.end(), 0.0);
            std::fill(gw2.data.begin(), gw2.data.end(), 0.0);
            std::fill(gb1.begin(), gb1.end(), 0.0);
            std::fill(gb2.begin(), gb2.end(), 0.0);
            for (std::size_t pos = begin; pos < end; ++pos) {
                const std::size_t idx = order[pos];
                const auto x = X.row(idx);
                for (std::size_t u = 0; u < hidden; ++u) {
                    const auto w = model.w1.row(u);
                    double a = model.b1[u];
                    for (std::size_t f = 0; f < x.size(); ++f) a += w[f] * x[f];
                    h[u] = std::tanh(a);
                }
                double z_max = -std::numeric_limits<double>::infinity();
                for (int c = 0; c < class_count; ++c) {
                    const auto w = model.w2.row(c);
                    double a = model.b2[c];
                    for (std::size_t u = 0; u < hidden; ++u) a += w[u] * h[u];
                    z[c] = a;
                    z_max = std::max(z_max, a);
                }
                double denom = 0.0;
                for (int c = 0; c < class_count; ++c) denom += std::exp(z[c] - z_max);
                for (int c = 0; c < class_count; ++c) p[c] = std::exp(z[c] - z_max) / denom;

                std::fill(dh.begin(), dh.end(), 0.0);
                for (int c = 0; c < class_count; ++c) {
                    const double dz = p[c] - (y[idx] == c ? 1.0 : 0.0);
                    const auto w = model.w2.row(c);
                    auto g = gw2.row(c);
                    for (std::size_t u = 0; u < hidden; ++u) {
                        dh[u] += w[u] * dz;
                        g[u] += dz * h[u];
                    }
                    gb2[c] += dz;
                }
                for (std::size_t u = 0; u < hidden; ++u) {
                    const double da = dh[u] * (1.0 - h[u] * h[u]);
                    auto g = gw1.row(u);
                    for (std::size_t f = 0; f < x.size(); ++f) g[f] += da * x[f];
                    gb1[u] += da;
                }
            }
            const double step = kMlpLearningRate / static_cast<double>(end - begin);
            for (std::size_t i = 0; i < model.w1.data.size(); ++i)
                model.w1.data[i] -= step * gw1.data[i];
            for (std::size_t i = 0; i < model.w2.data.size(); ++i)
                model.w2.data[i] -= step * gw2.data[i];
            for (std::size_t u = 0; u < hidden; ++u) model.b1[u] -= step * gb1[u];
            for (int c = 0; c < class_count; ++c) model.b2[c] -= step * gb2[c];
        }
    }
    return model;
}

int predict_mlp(const MlpModel& model, std::span<const double> x) {
    const std::size_t hidden = model.b1.size();
    std::vector<double> h(hidden);
    for (std::size_t u = 0; u < hidden; ++u) {
        const auto w = model.w1.row(u);
        double a = model.b1[u];
        for (std::size_t f = 0; f < x.size(); ++f) a += w[f] * x[f];
        h[u] = std::tanh(a);
    }
    std::vector<double> z(model.b2.size());
    for (std::size_t c = 0; c < z.size(); ++c) {
        const auto w = model.w2.row(c);
        double a = model.b2[c];
        for (std::size_t u = 0; u < hidden; ++u) a += w[u] * h[u];
        z[c] = a;
    }
    return argmax_lowest(z);
}

}  // namespace

std::string Technique::name() const {
    switch (kind) {
        case TechniqueKind::Perceptron: return "perceptron";
        case TechniqueKind::Knn: return "knn" + std::to_string(knn_k);
        case TechniqueKind::DecisionTree: return "tree";
        case TechniqueKind::GaussianNb: return "gnb";
        case TechniqueKind::Mlp: return "mlp";
    }
    return "?";
}

const std::vector<Technique>& Technique::multi_cycle() {
    static const std::vector<Technique> cycle = {
        knn(1), knn(3), knn(5), knn(7), knn(9), knn(13), knn(21),
        decision_tree(), gaussian_nb(), mlp(), perceptron()};
    return cycle;
}

std::vector<double> Standardizer::transform_row(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t f = 0; f < x.size(); ++f) out[f] = (x[f] - mean[f]) / scale[f];
    return out;
}

Matrix Standardizer::transform(const Matrix& X) const {
    Matrix out(X.rows, X.cols);
    for (std::size_t r = 0; r < X.rows; ++r)
        for (std::size_t c = 0; c < X.cols; ++c)
            out.at(r, c) = (X.at(r, c) - mean[c]) / scale[c];
    return out;
}

Standardizer fit_standardizer(const Matrix& X, std::span<const std::size_t> rows) {
    if (rows.empty()) throw std::invalid_argument("standardizer needs at least one row");
    Standardizer s;
    s.mean.assign(X.cols, 0.0);
    s.scale.assign(X.cols, 0.0);
    for (std::size_t i : rows)
        for (std::size_t c = 0; c < X.cols; ++c) s.mean[c] += X.at(i, c);
    for (double& m : s.mean) m /= static_cast<double>(rows.size());
    for (std::size_t i : rows) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            const double diff = X.at(i, c) - s.mean[c];
            s.scale[c] += diff * diff;
        }
    }
    for (double& v : s.scale) {
        v = std::sqrt(v / static_cast<double>(rows.size()));
        if (v < 1e-12) v = 1.0;  // constant feature: leave it centered
    }
    return s;
}

int TrainedClassifier::predict_row(std::span<const double> x) const {
    const std::vector<double> z = standardizer.transform_row(x);
    return std::visit(
        [&](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantModel>) return m.label;
            else if constexpr (std::is_same_v<T, PerceptronModel>) return predict_perceptron(m, z);
            else if constexpr (std::is_same_v<T, KnnModel>) return predict_knn(m, z, class_count);
            else if constexpr (std::is_same_v<T, TreeModel>) return predict_tree(m, z);
            else if constexpr (std::is_same_v<T, GaussianNbModel>) return predict_nb(m, z);
            else return predict_mlp(m, z);
        },
        model);
}

std::vector<int> TrainedClassifier::predict(const Matrix& X) const {
    if (X.cols != standardizer.mean.size())
        throw std::invalid_argument("predict: feature width differs from training width");
    std::vector<int> out(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) out[r] = predict_row(X.row(r));
    return out;
}

TrainedClassifier train(const Technique& technique, const Matrix& X, const std::vector<int>& y,
                        int class_count, std::uint64_t seed, const Standardizer* standardizer) {
    if (X.rows == 0) throw std::invalid_argument("train: no instances");
    if (y.size() != X.rows) throw std::invalid_argument("train: label/feature row mismatch");
    if (class_count < 1) throw std::invalid_argument("train: class count must be positive");
    for (double v : X.data)
        if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite feature value");

    TrainedClassifier clf;
    clf.technique = technique;
    clf.train_seed = seed;
    clf.class_count = class_count;
    clf.standardizer = standardizer ? *standardizer : [&] {
        std::vector<std::size_t> all(X.rows);
        std::iota(all.begin(), all.end(), 0);
        return fit_standardizer(X, all);
    }();

    const Matrix Z = clf.standardizer.transform(X);

    int first = y.front();
    bool single_class = true;
    for (int label : y)
        if (label != first) {
            single_class = false;
            break;
        }
    if (single_class) {
        clf.model = ConstantModel{first};
        return clf;
    }

    Rng rng(seed);
    switch (technique.kind) {
        case TechniqueKind::Perceptron:
            clf.model = train_perceptron(Z, y, class_count, rng);
            break;
        case TechniqueKind::Knn:
            clf.model = KnnModel{technique.knn_k, Z, y};
            break;
        case TechniqueKind::DecisionTree:
            clf.model = train_tree(Z, y, class_count);
            break;
        case TechniqueKind::GaussianNb:
            clf.model = train_nb(Z, y, class_count);
            break;
        case TechniqueKind::Mlp:
            clf.model = train_mlp(Z, y, class_count, rng);
            break;
    }
    return clf;
}

namespace {

Matrix gather_rows(const Matrix& X, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), X.cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < X.cols; ++c) out.at(r, c) = X.at(rows[r], c);
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& y, const std::vector<std::size_t>& rows) {
    std::vector<int> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out[r] = y[rows[r]];
    return out;
}

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

ClassifierPool build_pool(PoolMode mode, const FoldSplit& split, const Dataset& ds,
                          std::size_t pool_size, std::size_t candidates, std::uint64_t seed,
                          unsigned workers) {
    if (pool_size == 0) throw std::invalid_argument("build_pool: pool size must be positive");
    if (pool_size > candidates)
        throw std::invalid_argument("build_pool: pool size exceeds candidate count");
    if (split.train_idx.empty()) throw std::invalid_argument("build_pool: empty training split");

    const Standardizer standardizer = fit_standardizer(ds.features, split.train_idx);
    const Matrix x_val1 = gather_rows(ds.features, split.val1_idx);
    const Matrix x_val2 = gather_rows(ds.features, split.val2_idx);
    const Matrix x_test = gather_rows(ds.features, split.test_idx);

    const auto& cycle = Technique::multi_cycle();
    auto technique_for = [&](std::size_t i) {
        return mode == PoolMode::P ? Technique::perceptron() : cycle[i % cycle.size()];
    };
    auto train_candidate = [&](std::size_t i) {
        const BootstrapSample bs =
            bootstrap(split.train_idx, derive_seed(seed, "bootstrap", {i}));
        const Matrix xb = gather_rows(ds.features, bs.indices);
        const std::vector<int> yb = gather_labels(ds.labels, bs.indices);
        return train(technique_for(i), xb, yb, ds.class_count, derive_seed(seed, "train", {i}),
                     &standardizer);
    };

    // Pass 1: rank all candidates by validation-1 accuracy, keeping only the
    // score so memory stays flat; the survivors are retrained in pass 2 (same
    // seeds, so bit-identical models).
    std::vector<double> val1_acc(candidates);
    parallel_for(candidates, workers, [&](std::size_t i) {
        const TrainedClassifier clf = train_candidate(i);
        val1_acc[i] = accuracy(clf.predict(x_val1), gather_labels(ds.labels, split.val1_idx));
    });

    std::vector<std::size_t> order(candidates);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (val1_acc[a] != val1_acc[b]) return val1_acc[a] > val1_acc[b];
        return a < b;
    });
    order.resize(pool_size);

    ClassifierPool pool;
    pool.mode = mode;
    pool.candidates_trained = candidates;
    pool.members.resize(pool_size);
    pool.val1.rows.resize(pool_size);
    pool.val2.rows.resize(pool_size);
    pool.test.rows.resize(pool_size);
    parallel_for(pool_size, workers, [&](std::size_t r) {
        const std::size_t i = order[r];
        PoolMember& member = pool.members[r];
        member.clf = train_candidate(i);
        member.val1_accuracy = val1_acc[i];
        member.candidate_index = i;
        pool.val1.rows[r] = member.clf.predict(x_val1);
        pool.val2.rows[r] = member.clf.predict(x_val2);
        pool.test.rows[r] = member.clf.predict(x_test);
    });
    pool.val1.truth = gather_labels(ds.labels, split.val1_idx);
    pool.val2.truth = gather_labels(ds.labels, split.val2_idx);
    pool.test.truth = gather_labels(ds.labels, split.test_idx);
    pool.val1.split_tag = "val1";
    pool.val2.split_tag = "val2";
    pool.test.split_tag = "test";

    std::uint64_t h = 0xcbf29ce484222325ULL;
    const char mode_tag = pool_mode_char(mode);
    hash_bytes(h, &mode_tag, 1);
    for (const LabelMatrix* lm : {&pool.val1, &pool.val2, &pool.test}) {
        for (const auto& row : lm->rows) hash_bytes(h, row.data(), row.size() * sizeof(int));
        hash_bytes(h, lm->truth.data(), lm->truth.size() * sizeof(int));
    }
    for (const auto& member : pool.members)
        hash_bytes(h, &member.val1_accuracy, sizeof(double));
    pool.checksum = h;
    return pool;
}

}  // namespace cife
