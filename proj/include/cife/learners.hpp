#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cife/dataset.hpp"
#include "cife/matrix.hpp"
#include "cife/prediction.hpp"

namespace cife {

enum class TechniqueKind { Perceptron, Knn, DecisionTree, GaussianNb, Mlp };

struct Technique {
    TechniqueKind kind = TechniqueKind::Perceptron;
    int knn_k = 1;  // used only when kind == Knn

    std::string name() const;

    static Technique perceptron() { return {TechniqueKind::Perceptron, 0}; }
    static Technique knn(int k) { return {TechniqueKind::Knn, k}; }
    static Technique decision_tree() { return {TechniqueKind::DecisionTree, 0}; }
    static Technique gaussian_nb() { return {TechniqueKind::GaussianNb, 0}; }
    static Technique mlp() { return {TechniqueKind::Mlp, 0}; }

    // The eleven techniques of multi-technique pools: KNN k in
    // {1,3,5,7,9,13,21}, decision tree, gaussian NB, MLP, perceptron.
    static const std::vector<Technique>& multi_cycle();

    bool operator==(const Technique&) const = default;
};

// Z-score transform fitted on the fold's training rows; carried inside every
// trained model so predictions see the same scaling as training did.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;  // standard deviation, floored at 1e-12

    std::vector<double> transform_row(std::span<const double> x) const;
    Matrix transform(const Matrix& X) const;

    bool operator==(const Standardizer&) const = default;
};

Standardizer fit_standardizer(const Matrix& X, std::span<const std::size_t> rows);

struct ConstantModel {
    int label = 0;
    bool operator==(const ConstantModel&) const = default;
};

struct PerceptronModel {
    Matrix weights;             // class x feature
    std::vector<double> bias;   // per class
    bool operator==(const PerceptronModel&) const = default;
};

struct KnnModel {
    int k = 1;
    Matrix train_features;  // standardized
    std::vector<int> train_labels;
    bool operator==(const KnnModel&) const = default;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
    bool operator==(const TreeNode&) const = default;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    bool operator==(const TreeModel&) const = default;
};

struct GaussianNbModel {
    std::vector<double> log_prior;  // -inf for classes absent from training
    Matrix mean;                    // class x feature
    Matrix var;                     // class x feature, floored
    bool operator==(const GaussianNbModel&) const = default;
};

struct MlpModel {
    Matrix w1;  // hidden x feature
    std::vector<double> b1;
    Matrix w2;  // class x hidden
    std::vector<double> b2;
    bool operator==(const MlpModel&) const = default;
};

using Model =
    std::variant<ConstantModel, PerceptronModel, KnnModel, TreeModel, GaussianNbModel, MlpModel>;

struct TrainedClassifier {
    Technique technique;
    Standardizer standardizer;
    Model model;
    std::uint64_t train_seed = 0;
    int class_count = 0;

    int predict_row(std::span<const double> x) const;
    std::vector<int> predict(const Matrix& X) const;
};

// Trains one base classifier. The standardizer defaults to statistics of X
// itself; pool building passes the fold-level one so all candidates share it.
TrainedClassifier train(const Technique& technique, const Matrix& X, const std::vector<int>& y,
                        int class_count, std::uint64_t seed,
                        const Standardizer* standardizer = nullptr);

enum class PoolMode { P, M };

inline char pool_mode_char(PoolMode m) { return m == PoolMode::P ? 'P' : 'M'; }

struct PoolMember {
    TrainedClassifier clf;
    double val1_accuracy = 0.0;
    std::size_t candidate_index = 0;
};

struct ClassifierPool {
    PoolMode mode = PoolMode::P;
    std::vector<PoolMember> members;  // val1 accuracy descending, ties by candidate index
    LabelMatrix val1;
    LabelMatrix val2;
    LabelMatrix test;
    std::uint64_t checksum = 0;
    std::size_t candidates_trained = 0;

    std::size_t size() const { return members.size(); }
};

// Trains `candidates` bootstrapped classifiers and keeps the pool_size best
// by validation-1 accuracy, caching their label matrices on all three
// evaluation splits. Deterministic in (mode, split, ds, sizes, seed) for any
// worker count.
ClassifierPool build_pool(PoolMode mode, const FoldSplit& split, const Dataset& ds,
                          std::size_t pool_size, std::size_t candidates, std::uint64_t seed,
                          unsigned workers = 1);

}  // namespace cife
