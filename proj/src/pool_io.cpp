#include "cife/pool_io.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace cife {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) throw std::runtime_error("pool file: bad matrix shape");
    return m;
}

json technique_to_json(const Technique& t) {
    return {{"name", t.name()}, {"kind", static_cast<int>(t.kind)}, {"knn_k", t.knn_k}};
}

Technique technique_from_json(const json& j) {
    Technique t;
    t.kind = static_cast<TechniqueKind>(j.at("kind").get<int>());
    t.knn_k = j.at("knn_k").get<int>();
    return t;
}

json model_to_json(const Model& model) {
    json j;
    if (const auto* m = std::get_if<ConstantModel>(&model)) {
        j["type"] = "constant";
        j["label"] = m->label;
    } else if (const auto* m = std::get_if<PerceptronModel>(&model)) {
        j["type"] = "perceptron";
        j["weights"] = matrix_to_json(m->weights);
        j["bias"] = m->bias;
    } else if (const auto* m = std::get_if<KnnModel>(&model)) {
        j["type"] = "knn";
        j["k"] = m->k;
        j["features"] = matrix_to_json(m->train_features);
        j["labels"] = m->train_labels;
    } else if (const auto* m = std::get_if<TreeModel>(&model)) {
        j["type"] = "tree";
        auto nodes = json::array();
        for (const auto& n : m->nodes)
            nodes.push_back({{"f", n.feature},
                             {"t", n.threshold},
                             {"l", n.left},
                             {"r", n.right},
                             {"y", n.label}});
        j["nodes"] = std::move(nodes);
    } else if (const auto* m = std::get_if<GaussianNbModel>(&model)) {
        j["type"] = "gnb";
        auto priors = json::array();
        for (double lp : m->log_prior)
            priors.push_back(std::isfinite(lp) ? json(lp) : json(nullptr));
        j["log_prior"] = std::move(priors);
        j["mean"] = matrix_to_json(m->mean);
        j["var"] = matrix_to_json(m->var);
    } else if (const auto* m = std::get_if<MlpModel>(&model)) {
        j["type"] = "mlp";
        j["w1"] = matrix_to_json(m->w1);
        j["b1"] = m->b1;
        j["w2"] = matrix_to_json(m->w2);
        j["b2"] = m->b2;
    }
    return j;
}

Model model_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") return ConstantModel{j.at("label").get<int>()};
    if (type == "perceptron") {
        PerceptronModel m;
        m.weights = matrix_from_json(j.at("weights"));
        m.bias = j.at("bias").get<std::vector<double>>();
        return m;
    }
    if (type == "knn") {
        KnnModel m;
        m.k = j.at("k").get<int>();
        m.train_features = matrix_from_json(j.at("features"));
        m.train_labels = j.at("labels").get<std::vector<int>>();
        return m;
    }
    if (type == "tree") {
        TreeModel m;
        for (const auto& n : j.at("nodes"))
            m.nodes.push_back({n.at("f").get<int>(), n.at("t").get<double>(),
                               n.at("l").get<int>(), n.at("r").get<int>(),
                               n.at("y").get<int>()});
        return m;
    }
    if (type == "gnb") {
        GaussianNbModel m;
        for (const auto& lp : j.at("log_prior"))
            m.log_prior.push_back(lp.is_null() ? -std::numeric_limits<double>::infinity()
                                               : lp.get<double>());
        m.mean = matrix_from_json(j.at("mean"));
        m.var = matrix_from_json(j.at("var"));
        return m;
    }
    if (type == "mlp") {
        MlpModel m;
        m.w1 = matrix_from_json(j.at("w1"));
        m.b1 = j.at("b1").get<std::vector<double>>();
        m.w2 = matrix_from_json(j.at("w2"));
        m.b2 = j.at("b2").get<std::vector<double>>();
        return m;
    }
    throw std::runtime_error("pool file: unknown model type '" + type + "'");
}

json label_matrix_to_json(const LabelMatrix& lm) {
    return {{"rows", lm.rows}, {"truth", lm.truth}, {"split", lm.split_tag}};
}

LabelMatrix label_matrix_from_json(const json& j) {
    LabelMatrix lm;
    lm.rows = j.at("rows").get<std::vector<std::vector<int>>>();
    lm.truth = j.at("truth").get<std::vector<int>>();
    lm.split_tag = j.at("split").get<std::string>();
    return lm;
}

}  // namespace

void save_pool(const ClassifierPool& pool, const std::string& path) {
    json j;
    j["format"] = "cife-pool";
    j["version"] = 1;
    j["mode"] = std::string(1, pool_mode_char(pool.mode));
    j["candidates_trained"] = pool.candidates_trained;
    j["checksum"] = pool.checksum;
    auto members = json::array();
    for (const auto& member : pool.members) {
        members.push_back({{"technique", technique_to_json(member.clf.technique)},
                           {"standardizer",
                            {{"mean", member.clf.standardizer.mean},
                             {"scale", member.clf.standardizer.scale}}},
                           {"model", model_to_json(member.clf.model)},
                           {"train_seed", member.clf.train_seed},
                           {"class_count", member.clf.class_count},
                           {"val1_accuracy", member.val1_accuracy},
                           {"candidate_index", member.candidate_index}});
    }
    j["members"] = std::move(members);
    j["val1"] = label_matrix_to_json(pool.val1);
    j["val2"] = label_matrix_to_json(pool.val2);
    j["test"] = label_matrix_to_json(pool.test);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pool file: " + path);
    out << j.dump();
}

ClassifierPool load_pool(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pool file: " + path);
    json j = json::parse(in);
    if (j.value("format", "") != "cife-pool" || j.value("version", 0) != 1)
        throw std::runtime_error(path + ": not a version-1 cife pool file");

    ClassifierPool pool;
    pool.mode = j.at("mode").get<std::string>() == "P" ? PoolMode::P : PoolMode::M;
    pool.candidates_trained = j.at("candidates_trained").get<std::size_t>();
    pool.checksum = j.at("checksum").get<std::uint64_t>();
    for (const auto& mj : j.at("members")) {
        PoolMember member;
        member.clf.technique = technique_from_json(mj.at("technique"));
        member.clf.standardizer.mean = mj.at("standardizer").at("mean").get<std::vector<double>>();
        member.clf.standardizer.scale =
            mj.at("standardizer").at("scale").get<std::vector<double>>();
        member.clf.model = model_from_json(mj.at("model"));
        member.clf.train_seed = mj.at("train_seed").get<std::uint64_t>();
        member.clf.class_count = mj.at("class_count").get<int>();
        member.val1_accuracy = mj.at("val1_accuracy").get<double>();
        member.candidate_index = mj.at("candidate_index").get<std::size_t>();
        pool.members.push_back(std::move(member));
    }
    pool.val1 = label_matrix_from_json(j.at("val1"));
    pool.val2 = label_matrix_from_json(j.at("val2"));
    pool.test = label_matrix_from_json(j.at("test"));
    return pool;
}

}  // namespace cife
