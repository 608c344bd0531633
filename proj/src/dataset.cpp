#include "cife/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cife/rng.hpp"

namespace cife {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !token.empty();
}

}  // namespace

Dataset load_csv(const std::string& path, LabelColumn label_column,
                 std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error("empty dataset file: " + path);

    const std::size_t n_cols = rows.front().size();
    if (n_cols < 2) throw std::runtime_error(path + ": need at least one feature column and a label column");
    const std::size_t label_idx = label_column.index.value_or(n_cols - 1);
    if (label_idx >= n_cols)
        throw std::runtime_error(path + ": label column out of range");

    // Header iff the first row has a non-numeric cell outside the label column.
    bool has_header = false;
    for (std::size_t c = 0; c < n_cols; ++c) {
        if (c == label_idx) continue;
        double unused;
        if (!parse_double(rows.front()[c], unused)) {
            has_header = true;
            break;
        }
    }

    const std::size_t first_data_row = has_header ? 1 : 0;
    const std::size_t n_rows = rows.size() - first_data_row;
    if (n_rows == 0) throw std::runtime_error(path + ": no data rows");

    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    ds.features = Matrix(n_rows, n_cols - 1);
    ds.labels.resize(n_rows);

    std::map<std::string, int> label_codes;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& cells = rows[r + first_data_row];
        if (cells.size() != n_cols) {
            throw std::runtime_error(path + ": row " + std::to_string(r + first_data_row + 1) +
                                     " has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(n_cols));
        }
        std::size_t feature_col = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_idx) continue;
            double value;
            if (!parse_double(cells[c], value)) {
                throw std::runtime_error(path + ": row " + std::to_string(r + first_data_row + 1) +
                                         ", column " + std::to_string(c + 1) +
                                         ": cannot parse '" + cells[c] + "' as a number");
            }
            if (!std::isfinite(value)) {
                throw std::runtime_error(path + ": row " + std::to_string(r + first_data_row + 1) +
                                         ", column " + std::to_string(c + 1) +
                                         ": non-finite feature value");
            }
            ds.features.at(r, feature_col++) = value;
        }
        const std::string& token = cells[label_idx];
        auto it = label_codes.find(token);
        if (it == label_codes.end()) {
            const int code = static_cast<int>(label_codes.size());
            it = label_codes.emplace(token, code).first;
            ds.class_names.resize(code + 1);
            ds.class_names[code] = token;
        }
        ds.labels[r] = it->second;
    }
    ds.class_count = static_cast<int>(label_codes.size());

    if (warnings) {
        std::vector<std::size_t> class_sizes(ds.class_count, 0);
        for (int label : ds.labels) class_sizes[label]++;
        for (int c = 0; c < ds.class_count; ++c) {
            if (class_sizes[c] < 6) {
                warnings->push_back(ds.name + ": class '" + ds.class_names[c] + "' has only " +
                                    std::to_string(class_sizes[c]) +
                                    " instances; 6-fold partitions will not all contain it");
            }
        }
    }
    return ds;
}

std::vector<FoldSplit> make_folds(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                  std::vector<std::string>* warnings) {
    if (k < 4)
        throw std::invalid_argument("fold count must be >= 4 (train, val1, val2, test)");
    if (k > ds.n_instances())
        throw std::invalid_argument("fold count exceeds instance count");

    // Stratified grouping: shuffle each class, deal nearly-equal chunks into
    // the k groups, rotating which groups receive the remainder by class so
    // overall group sizes stay balanced.
    std::vector<std::vector<std::size_t>> by_class(ds.class_count);
    for (std::size_t i = 0; i < ds.labels.size(); ++i)
        by_class[ds.labels[i]].push_back(i);

    std::vector<std::vector<std::size_t>> groups(k);
    for (int c = 0; c < ds.class_count; ++c) {
        auto& idx = by_class[c];
        Rng rng(derive_seed(seed, "stratify", {static_cast<std::uint64_t>(c)}));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.below(i)]);
        const std::size_t base = idx.size() / k;
        const std::size_t extra = idx.size() % k;
        std::size_t cursor = 0;
        for (std::size_t g = 0; g < k; ++g) {
            std::size_t take = base;
            // group (c + j) % k receives the j-th extra element
            const std::size_t shifted = (g + k - static_cast<std::size_t>(c) % k) % k;
            if (shifted < extra) take += 1;
            for (std::size_t t = 0; t < take; ++t) groups[g].push_back(idx[cursor++]);
        }
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());

    if (warnings) {
        for (std::size_t g = 0; g < k; ++g) {
            std::vector<bool> present(ds.class_count, false);
            for (std::size_t i : groups[g]) present[ds.labels[i]] = true;
            for (int c = 0; c < ds.class_count; ++c) {
                if (!present[c])
                    warnings->push_back("partition " + std::to_string(g) + " lacks class '" +
                                        ds.class_names[c] + "'");
            }
        }
    }

    // Run r: test = group r, val1 = group r+1, val2 = group r+2, train = rest.
    std::vector<FoldSplit> folds(k);
    for (std::size_t r = 0; r < k; ++r) {
        FoldSplit& split = folds[r];
        split.test_idx = groups[r];
        split.val1_idx = groups[(r + 1) % k];
        split.val2_idx = groups[(r + 2) % k];
        for (std::size_t g = 0; g < k; ++g) {
            if (g == r || g == (r + 1) % k || g == (r + 2) % k) continue;
            split.train_idx.insert(split.train_idx.end(), groups[g].begin(), groups[g].end());
        }
        std::sort(split.train_idx.begin(), split.train_idx.end());
    }
    return folds;
}

BootstrapSample bootstrap(const std::vector<std::size_t>& train_idx, std::uint64_t seed) {
    if (train_idx.empty()) throw std::invalid_argument("bootstrap from empty training set");
    BootstrapSample sample;
    sample.rng_seed = seed;
    sample.indices.resize(train_idx.size());
    Rng rng(seed);
    for (auto& slot : sample.indices)
        slot = train_idx[rng.below(train_idx.size())];
    return sample;
}

std::string folds_to_json(const std::vector<FoldSplit>& folds) {
    nlohmann::json j;
    j["format"] = "cife-folds";
    j["version"] = 1;
    j["folds"] = nlohmann::json::array();
    for (const auto& f : folds) {
        j["folds"].push_back({{"train", f.train_idx},
                              {"val1", f.val1_idx},
                              {"val2", f.val2_idx},
                              {"test", f.test_idx}});
    }
    return j.dump(2);
}

}  // namespace cife
