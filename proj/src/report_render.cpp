#include "cife/report_render.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cife/stats.hpp"

namespace cife {

using nlohmann::json;

ReferenceTable load_reference_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference table: " + path);
    json j = json::parse(in);
    if (j.value("format", "") != "cife-table6-reference")
        throw std::runtime_error(path + ": not a reference table file");
    ReferenceTable table;
    table.datasets = j.at("datasets").get<std::vector<std::string>>();
    if (j.contains("method_order"))
        table.methods = j.at("method_order").get<std::vector<std::string>>();
    for (const auto& [method, record] : j.at("methods").items()) {
        if (std::find(table.methods.begin(), table.methods.end(), method) == table.methods.end())
            table.methods.push_back(method);
        for (const auto& [ds, value] : record.at("accuracy").items())
            table.accuracy[method][ds] = value.get<double>();
        if (record.contains("ensemble_size"))
            for (const auto& [ds, value] : record.at("ensemble_size").items())
                table.ensemble_size[method][ds] = value.get<double>();
    }
    return table;
}

std::string render_comparison_table(
    const ReferenceTable& ref, const std::map<std::string, std::map<std::string, double>>& extra,
    double tie_epsilon) {
    std::vector<std::string> methods = ref.methods;
    for (const auto& [name, _] : extra) methods.push_back(name);

    auto value_of = [&](const std::string& method, const std::string& ds) -> double {
        if (auto it = extra.find(method); it != extra.end()) {
            auto v = it->second.find(ds);
            return v == it->second.end() ? -1.0 : v->second;
        }
        auto m = ref.accuracy.find(method);
        if (m == ref.accuracy.end()) return -1.0;
        auto v = m->second.find(ds);
        return v == m->second.end() ? -1.0 : v->second;
    };

    std::ostringstream out;
    out << "Dataset";
    for (const auto& m : methods) out << '\t' << m;
    out << '\n';
    char buf[32];
    for (const auto& ds : ref.datasets) {
        out << ds;
        for (const auto& m : methods) {
            const double v = value_of(m, ds);
            if (v < 0.0)
                out << "\t-";
            else {
                std::snprintf(buf, sizeof(buf), "%.1f", v);
                out << '\t' << buf;
            }
        }
        out << '\n';
    }

    // win/tie/loss over the datasets every method covers
    std::vector<std::vector<double>> acc(methods.size());
    std::vector<std::string> covered;
    for (const auto& ds : ref.datasets) {
        bool all = true;
        for (const auto& m : methods)
            if (value_of(m, ds) < 0.0) all = false;
        if (all) covered.push_back(ds);
    }
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
        for (const auto& ds : covered) acc[mi].push_back(value_of(methods[mi], ds));
    if (!covered.empty()) {
        const auto wtl = win_tie_loss(acc, tie_epsilon);
        out << "Win/Tie/Loss";
        for (const auto& counts : wtl)
            out << '\t' << counts.win << '/' << counts.tie << '/' << counts.loss;
        out << '\n';
    }
    return out.str();
}

namespace {

void append_report_rows(std::ostringstream& out, const json& report) {
    for (const auto& fr : report.at("fold_results")) {
        out << report.at("protocol").get<std::string>() << ','
            << report.at("dataset").get<std::string>() << ','
            << report.at("pool_size").get<std::size_t>() << ','
            << report.at("seed").get<std::uint64_t>() << ',' << fr.at("fold").get<std::size_t>()
            << ',' << fr.at("test_accuracy").get<double>() << ','
            << fr.at("ensemble_size").get<std::size_t>() << ','
            << fr.at("generations_run").get<std::size_t>() << '\n';
    }
}

}  // namespace

std::string report_json_to_csv(const std::string& report_json) {
    const json j = json::parse(report_json);
    std::ostringstream out;
    out << "protocol,dataset,pool_size,seed,fold,test_accuracy,ensemble_size,generations_run\n";
    if (j.value("format", "") == "cife-grid") {
        for (const auto& report : j.at("reports")) append_report_rows(out, report);
    } else if (j.value("format", "") == "cife-report") {
        append_report_rows(out, j);
    } else {
        throw std::runtime_error("not a cife report or grid JSON document");
    }
    return out.str();
}

}  // namespace cife
