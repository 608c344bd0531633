#pragma once

#include <map>
#include <string>
#include <vector>

namespace cife {

// Published per-dataset accuracies (percent) and ensemble sizes of the
// comparison methods, loaded from the shipped reference file.
struct ReferenceTable {
    std::vector<std::string> datasets;
    std::vector<std::string> methods;
    // method -> dataset -> value
    std::map<std::string, std::map<std::string, double>> accuracy;
    std::map<std::string, std::map<std::string, double>> ensemble_size;
};

ReferenceTable load_reference_table(const std::string& path);

// Extra columns (e.g. locally reproduced runs): method name -> dataset ->
// accuracy in percent. Rendered next to the reference methods with a
// win/tie/loss summary row.
std::string render_comparison_table(const ReferenceTable& ref,
                                    const std::map<std::string, std::map<std::string, double>>&
                                        extra = {},
                                    double tie_epsilon = 0.05);

// Flattens a cife-report or cife-grid JSON document to per-fold CSV rows.
std::string report_json_to_csv(const std::string& report_json);

}  // namespace cife
