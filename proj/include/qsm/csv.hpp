// csv.hpp
// CSV emission. Floats are serialized with 17 significant digits so that
// re-parsing reproduces the exact double.

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qsm/timeseries.hpp"

namespace qsm {

struct SaturationRow {
    double ell;
    int pair_i;
    int pair_j;
    double concurrence_sat;
    double ci_halfwidth;
};

std::string format_double(double value);

// Header "step,observable,value".
void emit_csv(const TimeSeries& series, const std::filesystem::path& path);

// Header "ell,pair_i,pair_j,concurrence_sat,ci_halfwidth".
void emit_csv(const std::vector<SaturationRow>& rows, const std::filesystem::path& path);

// Header "key,value"; scenario summaries.
void emit_kv_csv(const std::vector<std::pair<std::string, std::string>>& rows,
                 const std::filesystem::path& path);

// Free-header numeric table; one row per record.
void emit_table_csv(const std::string& header,
                    const std::vector<std::vector<double>>& rows,
                    const std::filesystem::path& path);

}  // namespace qsm
