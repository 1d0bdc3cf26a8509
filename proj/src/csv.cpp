#include "qsm/csv.hpp"

#include <cstdio>
#include <fstream>

#include "qsm/errors.hpp"

namespace qsm {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void emit_csv(const TimeSeries& series, const std::filesystem::path& path) {
    if (series.empty()) {
        throw ArgumentError("refusing to emit an empty time series to '" + path.string() + "'");
    }
    auto out = open_for_write(path);
    out << "step,observable,value\n";
    for (const TimeRecord& rec : series.records()) {
        out << rec.step << ',' << rec.observable << ',' << format_double(rec.value) << '\n';
    }
    finish(out, path);
}

void emit_csv(const std::vector<SaturationRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) {
        throw ArgumentError("refusing to emit an empty saturation table to '" + path.string() +
                            "'");
    }
    auto out = open_for_write(path);
    out << "ell,pair_i,pair_j,concurrence_sat,ci_halfwidth\n";
    for (const SaturationRow& r : rows) {
        out << format_double(r.ell) << ',' << r.pair_i << ',' << r.pair_j << ','
            << format_double(r.concurrence_sat) << ',' << format_double(r.ci_halfwidth) << '\n';
    }
    finish(out, path);
}

void emit_kv_csv(const std::vector<std::pair<std::string, std::string>>& rows,
                 const std::filesystem::path& path) {
    if (rows.empty()) {
        throw ArgumentError("refusing to emit an empty summary to '" + path.string() + "'");
    }
    auto out = open_for_write(path);
    out << "key,value\n";
    for (const auto& [key, value] : rows) {
        out << key << ',' << value << '\n';
    }
    finish(out, path);
}

void emit_table_csv(const std::string& header, const std::vector<std::vector<double>>& rows,
                    const std::filesystem::path& path) {
    if (rows.empty()) {
        throw ArgumentError("refusing to emit an empty table to '" + path.string() + "'");
    }
    auto out = open_for_write(path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
    finish(out, path);
}

}  // namespace qsm
