#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qsm/scenario.hpp"

namespace qsm {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::fig1_timeseries: return "fig1_timeseries";
        case ScenarioKind::fig2_pairs: return "fig2_pairs";
        case ScenarioKind::fig3_saturation_vs_ell: return "fig3_saturation_vs_ell";
        case ScenarioKind::fig4_adjacent_pairs: return "fig4_adjacent_pairs";
        case ScenarioKind::fig5_block_entropy: return "fig5_block_entropy";
        case ScenarioKind::fig6_single_qubit_entropy: return "fig6_single_qubit_entropy";
        case ScenarioKind::custom: return "custom";
    }
    return "custom";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name) {
    for (const ScenarioKind kind :
         {ScenarioKind::fig1_timeseries, ScenarioKind::fig2_pairs,
          ScenarioKind::fig3_saturation_vs_ell, ScenarioKind::fig4_adjacent_pairs,
          ScenarioKind::fig5_block_entropy, ScenarioKind::fig6_single_qubit_entropy,
          ScenarioKind::custom}) {
        if (name == to_string(kind)) return kind;
    }
    return std::nullopt;
}

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void bad_key(const std::string& section, const std::string& key,
                          const std::string& reason) {
    throw UsageError("config key [" + section + "] " + key + ": " + reason);
}

std::int64_t parse_int(const std::string& section, const std::string& key,
                       const std::string& value) {
    std::int64_t out = 0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        bad_key(section, key, "expected an integer, got '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& section, const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        bad_key(section, key, "expected a real number, got '" + value + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

std::pair<int, int> parse_pair(const std::string& section, const std::string& key,
                               const std::string& value) {
    const auto parts = split(value, ',');
    if (parts.size() != 2) bad_key(section, key, "expected 'i,j', got '" + value + "'");
    const int i = static_cast<int>(parse_int(section, key, parts[0]));
    const int j = static_cast<int>(parse_int(section, key, parts[1]));
    return {i, j};
}

std::vector<int> parse_block(const std::string& section, const std::string& key,
                             const std::string& value) {
    // "a..b" for a contiguous run, or "a,b,c" for explicit labels
    const auto dots = value.find("..");
    std::vector<int> labels;
    if (dots != std::string::npos) {
        const auto a = parse_int(section, key, trim(value.substr(0, dots)));
        const auto b = parse_int(section, key, trim(value.substr(dots + 2)));
        if (a > b) bad_key(section, key, "range '" + value + "' is empty");
        for (auto q = a; q <= b; ++q) labels.push_back(static_cast<int>(q));
    } else {
        for (const auto& part : split(value, ',')) {
            labels.push_back(static_cast<int>(parse_int(section, key, part)));
        }
    }
    if (labels.empty()) bad_key(section, key, "no qubit labels given");
    return labels;
}

}  // namespace

Scenario parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("config file '" + path.string() + "' cannot be opened");
    }

    static const std::set<std::string> kMapKeys = {"n_q", "K", "M"};
    static const std::set<std::string> kRunKeys = {
        "scenario", "steps",   "pair",    "pairs",   "block",          "blocks", "n0",
        "seed",     "ensemble", "workers", "s_c",     "ell_min",        "ell_max",
        "points_per_decade",   "m_ref"};
    static const std::set<std::string> kOutputKeys = {"dir"};

    Scenario sc;
    std::string section;
    std::string line;
    int line_no = 0;
    bool saw_nq = false, saw_K = false, saw_dir = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": malformed section header '" + text + "'");
            }
            section = trim(text.substr(1, text.size() - 2));
            if (section != "map" && section != "run" && section != "output") {
                throw UsageError("unknown config section [" + section +
                                 "]; expected [map], [run] or [output]");
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(line_no) +
                             ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (section.empty()) {
            throw UsageError("config key '" + key + "' appears before any section header");
        }

        if (section == "map") {
            if (key == "kick_strength") {
                bad_key(section, key, "k is derived; set K and M");
            }
            if (!kMapKeys.count(key)) bad_key(section, key, "unknown key");
            if (key == "n_q") {
                sc.n_q = static_cast<int>(parse_int(section, key, value));
                saw_nq = true;
            } else if (key == "K") {
                sc.K = parse_real(section, key, value);
                if (!(sc.K > 0.0)) bad_key(section, key, "K must be > 0 (chaotic-regime guard)");
                saw_K = true;
            } else {
                sc.m_values.clear();
                for (const auto& part : split(value, ',')) {
                    const auto m = parse_int(section, key, part);
                    if (m < 1) bad_key(section, key, "M must be a positive integer");
                    sc.m_values.push_back(m);
                }
            }
        } else if (section == "run") {
            if (key == "kick_strength") {
                bad_key(section, key, "k is derived; set K and M");
            }
            if (!kRunKeys.count(key)) bad_key(section, key, "unknown key");
            if (key == "scenario") {
                const auto kind = scenario_kind_from_string(value);
                if (!kind) bad_key(section, key, "unknown scenario '" + value + "'");
                sc.kind = *kind;
            } else if (key == "steps") {
                sc.steps = parse_int(section, key, value);
                if (sc.steps < 0) bad_key(section, key, "steps must be >= 0");
            } else if (key == "pair") {
                sc.pairs = {parse_pair(section, key, value)};
            } else if (key == "pairs") {
                sc.pairs.clear();
                for (const auto& part : split(value, ';')) {
                    sc.pairs.push_back(parse_pair(section, key, part));
                }
            } else if (key == "block") {
                sc.blocks = {parse_block(section, key, value)};
            } else if (key == "blocks") {
                sc.blocks.clear();
                for (const auto& part : split(value, ';')) {
                    sc.blocks.push_back(parse_block(section, key, part));
                }
            } else if (key == "n0") {
                sc.n0 = parse_int(section, key, value);
            } else if (key == "seed") {
                sc.seed = static_cast<std::uint64_t>(parse_int(section, key, value));
            } else if (key == "ensemble") {
                sc.ensemble = static_cast<int>(parse_int(section, key, value));
                if (sc.ensemble < 1) bad_key(section, key, "ensemble must be >= 1");
            } else if (key == "workers") {
                sc.workers = static_cast<int>(parse_int(section, key, value));
                if (sc.workers < 0) bad_key(section, key, "workers must be >= 0");
            } else if (key == "s_c") {
                sc.s_c = parse_real(section, key, value);
            } else if (key == "ell_min") {
                sc.ell_min = parse_real(section, key, value);
                if (!(sc.ell_min > 0.0)) bad_key(section, key, "ell_min must be > 0");
            } else if (key == "ell_max") {
                sc.ell_max = parse_real(section, key, value);
                if (!(sc.ell_max > 0.0)) bad_key(section, key, "ell_max must be > 0");
            } else if (key == "points_per_decade") {
                sc.points_per_decade = static_cast<int>(parse_int(section, key, value));
                if (sc.points_per_decade < 1) bad_key(section, key, "need >= 1 point per decade");
            } else if (key == "m_ref") {
                sc.m_ref = parse_int(section, key, value);
                if (sc.m_ref < 1) bad_key(section, key, "m_ref must be a positive integer");
            }
        } else {  // output
            if (!kOutputKeys.count(key)) bad_key(section, key, "unknown key");
            sc.out_dir = value;
            saw_dir = true;
        }
    }

    if (!saw_nq) throw UsageError("config key [map] n_q is required");
    if (!saw_K && sc.kind == ScenarioKind::custom) {
        throw UsageError("config key [map] K is required for custom scenarios");
    }
    if (!saw_dir) throw UsageError("config key [output] dir is required");
    if (sc.kind == ScenarioKind::custom && sc.m_values.empty()) {
        throw UsageError("config key [map] M is required for custom scenarios");
    }
    if (sc.ell_min > 0.0 && sc.ell_max > 0.0 && sc.ell_min > sc.ell_max) {
        throw UsageError("config: ell_min must not exceed ell_max");
    }
    return sc;
}

}  // namespace qsm
