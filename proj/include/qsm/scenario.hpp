// scenario.hpp
// Scenario harness: config parsing, deterministic scenario execution, CSV
// datasets plus fit summaries.
//
// Parameter conventions baked into the figure scenarios: the kick phase
// k(theta-pi)^2 drives the classical force 2k(theta-pi), so the classical
// chaos parameter is K_cl = 2K. The stock scenarios use K = sqrt(2)/2
// (K_cl = sqrt(2)) and M values divisible by 4 chosen so that (T, k) land in
// the dynamically localized regime T < 1 on the n_q = 10 lattice. Sweeps
// hold M (hence T) fixed at a reference value and sweep the kick strength
// through K, mapping target localization lengths with a calibration constant
// C_cal = ell_fit / k^2 measured from the reference profile at startup.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsm/analysis.hpp"
#include "qsm/dynamics.hpp"

namespace qsm {

enum class ScenarioKind {
    fig1_timeseries,
    fig2_pairs,
    fig3_saturation_vs_ell,
    fig4_adjacent_pairs,
    fig5_block_entropy,
    fig6_single_qubit_entropy,
    custom,
};

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name);

struct Scenario {
    ScenarioKind kind = ScenarioKind::custom;

    int n_q = 10;
    double K = 0.0;                       // 0 = kind default (sqrt(2)/2)
    std::vector<std::int64_t> m_values;   // empty = kind default

    std::vector<std::pair<int, int>> pairs;  // empty = kind default
    std::vector<std::vector<int>> blocks;    // custom scenarios only

    std::int64_t steps = 2000;      // time-series length
    std::int64_t n0 = 0;            // initial momentum eigenstate
    std::uint64_t seed = 0;         // reserved for random-state scenarios
    int ensemble = 0;               // 0 = kind default
    int workers = 0;                // 0 = hardware concurrency
    double s_c = 1.0;               // block-entropy threshold

    double ell_min = 0.0;           // 0 = kind default
    double ell_max = 0.0;
    int points_per_decade = 8;
    std::int64_t m_ref = 75;        // fixed M for K-sweeps and calibration

    std::filesystem::path out_dir;
};

struct ScenarioResult {
    std::vector<std::filesystem::path> files;
    std::vector<std::pair<std::string, std::string>> summary;
    int degraded_points = 0;
};

// Parses the flat sectioned key-value config ([map], [run], [output]);
// unknown keys, bad types and missing required keys raise UsageError naming
// the key.
Scenario parse_config(const std::filesystem::path& path);

// Runs the scenario, writing one CSV per observable plus summary.csv into
// scenario.out_dir. Numerical-degradation errors are recorded per data point
// and the run continues.
ScenarioResult run_scenario(const Scenario& scenario);

// Oracle-equivalence suite (transform, partial trace, concurrence, entropy);
// prints one line per check, returns true when everything agrees.
bool run_selftest(std::ostream& out);

// ---- protocol pieces shared with the acceptance suite ----------------------

// Deterministic interior initial momenta for ensemble medians.
std::vector<std::int64_t> ensemble_momenta(int n_q, int count);

// Time-averaged localization profile: warm 200 steps, average the next 200.
LocalizationEstimate reference_profile_estimate(const MapParams& params, std::int64_t n0 = 0);

// Calibration constant C_cal = ell_fit / k^2 at (m_ref, K).
double calibrate_ell_constant(int n_q, double K, std::int64_t m_ref);

// K such that the calibrated localization length equals ell at fixed m_ref.
double kick_parameter_for_ell(int n_q, std::int64_t m_ref, double c_cal, double ell);

// Saturation concurrence of `pairs` for one initial state: series of
// 2*t*(ell)+200 steps, saturation_value over the final 200.
std::vector<double> saturation_for_state(const MapParams& params, std::int64_t n0, double ell,
                                         const std::vector<std::pair<int, int>>& pairs);

// Ensemble median and spread (half interquartile range) per pair.
struct EnsembleSaturation {
    std::vector<double> median;
    std::vector<double> halfwidth;
};
EnsembleSaturation ensemble_saturation(const MapParams& params, double ell,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       int ensemble, int workers);

}  // namespace qsm
