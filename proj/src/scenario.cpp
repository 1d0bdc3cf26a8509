#include "qsm/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "qsm/csv.hpp"
#include "qsm/entanglement.hpp"

namespace qsm {

namespace {

constexpr double kDefaultK = 0.70710678118654752;  // sqrt(2)/2, classical K_cl = sqrt(2)
constexpr std::int64_t kProfileWarmup = 200;
constexpr std::int64_t kProfileAverage = 200;
constexpr double kPowerFitMaxEll = 1.0;   // small-ell branch window
constexpr double kPowerAsymptoticMaxEll = 0.2;
constexpr double kExpFitMinEll = 4.0;     // exponential branch window
constexpr double kExpFitMaxEll = 30.0;
constexpr std::int64_t kModelSeeds = 48;  // flat-phase model ensemble
// Model windows start at a fixed interior slot; their alignment to the coding
// grid is part of the structure the critical lengths probe, so it is not
// averaged over.
constexpr double kModelCenterFraction = 0.195;

// Deterministic parallel loop; results must be written to index-addressed
// storage by the callers.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double half_iqr(std::vector<double> v) {
    if (v.size() < 4) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return 0.5 * (v[(3 * (n - 1)) / 4] - v[(n - 1) / 4]);
}

std::string pair_name(const std::pair<int, int>& p) {
    return "C(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
    std::vector<double> grid;
    const double step = 1.0 / static_cast<double>(per_decade);
    for (int i = 0;; ++i) {
        const double ell = lo * std::pow(10.0, step * i);
        if (ell > hi * (1.0 + 1e-9)) break;
        grid.push_back(ell);
    }
    if (grid.empty() || grid.back() < hi * (1.0 - 1e-9)) grid.push_back(hi);
    return grid;
}

// Applies per-kind defaults to unset fields.
Scenario with_defaults(Scenario sc) {
    if (sc.K == 0.0) sc.K = kDefaultK;
    switch (sc.kind) {
        case ScenarioKind::fig1_timeseries:
            if (sc.m_values.empty()) sc.m_values = {2500, 1250, 75, 500, 125, 250, 175};
            if (sc.pairs.empty()) sc.pairs = {{1, 3}};
            if (sc.ensemble == 0) sc.ensemble = 12;
            break;
        case ScenarioKind::fig2_pairs:
            if (sc.m_values.empty()) sc.m_values = {200};
            if (sc.pairs.empty()) sc.pairs = {{1, 2}, {1, 3}, {1, 4}, {1, 5}};
            if (sc.ensemble == 0) sc.ensemble = 12;
            break;
        case ScenarioKind::fig3_saturation_vs_ell:
            if (sc.pairs.empty()) sc.pairs = {{1, 2}, {1, 3}, {1, 4}, {1, 5}};
            if (sc.ell_min == 0.0) sc.ell_min = 0.03;
            if (sc.ell_max == 0.0) sc.ell_max = 64.0;
            if (sc.ensemble == 0) sc.ensemble = 16;
            break;
        case ScenarioKind::fig4_adjacent_pairs:
            if (sc.pairs.empty()) sc.pairs = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
            if (sc.ell_min == 0.0) sc.ell_min = 0.5;
            if (sc.ell_max == 0.0) sc.ell_max = 64.0;
            if (sc.ensemble == 0) sc.ensemble = 16;
            break;
        case ScenarioKind::fig5_block_entropy:
        case ScenarioKind::fig6_single_qubit_entropy:
            if (sc.ell_min == 0.0) sc.ell_min = 16.0;
            if (sc.ell_max == 0.0) sc.ell_max = 256.0;
            sc.points_per_decade = 0;  // doubling ladder, not a decade grid
            if (sc.ensemble == 0) sc.ensemble = 9;
            break;
        case ScenarioKind::custom:
            if (sc.ensemble == 0) sc.ensemble = 1;
            break;
    }
    return sc;
}

std::vector<double> doubling_grid(double lo, double hi) {
    std::vector<double> grid;
    for (double ell = lo; ell <= hi * (1.0 + 1e-9); ell *= 2.0) grid.push_back(ell);
    return grid;
}

struct KvList {
    std::vector<std::pair<std::string, std::string>> rows;
    void add(const std::string& key, const std::string& value) { rows.push_back({key, value}); }
    void add(const std::string& key, double value) { add(key, format_double(value)); }
    void add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
};

}  // namespace

std::vector<std::int64_t> ensemble_momenta(int n_q, int count) {
    if (count <= 1) return {0};
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    const double N = static_cast<double>(std::int64_t{1} << n_q);
    const std::int64_t half = std::int64_t{1} << (n_q - 1);
    for (int r = 0; r < count; ++r) {
        const double frac =
            0.06 + 0.88 * static_cast<double>(r) / static_cast<double>(count - 1);
        out.push_back(static_cast<std::int64_t>(std::llround(frac * N)) - half);
    }
    return out;
}

namespace {

std::vector<double> profile_after(const MapParams& params, std::int64_t n0, std::int64_t warm) {
    const FloquetOperator op(params);
    StateVector psi = momentum_eigenstate(params.n_q, n0);
    for (std::int64_t t = 0; t < warm; ++t) op.apply_in_place(psi);
    std::vector<double> avg(static_cast<std::size_t>(psi.dim()), 0.0);
    for (std::int64_t t = 0; t < kProfileAverage; ++t) {
        op.apply_in_place(psi);
        const cplx* a = psi.data();
        for (std::size_t s = 0; s < avg.size(); ++s) {
            avg[s] += std::norm(a[s]) / static_cast<double>(kProfileAverage);
        }
    }
    return avg;
}

// Two-pass localized profile: a fixed first warmup, then a second run warmed
// to twice the localization time implied by the first fit. The second pass
// keeps the slow power-law far tails from accumulating beyond what the
// saturation window itself would see. Falls back to the first-pass profile
// when no localization length can be fitted.
std::vector<double> localized_profile(const MapParams& params, std::int64_t n0) {
    std::vector<double> first = profile_after(params, n0, kProfileWarmup);
    try {
        const LocalizationEstimate est = estimate_ell_profile(first);
        const std::int64_t warm = 2 * localization_time(est.ell_fit);
        if (warm == kProfileWarmup) return first;
        return profile_after(params, n0, warm);
    } catch (const Error&) {
        return first;
    }
}

}  // namespace

LocalizationEstimate reference_profile_estimate(const MapParams& params, std::int64_t n0) {
    return estimate_ell_profile(localized_profile(params, n0));
}

double calibrate_ell_constant(int n_q, double K, std::int64_t m_ref) {
    const MapParams params(n_q, K, m_ref);
    const LocalizationEstimate est = reference_profile_estimate(params);
    return est.ell_fit / (params.k * params.k);
}

double kick_parameter_for_ell(int n_q, std::int64_t m_ref, double c_cal, double ell) {
    if (!(ell > 0.0) || !(c_cal > 0.0)) {
        throw DomainError("ell targets and the calibration constant must be positive");
    }
    const double T = 2.0 * std::numbers::pi * static_cast<double>(m_ref) /
                     static_cast<double>(std::int64_t{1} << n_q);
    return std::sqrt(ell / c_cal) * T;
}

std::vector<double> saturation_for_state(const MapParams& params, std::int64_t n0, double ell,
                                         const std::vector<std::pair<int, int>>& pairs) {
    const std::int64_t tstar = localization_time(ell);
    const std::int64_t steps = 2 * tstar + 200;
    const FloquetOperator op(params);
    StateVector psi = momentum_eigenstate(params.n_q, n0);
    std::vector<std::vector<double>> series(pairs.size());
    for (std::int64_t t = 1; t <= steps; ++t) {
        op.apply_in_place(psi);
        for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
            series[idx].push_back(concurrence_of_pair(psi, pairs[idx].first, pairs[idx].second));
        }
    }
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& values : series) out.push_back(saturation_value(values, ell));
    return out;
}

EnsembleSaturation ensemble_saturation(const MapParams& params, double ell,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       int ensemble, int workers) {
    const std::vector<std::int64_t> momenta = ensemble_momenta(params.n_q, ensemble);
    std::vector<std::vector<double>> member_values(momenta.size());
    parallel_for(momenta.size(), workers, [&](std::size_t i) {
        member_values[i] = saturation_for_state(params, momenta[i], ell, pairs);
    });
    EnsembleSaturation out;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::vector<double> values;
        values.reserve(momenta.size());
        for (const auto& member : member_values) values.push_back(member[p]);
        out.median.push_back(median_of(values));
        out.halfwidth.push_back(half_iqr(values));
    }
    return out;
}

namespace {

// Records per-step concurrence (and optionally block entropies) into a
// TimeSeries; keeps large-block entropy evaluation on a stride.
void record_time_series(const Scenario& sc, const MapParams& params, std::int64_t n0,
                        const std::string& suffix, TimeSeries& series) {
    const FloquetOperator op(params);
    StateVector psi = momentum_eigenstate(params.n_q, n0);
    for (std::int64_t t = 1; t <= sc.steps; ++t) {
        op.apply_in_place(psi);
        for (const auto& pair : sc.pairs) {
            series.append(t, pair_name(pair) + suffix,
                          concurrence_of_pair(psi, pair.first, pair.second));
        }
        for (const auto& block : sc.blocks) {
            const auto m = static_cast<int>(block.size());
            const std::int64_t stride = m <= 6 ? 1 : 20;
            if (t % stride != 0) continue;
            std::string name = "S(";
            for (std::size_t idx = 0; idx < block.size(); ++idx) {
                if (idx) name += '.';
                name += std::to_string(block[idx]);
            }
            name += ")" + suffix;
            series.append(t, name, von_neumann_entropy(reduce_to_block(psi, block)));
        }
    }
}

std::vector<double> averaged_profile(const MapParams& params, std::int64_t n0) {
    return localized_profile(params, n0);
}

void emit_profile(const std::vector<double>& avg, int n_q, const std::filesystem::path& path) {
    std::vector<std::vector<double>> rows;
    const auto N = static_cast<std::int64_t>(avg.size());
    for (std::int64_t n = -N / 2 + 1; n <= N / 2; ++n) {
        const std::int64_t s = slot_for_momentum(n, n_q);
        rows.push_back({static_cast<double>(n), avg[static_cast<std::size_t>(s)]});
    }
    emit_table_csv("n,probability", rows, path);
}

void add_fit_summary(KvList& kv, const std::string& prefix, const FitReport& report) {
    kv.add(prefix + "_exponent_or_rate", report.exponent_or_rate);
    kv.add(prefix + "_coefficient", report.coefficient);
    kv.add(prefix + "_r_squared", report.r_squared);
    kv.add(prefix + "_points", static_cast<std::int64_t>(report.points_used));
}

struct SweepOutput {
    std::vector<SaturationRow> rows;
    int degraded = 0;
};

// Saturation sweep over an ell grid at fixed m_ref (K varies with ell).
SweepOutput run_ell_sweep(const Scenario& sc, const std::vector<double>& grid, double c_cal) {
    SweepOutput out;
    std::vector<EnsembleSaturation> per_point(grid.size());
    std::vector<int> degraded(grid.size(), 0);
    parallel_for(grid.size(), sc.workers, [&](std::size_t g) {
        const double ell = grid[g];
        const double K = kick_parameter_for_ell(sc.n_q, sc.m_ref, c_cal, ell);
        const MapParams params(sc.n_q, K, sc.m_ref);
        try {
            per_point[g] = ensemble_saturation(params, ell, sc.pairs, sc.ensemble, 1);
        } catch (const NumericalDegradationError&) {
            degraded[g] = 1;
            per_point[g].median.assign(sc.pairs.size(),
                                       std::numeric_limits<double>::quiet_NaN());
            per_point[g].halfwidth.assign(sc.pairs.size(), 0.0);
        }
    });
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out.degraded += degraded[g];
        for (std::size_t p = 0; p < sc.pairs.size(); ++p) {
            out.rows.push_back(SaturationRow{grid[g], sc.pairs[p].first, sc.pairs[p].second,
                                             per_point[g].median[p],
                                             per_point[g].halfwidth[p]});
        }
    }
    return out;
}

// Branch fits over a sweep table, one pair at a time.
void summarize_branch_fits(KvList& kv, const std::vector<SaturationRow>& rows,
                           const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& pair : pairs) {
        const std::string tag = std::to_string(pair.first) + "_" + std::to_string(pair.second);
        std::vector<std::pair<double, double>> small_branch;
        std::vector<std::pair<double, double>> asymptotic;
        std::vector<std::pair<double, double>> exp_branch;
        double largest_ell = 0.0;
        double largest_value = std::numeric_limits<double>::quiet_NaN();
        for (const auto& row : rows) {
            if (row.pair_i != pair.first || row.pair_j != pair.second) continue;
            if (row.ell >= largest_ell) {
                largest_ell = row.ell;
                largest_value = row.concurrence_sat;
            }
            if (!(row.concurrence_sat > 0.0)) continue;  // zeros excluded upstream
            if (row.ell <= kPowerFitMaxEll) small_branch.push_back({row.ell, row.concurrence_sat});
            if (row.ell <= kPowerAsymptoticMaxEll) {
                asymptotic.push_back({row.ell, row.concurrence_sat});
            }
            if (row.ell >= kExpFitMinEll && row.ell <= kExpFitMaxEll) {
                exp_branch.push_back({row.ell, row.concurrence_sat});
            }
        }
        if (small_branch.size() >= 3) {
            add_fit_summary(kv, "power_small_ell_pair_" + tag, fit_power_law(small_branch));
        }
        if (asymptotic.size() >= 3) {
            add_fit_summary(kv, "power_asymptotic_pair_" + tag, fit_power_law(asymptotic));
        }
        if (exp_branch.size() >= 3) {
            add_fit_summary(kv, "exp_large_ell_pair_" + tag, fit_exponential(exp_branch));
        }
        kv.add("zero_at_largest_ell_pair_" + tag,
               std::string(largest_value == 0.0 ? "1" : "0"));
    }
}

ScenarioResult run_fig1(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    const double c_cal = calibrate_ell_constant(sc.n_q, sc.K, sc.m_ref);
    kv.add("scenario", to_string(sc.kind));
    kv.add("c_cal", c_cal);

    TimeSeries series;
    std::vector<SaturationRow> rows;
    std::vector<double> order_values;
    std::vector<EnsembleSaturation> sats(sc.m_values.size());
    std::vector<double> ells(sc.m_values.size());
    parallel_for(sc.m_values.size(), sc.workers, [&](std::size_t i) {
        const MapParams params(sc.n_q, sc.K, sc.m_values[i]);
        ells[i] = c_cal * params.k * params.k;
        sats[i] = ensemble_saturation(params, ells[i], sc.pairs, sc.ensemble, 1);
    });
    for (std::size_t i = 0; i < sc.m_values.size(); ++i) {
        const MapParams params(sc.n_q, sc.K, sc.m_values[i]);
        const std::string suffix = "@M=" + std::to_string(sc.m_values[i]);
        record_time_series(sc, params, sc.n0, suffix, series);
        for (std::size_t p = 0; p < sc.pairs.size(); ++p) {
            rows.push_back(SaturationRow{ells[i], sc.pairs[p].first, sc.pairs[p].second,
                                         sats[i].median[p], sats[i].halfwidth[p]});
            kv.add("sat_" + pair_name(sc.pairs[p]) + suffix, sats[i].median[p]);
        }
        kv.add("ell_cal" + suffix, ells[i]);
        order_values.push_back(sats[i].median[0]);
    }
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < order_values.size(); ++i) {
        if (!(order_values[i] < order_values[i + 1])) increasing = false;
    }
    kv.add("saturation_increasing_in_config_order", std::string(increasing ? "1" : "0"));

    const auto ts_path = sc.out_dir / "timeseries.csv";
    const auto sat_path = sc.out_dir / "saturation.csv";
    emit_csv(series, ts_path);
    emit_csv(rows, sat_path);
    result.files = {ts_path, sat_path};
    result.summary = kv.rows;
    return result;
}

ScenarioResult run_fig2(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    kv.add("scenario", to_string(sc.kind));
    TimeSeries series;
    const MapParams params(sc.n_q, sc.K, sc.m_values.front());
    record_time_series(sc, params, sc.n0, "", series);

    const std::vector<double> profile = averaged_profile(params, sc.n0);
    const LocalizationEstimate est = estimate_ell_profile(profile);
    kv.add("ell_fit", est.ell_fit);
    kv.add("ell_fit_r_squared", est.r_squared);
    kv.add("ell_fit_residual", est.residual);
    kv.add("ell_theory_quasilinear", theoretical_ell(params.k));

    const double c_cal = est.ell_fit / (params.k * params.k);
    const auto sat = ensemble_saturation(params, est.ell_fit, sc.pairs, sc.ensemble, sc.workers);
    for (std::size_t p = 0; p < sc.pairs.size(); ++p) {
        kv.add("sat_" + pair_name(sc.pairs[p]), sat.median[p]);
    }
    kv.add("c_cal", c_cal);

    const auto ts_path = sc.out_dir / "timeseries.csv";
    const auto profile_path = sc.out_dir / "profile.csv";
    emit_csv(series, ts_path);
    emit_profile(profile, sc.n_q, profile_path);
    result.files = {ts_path, profile_path};
    result.summary = kv.rows;
    return result;
}

ScenarioResult run_fig3(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    const double c_cal = calibrate_ell_constant(sc.n_q, sc.K, sc.m_ref);
    kv.add("scenario", to_string(sc.kind));
    kv.add("c_cal", c_cal);
    const auto grid = geometric_grid(sc.ell_min, sc.ell_max, sc.points_per_decade);
    SweepOutput sweep = run_ell_sweep(sc, grid, c_cal);
    result.degraded_points = sweep.degraded;
    summarize_branch_fits(kv, sweep.rows, sc.pairs);
    const auto sat_path = sc.out_dir / "saturation.csv";
    emit_csv(sweep.rows, sat_path);
    result.files = {sat_path};
    result.summary = kv.rows;
    return result;
}

ScenarioResult run_fig4(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    const double c_cal = calibrate_ell_constant(sc.n_q, sc.K, sc.m_ref);
    kv.add("scenario", to_string(sc.kind));
    kv.add("c_cal", c_cal);
    const auto grid = geometric_grid(sc.ell_min, sc.ell_max, sc.points_per_decade);

    SweepOutput sweep = run_ell_sweep(sc, grid, c_cal);
    result.degraded_points = sweep.degraded;

    // Flat-window model route: the same grid evaluated on random-phase
    // localized states (defined for ell >= 1 only); peak locations give the
    // critical lengths.
    std::vector<double> model_grid;
    for (const double ell : grid) {
        if (ell >= 1.0) model_grid.push_back(ell);
    }
    std::vector<SaturationRow> model_rows;
    const std::int64_t center =
        std::llround(kModelCenterFraction * static_cast<double>(std::int64_t{1} << sc.n_q));
    std::vector<std::vector<double>> model_median(model_grid.size());
    parallel_for(model_grid.size(), sc.workers, [&](std::size_t g) {
        std::vector<double> per_pair;
        for (const auto& pair : sc.pairs) {
            std::vector<double> values;
            for (std::int64_t seed = 1; seed <= kModelSeeds; ++seed) {
                const StateVector psi = flat_phase_localized_state(
                    sc.n_q, model_grid[g], center, sc.seed + static_cast<std::uint64_t>(seed));
                values.push_back(concurrence_of_pair(psi, pair.first, pair.second));
            }
            per_pair.push_back(median_of(values));
        }
        model_median[g] = per_pair;
    });
    for (std::size_t g = 0; g < model_grid.size(); ++g) {
        for (std::size_t p = 0; p < sc.pairs.size(); ++p) {
            model_rows.push_back(SaturationRow{model_grid[g], sc.pairs[p].first,
                                               sc.pairs[p].second, model_median[g][p], 0.0});
        }
    }

    // Peak locations per pair on both routes.
    for (std::size_t p = 0; p < sc.pairs.size(); ++p) {
        const std::string tag =
            std::to_string(sc.pairs[p].first) + "_" + std::to_string(sc.pairs[p].second);
        double best_dyn = -1.0, best_dyn_ell = 0.0;
        for (const auto& row : sweep.rows) {
            if (row.pair_i != sc.pairs[p].first || row.pair_j != sc.pairs[p].second) continue;
            if (row.concurrence_sat > best_dyn) {
                best_dyn = row.concurrence_sat;
                best_dyn_ell = row.ell;
            }
        }
        double best_model = -1.0, best_model_ell = 0.0;
        for (std::size_t g = 0; g < model_grid.size(); ++g) {
            if (model_median[g][p] > best_model) {
                best_model = model_median[g][p];
                best_model_ell = model_grid[g];
            }
        }
        kv.add("ell_c_dynamic_pair_" + tag, best_dyn_ell);
        kv.add("ell_c_model_pair_" + tag, best_model_ell);
    }

    const auto sat_path = sc.out_dir / "saturation.csv";
    const auto model_path = sc.out_dir / "model_saturation.csv";
    emit_csv(sweep.rows, sat_path);
    emit_csv(model_rows, model_path);
    result.files = {sat_path, model_path};
    result.summary = kv.rows;
    return result;
}

ScenarioResult run_fig56(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    const bool single = sc.kind == ScenarioKind::fig6_single_qubit_entropy;
    const double c_cal = calibrate_ell_constant(sc.n_q, sc.K, sc.m_ref);
    kv.add("scenario", to_string(sc.kind));
    kv.add("c_cal", c_cal);
    kv.add("s_c", sc.s_c);
    const auto grid = doubling_grid(sc.ell_min, sc.ell_max);

    // blocks: [1..m] ladders for fig5, single qubits for fig6
    std::vector<std::vector<int>> blocks;
    if (single) {
        for (int m = 1; m <= sc.n_q; ++m) blocks.push_back({m});
    } else {
        std::vector<int> ladder;
        for (int m = 1; m <= sc.n_q - 1; ++m) {
            ladder.push_back(m);
            blocks.push_back(ladder);
        }
    }

    const std::vector<std::int64_t> momenta = ensemble_momenta(sc.n_q, sc.ensemble);
    std::vector<std::vector<double>> entropy_rows;   // per (ell, block)
    std::vector<std::vector<double>> member_entropies(grid.size() * momenta.size());
    std::vector<int> member_counts(grid.size() * momenta.size(), 0);

    parallel_for(grid.size() * momenta.size(), sc.workers, [&](std::size_t idx) {
        const std::size_t g = idx / momenta.size();
        const std::size_t r = idx % momenta.size();
        const double ell = grid[g];
        const double K = kick_parameter_for_ell(sc.n_q, sc.m_ref, c_cal, ell);
        const MapParams params(sc.n_q, K, sc.m_ref);
        const FloquetOperator op(params);
        StateVector psi = momentum_eigenstate(sc.n_q, momenta[r]);
        const std::int64_t warm = 2 * localization_time(ell) + 50;
        for (std::int64_t t = 0; t < warm; ++t) op.apply_in_place(psi);
        std::vector<double> entropies;
        entropies.reserve(blocks.size());
        for (const auto& block : blocks) {
            entropies.push_back(von_neumann_entropy(reduce_to_block(psi, block)));
        }
        member_entropies[idx] = std::move(entropies);
        member_counts[idx] = count_entangled_qubits(psi, sc.s_c);
    });

    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            std::vector<double> values;
            for (std::size_t r = 0; r < momenta.size(); ++r) {
                values.push_back(member_entropies[g * momenta.size() + r][b]);
            }
            const double label = single ? static_cast<double>(blocks[b][0])
                                        : static_cast<double>(blocks[b].size());
            entropy_rows.push_back({grid[g], label, median_of(values)});
        }
        std::vector<double> counts;
        for (std::size_t r = 0; r < momenta.size(); ++r) {
            counts.push_back(static_cast<double>(member_counts[g * momenta.size() + r]));
        }
        kv.add("entangled_qubits_at_ell_" + format_double(grid[g]),
               static_cast<std::int64_t>(std::llround(median_of(counts))));
    }

    const auto entropy_path = sc.out_dir / "entropy.csv";
    emit_table_csv(single ? "ell,qubit,entropy" : "ell,m,entropy", entropy_rows, entropy_path);
    result.files = {entropy_path};
    result.summary = kv.rows;
    return result;
}

ScenarioResult run_custom(const Scenario& sc) {
    ScenarioResult result;
    KvList kv;
    kv.add("scenario", to_string(sc.kind));
    TimeSeries series;
    for (std::size_t i = 0; i < sc.m_values.size(); ++i) {
        const MapParams params(sc.n_q, sc.K, sc.m_values[i]);
        const std::string suffix =
            sc.m_values.size() > 1 ? "@M=" + std::to_string(sc.m_values[i]) : std::string();
        if (!sc.pairs.empty() || !sc.blocks.empty()) {
            record_time_series(sc, params, sc.n0, suffix, series);
        }
        const std::vector<double> profile = averaged_profile(params, sc.n0);
        try {
            const LocalizationEstimate est = estimate_ell_profile(profile);
            kv.add("ell_fit" + suffix, est.ell_fit);
            kv.add("ell_fit_r_squared" + suffix, est.r_squared);
        } catch (const Error& e) {
            kv.add("ell_fit" + suffix, std::string("unavailable: ") + e.what());
        }
        kv.add("ell_theory_quasilinear" + suffix, theoretical_ell(params.k));
        const auto profile_path =
            sc.out_dir / ("profile" + (sc.m_values.size() > 1
                                           ? "_M" + std::to_string(sc.m_values[i])
                                           : std::string()) +
                          ".csv");
        emit_profile(profile, sc.n_q, profile_path);
        result.files.push_back(profile_path);
    }
    if (!series.empty()) {
        const auto ts_path = sc.out_dir / "timeseries.csv";
        emit_csv(series, ts_path);
        result.files.push_back(ts_path);
    }
    result.summary = kv.rows;
    return result;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& raw) {
    const Scenario sc = with_defaults(raw);
    if (sc.out_dir.empty()) {
        throw UsageError("scenario output directory is not set");
    }
    std::error_code ec;
    std::filesystem::create_directories(sc.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + sc.out_dir.string() +
                      "': " + ec.message());
    }

    ScenarioResult result;
    switch (sc.kind) {
        case ScenarioKind::fig1_timeseries: result = run_fig1(sc); break;
        case ScenarioKind::fig2_pairs: result = run_fig2(sc); break;
        case ScenarioKind::fig3_saturation_vs_ell: result = run_fig3(sc); break;
        case ScenarioKind::fig4_adjacent_pairs: result = run_fig4(sc); break;
        case ScenarioKind::fig5_block_entropy:
        case ScenarioKind::fig6_single_qubit_entropy: result = run_fig56(sc); break;
        case ScenarioKind::custom: result = run_custom(sc); break;
    }

    KvList tail;
    tail.add("n_q", static_cast<std::int64_t>(sc.n_q));
    tail.add("K", sc.K);
    tail.add("m_ref", sc.m_ref);
    tail.add("ensemble", static_cast<std::int64_t>(sc.ensemble));
    tail.add("seed", static_cast<std::int64_t>(sc.seed));
    tail.add("n0", sc.n0);
    tail.add("degraded_points", static_cast<std::int64_t>(result.degraded_points));
    result.summary.insert(result.summary.end(), tail.rows.begin(), tail.rows.end());

    const auto summary_path = sc.out_dir / "summary.csv";
    emit_kv_csv(result.summary, summary_path);
    result.files.push_back(summary_path);
    return result;
}

}  // namespace qsm
