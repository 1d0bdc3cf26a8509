#include "qsm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qsm/entanglement.hpp"

namespace qsm {

namespace {

constexpr double kProfileFloorRatio = 1e-12;  // dust cut relative to the peak
constexpr double kProfileCoreDepth = 9.0;     // e-foldings of the profile kept in the fit
constexpr std::int64_t kSaturationWindow = 200;
constexpr double kLocalizationTimeFactor = 2.0;
constexpr std::int64_t kLocalizationTimeMin = 50;

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rms_residual = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
        sxx += (x[idx] - mx) * (x[idx] - mx);
        sxy += (x[idx] - mx) * (y[idx] - my);
    }
    if (sxx == 0.0) {
        throw InsufficientSupportError("all abscissae coincide; slope undefined");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t idx = 0; idx < x.size(); ++idx) {
        const double pred = fit.intercept + fit.slope * x[idx];
        ss_res += (y[idx] - pred) * (y[idx] - pred);
        ss_tot += (y[idx] - my) * (y[idx] - my);
    }
    fit.rms_residual = std::sqrt(ss_res / n);
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace

double theoretical_ell(double k) {
    if (!(k > 0.0)) {
        throw DomainError("kick strength k must be > 0, got " + std::to_string(k));
    }
    return std::numbers::pi * std::numbers::pi * k * k / 3.0;
}

std::int64_t localization_time(double ell) {
    if (!(ell > 0.0)) {
        throw DomainError("localization length must be > 0, got " + std::to_string(ell));
    }
    const auto scaled = static_cast<std::int64_t>(std::ceil(kLocalizationTimeFactor * ell));
    return std::max(scaled, kLocalizationTimeMin);
}

double small_ell_concurrence_model(double ell, int i, int j) {
    if (!(ell > 0.0)) {
        throw DomainError("localization length must be > 0, got " + std::to_string(ell));
    }
    if (i < 1 || j < 1 || i == j) {
        throw ArgumentError("model requires distinct qubit labels >= 1");
    }
    return std::sqrt(ell) * std::ldexp(1.0, i - 1) / std::ldexp(1.0, 2 * (j - 1));
}

double critical_ell(int i) {
    if (i < 1) {
        throw ArgumentError("qubit label must be >= 1, got " + std::to_string(i));
    }
    return std::ldexp(1.0, i);
}

LocalizationEstimate estimate_ell(const StateVector& psi) {
    if (psi.basis() != Basis::momentum) {
        throw StateError("localization profile is defined in the momentum basis");
    }
    const std::vector<double> prob = psi.probabilities();
    return estimate_ell_profile(prob);
}

LocalizationEstimate estimate_ell_profile(std::span<const double> probabilities) {
    const auto L = static_cast<std::int64_t>(probabilities.size());
    if (L < 4) {
        throw ArgumentError("profile needs at least 4 slots");
    }
    const auto peak_it = std::max_element(probabilities.begin(), probabilities.end());
    const double peak_value = *peak_it;
    if (!(peak_value > 0.0)) {
        throw InsufficientSupportError("profile is identically zero");
    }
    const auto peak = static_cast<std::int64_t>(peak_it - probabilities.begin());
    const double floor =
        std::max(kProfileFloorRatio * peak_value, peak_value * std::exp(-kProfileCoreDepth));

    LocalizationEstimate est;
    est.peak_slot = peak;
    est.window_lo = 0;
    est.window_hi = 0;

    // Contiguous above-floor window around the peak, circular indexing. The
    // antipodal slot (offset exactly L/2) belongs to the forward direction.
    std::vector<double> dist{0.0};
    std::vector<double> logp{std::log(peak_value)};
    for (const int dir : {+1, -1}) {
        const std::int64_t d_max = dir > 0 ? L / 2 : L / 2 - 1;
        for (std::int64_t d = 1; d <= d_max; ++d) {
            const std::int64_t s = ((peak + dir * d) % L + L) % L;
            const double p = probabilities[static_cast<std::size_t>(s)];
            if (!(p > floor)) break;
            dist.push_back(static_cast<double>(d));
            logp.push_back(std::log(p));
            if (dir > 0) {
                est.window_hi = d;
            } else {
                est.window_lo = -d;
            }
        }
    }
    if (dist.size() < 3) {
        throw InsufficientSupportError("only " + std::to_string(dist.size()) +
                                       " slots above the support floor; need 3");
    }

    const LinearFit fit = least_squares(dist, logp);
    if (!(fit.slope < 0.0)) {
        throw DomainError("profile does not decay away from its peak");
    }
    est.ell_fit = -2.0 / fit.slope;
    est.points_used = static_cast<int>(dist.size());
    est.residual = fit.rms_residual;
    est.r_squared = fit.r_squared;
    return est;
}

double saturation_value(std::span<const double> values, double ell) {
    const std::int64_t needed = localization_time(ell) + kSaturationWindow;
    if (static_cast<std::int64_t>(values.size()) < needed) {
        throw WindowError("series has " + std::to_string(values.size()) +
                          " records, needs at least " + std::to_string(needed));
    }
    const std::span<const double> tail = values.last(static_cast<std::size_t>(kSaturationWindow));
    // Pivoted mean: exact for constant series.
    const double pivot = tail.front();
    double acc = 0.0;
    for (const double v : tail) acc += v - pivot;
    return pivot + acc / static_cast<double>(kSaturationWindow);
}

double saturation_value(const TimeSeries& series, double ell) {
    const std::vector<std::string> names = series.observables();
    if (names.size() != 1) {
        throw ArgumentError("saturation window expects a single-observable series, got " +
                            std::to_string(names.size()) + " observables");
    }
    const std::vector<double> values = series.values_of(names.front());
    return saturation_value(std::span<const double>(values), ell);
}

FitReport fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw InsufficientSupportError("power-law fit needs at least 3 points");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [ell, value] : points) {
        if (!(ell > 0.0) || !(value > 0.0)) {
            throw DomainError("power-law fit requires positive coordinates");
        }
        x.push_back(std::log(ell));
        y.push_back(std::log(value));
    }
    const LinearFit fit = least_squares(x, y);
    FitReport report;
    report.model = FitModel::power_law;
    report.coefficient = std::exp(fit.intercept);
    report.exponent_or_rate = fit.slope;
    report.r_squared = fit.r_squared;
    report.points_used = static_cast<int>(points.size());
    return report;
}

FitReport fit_exponential(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw InsufficientSupportError("exponential fit needs at least 3 points");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [ell, value] : points) {
        if (!(value > 0.0)) {
            throw DomainError("exponential fit requires positive values; "
                              "zero-concurrence points must be excluded upstream");
        }
        x.push_back(ell);
        y.push_back(std::log(value));
    }
    const LinearFit fit = least_squares(x, y);
    FitReport report;
    report.model = FitModel::exponential;
    report.coefficient = std::exp(fit.intercept);
    report.exponent_or_rate = -fit.slope;
    report.r_squared = fit.r_squared;
    report.points_used = static_cast<int>(points.size());
    return report;
}

int count_entangled_qubits(const StateVector& psi, double s_c) {
    int count = 0;
    std::vector<int> block;
    for (int m = 1; m <= psi.n_q() - 1; ++m) {
        block.push_back(m);
        if (von_neumann_entropy(reduce_to_block(psi, block)) > s_c) count = m;
    }
    return count;
}

}  // namespace qsm
