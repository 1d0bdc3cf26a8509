// analysis.hpp
// Localization-length estimation, theory formulas, saturation detection and
// the scaling-law fits (power law, exponential).

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qsm/statevec.hpp"
#include "qsm/timeseries.hpp"

namespace qsm {

// ---- theory formulas --------------------------------------------------------

// Quasilinear localization-length estimate pi^2 k^2 / 3 for kick strength k.
double theoretical_ell(double k);

// Steps until the profile stops spreading: max(ceil(2 * ell), 50).
std::int64_t localization_time(double ell);

// Perturbative small-ell saturation-concurrence model for pair (i, j), up to
// an overall constant: sqrt(ell) * 2^{i-1} / 4^{j-1}. Only ratios are
// meaningful; anchored ratios in j are exactly 1/4 per increment.
double small_ell_concurrence_model(double ell, int i, int j);

// Localization length at which the saturation concurrence of the adjacent
// pair (i, i+1) peaks: 2^i.
double critical_ell(int i);

// ---- profile fit ------------------------------------------------------------

struct LocalizationEstimate {
    double ell_fit = 0.0;      // momentum units, > 0
    std::int64_t peak_slot = 0;
    std::int64_t window_lo = 0;  // signed slot offsets from the peak actually used
    std::int64_t window_hi = 0;
    int points_used = 0;
    double residual = 0.0;     // RMS of the log-profile fit
    double r_squared = 0.0;
};

// Least-squares fit of ln|psi(n)|^2 against the circular slot distance from
// the probability peak. The fit window is the contiguous run of slots around
// the peak staying above max(1e-12 * peak, peak * e^-9): the top nine
// e-foldings of the profile. Evolved profiles carry shallow power-law far
// tails (the kick potential has 1/m^2 harmonics) that would otherwise swamp
// the exponential core. The decay slope b gives ell_fit = -2/b.
LocalizationEstimate estimate_ell(const StateVector& psi);

// Same fit on a raw probability profile (e.g. a time-averaged one).
LocalizationEstimate estimate_ell_profile(std::span<const double> probabilities);

// ---- saturation -------------------------------------------------------------

// Arithmetic mean over the final 200 records (window anchored to the tail).
// The series must hold at least localization_time(ell) + 200 records and
// exactly one observable.
double saturation_value(const TimeSeries& series, double ell);
double saturation_value(std::span<const double> values, double ell);

// ---- scaling-law fits ---------------------------------------------------------

enum class FitModel { power_law, exponential };

struct FitReport {
    FitModel model = FitModel::power_law;
    double coefficient = 0.0;       // prefactor of the fitted model
    double exponent_or_rate = 0.0;  // power-law exponent, or decay rate A
    double r_squared = 0.0;
    int points_used = 0;
};

// Linear regression in log-log space over (ell, value) points; all inputs
// must be positive.
FitReport fit_power_law(const std::vector<std::pair<double, double>>& points);

// Linear regression of ln(value) against ell; the decay rate A = -slope is
// positive for decaying data. All values must be > 0.
FitReport fit_exponential(const std::vector<std::pair<double, double>>& points);

// ---- block-entropy census -----------------------------------------------------

// Largest m such that the entropy of the block [1..m] exceeds the threshold
// S_c; 0 if no block does.
int count_entangled_qubits(const StateVector& psi, double s_c);

}  // namespace qsm
