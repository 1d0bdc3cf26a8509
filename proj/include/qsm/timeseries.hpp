// timeseries.hpp
// Per-step scalar observable records shared by the analysis module and the
// scenario harness.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

struct TimeRecord {
    std::int64_t step;
    std::string observable;
    double value;
};

// Append-only record list; steps must be strictly increasing per observable.
class TimeSeries {
public:
    void append(std::int64_t step, std::string observable, double value);

    const std::vector<TimeRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    // Distinct observable names, in first-appearance order.
    std::vector<std::string> observables() const;

    // Values of one observable, in step order.
    std::vector<double> values_of(std::string_view observable) const;

private:
    std::vector<TimeRecord> records_;
    std::map<std::string, std::int64_t, std::less<>> last_step_;
    std::vector<std::string> observable_order_;
};

}  // namespace qsm
