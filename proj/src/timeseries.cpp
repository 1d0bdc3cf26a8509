#include "qsm/timeseries.hpp"

namespace qsm {

void TimeSeries::append(std::int64_t step, std::string observable, double value) {
    auto it = last_step_.find(observable);
    if (it != last_step_.end()) {
        if (step <= it->second) {
            throw ArgumentError("time series steps must be strictly increasing per "
                                "observable; got step " + std::to_string(step) +
                                " after " + std::to_string(it->second) + " for '" +
                                observable + "'");
        }
        it->second = step;
    } else {
        last_step_.emplace(observable, step);
        observable_order_.push_back(observable);
    }
    records_.push_back(TimeRecord{step, std::move(observable), value});
}

std::vector<std::string> TimeSeries::observables() const {
    return observable_order_;
}

std::vector<double> TimeSeries::values_of(std::string_view observable) const {
    std::vector<double> values;
    for (const TimeRecord& rec : records_) {
        if (rec.observable == observable) values.push_back(rec.value);
    }
    return values;
}

}  // namespace qsm
