#include "mixtest/montecarlo.hpp"

#include <cmath>

namespace mixtest {

namespace {

std::string describe(const std::vector<std::pair<std::size_t, std::string>>& failures) {
    return std::to_string(failures.size()) + " replicate(s) failed; first: [replicate " +
           std::to_string(failures.front().first) + "] " + failures.front().second;
}

}  // namespace

McError::McError(std::vector<std::pair<std::size_t, std::string>> failures)
    : std::runtime_error(describe(failures)), failures_(std::move(failures)) {}

double critical_value(const std::vector<double>& stats, double alpha) {
    if (stats.empty()) throw std::invalid_argument("critical_value: need at least one statistic");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("critical_value: alpha must lie in (0,1)");
    }
    for (double s : stats) {
        if (std::isnan(s)) throw std::runtime_error("critical_value: NaN replicate statistic");
    }
    const double b = static_cast<double>(stats.size());
    auto k = static_cast<std::size_t>(std::ceil(b * (1.0 - alpha) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, stats.size());
    std::vector<double> sorted(stats);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     sorted.end());
    return sorted[k - 1];
}

double p_value(const std::vector<double>& stats, double observed) {
    if (stats.empty()) throw std::invalid_argument("p_value: need at least one statistic");
    if (std::isnan(observed)) throw std::runtime_error("p_value: NaN observed statistic");
    std::size_t ge = 0;
    for (double s : stats) {
        if (std::isnan(s)) throw std::runtime_error("p_value: NaN replicate statistic");
        if (s >= observed) ++ge;
    }
    return static_cast<double>(1 + ge) / static_cast<double>(stats.size() + 1);
}

}  // namespace mixtest
