#include "uvprop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uvprop {

std::vector<std::pair<double, double>> ecdf(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("ecdf: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    std::vector<std::pair<double, double>> out;
    out.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double p = static_cast<double>(i + 1) / n;
        if (!out.empty() && out.back().first == sorted[i])
            out.back().second = p;  // duplicates keep the highest rank
        else
            out.emplace_back(sorted[i], p);
    }
    return out;
}

NormalFit normal_fit(std::span<const double> values) {
    if (values.size() < 2)
        throw std::invalid_argument("normal_fit: need at least 2 values, got " +
                                    std::to_string(values.size()));
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / n), values.size()};
}

SweepSummary summarize_sweep(std::span<const PathLossSample> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize_sweep: empty sweep");
    SweepSummary summary{};
    std::vector<double> usable;
    usable.reserve(samples.size());
    for (const PathLossSample& s : samples) {
        if (s.num_wr >= 0 && s.num_wr <= 2) summary.wr_histogram[s.num_wr]++;
        if (s.clipped)
            summary.clipped++;
        else
            usable.push_back(s.pl_db);
    }
    if (usable.size() < 2)
        throw std::invalid_argument("summarize_sweep: fewer than 2 usable samples (" +
                                    std::to_string(summary.clipped) + " clipped)");
    summary.fit = normal_fit(usable);
    return summary;
}

}  // namespace uvprop
