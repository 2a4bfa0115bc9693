#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "uvprop/pathloss.hpp"

namespace uvprop {

struct NormalFit {
    double mu;
    double sigma;  ///< population standard deviation (1/n)
    std::size_t n;
};

/// Right-continuous step ECDF: sorted unique values with probability
/// rank/n, duplicates collapsed to the highest rank.
std::vector<std::pair<double, double>> ecdf(std::span<const double> values);

/// Sample mean and population (1/n) standard deviation; requires n >= 2.
NormalFit normal_fit(std::span<const double> values);

struct SweepSummary {
    NormalFit fit;                             ///< over non-clipped pl_db
    std::array<std::size_t, 3> wr_histogram;   ///< counts of num_wr = 0, 1, 2
    std::size_t clipped;
};

SweepSummary summarize_sweep(std::span<const PathLossSample> samples);

}  // namespace uvprop
