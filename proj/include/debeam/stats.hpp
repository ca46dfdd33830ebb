#pragma once

#include <vector>

// Small statistics helpers for the energy-series diagnostics.

namespace debeam::stats {

double mean(const std::vector<double>& v);

// least-squares slope of y over x
double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// index of the largest DFT magnitude over bins 1..N/2 (mean removed first)
int dominant_frequency_bin(const std::vector<double>& series);

}  // namespace debeam::stats
