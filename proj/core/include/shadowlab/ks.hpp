#pragma once
#include "shadowlab/histogram.hpp"

namespace shadowlab::metrics {

// Two-sample Kolmogorov-Smirnov distance between histograms with identical
// bin edges: the maximum absolute difference of the normalized cumulative
// counts (underflow and overflow slots included). Throws GridMismatch when
// the edges differ.
double ks_distance(const paths::Histogram& a, const paths::Histogram& b);

} // namespace shadowlab::metrics
