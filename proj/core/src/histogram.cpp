#include "shadowlab/histogram.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace shadowlab::paths {

double Histogram::edge(std::size_t i) const {
    const double width = (hi - lo) / static_cast<double>(counts.size());
    return lo + static_cast<double>(i) * width;
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = underflow + overflow;
    for (auto c : counts) t += c;
    return t;
}

bool Histogram::same_edges(const Histogram& other) const {
    return lo == other.lo && hi == other.hi && counts.size() == other.counts.size();
}

Histogram make_histogram(std::span<const double> values, const BinSpec& spec) {
    if (values.empty()) throw std::invalid_argument("histogram needs at least one value");
    if (!(spec.hi > spec.lo)) throw std::invalid_argument("histogram range must be nonempty");
    if (spec.bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi))
        throw std::invalid_argument("histogram range must be finite");

    Histogram h;
    h.lo = spec.lo;
    h.hi = spec.hi;
    h.counts.assign(spec.bins, 0);
    const double width = (spec.hi - spec.lo) / static_cast<double>(spec.bins);
    const auto nbins = static_cast<std::ptrdiff_t>(spec.bins);
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("histogram values must be finite");
        if (v < spec.lo) {
            ++h.underflow;
            continue;
        }
        if (v > spec.hi) {
            ++h.overflow;
            continue;
        }
        auto k = static_cast<std::ptrdiff_t>(std::floor((v - spec.lo) / width));
        // Guard against float drift around the edges, then apply the
        // half-open convention exactly.
        while (k > 0 && v < h.edge(static_cast<std::size_t>(k))) --k;
        while (k + 1 < nbins && v >= h.edge(static_cast<std::size_t>(k) + 1)) ++k;
        if (k >= nbins) k = nbins - 1;  // v == hi: last bin is closed
        ++h.counts[static_cast<std::size_t>(k)];
    }
    return h;
}

void write_histogram_csv(std::ostream& os, const Histogram& hist) {
    char line[128];
    os << "bin_left,bin_right,count\n";
    if (hist.underflow > 0) {
        std::snprintf(line, sizeof line, "-inf,%.17g,%llu\n", hist.lo,
                      static_cast<unsigned long long>(hist.underflow));
        os << line;
    }
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%llu\n", hist.edge(i), hist.edge(i + 1),
                      static_cast<unsigned long long>(hist.counts[i]));
        os << line;
    }
    if (hist.overflow > 0) {
        std::snprintf(line, sizeof line, "%.17g,inf,%llu\n", hist.hi,
                      static_cast<unsigned long long>(hist.overflow));
        os << line;
    }
}

} // namespace shadowlab::paths
