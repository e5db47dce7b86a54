#pragma once
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace shadowlab::paths {

struct BinSpec {
    double lo{0.0};
    double hi{1.0};
    std::size_t bins{40};
};

// Fixed-range histogram. Bins are half-open [e_i, e_{i+1}) with the last bin
// closed, so a value exactly on an interior edge lands in the right bin and a
// value equal to hi lands in the last bin. Out-of-range values are counted in
// the underflow/overflow slots.
struct Histogram {
    double lo{0.0};
    double hi{1.0};
    std::vector<std::uint64_t> counts;
    std::uint64_t underflow{0};
    std::uint64_t overflow{0};

    double edge(std::size_t i) const;
    std::uint64_t total() const;
    bool same_edges(const Histogram& other) const;
};

Histogram make_histogram(std::span<const double> values, const BinSpec& spec);

// CSV with columns bin_left, bin_right, count; underflow/overflow rows carry
// infinite edges.
void write_histogram_csv(std::ostream& os, const Histogram& hist);

} // namespace shadowlab::paths
