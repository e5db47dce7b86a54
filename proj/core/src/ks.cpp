#include "shadowlab/ks.hpp"

#include <algorithm>
#include <cmath>

#include "shadowlab/errors.hpp"

namespace shadowlab::metrics {

double ks_distance(const paths::Histogram& a, const paths::Histogram& b) {
    if (!a.same_edges(b)) throw GridMismatch("ks_distance: histogram edges differ");
    const double ta = static_cast<double>(a.total());
    const double tb = static_cast<double>(b.total());
    if (ta == 0.0 || tb == 0.0) throw std::invalid_argument("ks_distance: empty histogram");
    double ca = static_cast<double>(a.underflow) / ta;
    double cb = static_cast<double>(b.underflow) / tb;
    double best = std::abs(ca - cb);
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        ca += static_cast<double>(a.counts[i]) / ta;
        cb += static_cast<double>(b.counts[i]) / tb;
        best = std::max(best, std::abs(ca - cb));
    }
    return std::min(best, 1.0);
}

} // namespace shadowlab::metrics
