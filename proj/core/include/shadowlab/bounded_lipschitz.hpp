#pragma once
#include <cstddef>
#include <string>
#include <vector>

#include "shadowlab/distance_matrix.hpp"

namespace shadowlab::metrics {

// Result of the empirical bounded-Lipschitz program
//   maximize (1/N_A) sum g(a_i) - (1/N_B) sum g(b_j)
//   subject to max|g| + Lip(g) <= 1
// over test-function values at the sample points. `value` is the converged
// program value (within 1e-6 of the optimum or an exception is thrown),
// `g` the test-function certificate (a-block then b-block), `duality_gap` the
// certified distance to the coupling upper bound.
struct BlResult {
    double value{0.0};
    std::vector<double> g;
    double duality_gap{0.0};
    std::size_t iterations{0};

    std::string to_json_string() const;
};

BlResult bl_distance_empirical(const DistanceMatrix& d);

} // namespace shadowlab::metrics
