#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowlab {

// Non-finite coordinates appeared while stepping the dynamics. The step index
// is the first step at which the state was no longer finite.
class InstabilityError : public std::runtime_error {
  public:
    InstabilityError(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::size_t step() const { return step_; }

  private:
    std::size_t step_;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// No equal-count cell partition satisfies the diameter/remainder conditions
// for the requested parameters; names the constraint that failed.
class InfeasiblePartition : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A perfect matching does not exist; carries a Hall violator: a set A of left
// vertices whose neighborhood is smaller than A.
class NoPerfectMatching : public std::runtime_error {
  public:
    NoPerfectMatching(std::vector<int> violator, std::vector<int> neighborhood)
        : std::runtime_error("no perfect matching: found set A with |N(A)| < |A| (|A| = " +
                             std::to_string(violator.size()) + ", |N(A)| = " +
                             std::to_string(neighborhood.size()) + ")"),
          violator_(std::move(violator)), neighborhood_(std::move(neighborhood)) {}
    const std::vector<int>& violator() const { return violator_; }
    const std::vector<int>& neighborhood() const { return neighborhood_; }

  private:
    std::vector<int> violator_;
    std::vector<int> neighborhood_;
};

// Iterative solver exhausted its budget before reaching the requested
// tolerance; carries the certified duality gap at the final iterate.
class ToleranceFailure : public std::runtime_error {
  public:
    ToleranceFailure(const std::string& what, double gap)
        : std::runtime_error(what + " (duality gap " + std::to_string(gap) + ")"), gap_(gap) {}
    double gap() const { return gap_; }

  private:
    double gap_;
};

class DegenerateAngle : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace shadowlab
