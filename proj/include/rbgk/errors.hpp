#pragma once

#include <stdexcept>
#include <string>

namespace rbgk {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RootSolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recoverable failure of the reactive equilibrium construction (density or
// temperature left the admissible range). Carries enough context to report
// which species broke and, when raised inside an iteration, at which sweep.
class EquilibriumBreakdown : public std::runtime_error {
  public:
    EquilibriumBreakdown(std::string what, int species, std::string quantity)
        : std::runtime_error(std::move(what)), species_(species), quantity_(std::move(quantity)) {}

    int species() const { return species_; }
    const std::string& quantity() const { return quantity_; }
    int sweep() const { return sweep_; }
    void set_sweep(int s) { sweep_ = s; }

  private:
    int species_;
    std::string quantity_;
    int sweep_ = -1;
};

}  // namespace rbgk
