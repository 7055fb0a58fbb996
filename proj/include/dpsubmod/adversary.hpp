#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dpsubmod/set_function.hpp"

namespace dpsubmod {

enum class AdversaryKind {
    kStochasticFixedOptimum,
    kRandomCutStream,
    kSwitching,
    kExplicitSequence,
};

std::string to_string(AdversaryKind kind);
AdversaryKind adversary_kind_from_string(const std::string& name);

struct AdversaryConfig {
    AdversaryKind kind = AdversaryKind::kStochasticFixedOptimum;
    int n = 0;
    double range_bound = 1.0;
    std::uint64_t seed = 0;
    Subset planted_set = 0;            // stochastic-fixed-optimum; 0 = derive from seed
    std::int64_t switch_period = 64;   // switching
    std::vector<SetFunction> sequence; // explicit-sequence, cycled over the horizon
};

/// Oblivious function sequence: the function at round t is fully determined
/// by (config, t), so the sequence can be regenerated without replaying a
/// learner and trials can fan out in parallel.
class Adversary {
  public:
    explicit Adversary(AdversaryConfig config);

    /// The submodular cost function of round t (1-based).
    SetFunction function_at(std::int64_t t) const;

    int n() const { return config_.n; }
    double range_bound() const { return config_.range_bound; }
    const AdversaryConfig& config() const { return config_; }
    Subset planted_set() const { return planted_; }

  private:
    AdversaryConfig config_;
    Subset planted_ = 0;
    std::vector<SetFunction> bank_;  // switching: the two alternating functions
};

}  // namespace dpsubmod
