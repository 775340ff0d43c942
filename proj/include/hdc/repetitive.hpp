#pragma once

#include "hdc/dc.hpp"

namespace hdc {

// Same knobs as dc: rho drives the repetition count, never the posterior.
using RepetitiveConfig = DcConfig;

struct RepetitiveResult {
  UnitVector estimate;
  long repetitions;    // majority votes per logical query (odd)
  long logical_rounds; // total logical queries across all plane calls
};

// Repetitive baseline: wraps the oracle in an R-fold majority vote and runs
// the aggregation with noiseless (rho = 0) posterior updates. In schedule
// mode R = compute_repetitions over the noiseless logical query count; in
// budget mode R is chosen by a fixed-point guess and clipped so that every
// plane call keeps at least one logical round and R * logical_rounds stays
// within the budget. rho = 0 forces R = 1, which reduces to plain dc.
RepetitiveResult repetitive_dc(const std::vector<UnitVector>& basis,
                               const RepetitiveConfig& config, SignOracle& oracle,
                               const DcObserver& observer = {});

}  // namespace hdc
