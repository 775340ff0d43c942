#pragma once

#include <cstdint>
#include <memory>

#include "hdc/linalg.hpp"

namespace hdc {

// Sign-query oracle for a hidden unit direction h: query(x) returns
// sign<h, x> in {+1, -1} (sign(0) = -1), possibly corrupted by a wrapper.
// queries_used() counts physical queries at the innermost oracle; wrappers
// pass the count through, so a majority wrapper advances it by its
// repetition count per logical query.
class SignOracle {
 public:
  // Answers queries confined to span{e1, e2}: query(c1, c2) is equivalent to
  // SignOracle::query on the unit vector along c1*e1 + c2*e2, but runs in
  // O(1) after the session's O(d) setup.
  class PlaneSession {
   public:
    virtual ~PlaneSession() = default;
    virtual int query(double c1, double c2) = 0;
  };

  virtual ~SignOracle() = default;
  virtual int query(const UnitVector& x) = 0;
  virtual std::unique_ptr<PlaneSession> open_plane(const UnitVector& e1, const UnitVector& e2);
  virtual std::uint64_t queries_used() const noexcept = 0;
};

// Noiseless oracle for the hidden direction `target`.
std::unique_ptr<SignOracle> make_truth_oracle(UnitVector target);

// Flips each answer of `inner` independently with probability rho.
std::unique_ptr<SignOracle> make_noisy_oracle(std::unique_ptr<SignOracle> inner, double rho,
                                              std::uint64_t seed);

// Answers with the majority of `repetitions` fresh queries to `inner`;
// repetitions must be odd (no ties).
std::unique_ptr<SignOracle> make_majority_oracle(std::unique_ptr<SignOracle> inner,
                                                 long repetitions);

}  // namespace hdc
