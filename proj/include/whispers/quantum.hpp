#pragma once

#include <cstdint>

#include "whispers/ring.hpp"
#include "whispers/rng.hpp"

namespace whispers {

/* The singlet statistics enter only through prob_same / prob_opposite for the
 * two measured directions, so outcomes are sampled from the exact two-valued
 * conditional instead of simulating state vectors. */

struct OutcomePair {
  int alice;        // +1 or -1
  int bob_flipped;  // Bob's outcome after his sign flip
};

/* Probability that the receiver announces the wrong class for this pair:
 * sin^2(delta/2) on a no-jump pair, cos^2(delta/2) on a jump pair, where
 * delta = pi*(x-y)/N. */
double link_error_probability(const PromisePair& pair);

/* max over valid pairs = sin^2(pi/(2N)), attained at offsets +-1 and N+-1.
 * Always <= (pi/(2N))^2. */
double worst_case_error(int n);

/* Mean of link_error_probability over the six offsets, i.e. over the 12N
 * valid pairs under the uniform distribution. */
double average_error_uniform(int n);

OutcomePair sample_outcomes(const PromisePair& pair, SplitMix64& rng);

/* Full protocol per trial: measure, send Alice's sign, Bob multiplies and
 * announces no-jump iff the product is +1. Trials are keyed by (seed, index),
 * so the estimate does not depend on the thread count. */
McEstimate run_two_party_mc(const PromisePair& pair, std::uint64_t trials,
                            std::uint64_t seed, int threads = 1);

}  // namespace whispers
