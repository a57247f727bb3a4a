#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "whispers/classical.hpp"
#include "whispers/coloring.hpp"
#include "whispers/rational.hpp"
#include "whispers/ring.hpp"

namespace whispers {

/* Adversary's side of the game: a distribution over the 12N valid pairs.
 * Pairs are indexed offset-major in the valid_offsets order, then by y, so
 * index = offset_index*2N + y. The promise is never broken; invalid pairs
 * are simply not in the domain. */
class InputDistribution {
 public:
  static InputDistribution uniform(int n);
  static InputDistribution point_mass(const PromisePair& pair);
  /* weights indexed as above; must be nonnegative and sum to exactly 1. */
  static InputDistribution from_weights(int n, std::vector<Rational> weights);

  int n() const { return n_; }
  int pair_count() const { return (int)weights_.size(); }  // 12N
  const Rational& weight(int index) const { return weights_[index]; }
  const Rational& weight(const PromisePair& pair) const;
  PromisePair pair_at(int index) const;

 private:
  InputDistribution(int n, std::vector<Rational> weights);
  int n_ = 0;
  std::vector<Rational> weights_;
};

int pair_index(const PromisePair& pair);

/* Shared-randomness side: a lottery over colourings. Entries must be
 * distinct, probabilities nonnegative with exact sum 1. */
struct MixedStrategy {
  std::vector<std::pair<Coloring, Rational>> support;
};

void validate(const MixedStrategy& mix);

/* Expected error of the colouring against dist when the receiver knows dist:
 * per (y, message) cell the receiver follows the larger posterior mass, so
 * the cell contributes min(no-jump mass, jump mass). Reduces to
 * evaluate_coloring().total_error on the uniform distribution. */
Rational payoff(const Coloring& coloring, const InputDistribution& dist);

/* Error of the mixture on one pair when each receiver is fixed in advance
 * with the uniform prior (the adversary moves last, so receivers cannot
 * condition on dist). A receiver cell with tied counts scores 1/2. */
Rational mixture_error_on_pair(const MixedStrategy& mix,
                               const PromisePair& pair);

/* Uniform distribution over the argmax pairs, plus the attained error. */
std::pair<InputDistribution, Rational> best_response_distribution(
    const MixedStrategy& mix);

struct DerandomizationReport {
  Rational mixture_error;  // sum_c p_c * payoff(c, dist)
  Rational best_error;     // min over support
  Coloring best_coloring;  // witness attaining best_error
  bool holds;              // best_error <= mixture_error
};

DerandomizationReport derandomization_check(const MixedStrategy& mix,
                                            const InputDistribution& dist);

struct GameSolution {
  double value;           // midpoint of the two bounds
  Rational lower_bound;   // best response to the adversary's empirical mix
  Rational upper_bound;   // adversary's best pair against the empirical mix
  Rational gap;           // upper - lower, nonnegative at every iteration
  std::uint64_t iterations;
  bool converged;         // gap <= tolerance reached
  MixedStrategy protocol_mix;        // empirical play, canonical-aggregated
  InputDistribution adversary_dist;  // empirical counts certifying lower_bound
};

/* Fictitious play on the zero-sum game. The protocol player's pure
 * strategies are (colouring, decision rule) pairs; best-responding to the
 * adversary's empirical counts picks the Bayes rule per cell, so only the
 * 2^(2N) colourings are enumerated. The adversary best-responds with the
 * pair where the protocol's past plays erred most often. Both bounds are
 * exact rationals and bracket the game value at every iteration. Throws
 * ResourceError when N exceeds the cap. */
GameSolution solve_minimax(int n, std::uint64_t max_iterations = 1000000,
                           double tolerance = 1e-3, int cap = 5);

}  // namespace whispers
