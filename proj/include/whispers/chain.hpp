#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "whispers/coloring.hpp"
#include "whispers/rational.hpp"
#include "whispers/ring.hpp"
#include "whispers/rng.hpp"

namespace whispers {

enum class Parity { Even, Odd };
enum class ChainMode { Quantum, Classical };

/* Link i joins party i's x to party i+1's y. A party's own (y, x) values are
 * unconstrained relative to each other; only consecutive-link pairs satisfy
 * the promise. */
struct ChainLink {
  int offset;  // x - y mod 2N, one of the six valid offsets
  int y;
};

struct ChainSpec {
  int m = 0;  // party count; links.size() == m-1
  int n = 0;
  std::vector<PromisePair> links;
  Parity true_parity = Parity::Even;  // parity of the jump-link count
  std::optional<std::uint64_t> seed;  // set when the spec was sampled
};

ChainSpec make_chain(int m, int n, const std::vector<ChainLink>& links);
/* Samples each link independently: class fair, offset uniform over the
 * class's three values, y uniform. */
ChainSpec make_chain(int m, int n, std::uint64_t seed);

struct LinkErrorProfile {
  std::vector<double> per_link;  // each in [0, 1/2]
};

/* Probability that an odd number of independent links err:
 * (1 - prod_i(1 - 2*eps_i))/2. This is exactly when the final parity
 * announcement is wrong. */
double parity_error_exact(const LinkErrorProfile& profile);

struct QuantumChainError {
  double exact;        // parity composition of the per-link trig errors
  double union_bound;  // sum of the per-link errors
};

QuantumChainError quantum_chain_error(const ChainSpec& spec);

struct ClassicalChainError {
  double exact;                   // parity composition of per_link
  double small_c_bound;           // (M-1)/(3N), the reference value
  std::vector<Rational> per_link; // per_y_error of the strategy at each link's y
};

/* Per-link error is the strategy's exact conditional error at the realized y
 * (x uniform over the six dots given y); the simulation conditions the same
 * way, so the two are comparable. */
ClassicalChainError classical_chain_error(const ChainSpec& spec,
                                          const Coloring& strategy);

/* 1/2 - e^(-4c/3)/2. */
double classical_bigN_formula(double c);

/* What the parity composition gives for a constant per-link error epsilon
 * over cN - 1 links: (1 - (1-2*epsilon)^(cN-1))/2. Kept separate from the
 * closed form above so callers can compare the two; they are not asserted
 * equal anywhere. */
double classical_composition_value(double c, double epsilon, int n);

/* Default per-link strategy: half the ring Black, half White. Matches the
 * exhaustive optimum for every N the search can reach. */
Coloring default_chain_strategy(int n);

/* Message passing end to end. Quantum: every party measures its particles
 * and multiplies signs through. Classical: each link's x is redrawn per
 * trial conditioned on its y, the sender transmits the dot's colour, and the
 * receiver folds its Bayes decision into the running sign; the announcement
 * is compared against that trial's realized parity. Every trial asserts the
 * parity algebra (announcement wrong iff an odd number of links erred) and
 * throws logic_error on violation. Trials are keyed by (seed, index). */
McEstimate simulate_chain(const ChainSpec& spec, ChainMode mode,
                          std::uint64_t trials, std::uint64_t seed,
                          int threads = 1,
                          const std::optional<Coloring>& strategy = std::nullopt);

}  // namespace whispers
