#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "whispers/coloring.hpp"
#include "whispers/rational.hpp"
#include "whispers/ring.hpp"

namespace whispers {

/* The six dots x can sit on once y is fixed: three adjacent to y (no jump)
 * and three adjacent to the opposite point (jump). Distinct for N >= 3. */
struct Neighborhood {
  std::array<int, 3> no_jump;  // y-1, y, y+1
  std::array<int, 3> jump;     // y+N-1, y+N, y+N+1
};

Neighborhood neighborhood(const RingPoint& y);

/* Error of the Bayes-optimal receiver at this y: for each message m let
 * a_m / b_m count no-jump / jump dots coloured m; the receiver errs with the
 * smaller count, so the result is sum_m min(a_m, b_m)/6. Denominator divides
 * 6; everything stays rational. */
Rational per_y_error(const Coloring& coloring, const RingPoint& y);

struct StrategyEvaluation {
  Coloring coloring;
  std::vector<Rational> per_y;  // one entry per y in 0..2N-1
  Rational total_error;         // average of per_y
};

StrategyEvaluation evaluate_coloring(const Coloring& coloring);

struct SearchResult {
  Rational min_error;
  std::vector<Coloring> minimizers;  // canonical forms, sorted, deduplicated
  std::uint64_t evaluated = 0;       // colourings actually scored
};

/* Exhaustive minimum of evaluate_coloring over all 2^(2N) colourings.
 * With use_symmetry only the lexicographically-least representative of each
 * orbit (rotations x reflection x colour flip) is scored; the group preserves
 * total_error, so the minimum is unchanged. Work is split over threads by
 * mask range; merging is an exact-rational min, so the result is independent
 * of the thread count. Throws ResourceError above the cap. */
SearchResult search_optimal(int n, bool use_symmetry = true, int threads = 1,
                            int cap = 12);

/* Blue on {2N-1, 0, 1, 2}, White on {3..N}, Black on {N+1..2N-2}. */
TritColoring trit_coloring(int n);

/* Three-message analogue of evaluate_coloring. */
Rational evaluate_trit(const TritColoring& coloring);

/* Bijection from colours onto the prefix-free codewords {"0","10","11"}. */
struct CodeAssignment {
  std::string black;
  std::string white;
  std::string blue;
};

/* Average codeword length in bits with x uniform over the 2N dots. */
Rational expected_code_length(const TritColoring& coloring,
                              const CodeAssignment& assignment);

/* Shortest codeword on the most common colour; ties resolved Black, White,
 * Blue so the choice is deterministic. */
CodeAssignment best_code_assignment(const TritColoring& coloring);

}  // namespace whispers
