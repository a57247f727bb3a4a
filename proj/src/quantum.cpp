#include "whispers/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "whispers/errors.hpp"

namespace whispers {

double link_error_probability(const PromisePair& pair) {
  const double tx = angle_of(pair.x());
  const double ty = angle_of(pair.y());
  // Bob announces no-jump on agreement, so he is wrong with the probability
  // of the outcome he is not expecting.
  if (pair.promise_class() == PromiseClass::NoJump)
    return prob_opposite(tx, ty);
  return prob_same(tx, ty);
}

double worst_case_error(int n) {
  if (n < 3) throw ValidationError("worst_case_error: need N >= 3");
  const double s = std::sin(M_PI / (2.0 * n));
  const double w = s * s;
  const double bound = (M_PI / (2.0 * n)) * (M_PI / (2.0 * n));
  if (w > bound)
    throw std::logic_error("worst_case_error exceeded its quadratic bound");
  return w;
}

double average_error_uniform(int n) {
  if (n < 3) throw ValidationError("average_error_uniform: need N >= 3");
  const RingPoint y(0, 2 * n);
  double sum = 0.0;
  for (int off : valid_offsets(n))
    sum += link_error_probability(PromisePair(RingPoint(off, 2 * n), y));
  return sum / 6.0;
}

OutcomePair sample_outcomes(const PromisePair& pair, SplitMix64& rng) {
  const int alice = rng.next_sign();
  const double p_same = prob_same(angle_of(pair.x()), angle_of(pair.y()));
  const int bob = (rng.next_double() < p_same) ? alice : -alice;
  return {alice, bob};
}

McEstimate run_two_party_mc(const PromisePair& pair, std::uint64_t trials,
                            std::uint64_t seed, int threads) {
  if (trials < 1) throw ValidationError("run_two_party_mc: need trials >= 1");
  if (threads < 1) throw ValidationError("run_two_party_mc: need threads >= 1");

  const bool expect_same = pair.promise_class() == PromiseClass::NoJump;
  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      SplitMix64 rng = SplitMix64::for_trial(seed, t);
      const OutcomePair o = sample_outcomes(pair, rng);
      const bool same = o.alice * o.bob_flipped == 1;
      if (same != expect_same) ++errors;
    }
    return errors;
  };

  std::uint64_t errors = 0;
  if (threads == 1) {
    errors = count_range(0, trials);
  } else {
    const std::uint64_t nw = std::min<std::uint64_t>(threads, trials);
    std::vector<std::uint64_t> partial(nw, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + nw - 1) / nw;
    for (std::uint64_t w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        partial[w] = count_range(w * chunk, std::min(trials, (w + 1) * chunk));
      });
    for (auto& th : pool) th.join();
    for (std::uint64_t p : partial) errors += p;
  }
  return make_estimate(errors, trials, seed);
}

}  // namespace whispers
