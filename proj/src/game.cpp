#include "whispers/game.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "whispers/errors.hpp"

namespace whispers {
namespace {

PromisePair pair_from_index(int n, int index) {
  const int m = 2 * n;
  if (index < 0 || index >= 12 * n)
    throw ValidationError("pair index out of range");
  const int offset = valid_offsets(n)[index / m];
  const int y = index % m;
  return PromisePair(RingPoint((y + offset) % m, m), RingPoint(y, m));
}

}  // namespace

int pair_index(const PromisePair& pair) {
  const int n = pair.x().half();
  const auto offsets = valid_offsets(n);
  const int off = pair.offset();
  for (int i = 0; i < 6; ++i)
    if (offsets[i] == off) return i * 2 * n + pair.y().value();
  throw std::logic_error("pair_index: verified pair with unknown offset");
}

InputDistribution::InputDistribution(int n, std::vector<Rational> weights)
    : n_(n), weights_(std::move(weights)) {}

InputDistribution InputDistribution::uniform(int n) {
  if (n < 3) throw ValidationError("InputDistribution: need N >= 3");
  return InputDistribution(
      n, std::vector<Rational>((size_t)12 * n, Rational(1, 12 * n)));
}

InputDistribution InputDistribution::point_mass(const PromisePair& pair) {
  const int n = pair.x().half();
  std::vector<Rational> w((size_t)12 * n, Rational(0));
  w[pair_index(pair)] = Rational(1);
  return InputDistribution(n, std::move(w));
}

InputDistribution InputDistribution::from_weights(int n,
                                                  std::vector<Rational> weights) {
  if (n < 3) throw ValidationError("InputDistribution: need N >= 3");
  if ((int)weights.size() != 12 * n)
    throw ValidationError("InputDistribution: need exactly 12N weights");
  Rational sum(0);
  for (const Rational& w : weights) {
    if (w < Rational(0))
      throw ValidationError("InputDistribution: negative weight");
    sum += w;
  }
  if (sum != Rational(1))
    throw ValidationError("InputDistribution: weights must sum to 1");
  return InputDistribution(n, std::move(weights));
}

const Rational& InputDistribution::weight(const PromisePair& pair) const {
  if (pair.modulus() != 2 * n_)
    throw ValidationError("InputDistribution: pair from a different ring");
  return weights_[pair_index(pair)];
}

PromisePair InputDistribution::pair_at(int index) const {
  return pair_from_index(n_, index);
}

void validate(const MixedStrategy& mix) {
  if (mix.support.empty())
    throw ValidationError("mixed strategy: empty support");
  const int dots = mix.support.front().first.dots();
  Rational sum(0);
  std::set<std::string> seen;
  for (const auto& [coloring, prob] : mix.support) {
    if (coloring.dots() != dots)
      throw ValidationError("mixed strategy: mixed ring sizes");
    if (prob < Rational(0))
      throw ValidationError("mixed strategy: negative probability");
    if (!seen.insert(coloring.str()).second)
      throw ValidationError("mixed strategy: duplicate colouring");
    sum += prob;
  }
  if (sum != Rational(1))
    throw ValidationError("mixed strategy: probabilities must sum to 1");
}

Rational payoff(const Coloring& coloring, const InputDistribution& dist) {
  if (coloring.dots() != 2 * dist.n())
    throw ValidationError("payoff: coloring size != ring size");
  const int n = dist.n();
  const int m = 2 * n;
  const auto offsets = valid_offsets(n);
  Rational total(0);
  for (int y = 0; y < m; ++y) {
    // Posterior masses per (message, class); the receiver follows the larger
    // one, so the cell's error is the smaller.
    Rational mass[2][2];  // [message: 0 Black, 1 White][0 no-jump, 1 jump]
    for (int i = 0; i < 6; ++i) {
      const int x = (y + offsets[i]) % m;
      const int msg = coloring.black(x) ? 0 : 1;
      mass[msg][i >= 3 ? 1 : 0] += dist.weight(i * m + y);
    }
    for (int msg = 0; msg < 2; ++msg)
      total += std::min(mass[msg][0], mass[msg][1]);
  }
  return total;
}

namespace {

// Error of one colouring on one pair when its receiver was committed with
// uniform prior weights: 0 or 1 when the counts split, 1/2 on a tied cell.
Rational fixed_receiver_error(const Coloring& coloring,
                              const PromisePair& pair) {
  const Neighborhood nb = neighborhood(pair.y());
  int a_black = 0, b_black = 0;
  for (int d : nb.no_jump) a_black += coloring.black(d);
  for (int d : nb.jump) b_black += coloring.black(d);
  const bool msg_black = coloring.black(pair.x().value());
  const int a = msg_black ? a_black : 3 - a_black;
  const int b = msg_black ? b_black : 3 - b_black;
  if (a == b) return Rational(1, 2);
  const bool announce_no_jump = a > b;
  const bool is_no_jump = pair.promise_class() == PromiseClass::NoJump;
  return announce_no_jump == is_no_jump ? Rational(0) : Rational(1);
}

}  // namespace

Rational mixture_error_on_pair(const MixedStrategy& mix,
                               const PromisePair& pair) {
  validate(mix);
  Rational err(0);
  for (const auto& [coloring, prob] : mix.support)
    err += prob * fixed_receiver_error(coloring, pair);
  return err;
}

std::pair<InputDistribution, Rational> best_response_distribution(
    const MixedStrategy& mix) {
  validate(mix);
  const int n = mix.support.front().first.half();
  Rational best(-1);
  std::vector<int> argmax;
  for (int p = 0; p < 12 * n; ++p) {
    Rational err(0);
    const PromisePair pair = pair_from_index(n, p);
    for (const auto& [coloring, prob] : mix.support)
      err += prob * fixed_receiver_error(coloring, pair);
    if (err > best) {
      best = err;
      argmax.assign(1, p);
    } else if (err == best) {
      argmax.push_back(p);
    }
  }
  std::vector<Rational> weights((size_t)12 * n, Rational(0));
  for (int p : argmax) weights[p] = Rational(1, (long long)argmax.size());
  return {InputDistribution::from_weights(n, std::move(weights)), best};
}

DerandomizationReport derandomization_check(const MixedStrategy& mix,
                                            const InputDistribution& dist) {
  validate(mix);
  DerandomizationReport rep{Rational(0), Rational(0),
                            mix.support.front().first, false};
  bool first = true;
  for (const auto& [coloring, prob] : mix.support) {
    const Rational p = payoff(coloring, dist);
    rep.mixture_error += prob * p;
    if (first || p < rep.best_error) {
      rep.best_error = p;
      rep.best_coloring = coloring;
      first = false;
    }
  }
  rep.holds = rep.best_error <= rep.mixture_error;
  return rep;
}

GameSolution solve_minimax(int n, std::uint64_t max_iterations,
                           double tolerance, int cap) {
  if (n < 3) throw ValidationError("solve_minimax: need N >= 3");
  if (max_iterations < 1)
    throw ValidationError("solve_minimax: need max_iterations >= 1");
  if (!(tolerance > 0)) throw ValidationError("solve_minimax: tolerance <= 0");
  if (n > cap)
    throw ResourceError("solve_minimax: 2^(2N) colourings at N=" +
                        std::to_string(n) + " exceeds the cap (N <= " +
                        std::to_string(cap) + ")");

  const int m = 2 * n;
  const std::uint32_t num_masks = 1u << m;
  const int num_pairs = 12 * n;
  const auto offsets = valid_offsets(n);

  struct PairInfo {
    int x, y;
    bool jump;
  };
  std::vector<PairInfo> pairs(num_pairs);
  for (int p = 0; p < num_pairs; ++p) {
    const int y = p % m;
    pairs[p] = {(y + offsets[p / m]) % m, y, p / m >= 3};
  }

  // Adversary empirical counts, folded per colouring into posterior-count
  // cells so the protocol best response never rescans past plays. Cell index:
  // (mask*m + y)*2 + message, message 0 = Black.
  std::vector<std::uint32_t> nj_cnt((size_t)num_masks * m * 2, 0);
  std::vector<std::uint32_t> j_cnt((size_t)num_masks * m * 2, 0);
  std::vector<long long> payoff_num(num_masks, 0);
  std::vector<long long> protocol_count(num_masks, 0);
  std::vector<long long> adversary_count(num_pairs, 0);
  std::vector<long long> adv_err_count(num_pairs, 0);

  // Individually valid bounds on the game value; each may come from a
  // different iteration, the pair only tightens. The adversary counts behind
  // the best lower bound are kept so the returned distribution certifies it.
  Rational best_lower(0);
  Rational best_upper(1, 2);
  bool have_lower = false;
  std::vector<long long> lower_cert(num_pairs, 0);
  std::uint64_t lower_cert_t = 0;
  std::uint64_t t = 0;
  bool converged = false;

  auto note_lower = [&](const Rational& lower) {
    if (!have_lower || lower > best_lower) {
      best_lower = lower;
      have_lower = true;
      lower_cert = adversary_count;
      lower_cert_t = t;
    }
  };

  auto protocol_best = [&]() {
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < num_masks; ++c)
      if (payoff_num[c] < payoff_num[best]) best = c;
    return best;
  };

  while (t < max_iterations) {
    // Best response to the adversary's empirical distribution; the same scan
    // certifies the lower bound for the previous iteration.
    const std::uint32_t c_t = protocol_best();
    if (t > 0) {
      const Rational lower(payoff_num[c_t], (long long)t);
      const Rational upper(*std::max_element(adv_err_count.begin(),
                                             adv_err_count.end()),
                           (long long)t);
      if (lower > upper)
        throw std::logic_error("solve_minimax: weak duality violated");
      note_lower(lower);
      if (upper < best_upper) best_upper = upper;
      if ((best_upper - best_lower).to_double() <= tolerance) {
        converged = true;
        break;
      }
    }

    ++t;
    protocol_count[c_t] += 1;

    // The rule this colouring commits to against the current counts: per
    // cell, follow the larger count, ties to no-jump.
    for (int p = 0; p < num_pairs; ++p) {
      const PairInfo& pi = pairs[p];
      const int msg = (c_t >> pi.x & 1) ? 0 : 1;
      const size_t cell = ((size_t)c_t * m + pi.y) * 2 + msg;
      const bool announce_no_jump = nj_cnt[cell] >= j_cnt[cell];
      if (announce_no_jump == pi.jump) adv_err_count[p] += 1;
    }

    // Adversary best response: the pair the protocol's past plays miss most.
    int p_t = 0;
    for (int p = 1; p < num_pairs; ++p)
      if (adv_err_count[p] > adv_err_count[p_t]) p_t = p;
    adversary_count[p_t] += 1;

    // One more observation of pair p_t: each colouring's affected cell is
    // the one this pair's message lands in.
    const PairInfo& pt = pairs[p_t];
    for (std::uint32_t c = 0; c < num_masks; ++c) {
      const int msg = (c >> pt.x & 1) ? 0 : 1;
      const size_t cell = ((size_t)c * m + pt.y) * 2 + msg;
      std::uint32_t& a = nj_cnt[cell];
      std::uint32_t& b = j_cnt[cell];
      const std::uint32_t before = std::min(a, b);
      (pt.jump ? b : a) += 1;
      payoff_num[c] += (long long)std::min(a, b) - before;
    }
  }

  if (!converged) {
    // The loop's bound bookkeeping trails by one iteration; settle up.
    const std::uint32_t c_last = protocol_best();
    const Rational lower(payoff_num[c_last], (long long)t);
    const Rational upper(*std::max_element(adv_err_count.begin(),
                                           adv_err_count.end()),
                         (long long)t);
    if (lower > upper)
      throw std::logic_error("solve_minimax: weak duality violated");
    note_lower(lower);
    if (upper < best_upper) best_upper = upper;
    converged = (best_upper - best_lower).to_double() <= tolerance;
  }

  GameSolution sol{
      .value = ((best_lower + best_upper) * Rational(1, 2)).to_double(),
      .lower_bound = best_lower,
      .upper_bound = best_upper,
      .gap = best_upper - best_lower,
      .iterations = t,
      .converged = converged,
      .protocol_mix = MixedStrategy{},
      .adversary_dist = InputDistribution::uniform(n),
  };

  std::map<std::string, long long> by_canonical;
  for (std::uint32_t c = 0; c < num_masks; ++c)
    if (protocol_count[c] > 0)
      by_canonical[Coloring::from_mask(c, n).canonical().str()] +=
          protocol_count[c];
  for (const auto& [key, count] : by_canonical)
    sol.protocol_mix.support.emplace_back(Coloring::parse(key),
                                          Rational(count, (long long)t));
  std::stable_sort(sol.protocol_mix.support.begin(),
                   sol.protocol_mix.support.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  validate(sol.protocol_mix);

  std::vector<Rational> adv_weights(num_pairs);
  for (int p = 0; p < num_pairs; ++p)
    adv_weights[p] = Rational(lower_cert[p], (long long)lower_cert_t);
  sol.adversary_dist = InputDistribution::from_weights(n, std::move(adv_weights));
  return sol;
}

}  // namespace whispers
