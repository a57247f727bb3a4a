#include "whispers/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "whispers/classical.hpp"
#include "whispers/errors.hpp"
#include "whispers/quantum.hpp"

namespace whispers {

ChainSpec make_chain(int m, int n, const std::vector<ChainLink>& links) {
  if (m < 2) throw ValidationError("make_chain: need M >= 2");
  if (n < 3) throw ValidationError("make_chain: need N >= 3");
  if ((int)links.size() != m - 1)
    throw ValidationError("make_chain: need exactly M-1 links, got " +
                          std::to_string(links.size()));
  ChainSpec spec;
  spec.m = m;
  spec.n = n;
  int jumps = 0;
  for (size_t i = 0; i < links.size(); ++i) {
    const int ring = 2 * n;
    const int y = links[i].y;
    const int x = ((y + links[i].offset) % ring + ring) % ring;
    try {
      spec.links.emplace_back(RingPoint(x, ring), RingPoint(y, ring));
    } catch (const std::invalid_argument& e) {
      throw ValidationError("make_chain: link " + std::to_string(i) + ": " +
                            e.what());
    }
    jumps += spec.links.back().promise_class() == PromiseClass::Jump;
  }
  spec.true_parity = (jumps % 2 == 0) ? Parity::Even : Parity::Odd;
  return spec;
}

ChainSpec make_chain(int m, int n, std::uint64_t seed) {
  if (m < 2) throw ValidationError("make_chain: need M >= 2");
  if (n < 3) throw ValidationError("make_chain: need N >= 3");
  SplitMix64 rng(SplitMix64::mix(seed));
  std::vector<ChainLink> links;
  links.reserve(m - 1);
  for (int i = 0; i < m - 1; ++i) {
    const bool jump = rng.next_below(2) == 1;
    const int pick = rng.next_below(3);
    const int offset = jump ? (n - 1 + pick) : (pick == 0 ? 2 * n - 1 : pick - 1);
    links.push_back({offset, rng.next_below(2 * n)});
  }
  ChainSpec spec = make_chain(m, n, links);
  spec.seed = seed;
  return spec;
}

double parity_error_exact(const LinkErrorProfile& profile) {
  double prod = 1.0;
  for (double e : profile.per_link) {
    if (!(e >= 0.0) || e > 0.5 + 1e-12)
      throw ValidationError("parity_error_exact: link error outside [0, 1/2]");
    prod *= 1.0 - 2.0 * e;
  }
  return (1.0 - prod) / 2.0;
}

QuantumChainError quantum_chain_error(const ChainSpec& spec) {
  LinkErrorProfile profile;
  profile.per_link.reserve(spec.links.size());
  for (const PromisePair& link : spec.links)
    profile.per_link.push_back(link_error_probability(link));

  QuantumChainError out;
  out.exact = parity_error_exact(profile);
  out.union_bound = 0.0;
  for (double e : profile.per_link) out.union_bound += e;
  if (out.exact > out.union_bound + 1e-12)
    throw std::logic_error("quantum_chain_error: composition above the sum");
  if (out.union_bound >
      (spec.m - 1) * worst_case_error(spec.n) + 1e-12)
    throw std::logic_error("quantum_chain_error: sum above the per-link max");
  return out;
}

ClassicalChainError classical_chain_error(const ChainSpec& spec,
                                          const Coloring& strategy) {
  if (strategy.dots() != 2 * spec.n)
    throw ValidationError("classical_chain_error: strategy size != ring size");
  ClassicalChainError out;
  LinkErrorProfile profile;
  for (const PromisePair& link : spec.links) {
    out.per_link.push_back(per_y_error(strategy, link.y()));
    profile.per_link.push_back(out.per_link.back().to_double());
  }
  out.exact = parity_error_exact(profile);
  out.small_c_bound = Rational(spec.m - 1, 3 * spec.n).to_double();
  return out;
}

double classical_bigN_formula(double c) {
  if (!(c > 0)) throw ValidationError("classical_bigN_formula: need c > 0");
  return 0.5 - std::exp(-4.0 * c / 3.0) / 2.0;
}

double classical_composition_value(double c, double epsilon, int n) {
  if (n < 3) throw ValidationError("classical_composition_value: need N >= 3");
  if (!(c * n > 1))
    throw ValidationError("classical_composition_value: need at least one link");
  if (!(epsilon >= 0.0) || epsilon > 0.5)
    throw ValidationError("classical_composition_value: epsilon outside [0, 1/2]");
  return 0.5 * (1.0 - std::pow(1.0 - 2.0 * epsilon, c * n - 1.0));
}

Coloring default_chain_strategy(int n) { return Coloring::two_arc(n); }

namespace {

struct ClassicalLink {
  int dots[6];   // no-jump neighbours first, then jump neighbours
  int sign[6];   // sender's colour at each dot, Black = +1
  int receiver;  // +1 when message Black reads as no-jump at this y
};

std::uint64_t run_trials(const ChainSpec& spec, ChainMode mode,
                         const std::vector<ClassicalLink>& clinks,
                         std::uint64_t lo, std::uint64_t hi,
                         std::uint64_t seed) {
  const bool true_even = spec.true_parity == Parity::Even;
  std::uint64_t errors = 0;
  for (std::uint64_t t = lo; t < hi; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, t);
    int running = 1;
    bool odd_link_errors = false;
    bool wrong;
    if (mode == ChainMode::Quantum) {
      for (const PromisePair& link : spec.links) {
        const OutcomePair o = sample_outcomes(link, rng);
        const int link_sign = o.alice * o.bob_flipped;
        running *= link_sign;
        const bool jump = link.promise_class() == PromiseClass::Jump;
        odd_link_errors ^= ((link_sign == 1) == jump);
      }
      wrong = (running == 1) != true_even;
    } else {
      // Each link's sender value is redrawn given its receiver value, so the
      // jump count itself is random; score against this trial's parity.
      bool realized_even = true;
      for (const ClassicalLink& link : clinks) {
        const int pick = rng.next_below(6);
        const bool jump = pick >= 3;
        const int a = link.sign[pick] * link.receiver;
        running *= a;
        realized_even ^= jump;
        odd_link_errors ^= ((a == 1) == jump);
      }
      wrong = (running == 1) != realized_even;
    }
    if (wrong != odd_link_errors)
      throw std::logic_error(
          "simulate_chain: announcement disagrees with the link error parity");
    errors += wrong;
  }
  return errors;
}

}  // namespace

McEstimate simulate_chain(const ChainSpec& spec, ChainMode mode,
                          std::uint64_t trials, std::uint64_t seed,
                          int threads, const std::optional<Coloring>& strategy) {
  if (trials < 1) throw ValidationError("simulate_chain: need trials >= 1");
  if (threads < 1) throw ValidationError("simulate_chain: need threads >= 1");

  std::vector<ClassicalLink> clinks;
  if (mode == ChainMode::Classical) {
    const Coloring strat = strategy ? *strategy : default_chain_strategy(spec.n);
    if (strat.dots() != 2 * spec.n)
      throw ValidationError("simulate_chain: strategy size != ring size");
    for (const PromisePair& link : spec.links) {
      const Neighborhood nb = neighborhood(link.y());
      ClassicalLink cl;
      int a_black = 0, b_black = 0;
      for (int i = 0; i < 3; ++i) {
        cl.dots[i] = nb.no_jump[i];
        cl.dots[3 + i] = nb.jump[i];
        a_black += strat.black(nb.no_jump[i]);
        b_black += strat.black(nb.jump[i]);
      }
      for (int i = 0; i < 6; ++i) cl.sign[i] = strat.sign(cl.dots[i]);
      cl.receiver = (a_black >= b_black) ? 1 : -1;
      clinks.push_back(cl);
    }
  }

  std::uint64_t errors = 0;
  if (threads == 1) {
    errors = run_trials(spec, mode, clinks, 0, trials, seed);
  } else {
    const std::uint64_t nw = std::min<std::uint64_t>(threads, trials);
    std::vector<std::uint64_t> partial(nw, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + nw - 1) / nw;
    for (std::uint64_t w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        partial[w] = run_trials(spec, mode, clinks, w * chunk,
                                std::min(trials, (w + 1) * chunk), seed);
      });
    for (auto& th : pool) th.join();
    for (std::uint64_t p : partial) errors += p;
  }
  return make_estimate(errors, trials, seed);
}

}  // namespace whispers
