#include "whispers/report.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <vector>

#include "whispers/classical.hpp"
#include "whispers/errors.hpp"
#include "whispers/game.hpp"
#include "whispers/quantum.hpp"

namespace whispers {
namespace {

Json make_report(const char* command) {
  Json rep;
  rep["command"] = command;
  rep["version"] = kVersion;
  rep["parameters"] = Json::object();
  return rep;
}

void add_result(Json& rep, const std::string& name, const std::string& op,
                Json value) {
  if (!rep.contains("results")) rep["results"] = Json::object();
  rep["results"][name] = Json{{"op", op}, {"value", std::move(value)}};
}

Json rat(const Rational& r) { return Json(r.str()); }

std::uint64_t fresh_seed() {
  std::random_device rd;
  return ((std::uint64_t)rd() << 32) ^ rd();
}

PromisePair checked_pair(int n, int x, int y, const char* who) {
  try {
    return PromisePair(RingPoint(x, 2 * n), RingPoint(y, 2 * n));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string(who) + ": " + e.what());
  }
}

/* Accepts any JSON integer >= 0; documents built in memory carry signed
 * integers where parsed text carries unsigned ones. */
std::uint64_t require_u64(const Json& value, const std::string& what) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
    return (std::uint64_t)value.get<std::int64_t>();
  throw ValidationError(what + " must be a nonnegative integer");
}

}  // namespace

Json cmd_two_party(int n, std::optional<std::pair<int, int>> pair,
                   std::optional<std::uint64_t> trials,
                   std::optional<std::uint64_t> seed, int threads) {
  if (n < 3) throw ValidationError("two-party: need N >= 3");
  Json rep = make_report("two-party");
  rep["parameters"]["n"] = n;

  std::optional<PromisePair> pp;
  if (pair) pp = checked_pair(n, pair->first, pair->second, "two-party");
  if (trials && !pp) pp = checked_pair(n, 1, 0, "two-party");
  if (pp) {
    rep["parameters"]["x"] = pp->x().value();
    rep["parameters"]["y"] = pp->y().value();
  }

  std::uint64_t s = 0;
  if (trials) {
    s = seed ? *seed : fresh_seed();
    rep["seed"] = s;
  }

  add_result(rep, "worst_case_error", "worst_case_error", worst_case_error(n));
  const double half_step = M_PI / (2.0 * n);
  add_result(rep, "worst_case_bound", "(pi/(2N))^2", half_step * half_step);
  add_result(rep, "average_error_uniform", "average_error_uniform",
             average_error_uniform(n));
  if (pp) {
    add_result(rep, "link_error", "link_error_probability",
               link_error_probability(*pp));
    add_result(rep, "pair_offset", "PromisePair.offset", pp->offset());
    add_result(rep, "pair_class", "classify",
               pp->promise_class() == PromiseClass::NoJump ? "no_jump" : "jump");
  }
  if (trials) {
    const McEstimate est = run_two_party_mc(*pp, *trials, s, threads);
    add_result(rep, "mc_error_mean", "run_two_party_mc", est.mean);
    add_result(rep, "mc_std_error", "run_two_party_mc", est.std_error);
    add_result(rep, "mc_trials", "run_two_party_mc", est.trials);
  }
  return rep;
}

Json cmd_classical_search(int n, bool use_symmetry, int threads) {
  Json rep = make_report("classical-search");
  rep["parameters"]["n"] = n;
  rep["parameters"]["symmetry"] = use_symmetry;

  const SearchResult res = search_optimal(n, use_symmetry, threads);
  add_result(rep, "min_error", "search_optimal", rat(res.min_error));
  add_result(rep, "one_over_3n", "1/(3N)", rat(Rational(1, 3 * n)));
  add_result(rep, "canonical_minimizer", "search_optimal",
             res.minimizers.front().str());
  add_result(rep, "minimizer_classes", "search_optimal",
             (std::uint64_t)res.minimizers.size());
  add_result(rep, "colorings_evaluated", "search_optimal", res.evaluated);
  return rep;
}

Json cmd_trit(int n) {
  if (n < 3) throw ValidationError("trit: need N >= 3");
  Json rep = make_report("trit");
  rep["parameters"]["n"] = n;

  const TritColoring trit = trit_coloring(n);
  const CodeAssignment assignment = best_code_assignment(trit);
  add_result(rep, "coloring", "trit_coloring", trit.str());
  add_result(rep, "error", "evaluate_trit", rat(evaluate_trit(trit)));
  add_result(rep, "codeword_black", "best_code_assignment", assignment.black);
  add_result(rep, "codeword_white", "best_code_assignment", assignment.white);
  add_result(rep, "codeword_blue", "best_code_assignment", assignment.blue);
  add_result(rep, "expected_code_length", "expected_code_length",
             rat(expected_code_length(trit, assignment)));
  return rep;
}

Json cmd_minimax(int n, std::uint64_t max_iterations, double tolerance) {
  Json rep = make_report("minimax");
  rep["parameters"]["n"] = n;
  rep["parameters"]["max_iterations"] = max_iterations;
  rep["parameters"]["tolerance"] = tolerance;

  const GameSolution sol = solve_minimax(n, max_iterations, tolerance);
  add_result(rep, "value", "solve_minimax", sol.value);
  add_result(rep, "lower_bound", "solve_minimax", rat(sol.lower_bound));
  add_result(rep, "upper_bound", "solve_minimax", rat(sol.upper_bound));
  add_result(rep, "gap", "solve_minimax", rat(sol.gap));
  add_result(rep, "iterations", "solve_minimax", sol.iterations);
  add_result(rep, "converged", "solve_minimax", sol.converged);
  add_result(rep, "protocol_support_size", "solve_minimax",
             (std::uint64_t)sol.protocol_mix.support.size());

  int adversary_support = 0;
  for (int p = 0; p < sol.adversary_dist.pair_count(); ++p)
    if (sol.adversary_dist.weight(p) > Rational(0)) ++adversary_support;
  add_result(rep, "adversary_support_size", "solve_minimax",
             (std::uint64_t)adversary_support);

  Json top = Json::array();
  for (size_t i = 0; i < sol.protocol_mix.support.size() && i < 5; ++i)
    top.push_back(Json{{"coloring", sol.protocol_mix.support[i].first.str()},
                       {"weight", rat(sol.protocol_mix.support[i].second)}});
  add_result(rep, "protocol_top_support", "solve_minimax", std::move(top));

  // Heaviest pairs, ties by index so the report is reproducible.
  std::vector<int> order;
  for (int p = 0; p < sol.adversary_dist.pair_count(); ++p)
    if (sol.adversary_dist.weight(p) > Rational(0)) order.push_back(p);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sol.adversary_dist.weight(b) < sol.adversary_dist.weight(a);
  });
  Json atop = Json::array();
  for (size_t i = 0; i < order.size() && i < 5; ++i) {
    const PromisePair pp = sol.adversary_dist.pair_at(order[i]);
    atop.push_back(Json{{"x", pp.x().value()},
                        {"y", pp.y().value()},
                        {"weight", rat(sol.adversary_dist.weight(order[i]))}});
  }
  add_result(rep, "adversary_top_support", "solve_minimax", std::move(atop));
  return rep;
}

Json chain_spec_to_json(const ChainSpec& spec) {
  Json doc;
  doc["M"] = spec.m;
  doc["N"] = spec.n;
  doc["links"] = Json::array();
  for (const PromisePair& link : spec.links)
    doc["links"].push_back(
        Json{{"offset_class", link.offset()}, {"y", link.y().value()}});
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc;
}

ChainSpec chain_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("chain spec: expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "M" && key != "N" && key != "links" && key != "seed")
      throw ValidationError("chain spec: unknown key \"" + key + "\"");
  }
  if (!doc.contains("M") || !doc.contains("N") || !doc.contains("links"))
    throw ValidationError("chain spec: need keys M, N and links");
  if (!doc["M"].is_number_integer() || !doc["N"].is_number_integer() ||
      !doc["links"].is_array())
    throw ValidationError("chain spec: M and N are integers, links is a list");

  std::vector<ChainLink> links;
  for (const Json& entry : doc["links"]) {
    if (!entry.is_object() || !entry.contains("offset_class") ||
        !entry.contains("y") || entry.size() != 2 ||
        !entry["offset_class"].is_number_integer() ||
        !entry["y"].is_number_integer())
      throw ValidationError(
          "chain spec: each link needs exactly {offset_class, y}");
    links.push_back({entry["offset_class"].get<int>(), entry["y"].get<int>()});
  }
  ChainSpec spec = make_chain(doc["M"].get<int>(), doc["N"].get<int>(), links);
  if (doc.contains("seed")) spec.seed = require_u64(doc["seed"], "chain spec: seed");
  return spec;
}

ChainSpec parse_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open links file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("links file " + path + ": " + e.what());
  }
  return chain_spec_from_json(doc);
}

Json cmd_chain(int m, int n, ChainMode mode,
               std::optional<std::uint64_t> trials,
               std::optional<std::uint64_t> seed,
               const std::optional<std::string>& links_file, int threads) {
  ChainSpec spec;
  std::optional<std::uint64_t> used_seed;
  if (links_file) {
    spec = parse_chain_file(*links_file);
    if (m > 0 && m != spec.m)
      throw ValidationError("chain: --m disagrees with the links file");
    if (n > 0 && n != spec.n)
      throw ValidationError("chain: --n disagrees with the links file");
    if (trials) used_seed = seed ? *seed : fresh_seed();
  } else {
    used_seed = seed ? *seed : fresh_seed();
    spec = make_chain(m, n, *used_seed);
  }

  Json rep = make_report("chain");
  rep["parameters"]["m"] = spec.m;
  rep["parameters"]["n"] = spec.n;
  rep["parameters"]["mode"] =
      mode == ChainMode::Quantum ? "quantum" : "classical";
  const Coloring strategy = default_chain_strategy(spec.n);
  if (mode == ChainMode::Classical)
    rep["parameters"]["strategy"] = strategy.str();
  rep["parameters"]["chain"] = chain_spec_to_json(spec);
  if (used_seed) rep["seed"] = *used_seed;

  const double c = (double)spec.m / spec.n;
  add_result(rep, "true_parity", "make_chain",
             spec.true_parity == Parity::Even ? "even" : "odd");
  add_result(rep, "c", "M/N", c);

  if (mode == ChainMode::Quantum) {
    const QuantumChainError qce = quantum_chain_error(spec);
    add_result(rep, "exact_error", "quantum_chain_error", qce.exact);
    add_result(rep, "error_sum", "quantum_chain_error", qce.union_bound);
    add_result(rep, "worst_link_sum", "(M-1)*worst_case_error",
               (spec.m - 1) * worst_case_error(spec.n));
  } else {
    const ClassicalChainError cce = classical_chain_error(spec, strategy);
    add_result(rep, "exact_error", "classical_chain_error", cce.exact);
    double sum = 0.0;
    for (const Rational& e : cce.per_link) sum += e.to_double();
    add_result(rep, "error_sum", "classical_chain_error", sum);
    add_result(rep, "composition_at_avg_error", "classical_composition_value",
               classical_composition_value(
                   c, evaluate_coloring(strategy).total_error.to_double(),
                   spec.n));
  }
  add_result(rep, "c_pi_sq_over_4n", "c*pi^2/(4N)",
             c * M_PI * M_PI / (4.0 * spec.n));
  add_result(rep, "links_over_3n", "(M-1)/(3N)",
             rat(Rational(spec.m - 1, 3 * spec.n)));
  add_result(rep, "coin_limit_formula", "classical_bigN_formula",
             classical_bigN_formula(c));

  if (trials) {
    const McEstimate est =
        simulate_chain(spec, mode, *trials, *used_seed, threads,
                       mode == ChainMode::Classical
                           ? std::optional<Coloring>(strategy)
                           : std::nullopt);
    add_result(rep, "mc_error_mean", "simulate_chain", est.mean);
    add_result(rep, "mc_std_error", "simulate_chain", est.std_error);
    add_result(rep, "mc_trials", "simulate_chain", est.trials);
  }
  return rep;
}

namespace {

std::vector<int> parse_int_list(const Json& config, const char* key) {
  if (!config.contains(key))
    throw ValidationError(std::string("sweep config: missing key \"") + key +
                          "\"");
  const Json& list = config[key];
  std::vector<int> out;
  if (!list.is_array() || list.empty())
    throw ValidationError(std::string("sweep config: \"") + key +
                          "\" must be a nonempty list");
  for (const Json& v : list) {
    if (!v.is_number_integer())
      throw ValidationError(std::string("sweep config: \"") + key +
                            "\" must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

void check_keys(const Json& config, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : config.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok)
      throw ValidationError("sweep config: unknown key \"" + key + "\"");
  }
}

void write_csv(const std::string& path, const std::vector<Json>& cells) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open csv file: " + path);
  std::vector<std::string> columns;
  for (const auto& [key, value] : cells.front()["parameters"].items()) {
    (void)value;
    columns.push_back(key);
  }
  for (const auto& [key, value] : cells.front()["results"].items()) {
    (void)value;
    columns.push_back(key);
  }
  for (size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const Json& cell : cells) {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ",";
      const Json& v = cell["parameters"].contains(columns[i])
                          ? cell["parameters"][columns[i]]
                          : cell["results"][columns[i]]["value"];
      // Same serializer as the JSON view, so the two files cannot diverge.
      out << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out << "\n";
  }
}

void add_cell_result(Json& cell, const std::string& name, const std::string& op,
                     Json value) {
  cell["results"][name] = Json{{"op", op}, {"value", std::move(value)}};
}

}  // namespace

Json cmd_sweep(const Json& config, const std::optional<std::string>& csv_path,
               int threads) {
  if (!config.is_object())
    throw ValidationError("sweep config: expected an object");
  if (!config.contains("sweep") || !config["sweep"].is_string())
    throw ValidationError("sweep config: need \"sweep\": \"two-party\"|\"chain\"");
  const std::string kind = config["sweep"].get<std::string>();

  Json rep = make_report("sweep");
  rep["parameters"] = config;
  std::vector<Json> cells;

  if (kind == "two-party") {
    check_keys(config, {"sweep", "n"});
    for (int n : parse_int_list(config, "n")) {
      Json cell;
      cell["parameters"] = Json{{"n", n}};
      const double worst = worst_case_error(n);
      const SearchResult res = search_optimal(n, true, threads);
      add_cell_result(cell, "quantum_worst_case", "worst_case_error", worst);
      const double half_step = M_PI / (2.0 * n);
      add_cell_result(cell, "quantum_bound", "(pi/(2N))^2",
                      half_step * half_step);
      add_cell_result(cell, "quantum_average", "average_error_uniform",
                      average_error_uniform(n));
      add_cell_result(cell, "classical_min_error", "search_optimal",
                      rat(res.min_error));
      add_cell_result(cell, "one_over_3n", "1/(3N)", rat(Rational(1, 3 * n)));
      add_cell_result(cell, "quantum_beats_classical", "comparison",
                      worst < res.min_error.to_double());
      cells.push_back(std::move(cell));
    }
  } else if (kind == "chain") {
    check_keys(config, {"sweep", "n", "m", "mode", "trials", "seed"});
    std::vector<std::string> modes = {"quantum", "classical"};
    if (config.contains("mode")) {
      modes.clear();
      if (!config["mode"].is_array() || config["mode"].empty())
        throw ValidationError("sweep config: \"mode\" must be a nonempty list");
      for (const Json& v : config["mode"]) {
        if (!v.is_string() || (v != "quantum" && v != "classical"))
          throw ValidationError(
              "sweep config: \"mode\" entries must be quantum or classical");
        modes.push_back(v.get<std::string>());
      }
    }
    std::optional<std::uint64_t> trials;
    if (config.contains("trials")) {
      if (std::uint64_t tr = require_u64(config["trials"], "sweep config: \"trials\"");
          tr > 0)
        trials = tr;
    }
    std::uint64_t seed_base;
    if (config.contains("seed")) {
      seed_base = require_u64(config["seed"], "sweep config: \"seed\"");
    } else {
      seed_base = fresh_seed();
      rep["parameters"]["seed"] = seed_base;
    }

    std::uint64_t cell_index = 0;
    for (int n : parse_int_list(config, "n"))
      for (int m : parse_int_list(config, "m"))
        for (const std::string& mode_name : modes) {
          const ChainMode mode = mode_name == "quantum"
                                     ? ChainMode::Quantum
                                     : ChainMode::Classical;
          const std::uint64_t cell_seed = seed_base + cell_index++;
          const ChainSpec spec = make_chain(m, n, cell_seed);
          Json cell;
          cell["parameters"] = Json{{"n", n},
                                    {"m", m},
                                    {"mode", mode_name},
                                    {"cell_seed", cell_seed}};
          const double c = (double)m / n;
          double exact = 0.0, sum = 0.0;
          if (mode == ChainMode::Quantum) {
            const QuantumChainError qce = quantum_chain_error(spec);
            exact = qce.exact;
            sum = qce.union_bound;
            add_cell_result(cell, "exact_error", "quantum_chain_error", exact);
            add_cell_result(cell, "error_sum", "quantum_chain_error", sum);
          } else {
            const ClassicalChainError cce =
                classical_chain_error(spec, default_chain_strategy(n));
            exact = cce.exact;
            for (const Rational& e : cce.per_link) sum += e.to_double();
            add_cell_result(cell, "exact_error", "classical_chain_error", exact);
            add_cell_result(cell, "error_sum", "classical_chain_error", sum);
          }
          add_cell_result(cell, "c_pi_sq_over_4n", "c*pi^2/(4N)",
                          c * M_PI * M_PI / (4.0 * n));
          add_cell_result(cell, "links_over_3n", "(M-1)/(3N)",
                          rat(Rational(m - 1, 3 * n)));
          add_cell_result(cell, "coin_limit_formula", "classical_bigN_formula",
                          classical_bigN_formula(c));
          if (trials) {
            const McEstimate est = simulate_chain(
                spec, mode, *trials, cell_seed, threads,
                mode == ChainMode::Classical
                    ? std::optional<Coloring>(default_chain_strategy(n))
                    : std::nullopt);
            add_cell_result(cell, "mc_error_mean", "simulate_chain", est.mean);
            add_cell_result(cell, "mc_std_error", "simulate_chain",
                            est.std_error);
          } else {
            add_cell_result(cell, "mc_error_mean", "simulate_chain", "");
            add_cell_result(cell, "mc_std_error", "simulate_chain", "");
          }
          cells.push_back(std::move(cell));
        }
  } else {
    throw ValidationError("sweep config: \"sweep\" must be two-party or chain");
  }

  if (csv_path) write_csv(*csv_path, cells);
  rep["cells"] = cells;
  return rep;
}

}  // namespace whispers
