#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "whispers/errors.hpp"
#include "whispers/report.hpp"

namespace {

using whispers::Json;

struct Shared {
  int threads = 1;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Reports go to stdout for scripts; everything meant for a human, including
// timings, goes to stderr so the JSON stays byte-stable.
int emit(const Json& rep, std::chrono::steady_clock::time_point start,
         const std::string& summary) {
  std::cout << rep.dump(2) << "\n";
  std::cerr << summary << " (" << elapsed_ms(start) << " ms)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis and simulation for the jump / no-jump "
               "one-bit promise problem and its whispers chains"};
  app.require_subcommand(1);
  Shared shared;

  auto* two_party = app.add_subcommand("two-party", "two-party protocol bounds");
  int tp_n = 0;
  std::optional<int> tp_x, tp_y;
  std::optional<std::uint64_t> tp_trials, tp_seed;
  two_party->add_option("--n", tp_n, "ring half-size N")->required();
  two_party->add_option("--x", tp_x, "sender's dot");
  two_party->add_option("--y", tp_y, "receiver's dot");
  two_party->add_option("--trials", tp_trials, "Monte Carlo trials");
  two_party->add_option("--seed", tp_seed, "Monte Carlo seed");
  two_party->add_option("--threads", shared.threads, "worker threads");

  auto* search = app.add_subcommand("classical-search",
                                    "exhaustive one-bit strategy search");
  int cs_n = 0;
  bool cs_no_symmetry = false;
  search->add_option("--n", cs_n, "ring half-size N")->required();
  search->add_flag("--no-symmetry", cs_no_symmetry,
                   "score every colouring instead of one per orbit");
  search->add_option("--threads", shared.threads, "worker threads");

  auto* trit = app.add_subcommand("trit", "three-colour strategy report");
  int tr_n = 0;
  trit->add_option("--n", tr_n, "ring half-size N")->required();

  auto* minimax = app.add_subcommand("minimax", "adversarial game solver");
  int mm_n = 0;
  std::uint64_t mm_iterations = 1000000;
  double mm_tolerance = 1e-3;
  bool mm_strict = false;
  minimax->add_option("--n", mm_n, "ring half-size N")->required();
  minimax->add_option("--iterations", mm_iterations, "iteration budget");
  minimax->add_option("--tolerance", mm_tolerance, "duality gap target");
  minimax->add_flag("--strict", mm_strict, "exit 4 when unconverged");

  auto* chain = app.add_subcommand("chain", "multiparty whispers chain");
  int ch_m = 0, ch_n = 0;
  std::string ch_mode = "quantum";
  std::optional<std::uint64_t> ch_trials, ch_seed;
  std::optional<std::string> ch_links;
  chain->add_option("--m", ch_m, "party count M");
  chain->add_option("--n", ch_n, "ring half-size N");
  chain->add_option("--mode", ch_mode, "quantum or classical")
      ->check(CLI::IsMember({"quantum", "classical"}));
  chain->add_option("--trials", ch_trials, "Monte Carlo trials");
  chain->add_option("--seed", ch_seed, "chain sampling and Monte Carlo seed");
  chain->add_option("--links-file", ch_links, "explicit chain spec (JSON)");
  chain->add_option("--threads", shared.threads, "worker threads");

  auto* sweep = app.add_subcommand("sweep", "grid of runs with CSV output");
  std::string sw_config;
  std::optional<std::string> sw_csv;
  sweep->add_option("--config", sw_config, "sweep config (JSON)")->required();
  sweep->add_option("--csv", sw_csv, "also write one CSV row per cell");
  sweep->add_option("--threads", shared.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*two_party) {
      if (tp_x.has_value() != tp_y.has_value())
        throw whispers::ValidationError("two-party: give both --x and --y");
      std::optional<std::pair<int, int>> pair;
      if (tp_x) pair = {*tp_x, *tp_y};
      const Json rep = whispers::cmd_two_party(tp_n, pair, tp_trials, tp_seed,
                                               shared.threads);
      return emit(rep, start,
                  "two-party: worst case " +
                      rep["results"]["worst_case_error"]["value"].dump());
    }
    if (*search) {
      const Json rep = whispers::cmd_classical_search(cs_n, !cs_no_symmetry,
                                                      shared.threads);
      return emit(rep, start,
                  "classical-search: min error " +
                      rep["results"]["min_error"]["value"].get<std::string>() +
                      " over " +
                      rep["results"]["colorings_evaluated"]["value"].dump() +
                      " colourings");
    }
    if (*trit) {
      const Json rep = whispers::cmd_trit(tr_n);
      return emit(rep, start,
                  "trit: error " +
                      rep["results"]["error"]["value"].get<std::string>());
    }
    if (*minimax) {
      const Json rep = whispers::cmd_minimax(mm_n, mm_iterations, mm_tolerance);
      const bool converged = rep["results"]["converged"]["value"].get<bool>();
      emit(rep, start,
           "minimax: value " + rep["results"]["value"]["value"].dump() +
               ", gap " + rep["results"]["gap"]["value"].get<std::string>() +
               (converged ? "" : " (unconverged)"));
      if (mm_strict && !converged) return 4;
      return 0;
    }
    if (*chain) {
      whispers::ChainMode mode = ch_mode == "quantum"
                                     ? whispers::ChainMode::Quantum
                                     : whispers::ChainMode::Classical;
      const Json rep = whispers::cmd_chain(ch_m, ch_n, mode, ch_trials, ch_seed,
                                           ch_links, shared.threads);
      return emit(rep, start,
                  "chain: exact error " +
                      rep["results"]["exact_error"]["value"].dump());
    }
    if (*sweep) {
      std::ifstream in(sw_config);
      if (!in)
        throw whispers::ValidationError("cannot open config file: " + sw_config);
      Json config;
      try {
        config = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw whispers::ValidationError("config file " + sw_config + ": " +
                                        e.what());
      }
      const Json rep = whispers::cmd_sweep(config, sw_csv, shared.threads);
      return emit(rep, start,
                  "sweep: " + std::to_string(rep["cells"].size()) + " cells" +
                      (sw_csv ? ", csv " + *sw_csv : ""));
    }
  } catch (const whispers::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const whispers::UnconvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
