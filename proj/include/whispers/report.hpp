#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "whispers/chain.hpp"

namespace whispers {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/* Every command returns one JSON report:
 *   { command, version, parameters, seed?, results }
 * where results maps a quantity name to { op, value }; op names the library
 * operation the number came from. Exact rationals render as "p/q" strings,
 * never as rounded floats. Reports are byte-reproducible given the same
 * parameters and seed: anything wall-clock dependent goes to stderr, not
 * into the report. */

Json cmd_two_party(int n, std::optional<std::pair<int, int>> pair,
                   std::optional<std::uint64_t> trials,
                   std::optional<std::uint64_t> seed, int threads = 1);

Json cmd_classical_search(int n, bool use_symmetry = true, int threads = 1);

Json cmd_trit(int n);

Json cmd_minimax(int n, std::uint64_t max_iterations = 1000000,
                 double tolerance = 1e-3);

Json cmd_chain(int m, int n, ChainMode mode,
               std::optional<std::uint64_t> trials,
               std::optional<std::uint64_t> seed,
               const std::optional<std::string>& links_file, int threads = 1);

/* Config: a flat JSON object. "sweep" picks the kind ("two-party" or
 * "chain"); "n" (and "m" for chains) are grid lists; "mode", "trials",
 * "seed" apply to chain cells. Unknown keys are rejected by name. Returns
 * the JSON bundle (one report per cell); when csv_path is set, also writes
 * one CSV row per cell with the same numbers. */
Json cmd_sweep(const Json& config, const std::optional<std::string>& csv_path,
               int threads = 1);

/* Parses {M, N, links: [{offset_class, y}], seed?}. */
ChainSpec parse_chain_file(const std::string& path);

ChainSpec chain_spec_from_json(const Json& doc);
Json chain_spec_to_json(const ChainSpec& spec);

}  // namespace whispers
