#include "whispers/classical.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>

#include "whispers/errors.hpp"

namespace whispers {

Neighborhood neighborhood(const RingPoint& y) {
  const int m = y.modulus();
  const int n = y.half();
  const int v = y.value();
  return {{(v + m - 1) % m, v, (v + 1) % m},
          {(v + n - 1) % m, (v + n) % m, (v + n + 1) % m}};
}

Rational per_y_error(const Coloring& coloring, const RingPoint& y) {
  if (coloring.dots() != y.modulus())
    throw ValidationError("per_y_error: coloring size != ring size");
  const Neighborhood nb = neighborhood(y);
  int a_black = 0, b_black = 0;
  for (int d : nb.no_jump) a_black += coloring.black(d);
  for (int d : nb.jump) b_black += coloring.black(d);
  const int num = std::min(a_black, b_black) +
                  std::min(3 - a_black, 3 - b_black);
  return Rational(num, 6);
}

StrategyEvaluation evaluate_coloring(const Coloring& coloring) {
  const int m = coloring.dots();
  StrategyEvaluation ev;
  ev.coloring = coloring;
  ev.per_y.reserve(m);
  long long num = 0;  // error numerator over 12N
  for (int y = 0; y < m; ++y) {
    const Rational e = per_y_error(coloring, RingPoint(y, m));
    num += e.num() * (6 / e.den());
    ev.per_y.push_back(e);
  }
  ev.total_error = Rational(num, 6LL * m);
  return ev;
}

namespace {

// Everything below works on bitmasks (bit i set = dot i Black) so the search
// touches no heap memory per colouring.

inline std::uint32_t rotate_mask(std::uint32_t mask, int k, int m,
                                 std::uint32_t full) {
  if (k == 0) return mask;
  return ((mask << k) | (mask >> (m - k))) & full;
}

inline std::uint32_t reflect_mask(std::uint32_t mask, int m) {
  std::uint32_t out = mask & 1u;  // dot 0 is its own mirror image
  for (int i = 1; i < m; ++i)
    if (mask >> i & 1) out |= 1u << (m - i);
  return out;
}

// min(a,b) + min(3-a,3-b) summed over both messages, indexed a*4+b.
struct CellTable {
  int v[16];
  constexpr CellTable() : v{} {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        v[a * 4 + b] = (a < b ? a : b) + ((3 - a) < (3 - b) ? 3 - a : 3 - b);
  }
};
constexpr CellTable kCell;

// Error numerator over 12N. Both three-dot windows are contiguous runs, so a
// doubled mask turns every wraparound window into a plain shift.
inline int error_numerator(std::uint32_t mask, int m, int n) {
  const std::uint64_t ext = mask | ((std::uint64_t)mask << m);
  int num = 0;
  for (int y = 0; y < m; ++y) {
    // Window start indices stay below m so the three bits never run off the
    // doubled mask's top.
    const int nj = std::popcount((ext >> ((y + m - 1) % m)) & 7u);
    const int j = std::popcount((ext >> ((y + n - 1) % m)) & 7u);
    num += kCell.v[nj * 4 + j];
  }
  return num;
}

// True when mask is the numerically smallest member of its orbit under
// rotations, reflection and colour flip; each orbit then has exactly one
// accepted representative.
inline bool orbit_minimal(std::uint32_t mask, int m, std::uint32_t full) {
  const std::uint32_t refl = reflect_mask(mask, m);
  const std::uint32_t bases[4] = {mask, full & ~mask, refl, full & ~refl};
  for (std::uint32_t base : bases)
    for (int k = 0; k < m; ++k)
      if (rotate_mask(base, k, m, full) < mask) return false;
  return true;
}

struct RangeResult {
  int min_num = -1;
  std::vector<std::uint32_t> argmin;
  std::uint64_t evaluated = 0;
};

RangeResult search_range(std::uint32_t lo, std::uint64_t hi, int m, int n,
                         std::uint32_t full, bool use_symmetry) {
  RangeResult r;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    const std::uint32_t w = (std::uint32_t)mask;
    if (use_symmetry && !orbit_minimal(w, m, full)) continue;
    ++r.evaluated;
    const int num = error_numerator(w, m, n);
    if (r.min_num < 0 || num < r.min_num) {
      r.min_num = num;
      r.argmin.assign(1, w);
    } else if (num == r.min_num) {
      r.argmin.push_back(w);
    }
  }
  return r;
}

}  // namespace

SearchResult search_optimal(int n, bool use_symmetry, int threads, int cap) {
  if (n < 3) throw ValidationError("search_optimal: need N >= 3");
  if (threads < 1) throw ValidationError("search_optimal: need threads >= 1");
  if (n > cap)
    throw ResourceError("search_optimal: 2^(2N) colourings at N=" +
                        std::to_string(n) + " exceeds the cap (N <= " +
                        std::to_string(cap) + ")");

  const int m = 2 * n;
  const std::uint32_t full = (m == 32) ? ~0u : (1u << m) - 1;
  const std::uint64_t total = (std::uint64_t)full + 1;

  std::vector<RangeResult> parts;
  if (threads == 1) {
    parts.push_back(search_range(0, total, m, n, full, use_symmetry));
  } else {
    const std::uint64_t nw = std::min<std::uint64_t>(threads, total);
    parts.resize(nw);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + nw - 1) / nw;
    for (std::uint64_t w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        parts[w] = search_range((std::uint32_t)(w * chunk),
                                std::min(total, (w + 1) * chunk), m, n, full,
                                use_symmetry);
      });
    for (auto& th : pool) th.join();
  }

  SearchResult out;
  int min_num = -1;
  std::vector<std::uint32_t> argmin;
  for (const RangeResult& r : parts) {
    out.evaluated += r.evaluated;
    if (r.min_num < 0) continue;
    if (min_num < 0 || r.min_num < min_num) {
      min_num = r.min_num;
      argmin = r.argmin;
    } else if (r.min_num == min_num) {
      argmin.insert(argmin.end(), r.argmin.begin(), r.argmin.end());
    }
  }

  out.min_error = Rational(min_num, 6LL * m);
  if (out.min_error < Rational(1, 3 * n))
    throw std::logic_error("search_optimal: minimum fell below 1/(3N)");

  std::vector<std::string> keys;
  for (std::uint32_t w : argmin)
    keys.push_back(Coloring::from_mask(w, n).canonical().str());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const std::string& k : keys) out.minimizers.push_back(Coloring::parse(k));
  return out;
}

TritColoring trit_coloring(int n) {
  if (n < 3) throw ValidationError("trit_coloring: need N >= 3");
  std::vector<TritColor> v((size_t)2 * n, TritColor::Blue);
  for (int d = 3; d <= n; ++d) v[d] = TritColor::White;
  for (int d = n + 1; d <= 2 * n - 2; ++d) v[d] = TritColor::Black;
  return TritColoring(std::move(v));
}

Rational evaluate_trit(const TritColoring& coloring) {
  const int m = coloring.dots();
  long long num = 0;
  for (int y = 0; y < m; ++y) {
    const Neighborhood nb = neighborhood(RingPoint(y, m));
    int a[3] = {0, 0, 0}, b[3] = {0, 0, 0};
    for (int d : nb.no_jump) ++a[(int)coloring.at(d)];
    for (int d : nb.jump) ++b[(int)coloring.at(d)];
    for (int c = 0; c < 3; ++c) num += std::min(a[c], b[c]);
  }
  return Rational(num, 6LL * m);
}

namespace {

void check_codewords(const CodeAssignment& assignment) {
  std::array<std::string, 3> words = {assignment.black, assignment.white,
                                      assignment.blue};
  std::sort(words.begin(), words.end());
  if (words != std::array<std::string, 3>{"0", "10", "11"})
    throw ValidationError(
        "code assignment must be a bijection onto {0, 10, 11}");
}

}  // namespace

Rational expected_code_length(const TritColoring& coloring,
                              const CodeAssignment& assignment) {
  check_codewords(assignment);
  const long long bits =
      (long long)coloring.count(TritColor::Black) * assignment.black.size() +
      (long long)coloring.count(TritColor::White) * assignment.white.size() +
      (long long)coloring.count(TritColor::Blue) * assignment.blue.size();
  return Rational(bits, coloring.dots());
}

CodeAssignment best_code_assignment(const TritColoring& coloring) {
  // Index order Black, White, Blue doubles as the tie order.
  const int counts[3] = {coloring.count(TritColor::Black),
                         coloring.count(TritColor::White),
                         coloring.count(TritColor::Blue)};
  int top = 0;
  for (int c = 1; c < 3; ++c)
    if (counts[c] > counts[top]) top = c;
  std::string words[3];
  words[top] = "0";
  const char* rest[2] = {"10", "11"};
  int next = 0;
  for (int c = 0; c < 3; ++c)
    if (c != top) words[c] = rest[next++];
  return {words[0], words[1], words[2]};
}

}  // namespace whispers
