#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace whispers {

enum class Color : std::uint8_t { Black = 0, White = 1 };
enum class TritColor : std::uint8_t { Black = 0, White = 1, Blue = 2 };

// One-bit strategy for the sending side: dot index -> {Black, White}.
// Dot 0 is the first character of the serialized form.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<Color> colors);
  /// All dots the same colour.
  static Coloring solid(int n, Color c);
  /// Dots 0..N-1 Black, N..2N-1 White (the two-arc strategy).
  static Coloring two_arc(int n);
  /// From a bitmask, bit i set = dot i Black. Used by the search fast path.
  static Coloring from_mask(std::uint32_t mask, int n);
  static Coloring parse(const std::string& s);

  int dots() const { return (int)colors_.size(); }   // 2N
  int half() const { return dots() / 2; }            // N
  Color at(int dot) const { return colors_[dot]; }
  bool black(int dot) const { return colors_[dot] == Color::Black; }
  /// g(dot) as +-1: Black = +1, White = -1.
  int sign(int dot) const { return black(dot) ? 1 : -1; }

  Coloring rotated(int k) const;
  Coloring reflected() const;
  Coloring flipped() const;
  /// Lexicographically smallest serialization over the full symmetry group
  /// (2N rotations x reflection x colour flip). 'B' < 'W'.
  Coloring canonical() const;

  std::string str() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend bool operator<(const Coloring& a, const Coloring& b) {
    return a.colors_ < b.colors_;
  }

 private:
  std::vector<Color> colors_;
};

class TritColoring {
 public:
  TritColoring() = default;
  explicit TritColoring(std::vector<TritColor> colors);
  static TritColoring parse(const std::string& s);

  int dots() const { return (int)colors_.size(); }
  int half() const { return dots() / 2; }
  TritColor at(int dot) const { return colors_[dot]; }
  int count(TritColor c) const;

  /// 'B' = Black, 'W' = White, 'L' = Blue.
  std::string str() const;

  friend bool operator==(const TritColoring&, const TritColoring&) = default;

 private:
  std::vector<TritColor> colors_;
};

}  // namespace whispers
