#include "whispers/coloring.hpp"

#include <algorithm>

#include "whispers/errors.hpp"

namespace whispers {
namespace {

void check_length(size_t len) {
  if (len < 6 || len % 2 != 0)
    throw ValidationError("coloring length must be even and >= 6");
}

}  // namespace

Coloring::Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {
  check_length(colors_.size());
}

Coloring Coloring::solid(int n, Color c) {
  check_length((size_t)2 * n);
  return Coloring(std::vector<Color>((size_t)2 * n, c));
}

Coloring Coloring::two_arc(int n) {
  check_length((size_t)2 * n);
  std::vector<Color> v((size_t)2 * n, Color::White);
  for (int i = 0; i < n; ++i) v[i] = Color::Black;
  return Coloring(std::move(v));
}

Coloring Coloring::from_mask(std::uint32_t mask, int n) {
  check_length((size_t)2 * n);
  std::vector<Color> v((size_t)2 * n, Color::White);
  for (int i = 0; i < 2 * n; ++i)
    if (mask >> i & 1) v[i] = Color::Black;
  return Coloring(std::move(v));
}

Coloring Coloring::parse(const std::string& s) {
  std::vector<Color> v;
  v.reserve(s.size());
  for (char ch : s) {
    if (ch == 'B') v.push_back(Color::Black);
    else if (ch == 'W') v.push_back(Color::White);
    else throw ValidationError(std::string("bad colour letter '") + ch +
                               "', expected B or W");
  }
  return Coloring(std::move(v));
}

Coloring Coloring::rotated(int k) const {
  const int m = dots();
  k = ((k % m) + m) % m;
  std::vector<Color> v((size_t)m);
  for (int i = 0; i < m; ++i) v[(i + k) % m] = colors_[i];
  return Coloring(std::move(v));
}

Coloring Coloring::reflected() const {
  const int m = dots();
  std::vector<Color> v((size_t)m);
  for (int i = 0; i < m; ++i) v[(m - i) % m] = colors_[i];
  return Coloring(std::move(v));
}

Coloring Coloring::flipped() const {
  std::vector<Color> v(colors_);
  for (auto& c : v) c = (c == Color::Black) ? Color::White : Color::Black;
  return Coloring(std::move(v));
}

Coloring Coloring::canonical() const {
  // Black sorts before White in the serialized form, and the enum values keep
  // that order, so comparing colour vectors is comparing strings.
  Coloring best = *this;
  for (int refl = 0; refl < 2; ++refl) {
    for (int flip = 0; flip < 2; ++flip) {
      Coloring base = refl ? reflected() : *this;
      if (flip) base = base.flipped();
      for (int k = 0; k < dots(); ++k) {
        Coloring cand = base.rotated(k);
        if (cand < best) best = cand;
      }
    }
  }
  return best;
}

std::string Coloring::str() const {
  std::string s;
  s.reserve(colors_.size());
  for (Color c : colors_) s += (c == Color::Black) ? 'B' : 'W';
  return s;
}

TritColoring::TritColoring(std::vector<TritColor> colors)
    : colors_(std::move(colors)) {
  check_length(colors_.size());
}

TritColoring TritColoring::parse(const std::string& s) {
  std::vector<TritColor> v;
  v.reserve(s.size());
  for (char ch : s) {
    if (ch == 'B') v.push_back(TritColor::Black);
    else if (ch == 'W') v.push_back(TritColor::White);
    else if (ch == 'L') v.push_back(TritColor::Blue);
    else throw ValidationError(std::string("bad colour letter '") + ch +
                               "', expected B, W or L");
  }
  return TritColoring(std::move(v));
}

int TritColoring::count(TritColor c) const {
  return (int)std::count(colors_.begin(), colors_.end(), c);
}

std::string TritColoring::str() const {
  std::string s;
  s.reserve(colors_.size());
  for (TritColor c : colors_)
    s += (c == TritColor::Black) ? 'B' : (c == TritColor::White) ? 'W' : 'L';
  return s;
}

}  // namespace whispers
