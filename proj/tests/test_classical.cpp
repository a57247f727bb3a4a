#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whispers/classical.hpp"
#include "whispers/errors.hpp"
#include "whispers/rng.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace whispers;

namespace {

// Independent check on per-y/Bayes logic: enumerate all four deterministic
// receiver rules (message -> announced class) at each y and keep the best.
// Shares nothing with per_y_error except the problem statement.
Rational oracle_total_error(const Coloring& c) {
    const int m = c.dots();
    Rational total(0);
    for (int yv = 0; yv < m; ++yv) {
        Neighborhood nb = neighborhood(RingPoint(yv, m));
        int best = 7;
        for (int rule = 0; rule < 4; ++rule) {
            // bit 0: announce jump on Black, bit 1: announce jump on White
            int wrong = 0;
            for (int x : nb.no_jump) {
                bool says_jump = c.black(x) ? (rule & 1) : (rule & 2);
                if (says_jump) ++wrong;
            }
            for (int x : nb.jump) {
                bool says_jump = c.black(x) ? (rule & 1) : (rule & 2);
                if (!says_jump) ++wrong;
            }
            best = std::min(best, wrong);
        }
        total += Rational(best, 6);
    }
    return total / Rational(m);
}

Coloring random_coloring(int n, SplitMix64& rng) {
    std::vector<Color> v(2 * n);
    for (auto& c : v) c = rng.next_sign() == 1 ? Color::Black : Color::White;
    return Coloring(std::move(v));
}

}  // namespace

TEST_CASE("neighborhood lists the three dots by y and the three opposite") {
    Neighborhood a = neighborhood(RingPoint(0, 6));
    CHECK(a.no_jump == std::array<int, 3>{5, 0, 1});
    CHECK(a.jump == std::array<int, 3>{2, 3, 4});

    Neighborhood b = neighborhood(RingPoint(7, 8));
    CHECK(b.no_jump == std::array<int, 3>{6, 7, 0});
    CHECK(b.jump == std::array<int, 3>{2, 3, 4});
}

TEST_CASE("the six neighborhood dots are distinct for every y") {
    for (int n : {3, 4, 5, 6}) {
        for (int yv = 0; yv < 2 * n; ++yv) {
            Neighborhood nb = neighborhood(RingPoint(yv, 2 * n));
            std::set<int> dots(nb.no_jump.begin(), nb.no_jump.end());
            dots.insert(nb.jump.begin(), nb.jump.end());
            CHECK(dots.size() == 6);
        }
    }
}

TEST_CASE("per-y error of hand-picked configurations") {
    // near side two Black one White, far side all White: only the lone White
    // dot is ambiguous, so the receiver errs on exactly one dot in six
    Coloring fig = Coloring::parse("BWWWWB");
    CHECK(per_y_error(fig, RingPoint(0, 6)) == Rational(1, 6));

    // a colouring that separates the two sides at this y is error-free
    CHECK(per_y_error(Coloring::two_arc(3), RingPoint(1, 6)) == Rational(0));

    // a monochromatic colouring carries no information: coin flip
    CHECK(per_y_error(Coloring::solid(4, Color::Black), RingPoint(3, 8)) == Rational(1, 2));
}

TEST_CASE("evaluate_coloring averages the per-y errors") {
    auto ev = evaluate_coloring(Coloring::two_arc(3));
    CHECK(ev.per_y.size() == 6);
    Rational mean(0);
    for (const auto& r : ev.per_y) mean += r;
    mean /= Rational(6);
    CHECK(ev.total_error == mean);
    CHECK(ev.total_error == Rational(2, 9));

    CHECK(evaluate_coloring(Coloring::solid(5, Color::White)).total_error == Rational(1, 2));
    CHECK(evaluate_coloring(Coloring::parse("BWBWBW")).total_error == Rational(1, 3));
}

TEST_CASE("total error is invariant under rotation, reflection, and colour flip") {
    SplitMix64 rng(5150);
    for (int n : {3, 4, 5}) {
        for (int rep = 0; rep < 10; ++rep) {
            Coloring c = random_coloring(n, rng);
            Rational base = evaluate_coloring(c).total_error;
            for (int k = 0; k < 2 * n; ++k)
                CHECK(evaluate_coloring(c.rotated(k)).total_error == base);
            CHECK(evaluate_coloring(c.reflected()).total_error == base);
            CHECK(evaluate_coloring(c.flipped()).total_error == base);
            CHECK(evaluate_coloring(c.canonical()).total_error == base);
        }
    }
}

TEST_CASE("Bayes receiver matches the enumerate-every-rule oracle") {
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        Coloring c = Coloring::from_mask(mask, 3);
        CHECK(evaluate_coloring(c).total_error == oracle_total_error(c));
    }
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        Coloring c = Coloring::from_mask(mask, 4);
        CHECK(evaluate_coloring(c).total_error == oracle_total_error(c));
    }
    SplitMix64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        Coloring c = random_coloring(5, rng);
        CHECK(evaluate_coloring(c).total_error == oracle_total_error(c));
    }
}

TEST_CASE("exhaustive search: minima and minimizers for small rings") {
    struct Expect { int n; Rational min; const char* canon; };
    const Expect table[] = {
        {3, Rational(2, 9), "BBBWWW"},
        {4, Rational(1, 6), "BBBBWWWW"},
        {5, Rational(2, 15), "BBBBBWWWWW"},
        {6, Rational(1, 9), "BBBBBBWWWWWW"},
        {7, Rational(2, 21), "BBBBBBBWWWWWWW"},
        {8, Rational(1, 12), "BBBBBBBBWWWWWWWW"},
    };
    for (const auto& e : table) {
        auto r = search_optimal(e.n);
        CHECK(r.min_error == e.min);
        CHECK(r.min_error == Rational(2, 3 * e.n));
        REQUIRE(r.minimizers.size() == 1);
        CHECK(r.minimizers[0].str() == e.canon);
        CHECK(r.minimizers[0] == Coloring::two_arc(e.n).canonical());
        CHECK(r.min_error >= Rational(1, 3 * e.n));
    }
}

TEST_CASE("search agrees with a plain scan over every mask") {
    for (int n : {3, 4, 5}) {
        Rational best(1);
        for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask)
            best = std::min(best, evaluate_coloring(Coloring::from_mask(mask, n)).total_error);
        auto sym = search_optimal(n, true);
        auto raw = search_optimal(n, false);
        CHECK(sym.min_error == best);
        CHECK(raw.min_error == best);
        CHECK(sym.minimizers == raw.minimizers);
        CHECK(raw.evaluated == (std::uint64_t)1 << (2 * n));
        CHECK(sym.evaluated < raw.evaluated);
    }
}

TEST_CASE("search results do not depend on the thread count") {
    auto one = search_optimal(6, true, 1);
    for (int threads : {2, 4, 7}) {
        auto many = search_optimal(6, true, threads);
        CHECK(many.min_error == one.min_error);
        CHECK(many.minimizers == one.minimizers);
        CHECK(many.evaluated == one.evaluated);
    }
}

TEST_CASE("search validation and resource limits") {
    CHECK_THROWS_AS(search_optimal(2), ValidationError);
    CHECK_THROWS_AS(search_optimal(13), ResourceError);
    CHECK_THROWS_AS(search_optimal(6, true, 1, 5), ResourceError);
    CHECK_NOTHROW(search_optimal(5, true, 1, 5));
}

TEST_CASE("three-colour strategy: construction shape") {
    CHECK(trit_coloring(3).str() == "LLLWBL");
    // 16 dots: Blue around 0, White up to N, Black past the opposite point
    CHECK(trit_coloring(8).str() == "LLLWWWWWWBBBBBBL");
    TritColoring t = trit_coloring(8);
    CHECK(t.count(TritColor::Blue) == 4);
    CHECK(t.count(TritColor::White) == 6);
    CHECK(t.count(TritColor::Black) == 6);
}

TEST_CASE("three-colour strategy is error-free only once the ring is large enough") {
    CHECK(evaluate_trit(trit_coloring(3)) == Rational(2, 9));
    CHECK(evaluate_trit(trit_coloring(4)) == Rational(1, 12));
    CHECK(evaluate_trit(trit_coloring(5)) == Rational(1, 30));
    for (int n = 6; n <= 16; ++n)
        CHECK(evaluate_trit(trit_coloring(n)) == Rational(0));
}

TEST_CASE("no three-colour strategy reaches zero error on the 6-ring") {
    // all 3^6 colourings; the best achievable is 1/6, so the construction's
    // 2/9 above is not even optimal there
    Rational best(1);
    for (int code = 0; code < 729; ++code) {
        int c = code;
        std::vector<TritColor> v(6);
        for (int i = 0; i < 6; ++i) {
            v[i] = (TritColor)(c % 3);
            c /= 3;
        }
        best = std::min(best, evaluate_trit(TritColoring(std::move(v))));
    }
    CHECK(best == Rational(1, 6));
    CHECK(best > Rational(0));
}

TEST_CASE("a two-colour trit pattern scores exactly like the binary evaluation") {
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
        Coloring c = Coloring::from_mask(mask, 3);
        std::vector<TritColor> v(6);
        for (int i = 0; i < 6; ++i)
            v[i] = c.black(i) ? TritColor::Black : TritColor::White;
        CHECK(evaluate_trit(TritColoring(std::move(v))) ==
              evaluate_coloring(c).total_error);
    }
}

TEST_CASE("all-Blue carries no information") {
    CHECK(evaluate_trit(TritColoring::parse("LLLLLLLL")) == Rational(1, 2));
}

TEST_CASE("expected code length under the prefix-free code") {
    TritColoring t8 = trit_coloring(8);
    CodeAssignment best8 = best_code_assignment(t8);
    CHECK(best8.black == "0");  // ties break Black, White, Blue
    CHECK(best8.white == "10");
    CHECK(best8.blue == "11");
    CHECK(expected_code_length(t8, best8) == Rational(13, 8));

    // putting the short word on the rare colour costs more
    CHECK(expected_code_length(t8, CodeAssignment{"10", "11", "0"}) == Rational(7, 4));

    TritColoring t64 = trit_coloring(64);
    Rational len = expected_code_length(t64, best_code_assignment(t64));
    CHECK(len == Rational(97, 64));
    CHECK(len >= Rational(3, 2));
    CHECK(len <= Rational(8, 5));

    // a single-colour pattern compresses to one bit per dot
    CHECK(expected_code_length(TritColoring::parse("LLLLLL"),
                               best_code_assignment(TritColoring::parse("LLLLLL"))) ==
          Rational(1));
}

TEST_CASE("code assignments must be a bijection onto the three codewords") {
    TritColoring t = trit_coloring(8);
    CHECK_THROWS_AS(expected_code_length(t, CodeAssignment{"0", "0", "11"}),
                    ValidationError);
    CHECK_THROWS_AS(expected_code_length(t, CodeAssignment{"0", "10", "110"}),
                    ValidationError);
    CHECK_THROWS_AS(expected_code_length(t, CodeAssignment{"1", "10", "11"}),
                    ValidationError);
}

TEST_CASE("coloring serialization round-trips and rejects junk") {
    CHECK(Coloring::parse("BBWWBW").str() == "BBWWBW");
    CHECK(Coloring::two_arc(4).str() == "BBBBWWWW");
    CHECK(Coloring::solid(3, Color::White).str() == "WWWWWW");
    CHECK_THROWS_AS(Coloring::parse("BWXWBW"), ValidationError);
    CHECK_THROWS_AS(Coloring::parse("bwbwbw"), ValidationError);
    CHECK_THROWS_AS(Coloring::parse("BWBWB"), ValidationError);   // odd length
    CHECK_THROWS_AS(Coloring::parse("BWBW"), ValidationError);    // ring too small
    CHECK(TritColoring::parse("LWBLWB").str() == "LWBLWB");
    CHECK_THROWS_AS(TritColoring::parse("LWULWB"), ValidationError);
}

TEST_CASE("from_mask puts bit i on dot i") {
    CHECK(Coloring::from_mask(0b000111, 3).str() == "BBBWWW");
    CHECK(Coloring::from_mask(0, 3).str() == "WWWWWW");
    CHECK(Coloring::from_mask(0b100000, 3).str() == "WWWWWB");
}

TEST_CASE("canonical form is the least string over the whole symmetry group") {
    Coloring c = Coloring::parse("WWBBBW");
    Coloring canon = c.canonical();
    CHECK(canon.str() == "BBBWWW");
    std::string least = canon.str();
    for (int refl = 0; refl < 2; ++refl) {
        for (int flip = 0; flip < 2; ++flip) {
            Coloring base = refl ? c.reflected() : c;
            if (flip) base = base.flipped();
            for (int k = 0; k < 6; ++k) {
                CHECK(least <= base.rotated(k).str());
                CHECK(base.rotated(k).canonical() == canon);
            }
        }
    }
    CHECK(canon.canonical() == canon);
}
