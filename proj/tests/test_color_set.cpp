#include "avdtc/color_set.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace avdtc;

TEST_CASE("basic membership and size")
{
    ColorSet s(8);
    REQUIRE(s.empty());
    s.insert(3);
    s.insert(7);
    REQUIRE(s.contains(3));
    REQUIRE(s.contains(7));
    REQUIRE(!s.contains(1));
    REQUIRE(s.size() == 2);
    REQUIRE(s.first() == 3);
    s.erase(3);
    REQUIRE(!s.contains(3));
    REQUIRE(s.size() == 1);
}

TEST_CASE("values are ascending")
{
    ColorSet s = ColorSet::of(10, {9, 2, 5});
    REQUIRE(s.values() == std::vector<int>{2, 5, 9});
}

TEST_CASE("complement stays inside the universe")
{
    ColorSet s = ColorSet::of(7, {1, 3});
    ColorSet c = s.complement();
    REQUIRE(c.values() == std::vector<int>{2, 4, 5, 6, 7});
    REQUIRE((s | c) == ColorSet::full(7));
    REQUIRE((s & c).empty());
}

TEST_CASE("set algebra")
{
    ColorSet a = ColorSet::of(9, {1, 2, 5});
    ColorSet b = ColorSet::of(9, {2, 5, 8});
    REQUIRE((a | b).values() == std::vector<int>{1, 2, 5, 8});
    REQUIRE((a & b).values() == std::vector<int>{2, 5});
    REQUIRE((a - b).values() == std::vector<int>{1});
    REQUIRE(ColorSet::of(9, {2, 5}).is_subset_of(b));
    REQUIRE(!a.is_subset_of(b));
}

TEST_CASE("universes above 64 colors")
{
    ColorSet s(130);
    s.insert(1);
    s.insert(64);
    s.insert(65);
    s.insert(130);
    REQUIRE(s.size() == 4);
    REQUIRE(s.values() == std::vector<int>{1, 64, 65, 130});
    ColorSet c = s.complement();
    REQUIRE(c.size() == 126);
    REQUIRE(!c.contains(65));
    REQUIRE(c.contains(2));
}

TEST_CASE("randomized agreement with a reference set")
{
    std::mt19937_64 rng(12345);
    for (int round = 0; round < 200; ++round) {
        int universe = 1 + static_cast<int>(rng() % 100);
        ColorSet s(universe);
        std::set<int> ref;
        for (int step = 0; step < 50; ++step) {
            int c = 1 + static_cast<int>(rng() % static_cast<unsigned>(universe));
            if (rng() % 2) {
                s.insert(c);
                ref.insert(c);
            } else {
                s.erase(c);
                ref.erase(c);
            }
        }
        REQUIRE(s.values() == std::vector<int>(ref.begin(), ref.end()));
        REQUIRE(s.size() == static_cast<int>(ref.size()));
        REQUIRE(s.complement().size() == universe - static_cast<int>(ref.size()));
    }
}
