#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uft/error.hpp"
#include "uft/recognizer.hpp"
#include "uft/reduction.hpp"
#include "uft/tree.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

using namespace uft;

namespace {

const std::vector<std::uint64_t> kNine = {5, 5, 5, 5, 5, 6, 6, 7, 7};

bool throws_mentioning(std::uint32_t m, const std::vector<std::uint64_t>& values,
                       const std::string& needle) {
    try {
        validate_instance(m, values);
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("validation derives the target and its binary form") {
    auto inst = validate_instance(3, kNine);
    CHECK(inst.m == 3);
    CHECK(inst.values == kNine);
    CHECK(inst.target == 17);
    CHECK(inst.exp2 == 4);
    CHECK(inst.rem == 1);

    auto pair = validate_instance(2, {5, 5, 5, 5, 6, 8});
    CHECK(pair.target == 17);
    CHECK(pair.exp2 == 4);
    CHECK(pair.rem == 1);
}

TEST_CASE("validation rejects malformed instances") {
    CHECK(throws_mentioning(0, {}, "m must be at least 1"));
    CHECK(throws_mentioning(2, {5, 5, 5, 5, 6}, "expected 6 values"));
    CHECK(throws_mentioning(2, {5, 5, 5, 5, 6, 0}, "value 6 must be positive"));
    CHECK(throws_mentioning(2, {5, 5, 5, 5, 6, 9}, "not divisible"));

    // Sum 34 keeps B = 17, but 4 <= B/4 and 9 >= B/2 break the window.
    CHECK(throws_mentioning(2, {4, 6, 7, 6, 6, 5}, "value 1 (4)"));
    CHECK(throws_mentioning(2, {9, 5, 5, 5, 5, 5}, "value 1 (9)"));

    // In-window values whose target misses the 2^D + d form, D > 3.
    CHECK(throws_mentioning(2, {6, 7, 7, 7, 7, 6}, "2^D + d"));  // B = 20
    CHECK(throws_mentioning(2, {3, 3, 3, 3, 3, 3}, "2^D + d")); // B = 9, D = 3
    CHECK(throws_mentioning(1, {1, 1, 1}, "2^D + d"));          // B = 3
}

TEST_CASE("window edges at target 17") {
    // 5 > 17/4 and 8 < 17/2 are the extreme admissible values.
    CHECK_NOTHROW(validate_instance(2, {5, 5, 5, 5, 6, 8}));
}

TEST_CASE("normalization shifts every value by one constant") {
    auto inst = normalize_instance(3, kNine);
    CHECK(inst.target == 35); // 17 -> shift 6 -> 2^5 + 3
    CHECK(inst.exp2 == 5);
    CHECK(inst.rem == 3);
    CHECK(inst.values == std::vector<std::uint64_t>{11, 11, 11, 11, 11, 12, 12, 13, 13});

    // An exact power of two needs only a shift of 1.
    auto pow2 = normalize_instance(2, {5, 5, 5, 5, 6, 6}); // B = 16
    CHECK(pow2.target == 19);
    CHECK(pow2.exp2 == 4);
    CHECK(pow2.rem == 3);
    CHECK(pow2.values == std::vector<std::uint64_t>{6, 6, 6, 6, 7, 7});

    // Small targets are lifted past 2^4 first.
    auto tiny = normalize_instance(2, {2, 2, 3, 2, 2, 3}); // B = 7
    CHECK(tiny.target == 19);
    CHECK(tiny.values == std::vector<std::uint64_t>{6, 6, 7, 6, 6, 7});

    // A valid instance keeps validating after the shift.
    auto again = normalize_instance(3, inst.values);
    CHECK(again.target == 65); // 35 -> shift 10 -> 2^6 + 1
    CHECK(again.exp2 == 6);
    CHECK(again.rem == 1);
}

TEST_CASE("normalization preserves the solution sets") {
    // Solvable before (target 16) and after (target 19), with equal triples.
    ThreePartitionInstance raw;
    raw.m = 2;
    raw.values = {5, 5, 5, 5, 6, 6};
    raw.target = 16;
    auto before = solve_3partition(raw);
    auto after = solve_3partition(normalize_instance(2, {5, 5, 5, 5, 6, 6}));
    REQUIRE(before.has_value());
    REQUIRE(after.has_value());
    CHECK(before->triples == after->triples);

    // Unsolvable stays unsolvable.
    auto stuck = normalize_instance(2, {5, 5, 5, 5, 6, 8});
    CHECK(stuck.target == 35);
    CHECK_FALSE(solve_3partition(stuck).has_value());
}

TEST_CASE("the built tree is flat with the documented layout") {
    auto inst = validate_instance(3, kNine);
    auto [t, ctx] = build_tree(inst);

    CHECK(ctx.heaviness == 24); // B + 2^(D-1) - 1
    CHECK(t.node_count() == 150);    // 1 + 2*26 + 25 + 51 + 3*(1+2+4)
    CHECK(t.root() == 1);

    auto stats = is_flat(t, ctx);
    REQUIRE(stats.has_value());
    CHECK(stats->basket_count() == 2); // m - 1
    CHECK(stats->empty_baskets == std::vector<NodeId>{2, 28});
    CHECK(stats->solo_heavy == 54);
    CHECK(stats->light_depth_one.size() == 9 + 3 * 3);

    // Baskets first, each holding one star of size heaviness+1.
    CHECK(t.parent(2) == 1);
    CHECK(t.parent(3) == 2);
    CHECK(size_of(t, 2) == 26);
    CHECK(size_of(t, 3) == 25);
    CHECK(size_of(t, 28) == 26);
    CHECK(t.parent(54) == 1);
    CHECK(size_of(t, 54) == 25);

    // Value stars in input order, then the power stars per copy.
    const std::array<NodeId, 9> value_heads = {79, 84, 89, 94, 99, 104, 110, 116, 123};
    for (std::size_t i = 0; i < value_heads.size(); ++i) {
        CHECK(t.parent(value_heads[i]) == 1);
        CHECK(size_of(t, value_heads[i]) == kNine[i]);
    }
    const std::array<NodeId, 9> power_heads = {130, 131, 133, 137, 138, 140, 144, 145, 147};
    const std::array<std::uint64_t, 9> power_sizes = {1, 2, 4, 1, 2, 4, 1, 2, 4};
    for (std::size_t i = 0; i < power_heads.size(); ++i) {
        CHECK(t.parent(power_heads[i]) == 1);
        CHECK(size_of(t, power_heads[i]) == power_sizes[i]);
    }

    CHECK(total_charge(t, ctx) == 0);
    CHECK(charge(t, ctx, t.root()) == 2 * 24); // K * heaviness
}

TEST_CASE("single-group instances build basket-free union trees") {
    // No basket exists when m = 1, so flatness condition 1 cannot hold; the
    // built tree is instead a union tree outright, matching the fact that a
    // lone validated triple always sums to the target.
    auto inst = validate_instance(1, {5, 5, 7});
    auto [t, ctx] = build_tree(inst);
    CHECK(ctx.heaviness == 24);
    CHECK(t.node_count() == 1 + 25 + 17 + 7);
    CHECK_FALSE(is_flat(t, ctx).has_value());
    CHECK(flat_report(t, ctx).violated_condition == 1);
    CHECK(is_union_tree(t));
}

TEST_CASE("random instances build flat trees of zero charge") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto inst = random_instance(2 + seed % 3, 4 + seed % 2, 1 + seed % 3, seed);
        auto [t, ctx] = build_tree(inst);
        auto stats = is_flat(t, ctx);
        REQUIRE(stats.has_value());
        CHECK(stats->basket_count() == inst.m - 1);
        CHECK(total_charge(t, ctx) == 0);
    }
}

TEST_CASE("solvability matches union-find membership of the built tree") {
    auto yes = validate_instance(3, kNine);
    auto [ty, cy] = build_tree(yes);
    auto partition = decide_flat_uf(ty, cy);
    REQUIRE(solve_3partition(yes).has_value());
    REQUIRE(partition.has_value());
    CHECK(is_union_tree(apply_pushes(ty, witness_from_partition(ty, cy, *partition))));

    auto no = validate_instance(2, {5, 5, 5, 5, 6, 8});
    CHECK_FALSE(solve_3partition(no).has_value());
    auto [tn, cn] = build_tree(no);
    CHECK_FALSE(decide_flat_uf(tn, cn).has_value());
}

TEST_CASE("the exhaustive solver anchors triples at the smallest free index") {
    auto inst = validate_instance(3, kNine);
    auto sol = solve_3partition(inst);
    REQUIRE(sol.has_value());
    REQUIRE(sol->triples.size() == 3);
    CHECK(sol->triples[0] == std::array<std::uint32_t, 3>{1, 2, 8});
    CHECK(sol->triples[1] == std::array<std::uint32_t, 3>{3, 4, 9});
    CHECK(sol->triples[2] == std::array<std::uint32_t, 3>{5, 6, 7});
    for (const auto& tr : sol->triples) {
        CHECK(inst.values[tr[0] - 1] + inst.values[tr[1] - 1] + inst.values[tr[2] - 1] ==
              inst.target);
    }
    CHECK(format_triplets(*sol) == "1 2 8\n3 4 9\n5 6 7\n");
}

TEST_CASE("instance text round-trips") {
    std::string text = serialize_instance(3, kNine);
    CHECK(text == "3\n5 5 5 5 5 6 6 7 7\n");
    auto [m, values] = parse_instance(text);
    CHECK(m == 3);
    CHECK(values == kNine);

    // Values may spill onto several lines.
    auto [m2, values2] = parse_instance("2\n5 5 5\n5 6 8\n");
    CHECK(m2 == 2);
    CHECK(values2 == std::vector<std::uint64_t>{5, 5, 5, 5, 6, 8});
}

TEST_CASE("instance text errors carry line numbers") {
    auto expect_line = [](std::string_view text, std::size_t line) {
        try {
            parse_instance(text);
        } catch (const ParseError& e) {
            return e.line() == line;
        }
        return false;
    };
    CHECK(expect_line("x\n5 5 5\n", 1));
    CHECK(expect_line("2 2\n5 5 5 5 6 8\n", 1));
    CHECK(expect_line("0\n", 1));
    CHECK(expect_line("1048577\n", 1));
    CHECK(expect_line("2\n5 5 5 5 6\n", 2));
    CHECK(expect_line("2\n5 5 bogus 5 6 8\n", 2));
    CHECK(expect_line("2\n5 5 5\nbogus 6 8\n", 3));
}

TEST_CASE("random instances are deterministic and solvable") {
    auto a = random_instance(3, 4, 1, 99);
    auto b = random_instance(3, 4, 1, 99);
    CHECK(a.values == b.values);
    CHECK(a.target == 17);
    CHECK(a.values.size() == 9);
    auto c = random_instance(3, 4, 1, 100);
    CHECK(a.values != c.values);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto inst = random_instance(2 + seed % 3, 4 + seed % 3, 1 + seed % 3, seed);
        CHECK(inst.target == (std::uint64_t{1} << inst.exp2) + inst.rem);
        CHECK(solve_3partition(inst).has_value());
    }

    CHECK_THROWS_AS(random_instance(0, 4, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(2, 3, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(2, 32, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(2, 4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(2, 4, 4, 1), std::invalid_argument);
}
