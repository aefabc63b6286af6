#pragma once

#include "uft/recognizer.hpp"
#include "uft/tree.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uft {

/// Restricted 3-partition instance: 3m values that must be split into m
/// triples, each summing to the target B = sum/m. Validity additionally
/// requires B = 2^exp2 + rem with exp2 > 3 and rem in {1,2,3}, and every
/// value to lie strictly between B/4 and B/2 (so groups must be triples).
struct ThreePartitionInstance {
    std::uint32_t m = 0;
    std::vector<std::uint64_t> values; // size 3m, input order
    std::uint64_t target = 0;          // B
    std::uint32_t exp2 = 0;            // target == (1 << exp2) + rem
    std::uint32_t rem = 0;
};

/// Checks every validity condition and fills in the derived fields.
/// Throws std::invalid_argument naming the first failure.
ThreePartitionInstance validate_instance(std::uint32_t m,
                                         const std::vector<std::uint64_t>& values);

/// Shifts every value by the constant c = ceil((1 + max(2^ceil(log2 B), 2^4)
/// - B) / 3), which lands the new target on 2^D + d with d in {1,2,3} while
/// preserving the set of solutions. The input must already be divisible and
/// inside the strict window; the result always validates.
ThreePartitionInstance normalize_instance(std::uint32_t m,
                                          const std::vector<std::uint64_t>& values);

/// The recognition instance equivalent to inst: a flat tree with m-1 empty
/// baskets at heaviness H = B + 2^(exp2-1) - 1, whose depth-one light nodes
/// are one star per input value plus, for each of m copies, one star of size
/// 2^j for every j in 0..exp2-2. The tree is a union-find tree exactly when
/// inst is solvable. Node ids: root 1, then each basket followed by its
/// star, the solo heavy star, the value stars in input order, the power
/// stars grouped by copy then exponent.
std::pair<Tree, ChargeContext> build_tree(const ThreePartitionInstance& inst);

/// A solution as m index triples (1-based, ascending inside each triple,
/// triples ordered by their smallest index).
struct TripletPartition {
    std::vector<std::array<std::uint32_t, 3>> triples;
    bool operator==(const TripletPartition&) const = default;
};

/// Exhaustive solver, used as the ground truth oracle in tests. The smallest
/// unassigned index anchors each triple, so every grouping is visited once.
std::optional<TripletPartition> solve_3partition(const ThreePartitionInstance& inst);

/// Instance text: line 1 holds m, line 2 holds the 3m values.
std::pair<std::uint32_t, std::vector<std::uint64_t>> parse_instance(std::string_view text);
std::string serialize_instance(std::uint32_t m, const std::vector<std::uint64_t>& values);

/// Solution text: one "i j k" line per triple.
std::string format_triplets(const TripletPartition& p);

/// Random valid instance with target 2^exp2 + rem, built from m random
/// in-window triples and shuffled, hence always solvable.
ThreePartitionInstance random_instance(std::uint32_t m, std::uint32_t exp2,
                                       std::uint32_t rem, std::uint64_t seed);

} // namespace uft
