#pragma once

#include "uft/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uft {

/// The size-multiset test behind union-tree recognition: for every element a
/// of the multiset, the elements strictly smaller than a must sum to at least
/// a-1. The empty multiset passes.
bool multiset_union_condition(std::vector<std::uint64_t> sizes);

/// A node whose children's subtree sizes fail the multiset condition,
/// together with its lightest failing child (lowest id on ties) and the
/// shortfall (a-1) - sumsize(node, a-1) for that child's size a.
struct Violation {
    NodeId node;
    NodeId child;
    std::uint64_t deficit;
    bool operator==(const Violation&) const = default;
};

/// True exactly when every node's child sizes satisfy the multiset condition,
/// i.e. when the tree can be produced by size-respecting merges of singletons.
bool is_union_tree(const Tree& t);

/// All violating nodes in ascending id order; empty iff is_union_tree.
std::vector<Violation> union_violations(const Tree& t);

struct UfSearchOptions {
    /// Hard bound on the length of any explored push sequence. 0 selects
    /// n^2, which can never cut a real witness short; smaller values may
    /// cause false rejections.
    std::uint64_t max_pushes = 0;

    /// When set, branches whose total charge at this heaviness drops below
    /// zero are abandoned: a union tree has nonnegative charge everywhere and
    /// pushes never raise the total, so such branches are dead ends.
    std::optional<std::uint64_t> charge_prune;
};

/// Decides whether some push sequence turns t into a union tree, which is
/// exactly membership in the merge+collapse closure of singletons. Returns
/// such a sequence (empty when t already qualifies) or nullopt. Worst-case
/// exponential: the search walks distinct shapes reachable by pushes,
/// memoising refuted shapes by canonical code and trying pushes under the
/// node with the largest union-condition deficit first.
std::optional<PushSequence> is_union_find_tree(const Tree& t,
                                               const UfSearchOptions& opts = {});

/// Heaviness threshold separating light nodes (subtree size <= heaviness)
/// from heavy ones. Always supplied explicitly, never inferred from a tree.
struct ChargeContext {
    std::uint64_t heaviness;
};

enum class NodeClass {
    Light,           // size <= heaviness
    HeavyNonBasket,  // heavy, every child light
    Basket,          // heavy with a heavy child
    EmptyBasket,     // exactly one child, of size heaviness+1
};

NodeClass classify(const Tree& t, const ChargeContext& ctx, NodeId x);
bool is_light(const Tree& t, const ChargeContext& ctx, NodeId x);
bool is_heavy(const Tree& t, const ChargeContext& ctx, NodeId x);
bool is_basket(const Tree& t, const ChargeContext& ctx, NodeId x);
bool is_empty_basket(const Tree& t, const ChargeContext& ctx, NodeId x);

/// Total size of x's light children: sumsize(t, x, heaviness).
std::uint64_t sumlight(const Tree& t, const ChargeContext& ctx, NodeId x);

/// 0 for light nodes, sumlight - heaviness for heavy ones. A push changes the
/// tree's total charge by 0 or by exactly -(heaviness+1), and union trees
/// have nonnegative charge at every node.
std::int64_t charge(const Tree& t, const ChargeContext& ctx, NodeId x);
std::int64_t total_charge(const Tree& t, const ChargeContext& ctx);

/// Shape summary of a flat tree: all empty baskets sit at depth one next to
/// exactly one heavy non-basket of size heaviness+1 and light nodes summing
/// to (K+1)*heaviness, and every light or heavy non-basket node is a star.
struct FlatStats {
    std::vector<NodeId> empty_baskets;   // ascending
    NodeId solo_heavy;                   // the depth-one heavy non-basket
    std::vector<NodeId> light_depth_one; // ascending
    std::uint32_t basket_count() const { return static_cast<std::uint32_t>(empty_baskets.size()); }
};

/// Outcome of the flatness test. When flat is false, violated_condition
/// names the first failing condition (1..4) and detail describes it.
struct FlatReport {
    bool flat = false;
    FlatStats stats;
    int violated_condition = 0;
    std::string detail;
};

/// Conditions checked, in order:
///   1. there is at least one depth-one empty basket and every depth-one
///      basket is an empty basket;
///   2. exactly one depth-one node is heavy without being a basket, and its
///      size is heaviness+1;
///   3. the depth-one light sizes sum to (K+1)*heaviness;
///   4. every light node and every heavy non-basket node has only leaves
///      below it.
FlatReport flat_report(const Tree& t, const ChargeContext& ctx);
std::optional<FlatStats> is_flat(const Tree& t, const ChargeContext& ctx);

/// Grouping of the depth-one light nodes of a flat tree: one group per empty
/// basket in ascending basket order, the root's group last. Each group sums
/// to the heaviness and satisfies the multiset condition.
struct LightPartition {
    std::vector<std::vector<NodeId>> groups;
    bool operator==(const LightPartition&) const = default;
};

/// Decides union-find membership for a flat tree by searching for a valid
/// LightPartition: the flat tree is a union-find tree exactly when one
/// exists. Groups are filled in descending size order with identical sizes
/// forced into nondecreasing group indices, pruning on overfull groups,
/// unreachable remainders and hopeless union-condition prefixes.
/// Throws std::invalid_argument when the tree is not flat at ctx.
std::optional<LightPartition> decide_flat_uf(const Tree& t, const ChargeContext& ctx);

/// Turns a valid partition into pushes: members of each basket's group are
/// pushed below that basket; the root's group contributes no pushes. The
/// result applied to t yields a union tree. Throws std::invalid_argument on
/// non-flat input or an invalid partition.
PushSequence witness_from_partition(const Tree& t, const ChargeContext& ctx,
                                    const LightPartition& p);

/// Partition text: one line per group, node ids space separated, in group
/// order (baskets ascending, root group last). Empty groups give blank lines.
std::string format_light_partition(const LightPartition& p);
LightPartition parse_light_partition(std::string_view text);

} // namespace uft
