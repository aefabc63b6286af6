#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uft {

/// Nodes of an n-node tree are the integers 1..n.
using NodeId = std::uint32_t;

/// One re-parenting step: x, a sibling of y, becomes a child of y.
struct PushStep {
    NodeId x;
    NodeId y;
    bool operator==(const PushStep&) const = default;
};

using PushSequence = std::vector<PushStep>;

/// Immutable rooted tree over the node set 1..n, stored as a parent table.
/// All operations below return fresh values; a Tree can be shared freely.
class Tree {
public:
    /// The one-node tree.
    static Tree singleton();

    /// Builds from a parent table: entries[i] is the parent of node i+1,
    /// 0 marks the root. Throws std::invalid_argument unless the table
    /// describes a tree (ids in range, exactly one root, no cycle).
    static Tree from_parents(const std::vector<NodeId>& entries);

    /// Same as from_parents but skips validation. For callers that construct
    /// tables that are trees by construction.
    static Tree from_parents_unchecked(std::vector<NodeId> entries, NodeId root);

    NodeId root() const { return root_; }
    std::uint32_t node_count() const { return static_cast<std::uint32_t>(parent_.size() - 1); }
    bool has_node(NodeId x) const { return x >= 1 && x < parent_.size(); }

    /// Parent of x; 0 for the root. Throws std::invalid_argument on unknown ids.
    NodeId parent(NodeId x) const;

    /// Parent table indexed by node id; entry 0 is unused and holds 0.
    const std::vector<NodeId>& parents() const { return parent_; }

    bool operator==(const Tree&) const = default;

private:
    Tree() = default;

    std::vector<NodeId> parent_; // size n+1, parent_[root_] == 0
    NodeId root_ = 0;
};

/// children[x] lists the children of x in ascending order; index 0 unused.
std::vector<std::vector<NodeId>> children_table(const Tree& t);

/// Subtree sizes for every node, indexed by id; entry 0 unused.
std::vector<std::uint64_t> subtree_sizes(const Tree& t);

/// Number of nodes in the subtree rooted at x (x itself included).
std::uint64_t size_of(const Tree& t, NodeId x);

/// Sum of size_of over the children of x whose subtree size is at most w.
std::uint64_t sumsize(const Tree& t, NodeId x, std::uint64_t w);

/// Reads the tree file format: line 1 holds n, line 2 holds n parent
/// entries with 0 marking the root. Throws ParseError with line/entry info.
Tree parse_tree(std::string_view text);

/// Inverse of parse_tree. Output is ASCII with a trailing newline.
std::string serialize_tree(const Tree& t);

/// Disjoint union of t and s with the root of s attached under the root of t.
/// Nodes of s are relabelled to n_t+1 .. n_t+n_s, preserving their order.
Tree merge(const Tree& t, const Tree& s);

/// Re-parents every non-root ancestor of x (x itself included) directly
/// under the root. collapse(t, root) == t.
Tree collapse(const Tree& t, NodeId x);

/// Re-parents x under its sibling y. Throws std::invalid_argument when
/// x == y or the two nodes are not siblings.
Tree push(const Tree& t, NodeId x, NodeId y);

/// Applies the steps left to right, validating each against the current tree.
Tree apply_pushes(const Tree& t, const PushSequence& steps);

/// True when every ancestry of t persists in s, i.e. whenever a is a proper
/// ancestor of b in t it is also one in s. Requires the same node count and
/// the same root; throws std::invalid_argument otherwise.
bool leq(const Tree& t, const Tree& s);

/// A sequence of pushes turning t into exactly s, when one exists.
/// A sequence exists precisely when leq(t, s) holds; its length never
/// exceeds n^2.
std::optional<PushSequence> push_witness(const Tree& t, const Tree& s);

/// Label-independent encoding: two trees get the same code exactly when they
/// are isomorphic as rooted unordered trees. Each node encodes as the
/// length-prefixed concatenation of its children's codes in sorted order.
std::string canonical_code(const Tree& t);

/// Push sequence text: one "push x y" line per step.
std::string format_push_sequence(const PushSequence& steps);
PushSequence parse_push_sequence(std::string_view text);

/// Uniform random recursive tree on n nodes: node 1 is the root and each
/// later node picks its parent uniformly among the earlier nodes.
Tree random_tree(std::uint32_t n, std::uint64_t seed);

} // namespace uft
