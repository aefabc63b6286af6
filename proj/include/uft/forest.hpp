#pragma once

#include "uft/tree.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uft {

/// Mutable union-by-size forest with path compression over elements 1..n.
class Forest {
public:
    /// n singletons. n must be at least 1.
    explicit Forest(std::uint32_t n);

    std::uint32_t count() const { return static_cast<std::uint32_t>(parent_.size() - 1); }

    /// Representative of x's tree. The walk is done twice: once to locate the
    /// root, once to re-parent every node on the path directly under it, so
    /// the touched tree afterwards equals collapse(before, x).
    NodeId find(NodeId x);

    /// Representative of x's tree without restructuring anything.
    NodeId root_of(NodeId x) const;

    /// Joins the trees of a and b and returns the surviving root. Both
    /// arguments go through find first. The smaller tree's root is attached
    /// under the larger one's; on equal sizes the root found for a survives.
    NodeId unite(NodeId a, NodeId b);

    /// Parent pointer of x; roots point at themselves.
    NodeId parent(NodeId x) const;

    /// Size of the tree containing x.
    std::uint64_t component_size(NodeId x) const;

    /// Members of x's tree in ascending element order.
    std::vector<NodeId> component_members(NodeId x) const;

    /// x's tree as a Tree value, members relabelled densely to 1..k in
    /// ascending element order.
    Tree component_tree(NodeId x) const;

    /// All current roots in ascending order.
    std::vector<NodeId> roots() const;

private:
    void check(NodeId x) const;

    std::vector<NodeId> parent_;       // parent_[x] == x at roots
    std::vector<std::uint64_t> size_;  // meaningful at roots
};

struct Op {
    enum class Kind { Union, Find, Dump };
    Kind kind;
    NodeId a = 0;
    NodeId b = 0;
    bool operator==(const Op&) const = default;
};

struct OpScript {
    std::vector<Op> ops;

    /// Largest element id referenced by any op; 0 for an op-free script.
    NodeId max_id() const;

    bool operator==(const OpScript&) const = default;
};

/// Script text: one op per line, "union a b" | "find a" | "dump".
/// '#' starts a comment; blank lines are ignored.
OpScript parse_script(std::string_view text);
std::string serialize_script(const OpScript& script);

/// Copy of script with a dump op inserted after every `every` executable ops.
OpScript with_periodic_dumps(const OpScript& script, std::uint32_t every);

/// Tree snapshot emitted while running a script. op_index is the index of the
/// triggering op (ops.size() for the end-of-script snapshots) and source is
/// the original element whose tree was captured.
struct Snapshot {
    std::size_t op_index;
    NodeId source;
    Tree tree;
};

/// Executes the script on f. Each dump captures the tree touched by the most
/// recent union or find (element 1's tree when no op precedes the dump); at
/// end of script every root's tree is captured. Element ids must not exceed
/// f.count(); throws std::invalid_argument otherwise.
std::vector<Snapshot> run_script(Forest& f, const OpScript& script);

/// k random ops over elements 1..n, roughly two unions per find.
OpScript random_script(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

} // namespace uft
