#pragma once

#include "uft/forest.hpp"
#include "uft/tree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace uft {

/// Exhaustively enumerated tree shapes, one labelled representative per
/// isomorphism class, stratified by node count.
struct ShapeSet {
    std::map<std::uint32_t, std::vector<Tree>> by_size;
    std::unordered_set<std::string> codes; // canonical codes, all sizes

    bool contains(const Tree& t) const { return codes.count(canonical_code(t)) != 0; }
    const std::vector<Tree>& at(std::uint32_t n) const { return by_size.at(n); }
};

/// All rooted unordered tree shapes with 1..n nodes, built by composing
/// nonincreasing multisets of smaller shapes under a fresh root, so every
/// class is constructed exactly once. 1 <= n <= 10.
ShapeSet enum_rooted_trees(std::uint32_t n);

/// Closure of the singleton under merge restricted to size(t) >= size(s),
/// stratified up to n. These are exactly the trees the recognizer's
/// union-tree test accepts. 1 <= n <= 9.
ShapeSet enum_union_trees(std::uint32_t n);

/// Union-find tree enumeration with replayable construction traces.
struct TracedShapeSet {
    ShapeSet set;
    /// Per canonical code, a script over elements 1..size whose final single
    /// tree has that shape: merges become "union", collapses become "find".
    std::map<std::string, OpScript> traces;
};

/// Closure of the singleton under size-respecting merge and collapse,
/// computed size by size (merges grow, collapse saturates within a size).
/// 1 <= n <= 8.
TracedShapeSet enum_uf_trees(std::uint32_t n);

/// Breadth-first search over labelled push moves: true when some push
/// sequence turns t into exactly s. Both trees must share node count and
/// root. n <= 6.
bool push_closure_reachable(const Tree& t, const Tree& s);

} // namespace uft
