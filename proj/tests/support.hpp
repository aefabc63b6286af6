#pragma once

#include "uft/recognizer.hpp"
#include "uft/tree.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace testutil {

// Root 1 with n-1 leaf children.
inline uft::Tree star(std::uint32_t n) {
    std::vector<uft::NodeId> entries(n, 1);
    entries[0] = 0;
    return uft::Tree::from_parents(entries);
}

// Path 1 <- 2 <- ... <- n.
inline uft::Tree chain(std::uint32_t n) {
    std::vector<uft::NodeId> entries(n);
    entries[0] = 0;
    for (std::uint32_t i = 1; i < n; ++i) entries[i] = i;
    return uft::Tree::from_parents(entries);
}

// 9-node tree whose depth-one node 3 carries four leaf children (6..9).
// Node 1's child sizes are {1,1,1,5}, so this is not a union tree.
inline uft::Tree branchy9() {
    return uft::Tree::from_parents({0, 1, 1, 1, 1, 3, 3, 3, 3});
}

inline std::optional<uft::Tree> try_tree(const std::vector<uft::NodeId>& entries) {
    try {
        return uft::Tree::from_parents(entries);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

// Every labelled rooted tree on nodes 1..n with the given root.
inline std::vector<uft::Tree> all_labeled_trees(std::uint32_t n, uft::NodeId root) {
    std::vector<uft::Tree> out;
    std::vector<uft::NodeId> entries(n, 0);
    // Odometer over parent choices for the n-1 non-root nodes.
    std::vector<uft::NodeId> slot;
    for (uft::NodeId i = 1; i <= n; ++i) {
        if (i != root) slot.push_back(i);
    }
    std::vector<std::uint32_t> pick(slot.size(), 0);
    while (true) {
        for (std::size_t j = 0; j < slot.size(); ++j) {
            // pick[j] indexes the candidate parents of slot[j]: 1..n minus itself.
            uft::NodeId p = static_cast<uft::NodeId>(pick[j] + 1);
            if (p >= slot[j]) ++p;
            entries[slot[j] - 1] = p;
        }
        entries[root - 1] = 0;
        if (auto t = try_tree(entries)) out.push_back(*t);
        std::size_t j = 0;
        while (j < pick.size() && ++pick[j] == n - 1) pick[j++] = 0;
        if (j == pick.size()) break;
    }
    return out;
}

// Flat tree assembled from its inventory: K empty baskets, one solo heavy
// star of size H+1, and one light star per requested size at depth one.
struct FlatFixture {
    uft::Tree tree;
    uft::ChargeContext ctx;
    std::vector<uft::NodeId> baskets; // basket nodes, ascending
    uft::NodeId solo = 0;             // solo heavy star centre
    std::vector<uft::NodeId> lights;  // light star centres, input order
};

inline FlatFixture make_flat(std::uint64_t heaviness, std::uint32_t baskets,
                             const std::vector<std::uint64_t>& light_sizes) {
    std::vector<uft::NodeId> entries{0};
    uft::NodeId next = 2;
    auto attach_star = [&](uft::NodeId parent, std::uint64_t size) {
        uft::NodeId centre = next++;
        entries.push_back(parent);
        for (std::uint64_t i = 1; i < size; ++i) {
            entries.push_back(centre);
            ++next;
        }
        return centre;
    };
    std::vector<uft::NodeId> basket_ids;
    for (std::uint32_t b = 0; b < baskets; ++b) {
        uft::NodeId basket = next++;
        entries.push_back(1);
        basket_ids.push_back(basket);
        attach_star(basket, heaviness + 1);
    }
    uft::NodeId solo = attach_star(1, heaviness + 1);
    std::vector<uft::NodeId> lights;
    for (std::uint64_t s : light_sizes) lights.push_back(attach_star(1, s));
    return FlatFixture{uft::Tree::from_parents(entries), uft::ChargeContext{heaviness},
                       std::move(basket_ids), solo, std::move(lights)};
}

} // namespace testutil
