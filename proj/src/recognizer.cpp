#include "uft/recognizer.hpp"

#include "uft/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace uft {

bool multiset_union_condition(std::vector<std::uint64_t> sizes) {
    std::sort(sizes.begin(), sizes.end());
    std::uint64_t below = 0; // sum of elements strictly smaller than sizes[i]
    std::size_t i = 0;
    while (i < sizes.size()) {
        std::uint64_t v = sizes[i];
        if (below < v - 1) return false;
        std::size_t j = i;
        while (j < sizes.size() && sizes[j] == v) ++j;
        below += v * (j - i);
        i = j;
    }
    return true;
}

namespace {

struct NodeSizes {
    std::vector<std::uint64_t> sz;
    std::vector<std::vector<NodeId>> kids;
};

NodeSizes sized(const Tree& t) {
    return {subtree_sizes(t), children_table(t)};
}

// Child sizes of x, ascending, paired with ids (id ascends within equal size).
std::vector<std::pair<std::uint64_t, NodeId>> sorted_child_sizes(const NodeSizes& ns, NodeId x) {
    std::vector<std::pair<std::uint64_t, NodeId>> out;
    out.reserve(ns.kids[x].size());
    for (NodeId c : ns.kids[x]) out.emplace_back(ns.sz[c], c);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool is_union_tree(const Tree& t) {
    NodeSizes ns = sized(t);
    std::vector<std::uint64_t> sizes;
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (ns.kids[x].empty()) continue;
        sizes.clear();
        for (NodeId c : ns.kids[x]) sizes.push_back(ns.sz[c]);
        if (!multiset_union_condition(sizes)) return false;
    }
    return true;
}

std::vector<Violation> union_violations(const Tree& t) {
    NodeSizes ns = sized(t);
    std::vector<Violation> out;
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (ns.kids[x].empty()) continue;
        auto children = sorted_child_sizes(ns, x);
        std::uint64_t below = 0;
        std::size_t i = 0;
        while (i < children.size()) {
            std::uint64_t v = children[i].first;
            if (below < v - 1) {
                out.push_back({x, children[i].second, (v - 1) - below});
                break;
            }
            std::size_t j = i;
            while (j < children.size() && children[j].first == v) ++j;
            below += v * (j - i);
            i = j;
        }
    }
    return out;
}

namespace {

// Ordered sibling pairs, moves under the worst-violating parent first.
std::vector<PushStep> ranked_moves(const Tree& t) {
    NodeSizes ns = sized(t);
    std::unordered_map<NodeId, std::uint64_t> deficit;
    for (const Violation& v : union_violations(t)) deficit[v.node] = v.deficit;

    std::vector<std::pair<std::uint64_t, NodeId>> parents;
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (ns.kids[x].size() >= 2) {
            auto it = deficit.find(x);
            parents.emplace_back(it == deficit.end() ? 0 : it->second, x);
        }
    }
    std::sort(parents.begin(), parents.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<PushStep> moves;
    for (const auto& [score, p] : parents) {
        const auto& kids = ns.kids[p];
        for (NodeId x : kids) {
            for (NodeId y : kids) {
                if (x != y) moves.push_back({x, y});
            }
        }
    }
    return moves;
}

} // namespace

std::optional<PushSequence> is_union_find_tree(const Tree& t, const UfSearchOptions& opts) {
    const std::uint64_t n = t.node_count();
    const std::uint64_t cap = opts.max_pushes ? opts.max_pushes : n * n;
    std::unordered_set<std::string> refuted;
    PushSequence steps;

    // Pushes only deepen nodes, so the move graph is acyclic and a shape's
    // outcome is path independent; refuted canonical codes stay refuted.
    std::function<bool(const Tree&)> dfs = [&](const Tree& cur) -> bool {
        if (is_union_tree(cur)) return true;
        if (steps.size() >= cap) return false;
        for (const PushStep& mv : ranked_moves(cur)) {
            Tree next = push(cur, mv.x, mv.y);
            std::string code = canonical_code(next);
            if (refuted.count(code)) continue;
            if (opts.charge_prune &&
                total_charge(next, ChargeContext{*opts.charge_prune}) < 0) {
                refuted.insert(std::move(code));
                continue;
            }
            steps.push_back(mv);
            if (dfs(next)) return true;
            steps.pop_back();
            refuted.insert(std::move(code));
        }
        return false;
    };

    if (dfs(t)) return steps;
    return std::nullopt;
}

namespace {

struct ClassTable {
    std::vector<std::uint64_t> sz;
    std::vector<std::vector<NodeId>> kids;
    std::vector<NodeClass> cls;
};

ClassTable classify_all(const Tree& t, const ChargeContext& ctx) {
    ClassTable table{subtree_sizes(t), children_table(t), {}};
    const std::uint64_t h = ctx.heaviness;
    table.cls.assign(t.node_count() + 1, NodeClass::Light);
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (table.sz[x] <= h) continue;
        bool basket = false;
        for (NodeId c : table.kids[x]) {
            if (table.sz[c] > h) {
                basket = true;
                break;
            }
        }
        if (!basket) {
            table.cls[x] = NodeClass::HeavyNonBasket;
        } else if (table.kids[x].size() == 1 && table.sz[table.kids[x][0]] == h + 1) {
            table.cls[x] = NodeClass::EmptyBasket;
        } else {
            table.cls[x] = NodeClass::Basket;
        }
    }
    return table;
}

void require_node(const Tree& t, NodeId x, const char* op) {
    if (!t.has_node(x)) {
        throw std::invalid_argument(std::string(op) + ": unknown node " + std::to_string(x));
    }
}

} // namespace

NodeClass classify(const Tree& t, const ChargeContext& ctx, NodeId x) {
    require_node(t, x, "classify");
    return classify_all(t, ctx).cls[x];
}

bool is_light(const Tree& t, const ChargeContext& ctx, NodeId x) {
    return classify(t, ctx, x) == NodeClass::Light;
}

bool is_heavy(const Tree& t, const ChargeContext& ctx, NodeId x) {
    return classify(t, ctx, x) != NodeClass::Light;
}

bool is_basket(const Tree& t, const ChargeContext& ctx, NodeId x) {
    NodeClass c = classify(t, ctx, x);
    return c == NodeClass::Basket || c == NodeClass::EmptyBasket;
}

bool is_empty_basket(const Tree& t, const ChargeContext& ctx, NodeId x) {
    return classify(t, ctx, x) == NodeClass::EmptyBasket;
}

std::uint64_t sumlight(const Tree& t, const ChargeContext& ctx, NodeId x) {
    return sumsize(t, x, ctx.heaviness);
}

std::int64_t charge(const Tree& t, const ChargeContext& ctx, NodeId x) {
    require_node(t, x, "charge");
    auto sz = subtree_sizes(t);
    if (sz[x] <= ctx.heaviness) return 0;
    return static_cast<std::int64_t>(sumlight(t, ctx, x)) -
           static_cast<std::int64_t>(ctx.heaviness);
}

std::int64_t total_charge(const Tree& t, const ChargeContext& ctx) {
    ClassTable table = classify_all(t, ctx);
    const std::uint64_t h = ctx.heaviness;
    std::int64_t total = 0;
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (table.cls[x] == NodeClass::Light) continue;
        std::uint64_t light_sum = 0;
        for (NodeId c : table.kids[x]) {
            if (table.sz[c] <= h) light_sum += table.sz[c];
        }
        total += static_cast<std::int64_t>(light_sum) - static_cast<std::int64_t>(h);
    }
    return total;
}

FlatReport flat_report(const Tree& t, const ChargeContext& ctx) {
    ClassTable table = classify_all(t, ctx);
    const std::uint64_t h = ctx.heaviness;
    FlatReport rep;

    // Condition 1: some depth-one empty baskets, and no other depth-one basket.
    for (NodeId c : table.kids[t.root()]) {
        if (table.cls[c] == NodeClass::EmptyBasket) {
            rep.stats.empty_baskets.push_back(c);
        } else if (table.cls[c] == NodeClass::Basket) {
            rep.violated_condition = 1;
            rep.detail = "depth-one basket node " + std::to_string(c) +
                         " is not an empty basket";
            return rep;
        }
    }
    if (rep.stats.empty_baskets.empty()) {
        rep.violated_condition = 1;
        rep.detail = "no depth-one empty basket at heaviness " + std::to_string(h);
        return rep;
    }

    // Condition 2: exactly one depth-one heavy non-basket, of size h+1.
    std::vector<NodeId> solo;
    for (NodeId c : table.kids[t.root()]) {
        if (table.cls[c] == NodeClass::HeavyNonBasket) solo.push_back(c);
    }
    if (solo.size() != 1) {
        rep.violated_condition = 2;
        rep.detail = "expected exactly one depth-one heavy non-basket, found " +
                     std::to_string(solo.size());
        return rep;
    }
    if (table.sz[solo[0]] != h + 1) {
        rep.violated_condition = 2;
        rep.detail = "depth-one heavy non-basket " + std::to_string(solo[0]) + " has size " +
                     std::to_string(table.sz[solo[0]]) + ", expected " + std::to_string(h + 1);
        return rep;
    }
    rep.stats.solo_heavy = solo[0];

    // Condition 3: depth-one light sizes sum to (K+1)*h.
    std::uint64_t light_sum = 0;
    for (NodeId c : table.kids[t.root()]) {
        if (table.sz[c] <= h) {
            rep.stats.light_depth_one.push_back(c);
            light_sum += table.sz[c];
        }
    }
    const std::uint64_t expected = (rep.stats.empty_baskets.size() + 1) * h;
    if (light_sum != expected) {
        rep.violated_condition = 3;
        rep.detail = "depth-one light sizes sum to " + std::to_string(light_sum) +
                     ", expected " + std::to_string(expected);
        return rep;
    }

    // Condition 4: light nodes and heavy non-baskets have only leaves below.
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        if (table.cls[x] != NodeClass::Light && table.cls[x] != NodeClass::HeavyNonBasket) {
            continue;
        }
        for (NodeId c : table.kids[x]) {
            if (!table.kids[c].empty()) {
                rep.violated_condition = 4;
                rep.detail = "node " + std::to_string(x) +
                             " must be a star but its child " + std::to_string(c) +
                             " has children";
                return rep;
            }
        }
    }

    rep.flat = true;
    return rep;
}

std::optional<FlatStats> is_flat(const Tree& t, const ChargeContext& ctx) {
    FlatReport rep = flat_report(t, ctx);
    if (!rep.flat) return std::nullopt;
    return rep.stats;
}

namespace {

struct LightItem {
    std::uint64_t size;
    NodeId id;
};

// Backtracking partition of the light items into `groups` bins of capacity h
// whose completed contents satisfy the multiset union condition. Items come
// sorted by descending size; bins are interchangeable, so an item may open at
// most one fresh bin and equal sizes move through nondecreasing bin indices.
class GroupSearch {
public:
    GroupSearch(std::vector<LightItem> items, std::uint64_t h, std::uint32_t groups)
        : items_(std::move(items)), h_(h), sums_(groups, 0), members_(groups) {
        last_group_.assign(items_.size(), 0);
    }

    bool run() { return place(0, 0); }

    std::vector<std::vector<NodeId>> members() const {
        std::vector<std::vector<NodeId>> out(members_.size());
        for (std::size_t g = 0; g < members_.size(); ++g) {
            for (std::size_t idx : members_[g]) out[g].push_back(items_[idx].id);
            std::sort(out[g].begin(), out[g].end());
        }
        return out;
    }

private:
    bool place(std::size_t idx, std::size_t used) {
        if (idx == items_.size()) return true;
        const std::uint64_t size = items_[idx].size;
        const std::size_t open_limit = std::min(used + 1, sums_.size());
        const std::size_t from =
            (idx > 0 && items_[idx - 1].size == size) ? last_group_[idx - 1] : 0;
        const std::uint64_t smallest_rest =
            (idx + 1 < items_.size()) ? items_.back().size : 0;
        for (std::size_t g = from; g < open_limit; ++g) {
            if (sums_[g] + size > h_) continue;
            sums_[g] += size;
            members_[g].push_back(idx);
            bool ok = true;
            const std::uint64_t rest = h_ - sums_[g];
            if (rest == 0) {
                std::vector<std::uint64_t> sizes;
                sizes.reserve(members_[g].size());
                for (std::size_t m : members_[g]) sizes.push_back(items_[m].size);
                ok = multiset_union_condition(std::move(sizes));
            } else {
                // The items still to come are the only candidates strictly
                // smaller than `size` in this bin, and they total at most
                // `rest`; the bin must also remain reachable by the smallest
                // remaining item.
                if (rest < size - 1) ok = false;
                if (ok && smallest_rest > 0 && rest < smallest_rest) ok = false;
                if (ok && idx + 1 == items_.size()) ok = false;
            }
            if (ok) {
                last_group_[idx] = g;
                if (place(idx + 1, std::max(used, g + 1))) return true;
            }
            members_[g].pop_back();
            sums_[g] -= size;
        }
        return false;
    }

    std::vector<LightItem> items_;
    std::uint64_t h_;
    std::vector<std::uint64_t> sums_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::size_t> last_group_;
};

FlatStats require_flat(const Tree& t, const ChargeContext& ctx, const char* op) {
    FlatReport rep = flat_report(t, ctx);
    if (!rep.flat) {
        throw std::invalid_argument(std::string(op) + ": tree is not flat at heaviness " +
                                    std::to_string(ctx.heaviness) + " (condition " +
                                    std::to_string(rep.violated_condition) + ": " + rep.detail +
                                    ")");
    }
    return rep.stats;
}

} // namespace

std::optional<LightPartition> decide_flat_uf(const Tree& t, const ChargeContext& ctx) {
    FlatStats stats = require_flat(t, ctx, "decide_flat_uf");
    auto sz = subtree_sizes(t);
    std::vector<LightItem> items;
    items.reserve(stats.light_depth_one.size());
    for (NodeId c : stats.light_depth_one) items.push_back({sz[c], c});
    std::sort(items.begin(), items.end(), [](const LightItem& a, const LightItem& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.id < b.id;
    });

    GroupSearch search(std::move(items), ctx.heaviness, stats.basket_count() + 1);
    if (!search.run()) return std::nullopt;
    return LightPartition{search.members()};
}

PushSequence witness_from_partition(const Tree& t, const ChargeContext& ctx,
                                    const LightPartition& p) {
    FlatStats stats = require_flat(t, ctx, "witness_from_partition");
    const std::uint32_t k = stats.basket_count();
    if (p.groups.size() != static_cast<std::size_t>(k) + 1) {
        throw std::invalid_argument("invalid partition: expected " + std::to_string(k + 1) +
                                    " groups, got " + std::to_string(p.groups.size()));
    }
    auto sz = subtree_sizes(t);
    std::unordered_set<NodeId> lights(stats.light_depth_one.begin(),
                                      stats.light_depth_one.end());
    std::unordered_set<NodeId> seen;
    for (const auto& group : p.groups) {
        std::uint64_t sum = 0;
        std::vector<std::uint64_t> sizes;
        for (NodeId x : group) {
            if (!lights.count(x)) {
                throw std::invalid_argument("invalid partition: node " + std::to_string(x) +
                                            " is not a depth-one light node");
            }
            if (!seen.insert(x).second) {
                throw std::invalid_argument("invalid partition: node " + std::to_string(x) +
                                            " appears twice");
            }
            sum += sz[x];
            sizes.push_back(sz[x]);
        }
        if (sum != ctx.heaviness) {
            throw std::invalid_argument("invalid partition: group sums to " +
                                        std::to_string(sum) + ", expected " +
                                        std::to_string(ctx.heaviness));
        }
        if (!multiset_union_condition(std::move(sizes))) {
            throw std::invalid_argument(
                "invalid partition: group fails the union condition");
        }
    }
    if (seen.size() != lights.size()) {
        throw std::invalid_argument("invalid partition: not all light nodes covered");
    }

    PushSequence steps;
    for (std::uint32_t g = 0; g < k; ++g) {
        std::vector<NodeId> group = p.groups[g];
        std::sort(group.begin(), group.end());
        for (NodeId x : group) steps.push_back({x, stats.empty_baskets[g]});
    }
    return steps;
}

std::string format_light_partition(const LightPartition& p) {
    std::string out;
    for (const auto& group : p.groups) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(group[i]);
        }
        out += '\n';
    }
    return out;
}

LightPartition parse_light_partition(std::string_view text) {
    LightPartition p;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                               : end - pos);
        ++line_no;
        pos = (end == std::string_view::npos) ? text.size() : end + 1;
        std::vector<NodeId> group;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) {
                std::uint64_t value = 0;
                auto res = std::from_chars(line.data() + i, line.data() + j, value);
                if (res.ec != std::errc{} || res.ptr != line.data() + j || value == 0) {
                    throw ParseError("malformed node id '" +
                                         std::string(line.substr(i, j - i)) + "'",
                                     line_no);
                }
                group.push_back(static_cast<NodeId>(value));
            }
            i = j;
        }
        p.groups.push_back(std::move(group));
    }
    return p;
}

} // namespace uft
