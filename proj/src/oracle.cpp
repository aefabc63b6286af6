#include "uft/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace uft {

namespace {

void check_range(std::uint32_t n, std::uint32_t limit, const char* op) {
    if (n == 0 || n > limit) {
        throw std::invalid_argument(std::string(op) + ": n must be in 1.." +
                                    std::to_string(limit));
    }
}

// Root 1 plus the given subtrees, ids shifted to keep each subtree contiguous.
Tree compose(const std::vector<const Tree*>& subtrees) {
    std::uint32_t total = 1;
    for (const Tree* s : subtrees) total += s->node_count();
    std::vector<NodeId> parent(total + 1, 0);
    NodeId offset = 1;
    for (const Tree* s : subtrees) {
        const auto& sp = s->parents();
        for (NodeId i = 1; i <= s->node_count(); ++i) {
            parent[offset + i] = (sp[i] == 0) ? 1 : offset + sp[i];
        }
        offset += s->node_count();
    }
    return Tree::from_parents_unchecked(std::move(parent), 1);
}

// Multisets of subtree shapes with the given total size, enumerated as
// nonincreasing (size, index) sequences so every multiset appears once.
void enum_child_multisets(const std::map<std::uint32_t, std::vector<Tree>>& by_size,
                          std::uint32_t remaining, std::uint32_t max_size,
                          std::size_t max_index, std::vector<const Tree*>& chosen,
                          std::vector<Tree>& out) {
    if (remaining == 0) {
        out.push_back(compose(chosen));
        return;
    }
    for (std::uint32_t s = std::min(remaining, max_size); s >= 1; --s) {
        const auto& pool = by_size.at(s);
        std::size_t start = (s == max_size) ? max_index : pool.size();
        for (std::size_t i = start; i >= 1; --i) {
            chosen.push_back(&pool[i - 1]);
            enum_child_multisets(by_size, remaining - s, s, i, chosen, out);
            chosen.pop_back();
        }
    }
}

} // namespace

ShapeSet enum_rooted_trees(std::uint32_t n) {
    check_range(n, 10, "enum_rooted_trees");
    ShapeSet set;
    set.by_size[1] = {Tree::singleton()};
    for (std::uint32_t k = 2; k <= n; ++k) {
        std::vector<Tree> shapes;
        std::vector<const Tree*> chosen;
        enum_child_multisets(set.by_size, k - 1, k - 1, set.by_size.at(k - 1).size(), chosen,
                             shapes);
        set.by_size[k] = std::move(shapes);
    }
    for (const auto& [size, shapes] : set.by_size) {
        for (const Tree& t : shapes) {
            if (!set.codes.insert(canonical_code(t)).second) {
                throw std::logic_error("enum_rooted_trees: duplicate canonical code");
            }
        }
    }
    return set;
}

ShapeSet enum_union_trees(std::uint32_t n) {
    check_range(n, 9, "enum_union_trees");
    ShapeSet set;
    set.by_size[1] = {Tree::singleton()};
    set.codes.insert(canonical_code(Tree::singleton()));
    for (std::uint32_t k = 2; k <= n; ++k) {
        std::vector<Tree> stratum;
        std::unordered_set<std::string> seen;
        for (std::uint32_t small = 1; small * 2 <= k; ++small) {
            const std::uint32_t big = k - small;
            for (const Tree& t : set.by_size[big]) {
                for (const Tree& s : set.by_size[small]) {
                    Tree merged = merge(t, s);
                    std::string code = canonical_code(merged);
                    if (seen.insert(code).second) {
                        stratum.push_back(std::move(merged));
                        set.codes.insert(std::move(code));
                    }
                }
            }
        }
        set.by_size[k] = std::move(stratum);
    }
    return set;
}

TracedShapeSet enum_uf_trees(std::uint32_t n) {
    check_range(n, 8, "enum_uf_trees");
    TracedShapeSet result;
    auto& set = result.set;

    struct Entry {
        Tree tree;
        OpScript trace;
    };
    std::map<std::uint32_t, std::vector<Entry>> strata;
    strata[1] = {{Tree::singleton(), OpScript{}}};

    auto shifted = [](const OpScript& script, NodeId offset) {
        OpScript out;
        out.ops.reserve(script.ops.size());
        for (Op op : script.ops) {
            if (op.a) op.a += offset;
            if (op.b) op.b += offset;
            out.ops.push_back(op);
        }
        return out;
    };

    for (std::uint32_t k = 2; k <= n; ++k) {
        std::vector<Entry> stratum;
        std::unordered_set<std::string> seen;
        for (std::uint32_t small = 1; small * 2 <= k; ++small) {
            const std::uint32_t big = k - small;
            for (const Entry& t : strata[big]) {
                for (const Entry& s : strata[small]) {
                    Tree merged = merge(t.tree, s.tree);
                    std::string code = canonical_code(merged);
                    if (!seen.insert(code).second) continue;
                    OpScript trace = t.trace;
                    OpScript tail = shifted(s.trace, big);
                    trace.ops.insert(trace.ops.end(), tail.ops.begin(), tail.ops.end());
                    trace.ops.push_back({Op::Kind::Union, t.tree.root(),
                                         static_cast<NodeId>(big + s.tree.root())});
                    stratum.push_back({std::move(merged), std::move(trace)});
                }
            }
        }
        // Saturate under collapse: collapsing never changes the size, so the
        // stratum closes onto itself.
        for (std::size_t head = 0; head < stratum.size(); ++head) {
            for (NodeId x = 1; x <= k; ++x) {
                Tree flattened = collapse(stratum[head].tree, x);
                std::string code = canonical_code(flattened);
                if (!seen.insert(code).second) continue;
                OpScript trace = stratum[head].trace;
                trace.ops.push_back({Op::Kind::Find, x, 0});
                stratum.push_back({std::move(flattened), std::move(trace)});
            }
        }
        strata[k] = std::move(stratum);
    }

    for (auto& [size, entries] : strata) {
        std::vector<Tree> shapes;
        shapes.reserve(entries.size());
        for (Entry& e : entries) {
            std::string code = canonical_code(e.tree);
            result.traces[code] = std::move(e.trace);
            set.codes.insert(std::move(code));
            shapes.push_back(std::move(e.tree));
        }
        set.by_size[size] = std::move(shapes);
    }
    return result;
}

bool push_closure_reachable(const Tree& t, const Tree& s) {
    if (t.node_count() != s.node_count() || t.root() != s.root()) {
        throw std::invalid_argument("push_closure_reachable: trees must share node set and root");
    }
    if (t.node_count() > 6) {
        throw std::invalid_argument("push_closure_reachable: n must be at most 6");
    }
    auto key = [](const Tree& tree) {
        std::string k;
        for (NodeId i = 1; i <= tree.node_count(); ++i) {
            k += std::to_string(tree.parents()[i]);
            k += ',';
        }
        return k;
    };
    const std::string goal = key(s);
    std::unordered_set<std::string> visited;
    std::deque<Tree> queue;
    visited.insert(key(t));
    if (key(t) == goal) return true;
    queue.push_back(t);
    while (!queue.empty()) {
        Tree cur = std::move(queue.front());
        queue.pop_front();
        auto kids = children_table(cur);
        for (NodeId p = 1; p <= cur.node_count(); ++p) {
            for (NodeId x : kids[p]) {
                for (NodeId y : kids[p]) {
                    if (x == y) continue;
                    Tree next = push(cur, x, y);
                    std::string k = key(next);
                    if (k == goal) return true;
                    if (visited.insert(std::move(k)).second) queue.push_back(std::move(next));
                }
            }
        }
    }
    return false;
}

} // namespace uft
