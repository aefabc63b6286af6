#include "uft/tree.hpp"

#include "uft/error.hpp"
#include "uft/rand.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace uft {

namespace {

void require_node(const Tree& t, NodeId x, const char* op) {
    if (!t.has_node(x)) {
        throw std::invalid_argument(std::string(op) + ": unknown node " + std::to_string(x));
    }
}

// Describes the first defect of a parent table, if any. Entries are indexed
// by node id (entry 0 unused); range checks happen before this runs.
struct TableDefect {
    enum class Kind { None, SelfParent, Cycle, NoRoot, ExtraRoot } kind = Kind::None;
    NodeId node = 0;
    NodeId other = 0;
};

TableDefect scan_table(const std::vector<NodeId>& parent) {
    const std::size_t n = parent.size() - 1;
    std::vector<std::uint8_t> state(n + 1, 0); // 0 fresh, 1 on path, 2 settled
    for (NodeId i = 1; i <= n; ++i) {
        if (state[i]) continue;
        std::vector<NodeId> path;
        NodeId cur = i;
        while (true) {
            if (state[cur] == 2) break;
            if (state[cur] == 1) {
                for (NodeId v : path) state[v] = 2;
                if (parent[cur] == cur) return {TableDefect::Kind::SelfParent, cur, 0};
                return {TableDefect::Kind::Cycle, cur, 0};
            }
            state[cur] = 1;
            path.push_back(cur);
            if (parent[cur] == 0) break;
            cur = parent[cur];
        }
        for (NodeId v : path) state[v] = 2;
    }
    NodeId root = 0;
    for (NodeId i = 1; i <= n; ++i) {
        if (parent[i] != 0) continue;
        if (root) return {TableDefect::Kind::ExtraRoot, root, i};
        root = i;
    }
    if (!root) return {TableDefect::Kind::NoRoot, 0, 0};
    return {};
}

std::string defect_message(const TableDefect& d) {
    switch (d.kind) {
        case TableDefect::Kind::SelfParent:
            return "node " + std::to_string(d.node) + " is its own parent";
        case TableDefect::Kind::Cycle:
            return "parent chain forms a cycle through node " + std::to_string(d.node);
        case TableDefect::Kind::NoRoot:
            return "no root entry (exactly one entry must be 0)";
        case TableDefect::Kind::ExtraRoot:
            return "multiple roots: nodes " + std::to_string(d.node) + " and " +
                   std::to_string(d.other);
        default:
            return {};
    }
}

} // namespace

Tree Tree::singleton() {
    return from_parents_unchecked({0, 0}, 1);
}

Tree Tree::from_parents_unchecked(std::vector<NodeId> entries, NodeId root) {
    Tree t;
    t.parent_ = std::move(entries);
    t.root_ = root;
    return t;
}

Tree Tree::from_parents(const std::vector<NodeId>& entries) {
    const std::size_t n = entries.size();
    if (n == 0) throw std::invalid_argument("tree must have at least one node");
    std::vector<NodeId> padded(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i] > n) {
            throw std::invalid_argument("parent id " + std::to_string(entries[i]) +
                                        " out of range 0.." + std::to_string(n));
        }
        padded[i + 1] = entries[i];
    }
    TableDefect d = scan_table(padded);
    if (d.kind != TableDefect::Kind::None) throw std::invalid_argument(defect_message(d));
    NodeId root = 0;
    for (NodeId i = 1; i <= n; ++i) {
        if (padded[i] == 0) {
            root = i;
            break;
        }
    }
    return from_parents_unchecked(std::move(padded), root);
}

NodeId Tree::parent(NodeId x) const {
    if (!has_node(x)) throw std::invalid_argument("parent: unknown node " + std::to_string(x));
    return parent_[x];
}

std::vector<std::vector<NodeId>> children_table(const Tree& t) {
    const std::uint32_t n = t.node_count();
    std::vector<std::vector<NodeId>> kids(n + 1);
    const auto& par = t.parents();
    for (NodeId i = 1; i <= n; ++i) {
        if (par[i] != 0) kids[par[i]].push_back(i);
    }
    return kids;
}

namespace {

// Nodes ordered by depth, deepest first, computed without recursion.
std::vector<NodeId> by_depth_desc(const Tree& t, std::vector<std::uint32_t>& depth) {
    const std::uint32_t n = t.node_count();
    const auto& par = t.parents();
    depth.assign(n + 1, 0);
    std::vector<std::uint8_t> known(n + 1, 0);
    known[t.root()] = 1;
    std::vector<NodeId> path;
    for (NodeId i = 1; i <= n; ++i) {
        NodeId cur = i;
        path.clear();
        while (!known[cur]) {
            path.push_back(cur);
            cur = par[cur];
        }
        std::uint32_t d = depth[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            depth[*it] = ++d;
            known[*it] = 1;
        }
    }
    std::uint32_t max_depth = 0;
    for (NodeId i = 1; i <= n; ++i) max_depth = std::max(max_depth, depth[i]);
    std::vector<std::uint32_t> bucket_start(max_depth + 2, 0);
    for (NodeId i = 1; i <= n; ++i) ++bucket_start[max_depth - depth[i] + 1];
    for (std::size_t d = 1; d < bucket_start.size(); ++d) bucket_start[d] += bucket_start[d - 1];
    std::vector<NodeId> order(n);
    for (NodeId i = 1; i <= n; ++i) order[bucket_start[max_depth - depth[i]]++] = i;
    return order;
}

} // namespace

std::vector<std::uint64_t> subtree_sizes(const Tree& t) {
    const std::uint32_t n = t.node_count();
    const auto& par = t.parents();
    std::vector<std::uint32_t> depth;
    std::vector<NodeId> order = by_depth_desc(t, depth);
    std::vector<std::uint64_t> sz(n + 1, 1);
    sz[0] = 0;
    for (NodeId x : order) {
        if (par[x] != 0) sz[par[x]] += sz[x];
    }
    return sz;
}

std::uint64_t size_of(const Tree& t, NodeId x) {
    require_node(t, x, "size_of");
    return subtree_sizes(t)[x];
}

std::uint64_t sumsize(const Tree& t, NodeId x, std::uint64_t w) {
    require_node(t, x, "sumsize");
    auto sz = subtree_sizes(t);
    const auto& par = t.parents();
    std::uint64_t total = 0;
    for (NodeId i = 1; i <= t.node_count(); ++i) {
        if (par[i] == x && sz[i] <= w) total += sz[i];
    }
    return total;
}

namespace {

struct Token {
    std::uint64_t value;
    std::size_t line;
    std::size_t item;
};

// Splits text into integer tokens, tracking line numbers and per-line item
// indices for error reporting. first_line names the line the text starts on.
std::vector<Token> lex_integers(std::string_view text, std::size_t limit,
                                std::size_t first_line = 1) {
    std::vector<Token> out;
    std::size_t line = first_line, item = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            item = 0;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' &&
               text[j] != '\n') {
            ++j;
        }
        ++item;
        std::uint64_t value = 0;
        auto res = std::from_chars(text.data() + i, text.data() + j, value);
        if (res.ec != std::errc{} || res.ptr != text.data() + j) {
            throw ParseError("malformed integer '" + std::string(text.substr(i, j - i)) + "'",
                             line, item);
        }
        out.push_back({value, line, item});
        if (out.size() > limit) {
            throw ParseError("too many entries", line, item);
        }
        i = j;
    }
    return out;
}

} // namespace

Tree parse_tree(std::string_view text) {
    std::size_t header_end = text.find('\n');
    std::string_view header = text.substr(0, header_end == std::string_view::npos
                                                 ? text.size()
                                                 : header_end);
    std::vector<Token> head = lex_integers(header, 2);
    if (head.size() != 1) throw ParseError("expected a single node count", 1, head.size());
    if (head[0].value == 0) throw ParseError("node count must be at least 1", 1, 1);
    if (head[0].value > (1u << 30)) throw ParseError("node count too large", 1, 1);
    const std::uint32_t n = static_cast<std::uint32_t>(head[0].value);

    std::string_view body =
        header_end == std::string_view::npos ? std::string_view{} : text.substr(header_end + 1);
    std::vector<Token> entries = lex_integers(body, n, 2);
    if (entries.size() != n) {
        throw ParseError("expected " + std::to_string(n) + " parent entries, found " +
                             std::to_string(entries.size()),
                         2, entries.size());
    }

    std::vector<NodeId> parent(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (entries[i].value > n) {
            throw ParseError("parent id " + std::to_string(entries[i].value) +
                                 " out of range 0.." + std::to_string(n),
                             entries[i].line, entries[i].item);
        }
        parent[i + 1] = static_cast<NodeId>(entries[i].value);
    }
    TableDefect d = scan_table(parent);
    if (d.kind != TableDefect::Kind::None) {
        throw ParseError(defect_message(d), 2, d.node);
    }
    NodeId root = 0;
    for (NodeId i = 1; i <= n; ++i) {
        if (parent[i] == 0) {
            root = i;
            break;
        }
    }
    return Tree::from_parents_unchecked(std::move(parent), root);
}

std::string serialize_tree(const Tree& t) {
    const std::uint32_t n = t.node_count();
    std::string out = std::to_string(n);
    out += '\n';
    const auto& par = t.parents();
    for (NodeId i = 1; i <= n; ++i) {
        if (i > 1) out += ' ';
        out += std::to_string(par[i]);
    }
    out += '\n';
    return out;
}

Tree merge(const Tree& t, const Tree& s) {
    const std::uint32_t nt = t.node_count();
    const std::uint32_t ns = s.node_count();
    std::vector<NodeId> parent(nt + ns + 1, 0);
    for (NodeId i = 1; i <= nt; ++i) parent[i] = t.parents()[i];
    for (NodeId i = 1; i <= ns; ++i) {
        NodeId p = s.parents()[i];
        parent[nt + i] = (p == 0) ? t.root() : nt + p;
    }
    return Tree::from_parents_unchecked(std::move(parent), t.root());
}

Tree collapse(const Tree& t, NodeId x) {
    require_node(t, x, "collapse");
    std::vector<NodeId> parent = t.parents();
    const NodeId root = t.root();
    NodeId cur = x;
    while (cur != root) {
        NodeId next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    return Tree::from_parents_unchecked(std::move(parent), root);
}

Tree push(const Tree& t, NodeId x, NodeId y) {
    require_node(t, x, "push");
    require_node(t, y, "push");
    if (x == y) throw std::invalid_argument("push: x and y must differ");
    if (t.parents()[x] != t.parents()[y] || t.parents()[x] == 0) {
        throw std::invalid_argument("push: nodes " + std::to_string(x) + " and " +
                                    std::to_string(y) + " are not siblings");
    }
    std::vector<NodeId> parent = t.parents();
    parent[x] = y;
    return Tree::from_parents_unchecked(std::move(parent), t.root());
}

Tree apply_pushes(const Tree& t, const PushSequence& steps) {
    Tree cur = t;
    for (const PushStep& st : steps) cur = push(cur, st.x, st.y);
    return cur;
}

bool leq(const Tree& t, const Tree& s) {
    if (t.node_count() != s.node_count()) {
        throw std::invalid_argument("leq: trees must share one node set");
    }
    if (t.root() != s.root()) {
        throw std::invalid_argument("leq: trees must share their root");
    }
    // parent_t(x) must be an ancestor of x in s, for every non-root x.
    const auto& pt = t.parents();
    const auto& ps = s.parents();
    for (NodeId x = 1; x <= t.node_count(); ++x) {
        NodeId target = pt[x];
        if (target == 0) continue;
        NodeId cur = ps[x];
        while (cur != 0 && cur != target) cur = ps[cur];
        if (cur != target) return false;
    }
    return true;
}

std::optional<PushSequence> push_witness(const Tree& t, const Tree& s) {
    if (!leq(t, s)) return std::nullopt;
    const std::uint32_t n = t.node_count();
    std::vector<NodeId> cur = t.parents();
    const auto& ps = s.parents();
    PushSequence steps;

    // Walk s top-down. At each node r the children of r in the evolving tree
    // form a superset of its children in s; every extra child is pushed below
    // the unique child of r that sits above it in s.
    std::vector<NodeId> stack{t.root()};
    std::vector<std::uint8_t> child_in_s(n + 1, 0);
    while (!stack.empty()) {
        NodeId r = stack.back();
        stack.pop_back();
        std::vector<NodeId> mine;
        for (NodeId i = 1; i <= n; ++i) {
            if (cur[i] == r) mine.push_back(i);
        }
        for (NodeId i = 1; i <= n; ++i) child_in_s[i] = 0;
        for (NodeId i = 1; i <= n; ++i) {
            if (ps[i] == r) child_in_s[i] = 1;
        }
        for (NodeId x : mine) {
            if (child_in_s[x]) continue;
            NodeId y = x;
            while (ps[y] != r) y = ps[y];
            cur[x] = y;
            steps.push_back({x, y});
        }
        for (NodeId i = 1; i <= n; ++i) {
            if (ps[i] == r) stack.push_back(i);
        }
    }
    return steps;
}

std::string canonical_code(const Tree& t) {
    const std::uint32_t n = t.node_count();
    std::vector<std::uint32_t> depth;
    std::vector<NodeId> order = by_depth_desc(t, depth);
    std::vector<std::string> code(n + 1);
    std::vector<std::vector<NodeId>> kids = children_table(t);
    for (NodeId x : order) {
        std::vector<std::string*> parts;
        parts.reserve(kids[x].size());
        for (NodeId c : kids[x]) parts.push_back(&code[c]);
        std::sort(parts.begin(), parts.end(),
                  [](const std::string* a, const std::string* b) { return *a < *b; });
        std::size_t len = 0;
        for (auto* p : parts) len += p->size();
        std::string body;
        body.reserve(len);
        for (auto* p : parts) body += *p;
        code[x] = std::to_string(body.size()) + ":" + body;
        for (NodeId c : kids[x]) std::string().swap(code[c]);
    }
    return code[t.root()];
}

std::string format_push_sequence(const PushSequence& steps) {
    std::string out;
    for (const PushStep& st : steps) {
        out += "push ";
        out += std::to_string(st.x);
        out += ' ';
        out += std::to_string(st.y);
        out += '\n';
    }
    return out;
}

PushSequence parse_push_sequence(std::string_view text) {
    PushSequence steps;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                               : end - pos);
        ++line_no;
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        std::size_t last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.substr(0, 4) != "push") {
            throw ParseError("expected 'push x y'", line_no);
        }
        std::vector<Token> args = lex_integers(line.substr(4), 2);
        if (args.size() != 2) throw ParseError("push takes two node ids", line_no);
        if (args[0].value == 0 || args[1].value == 0) {
            throw ParseError("node ids are positive", line_no);
        }
        steps.push_back({static_cast<NodeId>(args[0].value),
                         static_cast<NodeId>(args[1].value)});
    }
    return steps;
}

Tree random_tree(std::uint32_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_tree: n must be at least 1");
    SplitMix64 rng(seed);
    std::vector<NodeId> parent(n + 1, 0);
    for (NodeId i = 2; i <= n; ++i) {
        parent[i] = static_cast<NodeId>(1 + rng.below(i - 1));
    }
    return Tree::from_parents_unchecked(std::move(parent), 1);
}

} // namespace uft
