#include "uft/forest.hpp"

#include "uft/error.hpp"
#include "uft/rand.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <string>

namespace uft {

Forest::Forest(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("forest must have at least 1 element");
    parent_.resize(n + 1);
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
    size_.assign(n + 1, 1);
}

void Forest::check(NodeId x) const {
    if (x == 0 || x >= parent_.size()) {
        throw std::invalid_argument("unknown element " + std::to_string(x));
    }
}

NodeId Forest::find(NodeId x) {
    check(x);
    NodeId r = x;
    while (parent_[r] != r) r = parent_[r];
    NodeId cur = x;
    while (cur != r) {
        NodeId next = parent_[cur];
        parent_[cur] = r;
        cur = next;
    }
    return r;
}

NodeId Forest::root_of(NodeId x) const {
    check(x);
    NodeId r = x;
    while (parent_[r] != r) r = parent_[r];
    return r;
}

NodeId Forest::unite(NodeId a, NodeId b) {
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra == rb) return ra;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    return ra;
}

NodeId Forest::parent(NodeId x) const {
    check(x);
    return parent_[x];
}

std::uint64_t Forest::component_size(NodeId x) const {
    return size_[root_of(x)];
}

std::vector<NodeId> Forest::component_members(NodeId x) const {
    NodeId r = root_of(x);
    std::vector<NodeId> members;
    for (NodeId i = 1; i < parent_.size(); ++i) {
        if (root_of(i) == r) members.push_back(i);
    }
    return members;
}

Tree Forest::component_tree(NodeId x) const {
    std::vector<NodeId> members = component_members(x);
    std::vector<NodeId> dense(parent_.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        dense[members[i]] = static_cast<NodeId>(i + 1);
    }
    std::vector<NodeId> table(members.size() + 1, 0);
    NodeId root = 0;
    for (NodeId m : members) {
        if (parent_[m] == m) {
            root = dense[m];
        } else {
            table[dense[m]] = dense[parent_[m]];
        }
    }
    return Tree::from_parents_unchecked(std::move(table), root);
}

std::vector<NodeId> Forest::roots() const {
    std::vector<NodeId> out;
    for (NodeId i = 1; i < parent_.size(); ++i) {
        if (parent_[i] == i) out.push_back(i);
    }
    return out;
}

NodeId OpScript::max_id() const {
    NodeId m = 0;
    for (const Op& op : ops) {
        m = std::max(m, op.a);
        m = std::max(m, op.b);
    }
    return m;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

NodeId parse_id(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError("malformed element id '" + std::string(field) + "'", line_no);
    }
    if (value == 0 || value > 0xffffffffULL) {
        throw ParseError("element id out of range", line_no);
    }
    return static_cast<NodeId>(value);
}

} // namespace

OpScript parse_script(std::string_view text) {
    OpScript script;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                               : end - pos);
        ++line_no;
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<std::string_view> fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == "union") {
            if (fields.size() != 3) throw ParseError("union takes two element ids", line_no);
            script.ops.push_back({Op::Kind::Union, parse_id(fields[1], line_no),
                                  parse_id(fields[2], line_no)});
        } else if (fields[0] == "find") {
            if (fields.size() != 2) throw ParseError("find takes one element id", line_no);
            script.ops.push_back({Op::Kind::Find, parse_id(fields[1], line_no), 0});
        } else if (fields[0] == "dump") {
            if (fields.size() != 1) throw ParseError("dump takes no arguments", line_no);
            script.ops.push_back({Op::Kind::Dump, 0, 0});
        } else {
            throw ParseError("unknown op '" + std::string(fields[0]) + "'", line_no);
        }
    }
    return script;
}

std::string serialize_script(const OpScript& script) {
    std::string out;
    for (const Op& op : script.ops) {
        switch (op.kind) {
            case Op::Kind::Union:
                out += "union " + std::to_string(op.a) + " " + std::to_string(op.b) + "\n";
                break;
            case Op::Kind::Find:
                out += "find " + std::to_string(op.a) + "\n";
                break;
            case Op::Kind::Dump:
                out += "dump\n";
                break;
        }
    }
    return out;
}

OpScript with_periodic_dumps(const OpScript& script, std::uint32_t every) {
    if (every == 0) return script;
    OpScript out;
    std::uint32_t since = 0;
    for (const Op& op : script.ops) {
        out.ops.push_back(op);
        if (op.kind == Op::Kind::Dump) {
            since = 0;
            continue;
        }
        if (++since == every) {
            out.ops.push_back({Op::Kind::Dump, 0, 0});
            since = 0;
        }
    }
    return out;
}

std::vector<Snapshot> run_script(Forest& f, const OpScript& script) {
    NodeId limit = script.max_id();
    if (limit > f.count()) {
        throw std::invalid_argument("script references element " + std::to_string(limit) +
                                    " beyond forest size " + std::to_string(f.count()));
    }
    std::vector<Snapshot> out;
    NodeId touched = 0;
    for (std::size_t i = 0; i < script.ops.size(); ++i) {
        const Op& op = script.ops[i];
        switch (op.kind) {
            case Op::Kind::Union:
                f.unite(op.a, op.b);
                touched = op.a;
                break;
            case Op::Kind::Find:
                f.find(op.a);
                touched = op.a;
                break;
            case Op::Kind::Dump: {
                NodeId src = touched ? touched : 1;
                out.push_back({i, src, f.component_tree(src)});
                break;
            }
        }
    }
    for (NodeId r : f.roots()) {
        out.push_back({script.ops.size(), r, f.component_tree(r)});
    }
    return out;
}

OpScript random_script(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_script: n must be at least 1");
    SplitMix64 rng(seed);
    OpScript script;
    script.ops.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        if (rng.below(3) < 2) {
            script.ops.push_back({Op::Kind::Union,
                                  static_cast<NodeId>(1 + rng.below(n)),
                                  static_cast<NodeId>(1 + rng.below(n))});
        } else {
            script.ops.push_back({Op::Kind::Find, static_cast<NodeId>(1 + rng.below(n)), 0});
        }
    }
    return script;
}

} // namespace uft
