#include "uftree.h"

#include "uft/error.hpp"
#include "uft/forest.hpp"
#include "uft/oracle.hpp"
#include "uft/recognizer.hpp"
#include "uft/reduction.hpp"
#include "uft/tree.hpp"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

struct uft_tree {
    uft::Tree impl;
};

struct uft_forest {
    uft::Forest impl;
};

struct uft_script {
    uft::OpScript impl;
};

struct uft_snapshots {
    std::vector<uft::Snapshot> impl;
};

struct uft_instance {
    std::uint32_t m;
    std::vector<std::uint64_t> values;
};

namespace {

thread_local std::string g_last_error;

uft_status fail(uft_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
uft_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const uft::ParseError& e) {
        return fail(UFT_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(UFT_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(UFT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(UFT_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc{};
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

uft_status require(bool ok, const char* what) {
    return ok ? UFT_OK : fail(UFT_ERR_INVALID, what);
}

} // namespace

extern "C" {

const char* uft_status_name(uft_status s) {
    switch (s) {
        case UFT_OK: return "ok";
        case UFT_ERR_PARSE: return "parse error";
        case UFT_ERR_INVALID: return "invalid argument";
        case UFT_ERR_RANGE: return "out of range";
        case UFT_ERR_NOT_FLAT: return "not flat";
        case UFT_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* uft_last_error(void) {
    return g_last_error.c_str();
}

void uft_string_free(char* s) {
    std::free(s);
}

/* -------- trees -------- */

uft_status uft_tree_parse(const char* text, uft_tree** out) {
    if (uft_status s = require(text && out, "uft_tree_parse: null argument")) return s;
    return guarded([&] {
        *out = new uft_tree{uft::parse_tree(text)};
        return UFT_OK;
    });
}

uft_status uft_tree_serialize(const uft_tree* t, char** out) {
    if (uft_status s = require(t && out, "uft_tree_serialize: null argument")) return s;
    return guarded([&] {
        *out = dup_string(uft::serialize_tree(t->impl));
        return UFT_OK;
    });
}

void uft_tree_free(uft_tree* t) {
    delete t;
}

uint32_t uft_tree_node_count(const uft_tree* t) {
    return t ? t->impl.node_count() : 0;
}

uint32_t uft_tree_root(const uft_tree* t) {
    return t ? t->impl.root() : 0;
}

uft_status uft_tree_parent(const uft_tree* t, uint32_t x, uint32_t* out) {
    if (uft_status s = require(t && out, "uft_tree_parent: null argument")) return s;
    return guarded([&] {
        *out = t->impl.parent(x);
        return UFT_OK;
    });
}

uft_status uft_tree_subtree_size(const uft_tree* t, uint32_t x, uint64_t* out) {
    if (uft_status s = require(t && out, "uft_tree_subtree_size: null argument")) return s;
    return guarded([&] {
        *out = uft::size_of(t->impl, x);
        return UFT_OK;
    });
}

uft_status uft_tree_sumsize(const uft_tree* t, uint32_t x, uint64_t w, uint64_t* out) {
    if (uft_status s = require(t && out, "uft_tree_sumsize: null argument")) return s;
    return guarded([&] {
        *out = uft::sumsize(t->impl, x, w);
        return UFT_OK;
    });
}

int uft_tree_equal(const uft_tree* a, const uft_tree* b) {
    if (!a || !b) return 0;
    return a->impl == b->impl ? 1 : 0;
}

uft_status uft_tree_merge(const uft_tree* t, const uft_tree* s, uft_tree** out) {
    if (uft_status st = require(t && s && out, "uft_tree_merge: null argument")) return st;
    return guarded([&] {
        *out = new uft_tree{uft::merge(t->impl, s->impl)};
        return UFT_OK;
    });
}

uft_status uft_tree_collapse(const uft_tree* t, uint32_t x, uft_tree** out) {
    if (uft_status s = require(t && out, "uft_tree_collapse: null argument")) return s;
    return guarded([&] {
        *out = new uft_tree{uft::collapse(t->impl, x)};
        return UFT_OK;
    });
}

uft_status uft_tree_push(const uft_tree* t, uint32_t x, uint32_t y, uft_tree** out) {
    if (uft_status s = require(t && out, "uft_tree_push: null argument")) return s;
    return guarded([&] {
        *out = new uft_tree{uft::push(t->impl, x, y)};
        return UFT_OK;
    });
}

uft_status uft_tree_apply_pushes(const uft_tree* t, const char* steps, uft_tree** out) {
    if (uft_status s = require(t && steps && out, "uft_tree_apply_pushes: null argument")) {
        return s;
    }
    return guarded([&] {
        uft::PushSequence seq = uft::parse_push_sequence(steps);
        *out = new uft_tree{uft::apply_pushes(t->impl, seq)};
        return UFT_OK;
    });
}

uft_status uft_tree_leq(const uft_tree* t, const uft_tree* s, int* out) {
    if (uft_status st = require(t && s && out, "uft_tree_leq: null argument")) return st;
    return guarded([&] {
        *out = uft::leq(t->impl, s->impl) ? 1 : 0;
        return UFT_OK;
    });
}

uft_status uft_tree_push_witness(const uft_tree* t, const uft_tree* s, int* found,
                                 char** steps) {
    if (uft_status st = require(t && s && found && steps,
                                "uft_tree_push_witness: null argument")) {
        return st;
    }
    return guarded([&] {
        auto w = uft::push_witness(t->impl, s->impl);
        if (!w) {
            *found = 0;
            *steps = nullptr;
            return UFT_OK;
        }
        *found = 1;
        *steps = dup_string(uft::format_push_sequence(*w));
        return UFT_OK;
    });
}

uft_status uft_tree_canonical_code(const uft_tree* t, char** out) {
    if (uft_status s = require(t && out, "uft_tree_canonical_code: null argument")) return s;
    return guarded([&] {
        *out = dup_string(uft::canonical_code(t->impl));
        return UFT_OK;
    });
}

uft_status uft_gen_tree(uint32_t n, uint64_t seed, uft_tree** out) {
    if (uft_status s = require(out != nullptr, "uft_gen_tree: null argument")) return s;
    return guarded([&] {
        *out = new uft_tree{uft::random_tree(n, seed)};
        return UFT_OK;
    });
}

/* -------- recognition -------- */

uft_status uft_check_union(const uft_tree* t, int* is_union) {
    if (uft_status s = require(t && is_union, "uft_check_union: null argument")) return s;
    return guarded([&] {
        *is_union = uft::is_union_tree(t->impl) ? 1 : 0;
        return UFT_OK;
    });
}

uft_status uft_union_violations(const uft_tree* t, char** report) {
    if (uft_status s = require(t && report, "uft_union_violations: null argument")) return s;
    return guarded([&] {
        std::string text;
        for (const uft::Violation& v : uft::union_violations(t->impl)) {
            text += "violation node=" + std::to_string(v.node) +
                    " child=" + std::to_string(v.child) +
                    " deficit=" + std::to_string(v.deficit) + "\n";
        }
        *report = dup_string(text);
        return UFT_OK;
    });
}

uft_status uft_check_union_find(const uft_tree* t, uint64_t max_pushes,
                                uint64_t prune_heaviness, int* is_uf, char** witness) {
    if (uft_status s = require(t && is_uf, "uft_check_union_find: null argument")) return s;
    return guarded([&] {
        uft::UfSearchOptions opts;
        opts.max_pushes = max_pushes;
        if (prune_heaviness) opts.charge_prune = prune_heaviness;
        auto w = uft::is_union_find_tree(t->impl, opts);
        *is_uf = w ? 1 : 0;
        if (witness) {
            *witness = w ? dup_string(uft::format_push_sequence(*w)) : nullptr;
        }
        return UFT_OK;
    });
}

uft_status uft_classify(const uft_tree* t, uint64_t heaviness, uint32_t x, int* node_class) {
    if (uft_status s = require(t && node_class, "uft_classify: null argument")) return s;
    return guarded([&] {
        switch (uft::classify(t->impl, uft::ChargeContext{heaviness}, x)) {
            case uft::NodeClass::Light: *node_class = UFT_NODE_LIGHT; break;
            case uft::NodeClass::HeavyNonBasket: *node_class = UFT_NODE_HEAVY; break;
            case uft::NodeClass::Basket: *node_class = UFT_NODE_BASKET; break;
            case uft::NodeClass::EmptyBasket: *node_class = UFT_NODE_EMPTY_BASKET; break;
        }
        return UFT_OK;
    });
}

uft_status uft_charge(const uft_tree* t, uint64_t heaviness, uint32_t x, int64_t* out) {
    if (uft_status s = require(t && out, "uft_charge: null argument")) return s;
    return guarded([&] {
        *out = uft::charge(t->impl, uft::ChargeContext{heaviness}, x);
        return UFT_OK;
    });
}

uft_status uft_total_charge(const uft_tree* t, uint64_t heaviness, int64_t* out) {
    if (uft_status s = require(t && out, "uft_total_charge: null argument")) return s;
    return guarded([&] {
        *out = uft::total_charge(t->impl, uft::ChargeContext{heaviness});
        return UFT_OK;
    });
}

uft_status uft_flat_check(const uft_tree* t, uint64_t heaviness, int* is_flat,
                          char** diagnostic) {
    if (uft_status s = require(t && is_flat, "uft_flat_check: null argument")) return s;
    return guarded([&] {
        uft::FlatReport rep = uft::flat_report(t->impl, uft::ChargeContext{heaviness});
        *is_flat = rep.flat ? 1 : 0;
        if (diagnostic) {
            *diagnostic = rep.flat ? nullptr
                                   : dup_string("condition " +
                                                std::to_string(rep.violated_condition) + ": " +
                                                rep.detail);
        }
        return UFT_OK;
    });
}

uft_status uft_flat_decide(const uft_tree* t, uint64_t heaviness, int* is_uf,
                           char** partition) {
    if (uft_status s = require(t && is_uf, "uft_flat_decide: null argument")) return s;
    uft::ChargeContext ctx{heaviness};
    uft::FlatReport rep;
    uft_status st = guarded([&] {
        rep = uft::flat_report(t->impl, ctx);
        return UFT_OK;
    });
    if (st != UFT_OK) return st;
    if (!rep.flat) {
        return fail(UFT_ERR_NOT_FLAT,
                    ("condition " + std::to_string(rep.violated_condition) + ": " + rep.detail)
                        .c_str());
    }
    return guarded([&] {
        auto p = uft::decide_flat_uf(t->impl, ctx);
        *is_uf = p ? 1 : 0;
        if (partition) {
            *partition = p ? dup_string(uft::format_light_partition(*p)) : nullptr;
        }
        return UFT_OK;
    });
}

uft_status uft_flat_witness(const uft_tree* t, uint64_t heaviness, const char* partition,
                            char** pushes) {
    if (uft_status s = require(t && partition && pushes,
                               "uft_flat_witness: null argument")) {
        return s;
    }
    uft::ChargeContext ctx{heaviness};
    uft::FlatReport rep;
    uft_status st = guarded([&] {
        rep = uft::flat_report(t->impl, ctx);
        return UFT_OK;
    });
    if (st != UFT_OK) return st;
    if (!rep.flat) {
        return fail(UFT_ERR_NOT_FLAT,
                    ("condition " + std::to_string(rep.violated_condition) + ": " + rep.detail)
                        .c_str());
    }
    return guarded([&] {
        uft::LightPartition p = uft::parse_light_partition(partition);
        uft::PushSequence seq = uft::witness_from_partition(t->impl, ctx, p);
        *pushes = dup_string(uft::format_push_sequence(seq));
        return UFT_OK;
    });
}

/* -------- forests -------- */

uft_status uft_forest_new(uint32_t n, uft_forest** out) {
    if (uft_status s = require(out != nullptr, "uft_forest_new: null argument")) return s;
    return guarded([&] {
        *out = new uft_forest{uft::Forest(n)};
        return UFT_OK;
    });
}

void uft_forest_free(uft_forest* f) {
    delete f;
}

uint32_t uft_forest_count(const uft_forest* f) {
    return f ? f->impl.count() : 0;
}

uft_status uft_forest_find(uft_forest* f, uint32_t x, uint32_t* root) {
    if (uft_status s = require(f && root, "uft_forest_find: null argument")) return s;
    return guarded([&] {
        *root = f->impl.find(x);
        return UFT_OK;
    });
}

uft_status uft_forest_root_of(const uft_forest* f, uint32_t x, uint32_t* root) {
    if (uft_status s = require(f && root, "uft_forest_root_of: null argument")) return s;
    return guarded([&] {
        *root = f->impl.root_of(x);
        return UFT_OK;
    });
}

uft_status uft_forest_union(uft_forest* f, uint32_t a, uint32_t b, uint32_t* root) {
    if (uft_status s = require(f && root, "uft_forest_union: null argument")) return s;
    return guarded([&] {
        *root = f->impl.unite(a, b);
        return UFT_OK;
    });
}

uft_status uft_forest_component_size(const uft_forest* f, uint32_t x, uint64_t* out) {
    if (uft_status s = require(f && out, "uft_forest_component_size: null argument")) return s;
    return guarded([&] {
        *out = f->impl.component_size(x);
        return UFT_OK;
    });
}

uft_status uft_forest_component(const uft_forest* f, uint32_t x, uft_tree** out) {
    if (uft_status s = require(f && out, "uft_forest_component: null argument")) return s;
    return guarded([&] {
        *out = new uft_tree{f->impl.component_tree(x)};
        return UFT_OK;
    });
}

uft_status uft_forest_roots(const uft_forest* f, uint32_t** out, uint32_t* count) {
    if (uft_status s = require(f && out && count, "uft_forest_roots: null argument")) return s;
    return guarded([&] {
        std::vector<uft::NodeId> roots = f->impl.roots();
        auto* buf = static_cast<uint32_t*>(std::malloc(sizeof(uint32_t) * roots.size()));
        if (!buf && !roots.empty()) throw std::bad_alloc{};
        if (!roots.empty()) std::memcpy(buf, roots.data(), sizeof(uint32_t) * roots.size());
        *out = buf;
        *count = static_cast<uint32_t>(roots.size());
        return UFT_OK;
    });
}

/* -------- scripts -------- */

uft_status uft_script_parse(const char* text, uft_script** out) {
    if (uft_status s = require(text && out, "uft_script_parse: null argument")) return s;
    return guarded([&] {
        *out = new uft_script{uft::parse_script(text)};
        return UFT_OK;
    });
}

uft_status uft_script_serialize(const uft_script* s, char** out) {
    if (uft_status st = require(s && out, "uft_script_serialize: null argument")) return st;
    return guarded([&] {
        *out = dup_string(uft::serialize_script(s->impl));
        return UFT_OK;
    });
}

void uft_script_free(uft_script* s) {
    delete s;
}

uint32_t uft_script_length(const uft_script* s) {
    return s ? static_cast<uint32_t>(s->impl.ops.size()) : 0;
}

uint32_t uft_script_max_id(const uft_script* s) {
    return s ? s->impl.max_id() : 0;
}

uft_status uft_script_op(const uft_script* s, uint32_t index, int* kind, uint32_t* a,
                         uint32_t* b) {
    if (uft_status st = require(s && kind && a && b, "uft_script_op: null argument")) return st;
    if (index >= s->impl.ops.size()) {
        return fail(UFT_ERR_INVALID, "uft_script_op: index out of range");
    }
    const uft::Op& op = s->impl.ops[index];
    switch (op.kind) {
        case uft::Op::Kind::Union: *kind = UFT_OP_UNION; break;
        case uft::Op::Kind::Find: *kind = UFT_OP_FIND; break;
        case uft::Op::Kind::Dump: *kind = UFT_OP_DUMP; break;
    }
    *a = op.a;
    *b = op.b;
    return UFT_OK;
}

uft_status uft_script_with_dumps(const uft_script* s, uint32_t every, uft_script** out) {
    if (uft_status st = require(s && out, "uft_script_with_dumps: null argument")) return st;
    return guarded([&] {
        *out = new uft_script{uft::with_periodic_dumps(s->impl, every)};
        return UFT_OK;
    });
}

uft_status uft_script_execute(const uft_script* s, uint32_t n, uft_snapshots** out) {
    if (uft_status st = require(s && out, "uft_script_execute: null argument")) return st;
    return guarded([&] {
        uft::Forest f(n);
        *out = new uft_snapshots{uft::run_script(f, s->impl)};
        return UFT_OK;
    });
}

void uft_snapshots_free(uft_snapshots* s) {
    delete s;
}

uint32_t uft_snapshots_count(const uft_snapshots* s) {
    return s ? static_cast<uint32_t>(s->impl.size()) : 0;
}

uft_status uft_snapshots_get(const uft_snapshots* s, uint32_t index, uint32_t* op_index,
                             uint32_t* source, uft_tree** tree) {
    if (uft_status st = require(s != nullptr, "uft_snapshots_get: null argument")) return st;
    if (index >= s->impl.size()) {
        return fail(UFT_ERR_INVALID, "uft_snapshots_get: index out of range");
    }
    const uft::Snapshot& snap = s->impl[index];
    if (op_index) *op_index = static_cast<uint32_t>(snap.op_index);
    if (source) *source = snap.source;
    if (tree) {
        return guarded([&] {
            *tree = new uft_tree{snap.tree};
            return UFT_OK;
        });
    }
    return UFT_OK;
}

uft_status uft_gen_script(uint32_t n, uint32_t k, uint64_t seed, uft_script** out) {
    if (uft_status s = require(out != nullptr, "uft_gen_script: null argument")) return s;
    return guarded([&] {
        *out = new uft_script{uft::random_script(n, k, seed)};
        return UFT_OK;
    });
}

/* -------- 3-partition instances -------- */

uft_status uft_instance_parse(const char* text, uft_instance** out) {
    if (uft_status s = require(text && out, "uft_instance_parse: null argument")) return s;
    return guarded([&] {
        auto [m, values] = uft::parse_instance(text);
        *out = new uft_instance{m, std::move(values)};
        return UFT_OK;
    });
}

uft_status uft_instance_serialize(const uft_instance* in, char** out) {
    if (uft_status s = require(in && out, "uft_instance_serialize: null argument")) return s;
    return guarded([&] {
        *out = dup_string(uft::serialize_instance(in->m, in->values));
        return UFT_OK;
    });
}

void uft_instance_free(uft_instance* in) {
    delete in;
}

uint32_t uft_instance_m(const uft_instance* in) {
    return in ? in->m : 0;
}

uft_status uft_instance_params(const uft_instance* in, uint64_t* target, uint32_t* exp2,
                               uint32_t* rem) {
    if (uft_status s = require(in != nullptr, "uft_instance_params: null argument")) return s;
    return guarded([&] {
        uft::ThreePartitionInstance inst = uft::validate_instance(in->m, in->values);
        if (target) *target = inst.target;
        if (exp2) *exp2 = inst.exp2;
        if (rem) *rem = inst.rem;
        return UFT_OK;
    });
}

uft_status uft_instance_normalize(const uft_instance* in, uft_instance** out) {
    if (uft_status s = require(in && out, "uft_instance_normalize: null argument")) return s;
    return guarded([&] {
        uft::ThreePartitionInstance inst = uft::normalize_instance(in->m, in->values);
        *out = new uft_instance{inst.m, std::move(inst.values)};
        return UFT_OK;
    });
}

uft_status uft_instance_solve(const uft_instance* in, int* solvable, char** triples) {
    if (uft_status s = require(in && solvable, "uft_instance_solve: null argument")) return s;
    return guarded([&] {
        uft::ThreePartitionInstance inst = uft::validate_instance(in->m, in->values);
        auto p = uft::solve_3partition(inst);
        *solvable = p ? 1 : 0;
        if (triples) {
            *triples = p ? dup_string(uft::format_triplets(*p)) : nullptr;
        }
        return UFT_OK;
    });
}

uft_status uft_reduce_build(const uft_instance* in, uft_tree** out, uint64_t* heaviness,
                            uint32_t* baskets) {
    if (uft_status s = require(in && out, "uft_reduce_build: null argument")) return s;
    return guarded([&] {
        uft::ThreePartitionInstance inst = uft::validate_instance(in->m, in->values);
        auto [tree, ctx] = uft::build_tree(inst);
        *out = new uft_tree{std::move(tree)};
        if (heaviness) *heaviness = ctx.heaviness;
        if (baskets) *baskets = inst.m - 1;
        return UFT_OK;
    });
}

uft_status uft_gen_instance(uint32_t m, uint32_t exp2, uint32_t rem, uint64_t seed,
                            uft_instance** out) {
    if (uft_status s = require(out != nullptr, "uft_gen_instance: null argument")) return s;
    return guarded([&] {
        uft::ThreePartitionInstance inst = uft::random_instance(m, exp2, rem, seed);
        *out = new uft_instance{inst.m, std::move(inst.values)};
        return UFT_OK;
    });
}

/* -------- exhaustive enumeration -------- */

uft_status uft_enum_codes(uint32_t n, int tree_class, char** codes, uint64_t* count) {
    if (uft_status s = require(codes && count, "uft_enum_codes: null argument")) return s;
    uft_status bad_class = UFT_OK;
    uft_status st = guarded([&]() -> uft_status {
        std::vector<uft::Tree> shapes;
        switch (tree_class) {
            case UFT_CLASS_ALL:
                shapes = uft::enum_rooted_trees(n).at(n);
                break;
            case UFT_CLASS_UNION:
                shapes = uft::enum_union_trees(n).at(n);
                break;
            case UFT_CLASS_UNION_FIND:
                shapes = uft::enum_uf_trees(n).set.at(n);
                break;
            default:
                bad_class = fail(UFT_ERR_INVALID, "uft_enum_codes: unknown class");
                return bad_class;
        }
        std::string text;
        for (const uft::Tree& t : shapes) {
            text += uft::canonical_code(t);
            text += '\n';
        }
        *codes = dup_string(text);
        *count = shapes.size();
        return UFT_OK;
    });
    if (st == UFT_ERR_INVALID && bad_class == UFT_OK) {
        // Size-cap violations surface as invalid_argument; report them as range.
        return fail(UFT_ERR_RANGE, g_last_error.c_str());
    }
    return st;
}

} // extern "C"
