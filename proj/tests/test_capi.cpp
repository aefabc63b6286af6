#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uftree.h"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <string>

namespace {

// Every handle and string in this suite funnels through these helpers so a
// failing test cannot leak and ASan-style runs stay quiet.
struct String {
    char* ptr = nullptr;
    ~String() { uft_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct TreeHandle {
    uft_tree* ptr = nullptr;
    ~TreeHandle() { uft_tree_free(ptr); }
};

uft_tree* must_parse(const char* text) {
    uft_tree* t = nullptr;
    REQUIRE(uft_tree_parse(text, &t) == UFT_OK);
    REQUIRE(t != nullptr);
    return t;
}

} // namespace

TEST_CASE("status names and the per-thread error message") {
    CHECK(std::string(uft_status_name(UFT_OK)) == "ok");
    CHECK(std::string(uft_status_name(UFT_ERR_PARSE)) == "parse error");
    CHECK(std::string(uft_status_name(UFT_ERR_INVALID)) == "invalid argument");
    CHECK(std::string(uft_status_name(UFT_ERR_RANGE)) == "out of range");
    CHECK(std::string(uft_status_name(UFT_ERR_NOT_FLAT)) == "not flat");
    CHECK(std::string(uft_status_name(UFT_ERR_INTERNAL)) == "internal error");

    uft_tree* t = nullptr;
    CHECK(uft_tree_parse(nullptr, &t) == UFT_ERR_INVALID);
    CHECK(std::string(uft_last_error()).size() > 0);

    CHECK(uft_tree_parse("1\nbogus\n", &t) == UFT_ERR_PARSE);
    CHECK(std::string(uft_last_error()).find("line") != std::string::npos);
}

TEST_CASE("tree parse, serialize, and accessors") {
    TreeHandle t{must_parse("4\n0 1 1 1\n")};
    CHECK(uft_tree_node_count(t.ptr) == 4);
    CHECK(uft_tree_root(t.ptr) == 1);

    uint32_t parent = 99;
    CHECK(uft_tree_parent(t.ptr, 2, &parent) == UFT_OK);
    CHECK(parent == 1);
    CHECK(uft_tree_parent(t.ptr, 1, &parent) == UFT_OK);
    CHECK(parent == 0);
    CHECK(uft_tree_parent(t.ptr, 9, &parent) == UFT_ERR_INVALID);

    uint64_t size = 0;
    CHECK(uft_tree_subtree_size(t.ptr, 1, &size) == UFT_OK);
    CHECK(size == 4);
    uint64_t below = 0;
    CHECK(uft_tree_sumsize(t.ptr, 1, 1, &below) == UFT_OK);
    CHECK(below == 3);

    String text;
    CHECK(uft_tree_serialize(t.ptr, &text.ptr) == UFT_OK);
    CHECK(text.str() == "4\n0 1 1 1\n");

    TreeHandle again{must_parse(text.ptr)};
    CHECK(uft_tree_equal(t.ptr, again.ptr) == 1);
    TreeHandle other{must_parse("4\n0 1 2 3\n")};
    CHECK(uft_tree_equal(t.ptr, other.ptr) == 0);
}

TEST_CASE("tree surgery through the C layer") {
    TreeHandle star3{must_parse("3\n0 1 1\n")};
    TreeHandle star2{must_parse("2\n0 1\n")};

    TreeHandle merged;
    REQUIRE(uft_tree_merge(star3.ptr, star2.ptr, &merged.ptr) == UFT_OK);
    CHECK(uft_tree_node_count(merged.ptr) == 5);
    String mtext;
    CHECK(uft_tree_serialize(merged.ptr, &mtext.ptr) == UFT_OK);
    CHECK(mtext.str() == "5\n0 1 1 1 4\n");

    TreeHandle pushed;
    REQUIRE(uft_tree_push(merged.ptr, 2, 4, &pushed.ptr) == UFT_OK);
    uint32_t parent = 0;
    CHECK(uft_tree_parent(pushed.ptr, 2, &parent) == UFT_OK);
    CHECK(parent == 4);
    uft_tree* bad = nullptr;
    CHECK(uft_tree_push(merged.ptr, 2, 5, &bad) == UFT_ERR_INVALID); // not siblings

    TreeHandle collapsed;
    REQUIRE(uft_tree_collapse(pushed.ptr, 5, &collapsed.ptr) == UFT_OK);
    CHECK(uft_tree_parent(collapsed.ptr, 5, &parent) == UFT_OK);
    CHECK(parent == 1);

    TreeHandle replay;
    REQUIRE(uft_tree_apply_pushes(merged.ptr, "push 2 4\n", &replay.ptr) == UFT_OK);
    CHECK(uft_tree_equal(replay.ptr, pushed.ptr) == 1);
    CHECK(uft_tree_apply_pushes(merged.ptr, "shove 2 4\n", &bad) == UFT_ERR_PARSE);

    int holds = 0;
    CHECK(uft_tree_leq(merged.ptr, pushed.ptr, &holds) == UFT_OK);
    CHECK(holds == 1);
    CHECK(uft_tree_leq(pushed.ptr, merged.ptr, &holds) == UFT_OK);
    CHECK(holds == 0);
    CHECK(uft_tree_leq(merged.ptr, star3.ptr, &holds) == UFT_ERR_INVALID);

    int found = 0;
    String steps;
    CHECK(uft_tree_push_witness(merged.ptr, pushed.ptr, &found, &steps.ptr) == UFT_OK);
    CHECK(found == 1);
    CHECK(steps.str() == "push 2 4\n");
    String none;
    CHECK(uft_tree_push_witness(pushed.ptr, merged.ptr, &found, &none.ptr) == UFT_OK);
    CHECK(found == 0);
    CHECK(none.ptr == nullptr);
}

TEST_CASE("canonical codes and random trees") {
    TreeHandle a{must_parse("3\n0 1 1\n")};
    TreeHandle b{must_parse("3\n2 0 2\n")}; // same shape, different labels
    String code_a, code_b;
    REQUIRE(uft_tree_canonical_code(a.ptr, &code_a.ptr) == UFT_OK);
    REQUIRE(uft_tree_canonical_code(b.ptr, &code_b.ptr) == UFT_OK);
    CHECK(code_a.str() == code_b.str());

    TreeHandle r1, r2;
    REQUIRE(uft_gen_tree(20, 7, &r1.ptr) == UFT_OK);
    REQUIRE(uft_gen_tree(20, 7, &r2.ptr) == UFT_OK);
    CHECK(uft_tree_equal(r1.ptr, r2.ptr) == 1);
    uft_tree* bad = nullptr;
    CHECK(uft_gen_tree(0, 7, &bad) == UFT_ERR_INVALID);
}

TEST_CASE("recognition and charges") {
    TreeHandle star{must_parse("3\n0 1 1\n")};
    TreeHandle chain{must_parse("3\n0 1 2\n")};

    int is_union = -1;
    CHECK(uft_check_union(star.ptr, &is_union) == UFT_OK);
    CHECK(is_union == 1);
    CHECK(uft_check_union(chain.ptr, &is_union) == UFT_OK);
    CHECK(is_union == 0);

    String report;
    CHECK(uft_union_violations(chain.ptr, &report.ptr) == UFT_OK);
    CHECK(report.str() == "violation node=1 child=2 deficit=1\n");
    String clean;
    CHECK(uft_union_violations(star.ptr, &clean.ptr) == UFT_OK);
    CHECK(clean.str() == "");

    int is_uf = -1;
    String witness;
    CHECK(uft_check_union_find(star.ptr, 0, 0, &is_uf, &witness.ptr) == UFT_OK);
    CHECK(is_uf == 1);
    CHECK(witness.str() == ""); // already a union tree
    String no_witness;
    CHECK(uft_check_union_find(chain.ptr, 0, 0, &is_uf, &no_witness.ptr) == UFT_OK);
    CHECK(is_uf == 0);

    int cls = -1;
    CHECK(uft_classify(chain.ptr, 1, 1, &cls) == UFT_OK);
    CHECK(cls == UFT_NODE_EMPTY_BASKET); // one child of size heaviness+1
    CHECK(uft_classify(chain.ptr, 1, 2, &cls) == UFT_OK);
    CHECK(cls == UFT_NODE_HEAVY);
    CHECK(uft_classify(chain.ptr, 1, 3, &cls) == UFT_OK);
    CHECK(cls == UFT_NODE_LIGHT);
    CHECK(uft_classify(chain.ptr, 2, 1, &cls) == UFT_OK);
    CHECK(cls == UFT_NODE_HEAVY);
    TreeHandle wide{must_parse("5\n0 1 2 1 1\n")};
    CHECK(uft_classify(wide.ptr, 1, 1, &cls) == UFT_OK);
    CHECK(cls == UFT_NODE_BASKET); // heavy child plus further children

    int64_t c = 99;
    CHECK(uft_charge(chain.ptr, 1, 1, &c) == UFT_OK);
    CHECK(c == -1); // no light children at heaviness 1
    CHECK(uft_total_charge(chain.ptr, 1, &c) == UFT_OK);
    CHECK(c == -1);
    CHECK(uft_charge(chain.ptr, 1, 9, &c) == UFT_ERR_INVALID);
}

TEST_CASE("flat checks over the C layer") {
    // Root, empty basket holding a 2-star, solo 2-star, two depth-one leaves.
    TreeHandle flat{must_parse("8\n0 1 2 3 1 5 1 1\n")};

    int is_flat = -1;
    String diag;
    CHECK(uft_flat_check(flat.ptr, 1, &is_flat, &diag.ptr) == UFT_OK);
    CHECK(is_flat == 1);
    CHECK(diag.ptr == nullptr);

    CHECK(uft_flat_check(flat.ptr, 3, &is_flat, &diag.ptr) == UFT_OK);
    CHECK(is_flat == 0);
    CHECK(diag.str().find("condition") != std::string::npos);

    int is_uf = -1;
    String partition;
    CHECK(uft_flat_decide(flat.ptr, 1, &is_uf, &partition.ptr) == UFT_OK);
    CHECK(is_uf == 1);
    REQUIRE(partition.ptr != nullptr);

    String pushes;
    CHECK(uft_flat_witness(flat.ptr, 1, partition.ptr, &pushes.ptr) == UFT_OK);
    TreeHandle fixed;
    REQUIRE(uft_tree_apply_pushes(flat.ptr, pushes.ptr, &fixed.ptr) == UFT_OK);
    int is_union = 0;
    CHECK(uft_check_union(fixed.ptr, &is_union) == UFT_OK);
    CHECK(is_union == 1);

    // Flat-only entry points reject non-flat trees with the dedicated status.
    TreeHandle star{must_parse("3\n0 1 1\n")};
    uft_tree* unused = nullptr;
    (void)unused;
    String p2;
    CHECK(uft_flat_decide(star.ptr, 1, &is_uf, &p2.ptr) == UFT_ERR_NOT_FLAT);
    CHECK(std::string(uft_last_error()).find("condition") != std::string::npos);
    String p3;
    CHECK(uft_flat_witness(star.ptr, 1, "2 3\n\n", &p3.ptr) == UFT_ERR_NOT_FLAT);
}

TEST_CASE("forest lifecycle") {
    uft_forest* f = nullptr;
    REQUIRE(uft_forest_new(6, &f) == UFT_OK);
    CHECK(uft_forest_count(f) == 6);

    uint32_t root = 0;
    CHECK(uft_forest_union(f, 1, 2, &root) == UFT_OK);
    CHECK(root == 1);
    CHECK(uft_forest_union(f, 3, 4, &root) == UFT_OK);
    CHECK(uft_forest_union(f, 1, 3, &root) == UFT_OK);
    CHECK(root == 1); // equal sizes keep the first argument's root

    CHECK(uft_forest_root_of(f, 4, &root) == UFT_OK);
    CHECK(root == 1);
    CHECK(uft_forest_find(f, 4, &root) == UFT_OK);
    CHECK(root == 1);
    uint32_t parent_after = 0;
    {
        uft_tree* comp = nullptr;
        REQUIRE(uft_forest_component(f, 1, &comp) == UFT_OK);
        CHECK(uft_tree_node_count(comp) == 4);
        CHECK(uft_tree_parent(comp, 4, &parent_after) == UFT_OK);
        CHECK(parent_after == 1); // find pulled element 4 under the root
        uft_tree_free(comp);
    }

    uint64_t size = 0;
    CHECK(uft_forest_component_size(f, 2, &size) == UFT_OK);
    CHECK(size == 4);

    uint32_t* roots = nullptr;
    uint32_t count = 0;
    REQUIRE(uft_forest_roots(f, &roots, &count) == UFT_OK);
    REQUIRE(count == 3);
    CHECK(roots[0] == 1);
    CHECK(roots[1] == 5);
    CHECK(roots[2] == 6);
    free(roots);

    CHECK(uft_forest_find(f, 9, &root) == UFT_ERR_INVALID);
    CHECK(uft_forest_new(0, &f) == UFT_ERR_INVALID);
    uft_forest_free(f);
}

TEST_CASE("script lifecycle and execution") {
    uft_script* s = nullptr;
    REQUIRE(uft_script_parse("# setup\nunion 1 2\nfind 3\ndump\n", &s) == UFT_OK);
    CHECK(uft_script_length(s) == 3);
    CHECK(uft_script_max_id(s) == 3);

    int kind = -1;
    uint32_t a = 0, b = 0;
    CHECK(uft_script_op(s, 0, &kind, &a, &b) == UFT_OK);
    CHECK(kind == UFT_OP_UNION);
    CHECK(a == 1);
    CHECK(b == 2);
    CHECK(uft_script_op(s, 1, &kind, &a, &b) == UFT_OK);
    CHECK(kind == UFT_OP_FIND);
    CHECK(a == 3);
    CHECK(uft_script_op(s, 2, &kind, &a, &b) == UFT_OK);
    CHECK(kind == UFT_OP_DUMP);
    CHECK(uft_script_op(s, 3, &kind, &a, &b) == UFT_ERR_INVALID);

    String text;
    CHECK(uft_script_serialize(s, &text.ptr) == UFT_OK);
    CHECK(text.str() == "union 1 2\nfind 3\ndump\n");

    uft_script* bad = nullptr;
    CHECK(uft_script_parse("frobnicate 1\n", &bad) == UFT_ERR_PARSE);

    uft_script* dumped = nullptr;
    REQUIRE(uft_script_with_dumps(s, 1, &dumped) == UFT_OK);
    CHECK(uft_script_length(dumped) == 5); // a dump after each of the two ops

    uft_snapshots* snaps = nullptr;
    REQUIRE(uft_script_execute(dumped, 3, &snaps) == UFT_OK);
    const uint32_t n_snaps = uft_snapshots_count(snaps);
    REQUIRE(n_snaps >= 3);
    for (uint32_t i = 0; i < n_snaps; ++i) {
        uint32_t op_index = 0, source = 0;
        uft_tree* tree = nullptr;
        REQUIRE(uft_snapshots_get(snaps, i, &op_index, &source, &tree) == UFT_OK);
        CHECK(op_index <= uft_script_length(dumped));
        CHECK(source >= 1);
        CHECK(uft_tree_node_count(tree) >= 1);
        uft_tree_free(tree);
    }
    uft_tree* no_tree = nullptr;
    uint32_t ignored = 0;
    CHECK(uft_snapshots_get(snaps, n_snaps, &ignored, &ignored, &no_tree) == UFT_ERR_INVALID);
    uft_snapshots_free(snaps);

    // Scripts referencing elements beyond the forest are rejected.
    uft_snapshots* none = nullptr;
    CHECK(uft_script_execute(s, 2, &none) == UFT_ERR_INVALID);

    uft_script* r1 = nullptr;
    uft_script* r2 = nullptr;
    REQUIRE(uft_gen_script(8, 12, 5, &r1) == UFT_OK);
    REQUIRE(uft_gen_script(8, 12, 5, &r2) == UFT_OK);
    String t1, t2;
    CHECK(uft_script_serialize(r1, &t1.ptr) == UFT_OK);
    CHECK(uft_script_serialize(r2, &t2.ptr) == UFT_OK);
    CHECK(t1.str() == t2.str());
    uft_script_free(r1);
    uft_script_free(r2);
    uft_script_free(dumped);
    uft_script_free(s);
}

TEST_CASE("instances, reduction, and solving") {
    uft_instance* in = nullptr;
    REQUIRE(uft_instance_parse("3\n5 5 5 5 5 6 6 7 7\n", &in) == UFT_OK);
    CHECK(uft_instance_m(in) == 3);

    String text;
    CHECK(uft_instance_serialize(in, &text.ptr) == UFT_OK);
    CHECK(text.str() == "3\n5 5 5 5 5 6 6 7 7\n");

    uint64_t target = 0;
    uint32_t exp2 = 0, rem = 0;
    CHECK(uft_instance_params(in, &target, &exp2, &rem) == UFT_OK);
    CHECK(target == 17);
    CHECK(exp2 == 4);
    CHECK(rem == 1);

    int solvable = -1;
    String triples;
    CHECK(uft_instance_solve(in, &solvable, &triples.ptr) == UFT_OK);
    CHECK(solvable == 1);
    CHECK(triples.str() == "1 2 8\n3 4 9\n5 6 7\n");

    TreeHandle tree;
    uint64_t heaviness = 0;
    uint32_t baskets = 0;
    REQUIRE(uft_reduce_build(in, &tree.ptr, &heaviness, &baskets) == UFT_OK);
    CHECK(heaviness == 24);
    CHECK(baskets == 2);
    CHECK(uft_tree_node_count(tree.ptr) == 150);
    int is_flat = 0;
    CHECK(uft_flat_check(tree.ptr, heaviness, &is_flat, nullptr) == UFT_OK);
    CHECK(is_flat == 1);

    uft_instance* shifted = nullptr;
    REQUIRE(uft_instance_normalize(in, &shifted) == UFT_OK);
    CHECK(uft_instance_params(shifted, &target, &exp2, &rem) == UFT_OK);
    CHECK(target == 35);
    uft_instance_free(shifted);

    // Invalid values surface through params, not parse.
    uft_instance* lopsided = nullptr;
    REQUIRE(uft_instance_parse("2\n5 5 5 5 6 9\n", &lopsided) == UFT_OK);
    CHECK(uft_instance_params(lopsided, &target, &exp2, &rem) == UFT_ERR_INVALID);
    uft_instance_free(lopsided);
    uft_instance* bad = nullptr;
    CHECK(uft_instance_parse("2\n5 5\n", &bad) == UFT_ERR_PARSE);

    uft_instance* g1 = nullptr;
    REQUIRE(uft_gen_instance(3, 4, 1, 11, &g1) == UFT_OK);
    CHECK(uft_instance_solve(g1, &solvable, nullptr) == UFT_OK);
    CHECK(solvable == 1);
    uft_instance_free(g1);
    CHECK(uft_gen_instance(3, 3, 1, 11, &g1) == UFT_ERR_INVALID);

    uft_instance_free(in);
}

TEST_CASE("exhaustive enumeration over the C layer") {
    String codes;
    uint64_t count = 0;
    CHECK(uft_enum_codes(4, UFT_CLASS_ALL, &codes.ptr, &count) == UFT_OK);
    CHECK(count == 4);
    String union_codes;
    CHECK(uft_enum_codes(4, UFT_CLASS_UNION, &union_codes.ptr, &count) == UFT_OK);
    CHECK(count == 2);
    String uf_codes;
    CHECK(uft_enum_codes(8, UFT_CLASS_UNION_FIND, &uf_codes.ptr, &count) == UFT_OK);
    CHECK(count == 12);

    String overflow;
    CHECK(uft_enum_codes(11, UFT_CLASS_ALL, &overflow.ptr, &count) == UFT_ERR_RANGE);
    CHECK(uft_enum_codes(10, UFT_CLASS_UNION, &overflow.ptr, &count) == UFT_ERR_RANGE);
    CHECK(uft_enum_codes(9, UFT_CLASS_UNION_FIND, &overflow.ptr, &count) == UFT_ERR_RANGE);
    CHECK(uft_enum_codes(4, 99, &overflow.ptr, &count) == UFT_ERR_INVALID);
}
