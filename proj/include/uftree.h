#ifndef UFTREE_H
#define UFTREE_H

/* C interface to the union-find tree toolkit. All heap objects are returned
 * through opaque handles and freed with the matching *_free function; strings
 * returned through char** are NUL terminated, allocated with malloc and freed
 * with uft_string_free. Every fallible call returns a uft_status; on failure
 * uft_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UFT_EXPORT __declspec(dllexport)
#else
#define UFT_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uft_status {
    UFT_OK = 0,
    UFT_ERR_PARSE = 1,    /* malformed input text */
    UFT_ERR_INVALID = 2,  /* argument outside a function's contract */
    UFT_ERR_RANGE = 3,    /* size cap of an exhaustive routine exceeded */
    UFT_ERR_NOT_FLAT = 4, /* flat-only routine applied to a non-flat tree */
    UFT_ERR_INTERNAL = 5
} uft_status;

typedef enum uft_node_class {
    UFT_NODE_LIGHT = 0,
    UFT_NODE_HEAVY = 1, /* heavy, no heavy child */
    UFT_NODE_BASKET = 2,
    UFT_NODE_EMPTY_BASKET = 3
} uft_node_class;

typedef enum uft_tree_class {
    UFT_CLASS_ALL = 0,
    UFT_CLASS_UNION = 1,
    UFT_CLASS_UNION_FIND = 2
} uft_tree_class;

typedef enum uft_op_kind {
    UFT_OP_UNION = 0,
    UFT_OP_FIND = 1,
    UFT_OP_DUMP = 2
} uft_op_kind;

typedef struct uft_tree uft_tree;
typedef struct uft_forest uft_forest;
typedef struct uft_script uft_script;
typedef struct uft_snapshots uft_snapshots;
typedef struct uft_instance uft_instance;

UFT_EXPORT const char* uft_status_name(uft_status s);

/* Message describing the calling thread's most recent failure. */
UFT_EXPORT const char* uft_last_error(void);

UFT_EXPORT void uft_string_free(char* s);

/* -------- trees -------- */

/* Tree text: line 1 holds n, line 2 holds n space-separated parent entries
 * with 0 marking the root, trailing newline. */
UFT_EXPORT uft_status uft_tree_parse(const char* text, uft_tree** out);
UFT_EXPORT uft_status uft_tree_serialize(const uft_tree* t, char** out);
UFT_EXPORT void uft_tree_free(uft_tree* t);

UFT_EXPORT uint32_t uft_tree_node_count(const uft_tree* t);
UFT_EXPORT uint32_t uft_tree_root(const uft_tree* t);
/* Parent of x, 0 for the root. */
UFT_EXPORT uft_status uft_tree_parent(const uft_tree* t, uint32_t x, uint32_t* out);
UFT_EXPORT uft_status uft_tree_subtree_size(const uft_tree* t, uint32_t x, uint64_t* out);
/* Sum of child subtree sizes of x not exceeding w. */
UFT_EXPORT uft_status uft_tree_sumsize(const uft_tree* t, uint32_t x, uint64_t w,
                                       uint64_t* out);
UFT_EXPORT int uft_tree_equal(const uft_tree* a, const uft_tree* b);

/* Second tree's nodes are relabelled to follow the first's; its root is
 * attached under the first's root. */
UFT_EXPORT uft_status uft_tree_merge(const uft_tree* t, const uft_tree* s, uft_tree** out);
/* Re-parents every non-root ancestor of x (x included) under the root. */
UFT_EXPORT uft_status uft_tree_collapse(const uft_tree* t, uint32_t x, uft_tree** out);
/* Re-parents x under its sibling y. */
UFT_EXPORT uft_status uft_tree_push(const uft_tree* t, uint32_t x, uint32_t y,
                                    uft_tree** out);
/* Applies push-sequence text ("push x y" per line) left to right. */
UFT_EXPORT uft_status uft_tree_apply_pushes(const uft_tree* t, const char* steps,
                                            uft_tree** out);
/* 1 when every ancestry of t persists in s. Same node count and root required. */
UFT_EXPORT uft_status uft_tree_leq(const uft_tree* t, const uft_tree* s, int* out);
/* Push sequence turning t into exactly s; *found is 0 and *steps NULL when
 * none exists. */
UFT_EXPORT uft_status uft_tree_push_witness(const uft_tree* t, const uft_tree* s, int* found,
                                            char** steps);
/* Isomorphism-invariant code; equal codes mean isomorphic trees. */
UFT_EXPORT uft_status uft_tree_canonical_code(const uft_tree* t, char** out);
/* Uniform random recursive tree on n nodes. */
UFT_EXPORT uft_status uft_gen_tree(uint32_t n, uint64_t seed, uft_tree** out);

/* -------- recognition -------- */

/* 1 when every node's child sizes pass the union condition. */
UFT_EXPORT uft_status uft_check_union(const uft_tree* t, int* is_union);
/* One "violation node=<n> child=<c> deficit=<d>" line per violating node. */
UFT_EXPORT uft_status uft_union_violations(const uft_tree* t, char** report);
/* Searches for pushes reaching a union tree. max_pushes 0 selects the always
 * sufficient n^2 bound; prune_heaviness nonzero enables charge pruning at
 * that threshold. On success *is_uf is 1 and *witness holds push-sequence
 * text (empty string when the tree already qualifies). */
UFT_EXPORT uft_status uft_check_union_find(const uft_tree* t, uint64_t max_pushes,
                                           uint64_t prune_heaviness, int* is_uf,
                                           char** witness);

UFT_EXPORT uft_status uft_classify(const uft_tree* t, uint64_t heaviness, uint32_t x,
                                   int* node_class);
UFT_EXPORT uft_status uft_charge(const uft_tree* t, uint64_t heaviness, uint32_t x,
                                 int64_t* out);
UFT_EXPORT uft_status uft_total_charge(const uft_tree* t, uint64_t heaviness, int64_t* out);

/* *is_flat reports whether t is flat at the given heaviness; when it is not,
 * *diagnostic (optional) names the violated flat condition. */
UFT_EXPORT uft_status uft_flat_check(const uft_tree* t, uint64_t heaviness, int* is_flat,
                                     char** diagnostic);
/* Flat trees only. *is_uf is 1 exactly when the depth-one light nodes split
 * into per-basket groups; *partition then holds one line of node ids per
 * group (baskets ascending, root group last). */
UFT_EXPORT uft_status uft_flat_decide(const uft_tree* t, uint64_t heaviness, int* is_uf,
                                      char** partition);
/* Pushes realizing a valid partition (text as produced by uft_flat_decide). */
UFT_EXPORT uft_status uft_flat_witness(const uft_tree* t, uint64_t heaviness,
                                       const char* partition, char** pushes);

/* -------- forests -------- */

UFT_EXPORT uft_status uft_forest_new(uint32_t n, uft_forest** out);
UFT_EXPORT void uft_forest_free(uft_forest* f);
UFT_EXPORT uint32_t uft_forest_count(const uft_forest* f);
/* Two-pass find: locates the root, then re-parents the walked path under it. */
UFT_EXPORT uft_status uft_forest_find(uft_forest* f, uint32_t x, uint32_t* root);
/* Representative without restructuring. */
UFT_EXPORT uft_status uft_forest_root_of(const uft_forest* f, uint32_t x, uint32_t* root);
/* Union by size after finding both roots; ties keep the first argument's root. */
UFT_EXPORT uft_status uft_forest_union(uft_forest* f, uint32_t a, uint32_t b, uint32_t* root);
UFT_EXPORT uft_status uft_forest_component_size(const uft_forest* f, uint32_t x,
                                                uint64_t* out);
/* x's tree with members relabelled densely in ascending element order. */
UFT_EXPORT uft_status uft_forest_component(const uft_forest* f, uint32_t x, uft_tree** out);
/* Ascending roots; *out gets a malloc'd array of *count ids, freed by caller. */
UFT_EXPORT uft_status uft_forest_roots(const uft_forest* f, uint32_t** out, uint32_t* count);

/* -------- scripts -------- */

/* Script text: "union a b" | "find a" | "dump" per line, '#' comments. */
UFT_EXPORT uft_status uft_script_parse(const char* text, uft_script** out);
UFT_EXPORT uft_status uft_script_serialize(const uft_script* s, char** out);
UFT_EXPORT void uft_script_free(uft_script* s);
UFT_EXPORT uint32_t uft_script_length(const uft_script* s);
/* Largest element id referenced; 0 for an op-free script. */
UFT_EXPORT uint32_t uft_script_max_id(const uft_script* s);
UFT_EXPORT uft_status uft_script_op(const uft_script* s, uint32_t index, int* kind,
                                    uint32_t* a, uint32_t* b);
/* Copy with a dump inserted after every `every` executable ops (0: no copy
 * change). */
UFT_EXPORT uft_status uft_script_with_dumps(const uft_script* s, uint32_t every,
                                            uft_script** out);
/* Runs the script on a fresh forest of n elements. Snapshots are captured at
 * each dump (most recently touched tree) and for every root at end of script. */
UFT_EXPORT uft_status uft_script_execute(const uft_script* s, uint32_t n,
                                         uft_snapshots** out);
UFT_EXPORT void uft_snapshots_free(uft_snapshots* s);
UFT_EXPORT uint32_t uft_snapshots_count(const uft_snapshots* s);
/* op_index is the triggering op (script length for end-of-script snapshots),
 * source the original element whose tree was captured. The tree handle is
 * owned by the caller. */
UFT_EXPORT uft_status uft_snapshots_get(const uft_snapshots* s, uint32_t index,
                                        uint32_t* op_index, uint32_t* source,
                                        uft_tree** tree);
/* k random ops over 1..n, roughly two unions per find. */
UFT_EXPORT uft_status uft_gen_script(uint32_t n, uint32_t k, uint64_t seed,
                                     uft_script** out);

/* -------- 3-partition instances -------- */

/* Instance text: line 1 holds m, line 2 the 3m values. Parsing checks the
 * shape only; validity is checked by the functions that need it. */
UFT_EXPORT uft_status uft_instance_parse(const char* text, uft_instance** out);
UFT_EXPORT uft_status uft_instance_serialize(const uft_instance* in, char** out);
UFT_EXPORT void uft_instance_free(uft_instance* in);
UFT_EXPORT uint32_t uft_instance_m(const uft_instance* in);
/* Full validity check: group count, positivity, divisibility, strict window,
 * target of the form 2^D + d. Fills any of the three outputs when non-NULL. */
UFT_EXPORT uft_status uft_instance_params(const uft_instance* in, uint64_t* target,
                                          uint32_t* exp2, uint32_t* rem);
/* Constant shift landing the target on 2^D + d while preserving solutions. */
UFT_EXPORT uft_status uft_instance_normalize(const uft_instance* in, uft_instance** out);
/* Exhaustive solve; *solvable 1 and one "i j k" line per triple on success. */
UFT_EXPORT uft_status uft_instance_solve(const uft_instance* in, int* solvable,
                                         char** triples);
/* Equivalent flat recognition instance; heaviness and basket count reported. */
UFT_EXPORT uft_status uft_reduce_build(const uft_instance* in, uft_tree** out,
                                       uint64_t* heaviness, uint32_t* baskets);
/* Random solvable instance with target 2^exp2 + rem. */
UFT_EXPORT uft_status uft_gen_instance(uint32_t m, uint32_t exp2, uint32_t rem, uint64_t seed,
                                       uft_instance** out);

/* -------- exhaustive enumeration -------- */

/* Canonical codes of all shapes with exactly n nodes in the chosen class,
 * one per line in stable order; *count receives the number of codes. Caps:
 * 10 for all shapes, 9 for union trees, 8 for union-find trees. */
UFT_EXPORT uft_status uft_enum_codes(uint32_t n, int tree_class, char** codes,
                                     uint64_t* count);

#ifdef __cplusplus
}
#endif

#endif /* UFTREE_H */
