// Command-line surface over the uftree shared library. Exit codes: 0 when the
// queried property holds (or generation succeeded), 1 when it fails, 2 on
// usage or format errors.

#include <uftree.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct StringFree {
    void operator()(char* p) const { uft_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringFree>;

struct TreeFree {
    void operator()(uft_tree* t) const { uft_tree_free(t); }
};
using OwnedTree = std::unique_ptr<uft_tree, TreeFree>;

struct ScriptFree {
    void operator()(uft_script* s) const { uft_script_free(s); }
};
using OwnedScript = std::unique_ptr<uft_script, ScriptFree>;

struct SnapshotsFree {
    void operator()(uft_snapshots* s) const { uft_snapshots_free(s); }
};
using OwnedSnapshots = std::unique_ptr<uft_snapshots, SnapshotsFree>;

struct InstanceFree {
    void operator()(uft_instance* i) const { uft_instance_free(i); }
};
using OwnedInstance = std::unique_ptr<uft_instance, InstanceFree>;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

// Any library failure is a usage or format problem from the CLI's viewpoint.
int report(uft_status st) {
    std::cerr << "error: " << uft_last_error() << "\n";
    (void)st;
    return kExitUsage;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return bool(out);
}

int with_tree_file(const std::string& path, OwnedTree& tree) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitUsage;
    }
    uft_tree* raw = nullptr;
    if (uft_status st = uft_tree_parse(text->c_str(), &raw)) return report(st);
    tree.reset(raw);
    return -1; // caller continues
}

int cmd_check_union(const std::string& path, bool verbose) {
    OwnedTree tree;
    if (int rc = with_tree_file(path, tree); rc >= 0) return rc;
    int is_union = 0;
    if (uft_status st = uft_check_union(tree.get(), &is_union)) return report(st);
    if (verbose && !is_union) {
        char* raw = nullptr;
        if (uft_status st = uft_union_violations(tree.get(), &raw)) return report(st);
        OwnedString report_text(raw);
        std::cout << report_text.get();
    }
    std::cout << (is_union ? "union tree\n" : "not a union tree\n");
    return is_union ? kExitHolds : kExitFails;
}

int cmd_check_uf(const std::string& path, const std::string& witness_path,
                 std::uint64_t max_depth) {
    OwnedTree tree;
    if (int rc = with_tree_file(path, tree); rc >= 0) return rc;
    int is_uf = 0;
    char* raw = nullptr;
    if (uft_status st = uft_check_union_find(tree.get(), max_depth, 0, &is_uf, &raw)) {
        return report(st);
    }
    OwnedString witness(raw);
    if (is_uf && !witness_path.empty()) {
        if (!write_file(witness_path, witness ? witness.get() : "")) {
            std::cerr << "error: cannot write " << witness_path << "\n";
            return kExitUsage;
        }
    }
    std::cout << (is_uf ? "union-find tree\n" : "not a union-find tree\n");
    return is_uf ? kExitHolds : kExitFails;
}

int cmd_flat_check(const std::string& path, std::uint64_t heaviness,
                   const std::string& witness_path) {
    OwnedTree tree;
    if (int rc = with_tree_file(path, tree); rc >= 0) return rc;
    int is_uf = 0;
    char* raw = nullptr;
    if (uft_status st = uft_flat_decide(tree.get(), heaviness, &is_uf, &raw)) {
        if (st == UFT_ERR_NOT_FLAT) {
            std::cerr << "error: not flat at heaviness " << heaviness << ": "
                      << uft_last_error() << "\n";
            return kExitUsage;
        }
        return report(st);
    }
    OwnedString partition(raw);
    if (is_uf && !witness_path.empty()) {
        if (!write_file(witness_path, partition ? partition.get() : "")) {
            std::cerr << "error: cannot write " << witness_path << "\n";
            return kExitUsage;
        }
    }
    std::cout << (is_uf ? "union-find tree\n" : "not a union-find tree\n");
    return is_uf ? kExitHolds : kExitFails;
}

int cmd_reduce(const std::string& path, bool normalize, const std::string& out_path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitUsage;
    }
    uft_instance* raw_inst = nullptr;
    if (uft_status st = uft_instance_parse(text->c_str(), &raw_inst)) return report(st);
    OwnedInstance inst(raw_inst);
    if (normalize) {
        uft_instance* shifted = nullptr;
        if (uft_status st = uft_instance_normalize(inst.get(), &shifted)) return report(st);
        inst.reset(shifted);
    }
    uft_tree* raw_tree = nullptr;
    std::uint64_t heaviness = 0;
    std::uint32_t baskets = 0;
    if (uft_status st = uft_reduce_build(inst.get(), &raw_tree, &heaviness, &baskets)) {
        return report(st);
    }
    OwnedTree tree(raw_tree);
    char* serialized = nullptr;
    if (uft_status st = uft_tree_serialize(tree.get(), &serialized)) return report(st);
    OwnedString tree_text(serialized);
    if (!write_file(out_path, tree_text.get())) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    std::cout << "H=" << heaviness << " K=" << baskets << "\n";
    return kExitHolds;
}

int cmd_solve_3p(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitUsage;
    }
    uft_instance* raw_inst = nullptr;
    if (uft_status st = uft_instance_parse(text->c_str(), &raw_inst)) return report(st);
    OwnedInstance inst(raw_inst);
    int solvable = 0;
    char* raw = nullptr;
    if (uft_status st = uft_instance_solve(inst.get(), &solvable, &raw)) return report(st);
    OwnedString triples(raw);
    if (!solvable) {
        std::cerr << "no solution\n";
        return kExitFails;
    }
    std::cout << triples.get();
    return kExitHolds;
}

int cmd_sim(const std::string& path, bool check, std::uint32_t dump_every,
            std::uint32_t universe) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitUsage;
    }
    uft_script* raw_script = nullptr;
    if (uft_status st = uft_script_parse(text->c_str(), &raw_script)) return report(st);
    OwnedScript script(raw_script);
    if (dump_every > 0) {
        uft_script* dumped = nullptr;
        if (uft_status st = uft_script_with_dumps(script.get(), dump_every, &dumped)) {
            return report(st);
        }
        script.reset(dumped);
    }
    std::uint32_t n = universe;
    if (n == 0) {
        n = uft_script_max_id(script.get());
        if (n == 0) n = 1;
    }
    uft_snapshots* raw_snaps = nullptr;
    if (uft_status st = uft_script_execute(script.get(), n, &raw_snaps)) return report(st);
    OwnedSnapshots snaps(raw_snaps);
    std::uint32_t count = uft_snapshots_count(snaps.get());
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t op_index = 0;
        std::uint32_t source = 0;
        uft_tree* raw_tree = nullptr;
        if (uft_status st = uft_snapshots_get(snaps.get(), i, &op_index, &source, &raw_tree)) {
            return report(st);
        }
        OwnedTree tree(raw_tree);
        char* serialized = nullptr;
        if (uft_status st = uft_tree_serialize(tree.get(), &serialized)) return report(st);
        OwnedString tree_text(serialized);
        std::cout << "# snapshot op=" << op_index << " source=" << source
                  << " n=" << uft_tree_node_count(tree.get()) << "\n"
                  << tree_text.get();
        if (check) {
            int is_uf = 0;
            if (uft_status st = uft_check_union_find(tree.get(), 0, 0, &is_uf, nullptr)) {
                return report(st);
            }
            if (!is_uf) {
                std::cerr << "snapshot at op " << op_index << " rejected\n";
                return kExitFails;
            }
        }
    }
    return kExitHolds;
}

int emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitHolds;
    }
    if (!write_file(out_path, text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    return kExitHolds;
}

int cmd_gen_tree(std::uint32_t n, std::uint64_t seed, const std::string& out_path) {
    uft_tree* raw = nullptr;
    if (uft_status st = uft_gen_tree(n, seed, &raw)) return report(st);
    OwnedTree tree(raw);
    char* serialized = nullptr;
    if (uft_status st = uft_tree_serialize(tree.get(), &serialized)) return report(st);
    OwnedString text(serialized);
    return emit(out_path, text.get());
}

int cmd_gen_script(std::uint32_t n, std::uint32_t ops, std::uint64_t seed,
                   const std::string& out_path) {
    uft_script* raw = nullptr;
    if (uft_status st = uft_gen_script(n, ops, seed, &raw)) return report(st);
    OwnedScript script(raw);
    char* serialized = nullptr;
    if (uft_status st = uft_script_serialize(script.get(), &serialized)) return report(st);
    OwnedString text(serialized);
    return emit(out_path, text.get());
}

int cmd_gen_instance(std::uint32_t m, std::uint32_t exp2, std::uint32_t rem,
                     std::uint64_t seed, const std::string& out_path) {
    uft_instance* raw = nullptr;
    if (uft_status st = uft_gen_instance(m, exp2, rem, seed, &raw)) return report(st);
    OwnedInstance inst(raw);
    char* serialized = nullptr;
    if (uft_status st = uft_instance_serialize(inst.get(), &serialized)) return report(st);
    OwnedString text(serialized);
    return emit(out_path, text.get());
}

int cmd_enum(std::uint32_t n, const std::string& cls) {
    int tree_class = UFT_CLASS_ALL;
    if (cls == "union") tree_class = UFT_CLASS_UNION;
    else if (cls == "uf") tree_class = UFT_CLASS_UNION_FIND;
    else if (cls != "all") {
        std::cerr << "error: unknown class " << cls << "\n";
        return kExitUsage;
    }
    char* raw = nullptr;
    std::uint64_t count = 0;
    if (uft_status st = uft_enum_codes(n, tree_class, &raw, &count)) return report(st);
    OwnedString codes(raw);
    std::cout << codes.get() << "count " << count << "\n";
    return kExitHolds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"union / union-find tree recognition toolkit"};
    app.require_subcommand(1);

    std::string path;
    std::string witness_path;
    std::string out_path;
    bool verbose = false;
    bool normalize = false;
    bool check = false;
    std::uint64_t heaviness = 0;
    std::uint64_t max_depth = 0;
    std::uint64_t seed = 0;
    std::uint32_t dump_every = 0;
    std::uint32_t universe = 0;
    std::uint32_t gen_n = 8;
    std::uint32_t gen_ops = 16;
    std::uint32_t gen_m = 2;
    std::uint32_t gen_exp2 = 4;
    std::uint32_t gen_rem = 1;
    std::uint32_t enum_n = 1;
    std::string enum_class = "all";

    auto* check_union = app.add_subcommand("check-union", "decide union-tree membership");
    check_union->add_option("file", path, "tree file")->required();
    check_union->add_flag("--verbose", verbose, "print one line per violating node");

    auto* check_uf = app.add_subcommand("check-uf", "decide union-find-tree membership");
    check_uf->add_option("file", path, "tree file")->required();
    check_uf->add_option("--witness", witness_path, "write a push sequence here on success");
    check_uf->add_option("--max-depth", max_depth,
                         "cap on explored push-sequence length (0: the safe n^2 bound)");

    auto* flat_check = app.add_subcommand(
        "flat-check", "decide union-find-tree membership of a flat tree");
    flat_check->add_option("file", path, "tree file")->required();
    flat_check->add_option("--heaviness", heaviness, "heaviness threshold")->required();
    flat_check->add_option("--witness", witness_path, "write the light partition here");

    auto* reduce = app.add_subcommand(
        "reduce", "build the flat recognition tree of a 3-partition instance");
    reduce->add_option("file", path, "instance file")->required();
    reduce->add_flag("--normalize", normalize, "shift values onto a power-of-two-plus-d target");
    reduce->add_option("-o,--output", out_path, "tree output file")->required();

    auto* solve = app.add_subcommand("solve-3p", "solve a 3-partition instance exactly");
    solve->add_option("file", path, "instance file")->required();

    auto* sim = app.add_subcommand("sim", "run a union/find script and print snapshots");
    sim->add_option("file", path, "script file")->required();
    sim->add_flag("--check", check, "reject any snapshot that is not a union-find tree");
    sim->add_option("--dump-every", dump_every, "insert a dump after every K ops");
    sim->add_option("--n", universe, "universe size (default: largest id in the script)");

    auto* gen = app.add_subcommand("gen", "deterministic generators");
    gen->require_subcommand(1);
    auto* gen_tree = gen->add_subcommand("tree", "random recursive tree");
    gen_tree->add_option("--n", gen_n, "node count")->required();
    gen_tree->add_option("--seed", seed, "rng seed")->required();
    gen_tree->add_option("-o,--output", out_path, "output file (default: stdout)");
    auto* gen_script = gen->add_subcommand("script", "random union/find script");
    gen_script->add_option("--n", gen_n, "universe size")->required();
    gen_script->add_option("--ops", gen_ops, "operation count")->required();
    gen_script->add_option("--seed", seed, "rng seed")->required();
    gen_script->add_option("-o,--output", out_path, "output file (default: stdout)");
    auto* gen_instance = gen->add_subcommand("instance", "random solvable 3-partition instance");
    gen_instance->add_option("--m", gen_m, "triple count")->required();
    gen_instance->add_option("--exp2", gen_exp2, "target exponent (target = 2^exp2 + rem)")
        ->required();
    gen_instance->add_option("--rem", gen_rem, "target remainder, 1..3")->required();
    gen_instance->add_option("--seed", seed, "rng seed")->required();
    gen_instance->add_option("-o,--output", out_path, "output file (default: stdout)");

    auto* enum_cmd = app.add_subcommand("enum", "enumerate tree shapes of a given size");
    enum_cmd->add_option("n", enum_n, "node count")->required();
    enum_cmd->add_option("--class", enum_class, "all | union | uf");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitHolds : kExitUsage;
    }

    if (app.got_subcommand(check_union)) return cmd_check_union(path, verbose);
    if (app.got_subcommand(check_uf)) return cmd_check_uf(path, witness_path, max_depth);
    if (app.got_subcommand(flat_check)) return cmd_flat_check(path, heaviness, witness_path);
    if (app.got_subcommand(reduce)) return cmd_reduce(path, normalize, out_path);
    if (app.got_subcommand(solve)) return cmd_solve_3p(path);
    if (app.got_subcommand(sim)) return cmd_sim(path, check, dump_every, universe);
    if (app.got_subcommand(gen)) {
        if (gen->got_subcommand(gen_tree)) return cmd_gen_tree(gen_n, seed, out_path);
        if (gen->got_subcommand(gen_script)) {
            return cmd_gen_script(gen_n, gen_ops, seed, out_path);
        }
        if (gen->got_subcommand(gen_instance)) {
            return cmd_gen_instance(gen_m, gen_exp2, gen_rem, seed, out_path);
        }
    }
    if (app.got_subcommand(enum_cmd)) return cmd_enum(enum_n, enum_class);
    return kExitUsage;
}
