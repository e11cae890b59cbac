#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fourblock/generators.hpp"
#include "fourblock/io.hpp"
#include "fourblock/oracle.hpp"
#include "fourblock/ordering.hpp"
#include "fourblock/splitting.hpp"
#include "fourblock/tree_export.hpp"
#include "fourblock/triangles.hpp"

namespace fourblock {

// Exit codes: 0 success, 1 I/O or usage, 2 validation failure,
// 3 verification mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitMismatch = 3;

struct RunReport {
    std::size_t n = 0, m = 0, separating = 0;
    double list_ms = 0, order_ms = 0, split_ms = 0;
    std::uint64_t transfers = 0;
    bool agree = true;
};

namespace clidetail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

inline std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads input from a path ("-" or empty means standard input).
inline bool load_document(const std::string& path, std::istream& stdin_stream, std::string& out,
                          std::ostream& err) {
    if (path.empty() || path == "-") {
        out = read_all(stdin_stream);
        return true;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open '" << path << "'\n";
        return false;
    }
    out = read_all(f);
    return true;
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("QB_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            return 0;
        }
    }
    return 0;
}

inline bool parse_gen_spec(const std::string& kind, std::uint32_t n, std::uint64_t seed,
                           GenSpec& spec, std::ostream& err) {
    if (kind == "triangle" || kind == "k4" || kind == "canon5" || kind == "canon7") {
        spec.kind = GenKind::Canonical;
        spec.name = kind;
    } else if (kind == "apollonian") {
        spec.kind = GenKind::Apollonian;
        spec.n = n;
    } else if (kind == "nested-chain") {
        spec.kind = GenKind::NestedChain;
        spec.n = n;
    } else {
        err << "error: unknown kind '" << kind << "'\n";
        return false;
    }
    spec.seed = seed;
    return true;
}

struct LoadedGraph {
    RotationGraph graph;
    int exit = kExitOk;
};

inline LoadedGraph load_graph(const std::string& path, std::istream& in, std::ostream& err,
                              bool must_validate) {
    LoadedGraph lg;
    std::string doc;
    if (!load_document(path, in, doc, err)) {
        lg.exit = kExitUsage;
        return lg;
    }
    try {
        lg.graph = parse_rotation_graph(doc);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        lg.exit = kExitInvalid;
        return lg;
    }
    if (must_validate) {
        Diagnostics d = validate_triangulation(lg.graph);
        if (!d.empty()) {
            for (const auto& item : d.items) err << "invalid: " << item.message << "\n";
            lg.exit = kExitInvalid;
        }
    }
    return lg;
}

inline void print_triangle_line(std::ostream& out, const RotationGraph& g,
                                const TriangleRecord& t) {
    std::array<std::uint32_t, 3> ext{g.origin(t.corners[0]), g.origin(t.corners[1]),
                                     g.origin(t.corners[2])};
    std::sort(ext.begin(), ext.end());
    out << ext[0] << ' ' << ext[1] << ' ' << ext[2];
}

} // namespace clidetail

/// Runs a full pipeline + oracle comparison; prints a report.
inline int run_verify(const RotationGraph& input, std::ostream& out, std::ostream& err) {
    RunReport rep;
    rep.n = input.num_vertices();
    rep.m = input.num_edges();

    auto t0 = std::chrono::steady_clock::now();
    std::vector<TriangleRecord> seps = separating_triangles(input);
    rep.list_ms = clidetail::ms_since(t0);
    rep.separating = seps.size();

    t0 = std::chrono::steady_clock::now();
    OrderedTriangleList ordered = order_separating_triangles(input, std::move(seps));
    rep.order_ms = clidetail::ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    FourBlockTree tree = decompose(input, ordered);
    rep.split_ms = clidetail::ms_since(t0);
    rep.transfers = tree.transfer_count;

    // triangle sets
    std::vector<oracle::Triple> got;
    for (const TriangleRecord& t : ordered.triangles)
        got.push_back(oracle::sorted_triple(t.corners[0], t.corners[1], t.corners[2]));
    std::sort(got.begin(), got.end());
    std::vector<oracle::Triple> want = oracle::brute_separating_triangles(input);
    std::sort(want.begin(), want.end());
    bool triangles_ok = got == want;
    if (!triangles_ok) {
        for (const auto& t : want)
            if (!std::binary_search(got.begin(), got.end(), t))
                err << "missing separating triangle " << input.origin(t[0]) << ' '
                    << input.origin(t[1]) << ' ' << input.origin(t[2]) << "\n";
        for (const auto& t : got)
            if (!std::binary_search(want.begin(), want.end(), t))
                err << "extra separating triangle " << input.origin(t[0]) << ' '
                    << input.origin(t[1]) << ' ' << input.origin(t[2]) << "\n";
    }

    oracle::PlainTree mine = oracle::to_plain(tree);
    oracle::PlainTree brute = oracle::brute_4block_tree(input);
    bool tree_ok = oracle::trees_isomorphic(mine, brute);
    if (!tree_ok)
        err << "tree mismatch: pipeline has " << mine.nodes.size() << " node(s), oracle "
            << brute.nodes.size() << "\n";

    rep.agree = triangles_ok && tree_ok;
    out << "n=" << rep.n << " m=" << rep.m << " separating=" << rep.separating
        << " transfers=" << rep.transfers << "\n";
    out << "list_ms=" << rep.list_ms << " order_ms=" << rep.order_ms
        << " split_ms=" << rep.split_ms << "\n";
    out << (rep.agree ? "agree" : "MISMATCH") << "\n";
    return rep.agree ? kExitOk : kExitMismatch;
}

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"4-block trees of embedded planar triangulations"};
    app.require_subcommand(1);

    std::string input_path, out_path, format = "json", kind = "nested-chain", sizes_csv;
    std::uint32_t gen_n = 0;
    std::uint64_t seed = clidetail::default_seed();
    bool have_gen = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a rotation-format document");
    validate_cmd->add_option("input", input_path, "input path or '-'");

    auto* triangles_cmd = app.add_subcommand("triangles", "list separating triangles");
    triangles_cmd->add_option("input", input_path, "input path or '-'");

    auto* order_cmd = app.add_subcommand("order", "order separating triangles innermost first");
    order_cmd->add_option("input", input_path, "input path or '-'");

    auto* decompose_cmd = app.add_subcommand("decompose", "compute the 4-block tree");
    decompose_cmd->add_option("input", input_path, "input path or '-'");
    decompose_cmd->add_option("--format", format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    decompose_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "compare pipeline against the brute-force oracle");
    verify_cmd->add_option("input", input_path, "input path or '-'");
    auto* vg = verify_cmd->add_option("--kind", kind, "generate the instance instead of reading");
    verify_cmd->add_option("--n", gen_n, "size (apollonian) or chain length (nested-chain)");
    verify_cmd->add_option("--seed", seed, "random seed (QB_SEED overrides the default)");

    auto* gen_cmd = app.add_subcommand("gen", "emit a generated instance in rotation format");
    gen_cmd->add_option("--kind", kind, "triangle|k4|canon5|canon7|apollonian|nested-chain")
        ->required();
    gen_cmd->add_option("--n", gen_n, "size (apollonian) or chain length (nested-chain)");
    gen_cmd->add_option("--seed", seed, "random seed (QB_SEED overrides the default)");
    gen_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "time the pipeline over generated instances");
    bench_cmd->add_option("--kind", kind, "apollonian or nested-chain");
    bench_cmd->add_option("--sizes", sizes_csv, "comma-separated ascending vertex counts")
        ->required();
    bench_cmd->add_option("--seed", seed, "random seed");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    have_gen = vg->count() > 0;

    try {
        if (validate_cmd->parsed()) {
            std::string doc;
            if (!clidetail::load_document(input_path, in, doc, err)) return kExitUsage;
            RotationGraph g;
            try {
                g = parse_rotation_graph(doc);
            } catch (const parse_error& e) {
                out << "parse error: " << e.what() << "\n";
                return kExitInvalid;
            }
            Diagnostics d = validate_triangulation(g);
            for (const auto& item : d.items) out << item.message << "\n";
            if (d.empty()) out << "ok\n";
            return d.empty() ? kExitOk : kExitInvalid;
        }

        if (triangles_cmd->parsed()) {
            auto lg = clidetail::load_graph(input_path, in, err, true);
            if (lg.exit != kExitOk) return lg.exit;
            for (const TriangleRecord& t : separating_triangles(lg.graph)) {
                clidetail::print_triangle_line(out, lg.graph, t);
                out << "\n";
            }
            return kExitOk;
        }

        if (order_cmd->parsed()) {
            auto lg = clidetail::load_graph(input_path, in, err, true);
            if (lg.exit != kExitOk) return lg.exit;
            OrderedTriangleList ordered =
                order_separating_triangles(lg.graph, separating_triangles(lg.graph));
            for (const TriangleRecord& t : ordered.triangles) {
                clidetail::print_triangle_line(out, lg.graph, t);
                out << "  ref=" << lg.graph.origin(lg.graph.tail(t.reference_edge)) << "->"
                    << lg.graph.origin(lg.graph.head(t.reference_edge))
                    << "  angle=" << t.internal_angle << "  time=" << t.time << "\n";
            }
            return kExitOk;
        }

        if (decompose_cmd->parsed()) {
            auto lg = clidetail::load_graph(input_path, in, err, true);
            if (lg.exit != kExitOk) return lg.exit;
            OrderedTriangleList ordered =
                order_separating_triangles(lg.graph, separating_triangles(lg.graph));
            FourBlockTree tree = decompose(std::move(lg.graph), ordered);
            std::string text = format == "dot" ? to_dot(tree) : to_json(tree).dump(2) + "\n";
            if (out_path.empty() || out_path == "-") {
                out << text;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) {
                    err << "error: cannot open '" << out_path << "'\n";
                    return kExitUsage;
                }
                f << text;
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            RotationGraph g;
            if (have_gen) {
                GenSpec spec;
                if (!clidetail::parse_gen_spec(kind, gen_n, seed, spec, err)) return kExitUsage;
                g = generate(spec);
            } else {
                auto lg = clidetail::load_graph(input_path, in, err, true);
                if (lg.exit != kExitOk) return lg.exit;
                g = std::move(lg.graph);
            }
            return run_verify(g, out, err);
        }

        if (gen_cmd->parsed()) {
            GenSpec spec;
            if (!clidetail::parse_gen_spec(kind, gen_n, seed, spec, err)) return kExitUsage;
            std::string text = serialize_rotation_graph(generate(spec));
            if (out_path.empty() || out_path == "-") {
                out << text;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) {
                    err << "error: cannot open '" << out_path << "'\n";
                    return kExitUsage;
                }
                f << text;
            }
            return kExitOk;
        }

        if (bench_cmd->parsed()) {
            std::vector<std::uint64_t> sizes;
            std::stringstream ss(sizes_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) sizes.push_back(std::stoull(tok));
            for (std::size_t i = 1; i < sizes.size(); ++i)
                if (sizes[i] <= sizes[i - 1]) {
                    err << "error: sizes must be ascending\n";
                    return kExitUsage;
                }
            out << "n\twall_ms\ttransfers\tm\n";
            for (std::uint64_t n : sizes) {
                RotationGraph g;
                if (kind == "apollonian")
                    g = gen_apollonian(static_cast<std::uint32_t>(n), seed);
                else if (kind == "nested-chain")
                    g = gen_nested_chain(static_cast<std::uint32_t>(n > 5 ? n - 4 : 1));
                else {
                    err << "error: bench supports apollonian and nested-chain\n";
                    return kExitUsage;
                }
                auto t0 = std::chrono::steady_clock::now();
                OrderedTriangleList ordered =
                    order_separating_triangles(g, separating_triangles(g));
                std::size_t m = g.num_edges();
                FourBlockTree tree = decompose(std::move(g), ordered);
                double wall = clidetail::ms_since(t0);
                out << tree.graph.num_vertices() - 3 * ordered.triangles.size() << '\t' << wall
                    << '\t' << tree.transfer_count << '\t' << m << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace fourblock
