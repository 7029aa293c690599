// Command-line front end. Exit status: 0 = YES / success, 1 = NO / invalid,
// 2 = usage, parse or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "treedepth/treedepth.hpp"

namespace {

using namespace treedepth;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string to_dot(const TreedepthDecomposition& t) {
    std::ostringstream out;
    out << "digraph treedepth {\n  node [shape=circle];\n";
    for (int i = 0; i < t.num_nodes(); ++i) {
        out << "  n" << i << " [label=\"" << (t.label[i] >= 0 ? std::to_string(t.label[i] + 1) : std::string("-"))
            << "\"];\n";
        if (t.parent[i] >= 0) out << "  n" << t.parent[i] << " -> n" << i << ";\n";
    }
    out << "}\n";
    return out.str();
}

struct Common {
    std::string graph;
    std::string variant = "fast";
    std::string td;
    std::string out;
    std::string dot;
    std::string report;
    bool decide_only = false;
    bool naive = false;
    std::size_t table_cap = 2'000'000;
};

SolverConfig make_config(const Common& c) {
    SolverConfig cfg;
    cfg.variant = parse_variant(c.variant);
    cfg.decide_only = c.decide_only;
    cfg.naive = c.naive;
    cfg.table_cap = c.table_cap;
    if (!c.td.empty()) cfg.provided_td = parse_td(read_file(c.td)).td;
    return cfg;
}

void emit_outputs(const Common& c, const SolveOutcome& o) {
    if (o.decomposition) {
        if (!c.out.empty()) write_file(c.out, write_treedepth_decomposition(*o.decomposition));
        if (!c.dot.empty()) write_file(c.dot, to_dot(*o.decomposition));
    }
    auto text = write_report(o.report);
    if (!c.report.empty())
        write_file(c.report, text);
    else
        std::cout << text;
}

void add_common(CLI::App* cmd, Common& c, bool with_variant) {
    cmd->add_option("graph", c.graph, "graph file (.gr)")->required();
    if (with_variant) {
        cmd->add_option("--variant", c.variant, "simple | fast | chordal | given")
            ->check(CLI::IsMember({"simple", "fast", "chordal", "given"}));
        cmd->add_option("--td", c.td, "tree decomposition file (.td) used by fast/given");
        cmd->add_flag("--decide-only", c.decide_only, "free child tables early; no witness");
        cmd->add_flag("--naive", c.naive, "unpruned candidate enumeration (tiny inputs only)");
        cmd->add_option("--table-cap", c.table_cap, "abort when a table exceeds this many entries");
    }
    cmd->add_option("--out", c.out, "write the decomposition (.tree)");
    cmd->add_option("--dot", c.dot, "write the decomposition as Graphviz");
    cmd->add_option("--report", c.report, "write the JSON report here instead of stdout");
}

int cmd_decide(const Common& c, int t) {
    auto g = parse_gr(read_file(c.graph));
    auto o = solve(g, t, make_config(c));
    o.report.instance = c.graph;
    std::cout << o.report.answer << '\n';
    emit_outputs(c, o);
    return o.yes ? kYes : kNo;
}

int cmd_solve(const Common& c) {
    auto g = parse_gr(read_file(c.graph));
    auto o = exact_treedepth(g, make_config(c));
    o.report.instance = c.graph;
    std::cout << *o.value << '\n';
    emit_outputs(c, o);
    return kYes;
}

int cmd_verify(const std::string& graph, const std::string& tree) {
    auto g = parse_gr(read_file(graph));
    auto file = parse_treedepth_decomposition(read_file(tree));
    if (file.decomposition.num_nodes() != g.num_vertices()) {
        std::cout << "INVALID: decomposition has " << file.decomposition.num_nodes() << " vertices, graph has "
                  << g.num_vertices() << '\n';
        return kNo;
    }
    if (auto bad = validate_tdd(g, file.decomposition)) {
        std::cout << "INVALID: " << bad->message << '\n';
        return kNo;
    }
    const int h = height(file.decomposition);
    if (h != file.declared_height) {
        std::cout << "INVALID: declared height " << file.declared_height << ", actual height " << h << '\n';
        return kNo;
    }
    std::cout << "VALID height " << h << '\n';
    return kYes;
}

int cmd_oracle(const Common& c) {
    auto g = parse_gr(read_file(c.graph));
    auto res = oracle_treedepth(g);
    std::cout << res.value << '\n';
    if (!c.out.empty()) write_file(c.out, write_treedepth_decomposition(res.decomposition));
    if (!c.dot.empty()) write_file(c.dot, to_dot(res.decomposition));
    return kYes;
}

int cmd_gen(const std::string& family, int size, std::uint64_t seed, const gen::FamilyParams& params,
            const std::string& out) {
    auto text = write_gr(gen::by_family(family, size, seed, params));
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return kYes;
}

/// Manifest lines: `<instance> <variant> [t]`, where instance is a .gr path
/// or `gen:<family>:<size>[:<seed>]`. Without t the exact value is searched.
int cmd_bench(const std::string& manifest, const std::string& out, bool decide_only) {
    std::ostringstream csv;
    csv << "instance,variant,n,m,width,t,answer,peak_table_size,table_bound_violations,wall_time_ms,status\n";
    std::istringstream lines(read_file(manifest));
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tok(line);
        std::string instance, variant;
        if (!(tok >> instance) || instance[0] == '#') continue;
        tok >> variant;
        std::string t_text;
        tok >> t_text;
        std::ostringstream row;
        row << instance << ',' << variant << ',';
        try {
            Graph g;
            if (instance.rfind("gen:", 0) == 0) {
                std::vector<std::string> parts;
                std::istringstream fields(instance.substr(4));
                for (std::string p; std::getline(fields, p, ':');) parts.push_back(p);
                if (parts.size() < 2) throw InputError("bad generator instance '" + instance + "'");
                g = gen::by_family(parts[0], std::stoi(parts[1]), parts.size() > 2 ? std::stoull(parts[2]) : 1);
            } else {
                g = parse_gr(read_file(instance));
            }
            SolverConfig cfg;
            cfg.variant = parse_variant(variant.empty() ? "fast" : variant);
            cfg.decide_only = decide_only;
            SolveOutcome o = t_text.empty() ? exact_treedepth(g, cfg) : solve(g, std::stoi(t_text), cfg);
            row << g.num_vertices() << ',' << g.num_edges() << ',' << (o.report.width ? *o.report.width : -1) << ','
                << (o.report.t ? *o.report.t : -1) << ',' << o.report.answer << ',' << o.report.peak_table_size << ','
                << o.report.table_bound_violations << ',' << o.report.wall_time_ms << ",ok";
        } catch (const std::exception& e) {
            std::string msg = e.what();
            for (auto& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            row << ",,,,,,,," << "error: " << msg;
        }
        csv << row.str() << '\n';
    }
    if (out.empty())
        std::cout << csv.str();
    else
        write_file(out, csv.str());
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact treedepth solver"};
    app.require_subcommand(1);

    Common decide_opts;
    int decide_t = -1;
    auto* decide = app.add_subcommand("decide", "decide whether td(G) <= t");
    add_common(decide, decide_opts, true);
    decide->add_option("-t", decide_t, "treedepth bound")->required()->check(CLI::NonNegativeNumber);

    Common solve_opts;
    auto* solve_cmd = app.add_subcommand("solve", "compute td(G) exactly");
    add_common(solve_cmd, solve_opts, true);

    std::string verify_graph, verify_tree;
    auto* verify = app.add_subcommand("verify", "check a .tree file against a graph");
    verify->add_option("graph", verify_graph, "graph file (.gr)")->required();
    verify->add_option("tree", verify_tree, "decomposition file (.tree)")->required();

    Common oracle_opts;
    auto* oracle = app.add_subcommand("oracle", "brute-force treedepth (at most 20 vertices)");
    add_common(oracle, oracle_opts, false);

    std::string family, gen_out;
    int size = 0;
    std::uint64_t seed = 1;
    gen::FamilyParams params;
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph");
    gen_cmd->add_option("family", family, "path | cycle | clique | star | random-gnm | random-tree | k-tree | interval")
        ->required();
    gen_cmd->add_option("size", size, "number of vertices")->required()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--k", params.k, "k for k-tree");
    gen_cmd->add_option("--edges", params.edges, "edge count for random-gnm (default 2n)");
    gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

    std::string manifest, bench_out;
    bool bench_decide_only = false;
    auto* bench = app.add_subcommand("bench", "run a manifest and print CSV");
    bench->add_option("manifest", manifest, "manifest file")->required();
    bench->add_option("--out", bench_out, "CSV output file (default stdout)");
    bench->add_flag("--decide-only", bench_decide_only, "free child tables early");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*decide) return cmd_decide(decide_opts, decide_t);
        if (*solve_cmd) return cmd_solve(solve_opts);
        if (*verify) return cmd_verify(verify_graph, verify_tree);
        if (*oracle) return cmd_oracle(oracle_opts);
        if (*gen_cmd) return cmd_gen(family, size, seed, params, gen_out);
        if (*bench) return cmd_bench(manifest, bench_out, bench_decide_only);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
