#include "dimsolve/cli.hpp"

#include "dimsolve/dimension.hpp"
#include "dimsolve/driver.hpp"
#include "dimsolve/kdim.hpp"
#include "dimsolve/linsolve.hpp"
#include "dimsolve/parser.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

namespace dimsolve {

namespace {

// CLI11 wants the arguments in reverse order.
void parse_args(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
}

// Returns the exit code for a CLI11 parse failure; help is not a failure.
int report(const CLI::ParseError& e, const CLI::App& app, std::ostream& out, std::ostream& err) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
        out << app.help();
        return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
}

PredRef parse_pred(const std::string& text) {
    static const std::regex form(R"(([a-z][A-Za-z0-9_]*)(?:([\[(])(\d+)[\])])?)");
    std::smatch m;
    if (!std::regex_match(text, m, form)) throw std::invalid_argument("bad predicate: " + text);
    if (!m[2].matched) return PredRef(m[1]);
    const int d = std::stoi(m[3]);
    return PredRef(m[1], m[2] == "[" ? DimIndex::at_most(d) : DimIndex::exactly(d));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_kdim(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"print the at-most-k-dimension program", "dimsolve kdim"};
    int k = 0;
    std::string file;
    bool pairs = false;
    app.add_option("--k", k, "dimension bound")->required()->check(CLI::NonNegativeNumber);
    app.add_flag("--pairs", pairs, "only two-element tie sets");
    app.add_option("file", file, "CHC program")->required();
    try {
        parse_args(app, args);
    } catch (const CLI::ParseError& e) {
        return report(e, app, out, err);
    }
    KdimOptions opts;
    if (pairs) opts.ties = TieSets::Pairs;
    out << to_string(kdim(parse_program_file(file), k, opts));
    return 0;
}

int cmd_solve_linear(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"run the polyhedral engine on a linear program", "dimsolve solve-linear"};
    LinsolveOptions opts;
    std::string file;
    int narrow = opts.narrow ? 1 : 0;
    app.add_option("--widen-delay", opts.widen_delay, "rounds before widening starts")->check(CLI::NonNegativeNumber);
    app.add_option("--narrow", narrow, "descending passes after the fixpoint")->check(CLI::Range(0, 1));
    app.add_option("file", file, "CHC program")->required();
    try {
        parse_args(app, args);
    } catch (const CLI::ParseError& e) {
        return report(e, app, out, err);
    }
    opts.narrow = narrow == 1;
    const LinearVerdict v = solve_linear(parse_program_file(file), opts);
    if (!v.solved()) {
        out << "NOT SOLVED\n";
        err << v.reason << '\n';
        return 2;
    }
    out << to_string(v.model);
    return 0;
}

int cmd_dim(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dimension of dumped derivation trees, one line per tree", "dimsolve dim"};
    std::string file;
    app.add_option("file", file, "tree dump")->required();
    try {
        parse_args(app, args);
    } catch (const CLI::ParseError& e) {
        return report(e, app, out, err);
    }
    const auto trees = parse_dump(read_file(file));
    if (trees.empty()) throw std::runtime_error("no tree in " + file);
    for (const auto& t : trees) out << dim(t) << '\n';
    return 0;
}

int cmd_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"solve non-linear constrained Horn clauses by dimension-bounded approximation", "dimsolve"};
    app.footer("subcommands: kdim --k N <file> | solve-linear <file> | dim <dumpfile>");
    Config cfg;
    std::string file, emit, root;
    int narrow = cfg.narrow ? 1 : 0;
    double timeout = 0;
    std::size_t dump_trees = 0, max_nodes = 9;
    app.add_option("--max-k", cfg.max_k, "highest dimension tried")->check(CLI::NonNegativeNumber);
    app.add_option("--widen-delay", cfg.widen_delay, "rounds before widening starts")->check(CLI::NonNegativeNumber);
    app.add_option("--narrow", narrow, "descending passes after the fixpoint")->check(CLI::Range(0, 1));
    app.add_option("--split-budget", cfg.split_budget, "region budget of the model check");
    auto* t = app.add_option("--timeout-s", timeout, "wall-clock limit in seconds")->check(CLI::PositiveNumber);
    app.add_flag("--trace", cfg.trace, "per-level progress on stderr");
    app.add_option("--emit-model", emit, "write the model here when solved");
    app.add_option("--dump-trees", dump_trees, "print the first N derivation trees and stop");
    app.add_option("--root", root, "root predicate for --dump-trees");
    app.add_option("--max-nodes", max_nodes, "node bound for --dump-trees");
    app.add_option("file", file, "CHC program")->required();
    try {
        parse_args(app, args);
    } catch (const CLI::ParseError& e) {
        return report(e, app, out, err);
    }
    if (const char* env = std::getenv("DIMSOLVE_TRACE"); env && std::string(env) == "1") cfg.trace = true;
    cfg.narrow = narrow == 1;
    if (t->count()) cfg.timeout_s = timeout;

    const Program p = parse_program_file(file);
    if (dump_trees > 0) {
        const PredRef r = root.empty() ? PredRef("false") : parse_pred(root);
        TreeStream stream(p, r, max_nodes);
        for (std::size_t i = 0; i < dump_trees; ++i) {
            auto tree = stream.next();
            if (!tree) break;
            if (i) out << '\n';
            out << dump(*tree);
        }
        return 0;
    }

    const SolveOutcome o = solve(p, cfg, &err);
    if (!o.solved()) {
        out << "UNKNOWN " << o.reason << '\n';
        return 2;
    }
    out << "SOLVED k=" << o.k_reached << '\n' << to_string(o.model);
    if (!emit.empty()) {
        std::ofstream f(emit);
        if (!(f << to_string(o.model))) {
            err << "error: cannot write " << emit << '\n';
            return 1;
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (!args.empty()) {
            const std::vector<std::string> rest(args.begin() + 1, args.end());
            if (args[0] == "kdim") return cmd_kdim(rest, out, err);
            if (args[0] == "solve-linear") return cmd_solve_linear(rest, out, err);
            if (args[0] == "dim") return cmd_dim(rest, out, err);
        }
        return cmd_solve(args, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace dimsolve
