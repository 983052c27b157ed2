#include "dimsolve/dimension.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace dimsolve {

bool DerivTree::operator<(const DerivTree& other) const {
    if (clause_id != other.clause_id) return clause_id < other.clause_id;
    return std::lexicographical_compare(children.begin(), children.end(), other.children.begin(), other.children.end());
}

DerivTree leaf(int clause_id) { return DerivTree{clause_id, {}}; }
DerivTree node(int clause_id, std::vector<DerivTree> children) { return DerivTree{clause_id, std::move(children)}; }

int dim(const DerivTree& t) {
    if (t.children.empty()) return 0;
    int best = -1, ties = 0;
    for (const auto& c : t.children) {
        const int d = dim(c);
        if (d > best) {
            best = d;
            ties = 1;
        } else if (d == best) {
            ++ties;
        }
    }
    return ties > 1 ? best + 1 : best;
}

int height(const DerivTree& t) {
    int h = 0;
    for (const auto& c : t.children) h = std::max(h, 1 + height(c));
    return h;
}

int level_count(const DerivTree& t) { return height(t) + 1; }

std::size_t node_count(const DerivTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

std::string encode(const DerivTree& t) {
    std::string out = "c" + std::to_string(t.clause_id);
    if (t.children.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ',';
        out += encode(t.children[i]);
    }
    return out + ')';
}

namespace {

void dump_into(const DerivTree& t, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "c" + std::to_string(t.clause_id) + "\n";
    for (const auto& c : t.children) dump_into(c, depth + 1, out);
}

}  // namespace

std::string dump(const DerivTree& t) {
    std::string out;
    dump_into(t, 0, out);
    return out;
}

std::vector<DerivTree> parse_dump(std::string_view text) {
    std::vector<DerivTree> trees;
    // Path from the current root to the last node read; a node at depth d
    // becomes a child of path[d - 1].
    std::vector<DerivTree*> path;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("tree dump line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(' ');
        if (first == std::string::npos) {
            path.clear();
            continue;
        }
        if (first % 2) fail("odd indentation");
        const std::size_t depth = first / 2;
        std::string label = line.substr(first);
        while (!label.empty() && label.back() == ' ') label.pop_back();
        if (label.size() < 2 || label[0] != 'c' || label.find_first_not_of("0123456789", 1) != std::string::npos)
            fail("expected c<clause id>");
        const int id = std::stoi(label.substr(1));
        if (depth == 0) {
            if (!path.empty()) fail("second root without a separating blank line");
            trees.push_back(leaf(id));
            path = {&trees.back()};
            continue;
        }
        if (depth > path.size()) fail("indentation skips a level");
        path.resize(depth);
        auto& kids = path.back()->children;
        kids.push_back(leaf(id));
        path.push_back(&kids.back());
    }
    return trees;
}

std::optional<Polyhedron> tree_constraint(const Program& p, const DerivTree& t) {
    const auto& clauses = p.clauses();
    std::vector<AtomicConstraint> all;
    std::set<std::string> vars;
    int counter = 0;
    std::vector<std::string> root_args;

    // `args` are the (renamed) arguments of the atom this node derives.
    std::function<bool(const DerivTree&, const PredRef&, const std::vector<std::string>&)> walk =
        [&](const DerivTree& n, const PredRef& pred, const std::vector<std::string>& args) {
            if (n.clause_id < 1 || static_cast<std::size_t>(n.clause_id) > clauses.size()) return false;
            const Clause& c = clauses[static_cast<std::size_t>(n.clause_id) - 1];
            if (c.head_pred() != pred || n.children.size() != c.body.size()) return false;
            const std::string suffix = "_" + std::to_string(counter++);
            std::map<std::string, std::string> renaming;
            for (const auto& v : c.vars()) renaming.emplace(v, v + suffix);
            if (c.head)
                for (std::size_t i = 0; i < args.size(); ++i) renaming[c.head->args[i]] = args[i];
            for (const auto& [from, to] : renaming) vars.insert(to);
            for (const auto& k : c.constraint) all.push_back(k.renamed(renaming));
            for (std::size_t i = 0; i < c.body.size(); ++i) {
                std::vector<std::string> child_args;
                for (const auto& a : c.body[i].args) child_args.push_back(renaming.at(a));
                if (!walk(n.children[i], c.body[i].pred, child_args)) return false;
            }
            return true;
        };

    if (t.clause_id < 1 || static_cast<std::size_t>(t.clause_id) > clauses.size()) return std::nullopt;
    const Clause& root = clauses[static_cast<std::size_t>(t.clause_id) - 1];
    if (root.head) root_args = canonical_vars(root.head->args.size());
    vars.insert(root_args.begin(), root_args.end());
    if (!walk(t, root.head_pred(), root_args)) return std::nullopt;
    Polyhedron whole({vars.begin(), vars.end()}, std::move(all));
    return project(whole, root_args);
}

namespace {

struct TreeNode {
    int clause_id;
    std::vector<std::shared_ptr<const TreeNode>> children;
    Polyhedron summary;  // over canonical head parameters
};

using NodePtr = std::shared_ptr<const TreeNode>;

DerivTree to_tree(const TreeNode& n) {
    DerivTree t{n.clause_id, {}};
    for (const auto& c : n.children) t.children.push_back(to_tree(*c));
    return t;
}

}  // namespace

struct TreeStream::Impl {
    const Program& program;
    PredRef root;
    std::size_t max_nodes;
    std::set<int> unweighted;
    std::map<PredRef, std::vector<const Clause*>> by_head;
    std::map<std::pair<PredRef, std::size_t>, std::vector<NodePtr>> memo;
    std::set<std::pair<PredRef, std::size_t>> in_progress;

    std::size_t next_size = 0;
    std::vector<DerivTree> buffer;
    std::size_t buffer_pos = 0;

    Impl(const Program& p, PredRef r, std::size_t m, std::set<int> u)
        : program(p), root(std::move(r)), max_nodes(m), unweighted(std::move(u)) {
        for (const auto& c : p.clauses()) by_head[c.head_pred()].push_back(&c);
        // Trees built only from unweighted clauses have size 0.
        next_size = unweighted.empty() ? 1 : 0;
    }

    const std::vector<NodePtr>& trees(const PredRef& pred, std::size_t size) {
        const auto key = std::make_pair(pred, size);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (!in_progress.insert(key).second) throw std::logic_error("cycle among unweighted clauses");
        std::vector<NodePtr> out;
        if (auto it = by_head.find(pred); it != by_head.end())
            for (const Clause* c : it->second) build(*c, size, out);
        in_progress.erase(key);
        return memo[key] = std::move(out);
    }

    void build(const Clause& c, std::size_t size, std::vector<NodePtr>& out) {
        const std::size_t w = unweighted.count(c.id) ? 0 : 1;
        if (size < w) return;
        const std::size_t rem = size - w;
        if (c.body.empty() && rem != 0) return;

        const auto vs = c.vars();
        const std::vector<std::string> vars(vs.begin(), vs.end());
        std::vector<std::string> head_args;
        if (c.head) head_args = c.head->args;
        std::map<std::string, std::string> to_canonical;
        for (std::size_t i = 0; i < head_args.size(); ++i) to_canonical.emplace(head_args[i], canonical_var(i));

        std::vector<NodePtr> chosen;
        std::function<void(std::size_t, std::size_t, const Polyhedron&)> choose = [&](std::size_t i, std::size_t left,
                                                                                      const Polyhedron& body) {
            if (i == c.body.size()) {
                if (left != 0) return;
                Polyhedron summary = project(body, head_args);
                if (summary.is_empty()) return;
                out.push_back(std::make_shared<TreeNode>(TreeNode{c.id, chosen, summary.renamed(to_canonical)}));
                return;
            }
            const Atom& atom = c.body[i];
            std::map<std::string, std::string> to_args;
            for (std::size_t a = 0; a < atom.args.size(); ++a) to_args.emplace(canonical_var(a), atom.args[a]);
            const bool last = i + 1 == c.body.size();
            for (std::size_t s = last ? left : 0; s <= left; ++s) {
                for (const auto& child : trees(atom.pred, s)) {
                    Polyhedron next = body;
                    next.add_all(child->summary.renamed(to_args).constraints());
                    if (next.is_empty()) continue;
                    chosen.push_back(child);
                    choose(i + 1, left - s, next);
                    chosen.pop_back();
                }
            }
        };
        Polyhedron body(vars, c.constraint);
        if (!body.is_empty()) choose(0, rem, body);
    }

    std::optional<DerivTree> next() {
        while (buffer_pos == buffer.size()) {
            if (next_size > max_nodes) return std::nullopt;
            buffer.clear();
            buffer_pos = 0;
            for (const auto& n : trees(root, next_size)) buffer.push_back(to_tree(*n));
            std::sort(buffer.begin(), buffer.end());
            ++next_size;
        }
        return buffer[buffer_pos++];
    }
};

TreeStream::TreeStream(const Program& p, const PredRef& root, std::size_t max_nodes, std::set<int> unweighted)
    : impl_(std::make_unique<Impl>(p, root, max_nodes, std::move(unweighted))) {}
TreeStream::~TreeStream() = default;
TreeStream::TreeStream(TreeStream&&) noexcept = default;
TreeStream& TreeStream::operator=(TreeStream&&) noexcept = default;

std::optional<DerivTree> TreeStream::next() { return impl_->next(); }

std::vector<DerivTree> enumerate(const Program& p, const PredRef& root, std::size_t max_nodes,
                                 std::set<int> unweighted) {
    TreeStream s(p, root, max_nodes, std::move(unweighted));
    std::vector<DerivTree> out;
    while (auto t = s.next()) out.push_back(std::move(*t));
    return out;
}

DerivTree contract_unit_steps(const DerivTree& t, const std::set<int>& unit, const std::vector<int>& relabel) {
    if (unit.count(t.clause_id)) {
        if (t.children.size() != 1) throw std::invalid_argument("unit step without exactly one child");
        return contract_unit_steps(t.children.front(), unit, relabel);
    }
    DerivTree out{t.clause_id, {}};
    if (!relabel.empty()) out.clause_id = relabel.at(static_cast<std::size_t>(t.clause_id) - 1);
    for (const auto& c : t.children) out.children.push_back(contract_unit_steps(c, unit, relabel));
    return out;
}

}  // namespace dimsolve
