#include "dimsolve/chc.hpp"

#include <algorithm>
#include <sstream>

namespace dimsolve {

std::string to_string(const PredRef& p) {
    if (!p.index) return p.name;
    const auto d = std::to_string(p.index->d);
    return p.index->kind == DimIndex::Kind::Exactly ? p.name + "(" + d + ")" : p.name + "[" + d + "]";
}

std::set<std::string> Clause::vars() const {
    std::set<std::string> out;
    if (head) out.insert(head->args.begin(), head->args.end());
    for (const auto& a : body) out.insert(a.args.begin(), a.args.end());
    for (const auto& c : constraint) c.collect_vars(out);
    return out;
}

Program::Program(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    int id = 1;
    auto record = [this](const PredRef& p, std::size_t arity) {
        auto [it, inserted] = signature_.emplace(p.name, arity);
        if (!inserted && it->second != arity)
            throw ArityError("predicate " + p.name + " used with arity " + std::to_string(arity) + " and " +
                             std::to_string(it->second));
    };
    for (auto& c : clauses_) {
        c.id = id++;
        if (c.head)
            record(c.head->pred, c.head->args.size());
        else
            record(PredRef("false"), 0);
        for (const auto& a : c.body) record(a.pred, a.args.size());
    }
}

std::size_t Program::arity(const std::string& name) const {
    auto it = signature_.find(name);
    if (it == signature_.end()) throw std::out_of_range("unknown predicate " + name);
    return it->second;
}

std::vector<std::string> Program::predicates() const {
    std::vector<std::string> out;
    for (const auto& [name, arity] : signature_) out.push_back(name);
    return out;
}

bool Program::has_indexed() const { return max_index() >= 0; }

int Program::max_index() const {
    int best = -1;
    auto see = [&best](const PredRef& p) {
        if (p.index) best = std::max(best, p.index->d);
    };
    for (const auto& c : clauses_) {
        if (c.head) see(c.head->pred);
        for (const auto& a : c.body) see(a.pred);
    }
    return best;
}

bool is_linear(const Clause& c) { return c.body.size() <= 1; }

bool is_linear(const Program& p) {
    return std::all_of(p.clauses().begin(), p.clauses().end(), [](const Clause& c) { return is_linear(c); });
}

std::string fresh_var(const std::set<std::string>& used) {
    for (std::size_t i = 0;; ++i) {
        std::string v = canonical_var(i);
        if (!used.count(v)) return v;
    }
}

namespace {

void split_repeats(Atom& atom, std::set<std::string>& used, std::vector<AtomicConstraint>& extra) {
    std::set<std::string> seen;
    for (auto& arg : atom.args) {
        if (seen.insert(arg).second) continue;
        std::string v = fresh_var(used);
        used.insert(v);
        extra.push_back(AtomicConstraint(LinExpr::var(v), Rel::Eq, LinExpr::var(arg)));
        arg = v;
    }
}

}  // namespace

Clause normalize_clause(Clause c) {
    std::set<std::string> used = c.vars();
    std::vector<AtomicConstraint> extra;
    if (c.head) split_repeats(*c.head, used, extra);
    for (auto& a : c.body) split_repeats(a, used, extra);
    c.constraint.insert(c.constraint.end(), extra.begin(), extra.end());
    return c;
}

Clause canonical_form(const Clause& c) {
    std::map<std::string, std::string> renaming;
    std::size_t next = 0;
    auto visit = [&](const std::string& v) {
        if (!renaming.count(v)) renaming.emplace(v, "V" + std::to_string(next++));
    };
    if (c.head)
        for (const auto& v : c.head->args) visit(v);
    for (const auto& a : c.body)
        for (const auto& v : a.args) visit(v);
    for (const auto& v : c.vars()) visit(v);

    Clause out;
    out.id = c.id;
    auto rename_atom = [&](const Atom& a) {
        Atom r{a.pred, {}};
        for (const auto& v : a.args) r.args.push_back(renaming.at(v));
        return r;
    };
    if (c.head) out.head = rename_atom(*c.head);
    for (const auto& a : c.body) out.body.push_back(rename_atom(a));
    for (const auto& k : c.constraint) {
        auto r = k.renamed(renaming);
        if (!r.is_tautology()) out.constraint.push_back(r);
    }
    std::sort(out.constraint.begin(), out.constraint.end());
    out.constraint.erase(std::unique(out.constraint.begin(), out.constraint.end()), out.constraint.end());
    return out;
}

std::string to_string(const Atom& a) {
    std::string out = to_string(a.pred);
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i];
    }
    return out + ')';
}

std::string to_string(const Clause& c) {
    std::string out = c.head ? to_string(*c.head) : "false";
    std::vector<std::string> items;
    for (const auto& k : c.constraint) items.push_back(to_string(k));
    for (const auto& a : c.body) items.push_back(to_string(a));
    if (!items.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out += ", ";
            out += items[i];
        }
    }
    return out + '.';
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& c : p.clauses()) out += to_string(c) + '\n';
    return out;
}

}  // namespace dimsolve
