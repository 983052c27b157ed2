#include "dimsolve/model.hpp"

#include "dimsolve/kdim.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dimsolve {

Polyhedron ConstrainedFact::instantiate(const std::vector<std::string>& args) const {
    if (args.size() != params.size())
        throw ArityError("fact for " + to_string(pred) + " applied to " + std::to_string(args.size()) + " arguments");
    std::map<std::string, std::string> renaming;
    for (std::size_t i = 0; i < params.size(); ++i) renaming.emplace(params[i], args[i]);
    return constraint.renamed(renaming);
}

void Model::add(ConstrainedFact fact) {
    if (fact.pred.is_false()) throw std::invalid_argument("false is always interpreted as empty");
    if (fact.constraint.dims() != fact.params) {
        fact.constraint = fact.constraint.is_empty() ? Polyhedron::empty(fact.params)
                                                     : Polyhedron(fact.params, fact.constraint.constraints());
    }
    for (const auto& [pred, facts] : facts_) {
        if (pred.name == fact.pred.name && !facts.empty() && facts.front().params.size() != fact.params.size())
            throw ArityError("facts for " + pred.name + " with arity " + std::to_string(fact.params.size()) + " and " +
                             std::to_string(facts.front().params.size()));
    }
    if (fact.constraint.is_empty()) return;
    facts_[fact.pred].push_back(std::move(fact));
}

void Model::set(const PredRef& pred, std::vector<ConstrainedFact> facts) {
    facts_.erase(pred);
    for (auto& f : facts) {
        f.pred = pred;
        add(std::move(f));
    }
}

const std::vector<ConstrainedFact>& Model::facts(const PredRef& pred) const {
    static const std::vector<ConstrainedFact> none;
    auto it = facts_.find(pred);
    return it == facts_.end() ? none : it->second;
}

std::size_t Model::size() const {
    std::size_t n = 0;
    for (const auto& [pred, facts] : facts_) n += facts.size();
    return n;
}

namespace {

std::vector<std::string> sorted_vars(const Clause& c) {
    auto vs = c.vars();
    return {vs.begin(), vs.end()};
}

// Is `region` covered by the union of heads[i..]? Regions left after
// subtracting a head are split on the negations of its constraints.
class Cover {
public:
    Cover(const std::vector<Polyhedron>& heads, std::size_t& budget) : heads_(heads), budget_(budget) {}

    bool covered(const Polyhedron& region, std::size_t i) {
        if (region.is_empty()) return true;
        if (i == heads_.size()) return false;
        if (budget_ == 0) return false;
        --budget_;
        const Polyhedron& h = heads_[i];
        if (entails(region, h)) return true;
        if (meet(region, h).is_empty()) return covered(region, i + 1);
        // region \ h = union over j of region & a_1 & ... & a_{j-1} & not a_j
        Polyhedron inside = region;
        for (const auto& a : h.constraints()) {
            if (entails(inside, a)) continue;
            for (const auto& neg : a.negations()) {
                Polyhedron piece = inside;
                piece.add(neg);
                if (!covered(piece, i + 1)) return false;
            }
            inside.add(a);
            if (inside.is_empty()) break;
        }
        return true;
    }

private:
    const std::vector<Polyhedron>& heads_;
    std::size_t& budget_;
};

}  // namespace

bool satisfies_clause(const Model& m, const Clause& c, const CheckOptions& opts) {
    const auto vars = sorted_vars(c);
    std::vector<Polyhedron> heads;
    if (c.head)
        for (const auto& f : m.facts(c.head->pred)) heads.push_back(Polyhedron(vars, f.instantiate(c.head->args).constraints()));

    // Each body atom contributes its disjuncts over the clause variables.
    std::vector<std::vector<Polyhedron>> choices;
    for (const auto& a : c.body) {
        const auto& facts = m.facts(a.pred);
        if (facts.empty()) return true;
        std::vector<Polyhedron> opts_for_atom;
        for (const auto& f : facts) opts_for_atom.push_back(f.instantiate(a.args));
        choices.push_back(std::move(opts_for_atom));
    }

    std::size_t budget = opts.split_budget;
    std::function<bool(std::size_t, const Polyhedron&)> all_choices = [&](std::size_t i, const Polyhedron& body) {
        if (body.is_empty()) return true;
        if (i == choices.size()) {
            if (heads.empty()) return false;
            Cover cover(heads, budget);
            return cover.covered(body, 0);
        }
        for (const auto& d : choices[i]) {
            Polyhedron next = body;
            next.add_all(d.constraints());
            if (!all_choices(i + 1, next)) return false;
        }
        return true;
    };
    return all_choices(0, Polyhedron(vars, c.constraint));
}

std::vector<int> violated_clauses(const Model& m, const Program& p, const CheckOptions& opts) {
    // an indexed model is read against an index-free program by erasing
    const Model erased = p.has_indexed() ? m : erase_indices(m);
    std::vector<int> out;
    for (const auto& c : p.clauses())
        if (!satisfies_clause(erased, c, opts)) out.push_back(c.id);
    return out;
}

bool inductive(const Model& m, const Program& p, const CheckOptions& opts) {
    const Model erased = p.has_indexed() ? m : erase_indices(m);
    return std::all_of(p.clauses().begin(), p.clauses().end(),
                       [&](const Clause& c) { return satisfies_clause(erased, c, opts); });
}

Program linearize(const Program& p, const Model& s) {
    const int k = p.max_index() - 1;
    std::vector<Clause> out;
    for (const auto& c : p.clauses()) {
        std::vector<Atom> kept;
        std::vector<const Atom*> replaced;
        for (const auto& a : c.body) {
            if (a.pred.index && a.pred.index->d <= k)
                replaced.push_back(&a);
            else
                kept.push_back(a);
        }

        std::vector<std::string> keep_vars;
        if (c.head) keep_vars = c.head->args;
        for (const auto& a : kept)
            for (const auto& v : a.args)
                if (std::find(keep_vars.begin(), keep_vars.end(), v) == keep_vars.end()) keep_vars.push_back(v);

        const auto vars = sorted_vars(c);
        std::function<void(std::size_t, const Polyhedron&)> expand = [&](std::size_t i, const Polyhedron& body) {
            if (body.is_empty()) return;
            if (i == replaced.size()) {
                Polyhedron projected = simplify(project(body, keep_vars));
                if (projected.is_empty()) return;
                out.push_back(Clause{0, c.head, projected.constraints(), kept});
                return;
            }
            const Atom& a = *replaced[i];
            for (const auto& f : s.facts(a.pred)) {
                Polyhedron next = body;
                next.add_all(f.instantiate(a.args).constraints());
                expand(i + 1, next);
            }
        };
        expand(0, Polyhedron(vars, c.constraint));
    }
    return Program(std::move(out));
}

}  // namespace dimsolve
