#pragma once

#include "dimsolve/chc.hpp"
#include "dimsolve/polyhedron.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dimsolve {

/// p(params) <- constraint
struct ConstrainedFact {
    PredRef pred;
    std::vector<std::string> params;
    Polyhedron constraint;

    /// Constraint expressed over `args` instead of `params`.
    Polyhedron instantiate(const std::vector<std::string>& args) const;

    bool operator==(const ConstrainedFact&) const = default;
};

/// Interpretation of each predicate as a disjunction of constrained facts.
/// Predicates without facts are interpreted as empty; `false` never has
/// facts.
class Model {
public:
    /// Infeasible facts are dropped. Throws ArityError when the arity
    /// differs from earlier facts of the same predicate.
    void add(ConstrainedFact fact);
    void set(const PredRef& pred, std::vector<ConstrainedFact> facts);

    const std::vector<ConstrainedFact>& facts(const PredRef& pred) const;
    const std::map<PredRef, std::vector<ConstrainedFact>>& all() const { return facts_; }
    bool empty() const { return facts_.empty(); }
    std::size_t size() const;

    bool operator==(const Model&) const = default;

private:
    std::map<PredRef, std::vector<ConstrainedFact>> facts_;
};

struct CheckOptions {
    /// Region budget for entailment into a disjunction; exhausting it
    /// answers "not satisfied".
    std::size_t split_budget = 10000;
};

/// Every instance of the body allowed by the model lies in the head's
/// interpretation (for `false` heads: no instance exists).
bool satisfies_clause(const Model& m, const Clause& c, const CheckOptions& opts = {});

/// Ids of the clauses of `p` the model violates; indices are erased first
/// when `p` has none.
std::vector<int> violated_clauses(const Model& m, const Program& p, const CheckOptions& opts = {});

/// No clause is violated, in the sense of violated_clauses.
bool inductive(const Model& m, const Program& p, const CheckOptions& opts = {});

/// Replaces every body atom of index <= k by its interpretation in `s`,
/// where k + 1 is the largest index in `p`. A disjunctive interpretation
/// splits the clause; clauses that become unsatisfiable are dropped and the
/// remaining constraints are projected onto the clause's atoms.
Program linearize(const Program& p, const Model& s);

/// Lines `pred(A,B) :- [c1,c2].`, grouped by base name, then by index.
std::string to_string(const Model& m);
Model parse_model(std::string_view text);

}  // namespace dimsolve
