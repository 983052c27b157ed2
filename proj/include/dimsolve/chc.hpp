#pragma once

#include "dimsolve/linexpr.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimsolve {

/// Dimension annotation of a predicate: p^{=d} is printed `p(d)`,
/// p^{<=d} is printed `p[d]`.
struct DimIndex {
    enum class Kind { Exactly, AtMost };
    Kind kind = Kind::Exactly;
    int d = 0;

    static DimIndex exactly(int d) { return {Kind::Exactly, d}; }
    static DimIndex at_most(int d) { return {Kind::AtMost, d}; }

    auto operator<=>(const DimIndex&) const = default;
};

/// Plain predicate name or an indexed copy of one.
struct PredRef {
    std::string name;
    std::optional<DimIndex> index;

    PredRef() = default;
    PredRef(std::string n) : name(std::move(n)) {}
    PredRef(std::string n, DimIndex idx) : name(std::move(n)), index(idx) {}

    bool is_indexed() const { return index.has_value(); }
    bool is_false() const { return name == "false"; }
    PredRef base() const { return PredRef(name); }

    auto operator<=>(const PredRef&) const = default;
};

std::string to_string(const PredRef& p);

struct Atom {
    PredRef pred;
    std::vector<std::string> args;

    bool operator==(const Atom&) const = default;
};

/// `head <- constraint, body`. An absent head is the reserved `false`.
struct Clause {
    int id = 0;
    std::optional<Atom> head;
    std::vector<AtomicConstraint> constraint;
    std::vector<Atom> body;

    bool is_fact() const { return body.empty(); }
    bool is_integrity() const { return !head.has_value(); }
    /// Head predicate; the plain `false` for integrity constraints.
    PredRef head_pred() const { return head ? head->pred : PredRef("false"); }
    std::set<std::string> vars() const;

    bool operator==(const Clause&) const = default;
};

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Ordered clause list plus the arity of every base predicate name.
class Program {
public:
    Program() = default;
    /// Renumbers clause ids 1..n and checks arity consistency.
    explicit Program(std::vector<Clause> clauses);

    const std::vector<Clause>& clauses() const { return clauses_; }
    const std::map<std::string, std::size_t>& signature() const { return signature_; }
    std::size_t arity(const std::string& name) const;
    /// Base names in signature order, `false` included when it occurs.
    std::vector<std::string> predicates() const;
    bool has_indexed() const;
    /// Largest dimension index used; -1 when there is none.
    int max_index() const;

    bool operator==(const Program&) const = default;

private:
    std::vector<Clause> clauses_;
    std::map<std::string, std::size_t> signature_;
};

/// Every clause has at most one body atom.
bool is_linear(const Program& p);
bool is_linear(const Clause& c);

/// Fresh variable name not in `used`: the first free one of A..Z, A1..
std::string fresh_var(const std::set<std::string>& used);

/// Replaces literal and repeated atom arguments by fresh variables bound
/// with equalities. Idempotent.
Clause normalize_clause(Clause c);

/// Clause with variables renamed by first occurrence (head, then body atoms,
/// then remaining constraint variables by name) and constraints sorted.
/// Two clauses equal up to renaming have equal canonical forms.
Clause canonical_form(const Clause& c);

std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
/// One clause per line, each terminated by `.`; empty program prints "".
std::string to_string(const Program& p);

}  // namespace dimsolve
