#include "dimsolve/parser.hpp"

#include "lexer.hpp"

#include <fstream>
#include <sstream>
#include <variant>

namespace dimsolve {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

using RawArg = std::variant<std::string, Integer>;

struct RawAtom {
    std::string name;
    std::optional<DimIndex> index;
    std::vector<RawArg> args;
    // `name(INT)` with nothing after it: indexed nullary or a literal argument.
    bool ambiguous = false;
    Token where;
};

struct RawClause {
    RawAtom head;
    std::vector<AtomicConstraint> constraint;
    std::vector<RawAtom> body;
};

RawArg parse_arg(TokenStream& ts) {
    if (ts.peek().kind == Tok::Var) return ts.next().text;
    bool negative = ts.accept("-");
    const Token& t = ts.expect(Tok::Int, "variable or integer argument");
    Integer v(t.text);
    return negative ? Integer(-v) : v;
}

std::vector<RawArg> parse_args(TokenStream& ts) {
    std::vector<RawArg> args;
    ts.expect("(");
    args.push_back(parse_arg(ts));
    while (ts.accept(",")) args.push_back(parse_arg(ts));
    ts.expect(")");
    return args;
}

RawAtom parse_atom(TokenStream& ts) {
    RawAtom atom;
    atom.where = ts.expect(Tok::Ident, "predicate name");
    atom.name = atom.where.text;
    if (ts.accept("[")) {
        atom.index = DimIndex::at_most(std::stoi(ts.expect(Tok::Int, "dimension index").text));
        ts.expect("]");
        if (ts.is_punct("(")) atom.args = parse_args(ts);
        return atom;
    }
    if (!ts.is_punct("(")) return atom;
    // `name(INT)(args)` is an exactly-d atom.
    if (ts.peek(1).kind == Tok::Int && ts.is_punct(")", 2)) {
        int d = std::stoi(ts.peek(1).text);
        ts.next();
        ts.next();
        ts.next();
        if (ts.is_punct("(")) {
            atom.index = DimIndex::exactly(d);
            atom.args = parse_args(ts);
        } else {
            atom.ambiguous = true;
            atom.index = DimIndex::exactly(d);
        }
        return atom;
    }
    atom.args = parse_args(ts);
    return atom;
}

RawClause parse_clause(TokenStream& ts) {
    RawClause c;
    c.head = parse_atom(ts);
    if (ts.accept(":-")) {
        do {
            if (ts.peek().kind == Tok::Ident)
                c.body.push_back(parse_atom(ts));
            else
                c.constraint.push_back(detail::parse_constraint(ts));
        } while (ts.accept(","));
    }
    ts.expect(".");
    return c;
}

class ClauseBuilder {
public:
    ClauseBuilder(const RawClause& raw, bool indexed_program) : raw_(raw), indexed_(indexed_program) {
        for (const RawAtom* a : atoms())
            for (const auto& arg : a->args)
                if (auto* v = std::get_if<std::string>(&arg)) used_.insert(*v);
        std::set<std::string> cvars;
        for (const auto& k : raw.constraint) k.collect_vars(cvars);
        used_.insert(cvars.begin(), cvars.end());
    }

    Clause build() {
        Clause c;
        c.constraint = raw_.constraint;
        const RawAtom& h = raw_.head;
        if (h.name == "false" && !h.index && !h.ambiguous) {
            if (!h.args.empty()) TokenStream::fail_at(h.where, "false takes no arguments");
        } else {
            c.head = convert(h, c.constraint);
        }
        for (const auto& b : raw_.body) {
            if (b.name == "false" && !b.index) TokenStream::fail_at(b.where, "false may not appear in a clause body");
            c.body.push_back(convert(b, c.constraint));
        }
        return normalize_clause(std::move(c));
    }

private:
    std::vector<const RawAtom*> atoms() const {
        std::vector<const RawAtom*> out{&raw_.head};
        for (const auto& b : raw_.body) out.push_back(&b);
        return out;
    }

    Atom convert(const RawAtom& raw, std::vector<AtomicConstraint>& extra) {
        Atom atom;
        atom.pred.name = raw.name;
        std::vector<RawArg> args = raw.args;
        if (raw.ambiguous) {
            if (raw.name == "false" || indexed_) {
                atom.pred.index = raw.index;
            } else {
                args = {Integer(raw.index->d)};
            }
        } else {
            atom.pred.index = raw.index;
        }
        for (const auto& arg : args) {
            if (auto* v = std::get_if<std::string>(&arg)) {
                atom.args.push_back(*v);
                continue;
            }
            std::string fresh = fresh_var(used_);
            used_.insert(fresh);
            extra.push_back(AtomicConstraint(LinExpr::var(fresh), Rel::Eq, LinExpr(Rational(std::get<Integer>(arg)))));
            atom.args.push_back(fresh);
        }
        return atom;
    }

    const RawClause& raw_;
    bool indexed_;
    std::set<std::string> used_;
};

}  // namespace

Program parse_program(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    std::vector<RawClause> raw;
    while (!ts.at_end()) raw.push_back(parse_clause(ts));

    bool indexed = false;
    for (const auto& c : raw) {
        if (c.head.index && !c.head.ambiguous) indexed = true;
        for (const auto& b : c.body)
            if (b.index && !b.ambiguous) indexed = true;
    }

    std::vector<Clause> clauses;
    clauses.reserve(raw.size());
    for (const auto& r : raw) clauses.push_back(ClauseBuilder(r, indexed).build());
    return Program(std::move(clauses));
}

Program parse_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

}  // namespace dimsolve
