#include "dimsolve/model.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <tuple>

namespace dimsolve {

namespace {

// name, plain before indexed, then d, exactly-d before at-most-d
auto listing_key(const PredRef& p) {
    const int d = p.index ? p.index->d : -1;
    const int kind = p.index ? static_cast<int>(p.index->kind) : -1;
    return std::tuple(p.name, d, kind);
}

}  // namespace

std::string to_string(const Model& m) {
    std::vector<const PredRef*> preds;
    for (const auto& [pred, facts] : m.all()) preds.push_back(&pred);
    std::sort(preds.begin(), preds.end(), [](const PredRef* a, const PredRef* b) { return listing_key(*a) < listing_key(*b); });

    std::string out;
    for (const PredRef* pred : preds) {
        for (const auto& f : m.facts(*pred)) {
            out += to_string(*pred);
            if (!f.params.empty()) {
                out += '(';
                for (std::size_t i = 0; i < f.params.size(); ++i) {
                    if (i) out += ',';
                    out += f.params[i];
                }
                out += ')';
            }
            out += " :- [" + to_string(f.constraint) + "].\n";
        }
    }
    return out;
}

Model parse_model(std::string_view text) {
    using detail::Tok;
    detail::TokenStream ts(detail::tokenize(text));
    Model m;
    while (!ts.at_end()) {
        const auto& name_tok = ts.expect(Tok::Ident, "predicate name");
        PredRef pred(name_tok.text);
        if (ts.is_punct("(") && ts.peek(1).kind == Tok::Int) {
            ts.next();
            pred.index = DimIndex::exactly(std::stoi(ts.next().text));
            ts.expect(")");
        } else if (ts.accept("[")) {
            pred.index = DimIndex::at_most(std::stoi(ts.expect(Tok::Int, "dimension index").text));
            ts.expect("]");
        }
        std::vector<std::string> params;
        if (ts.accept("(")) {
            do params.push_back(ts.expect(Tok::Var, "parameter").text);
            while (ts.accept(","));
            ts.expect(")");
        }
        ts.expect(":-");
        ts.expect("[");
        std::vector<AtomicConstraint> cs;
        if (!ts.is_punct("]")) {
            do cs.push_back(detail::parse_constraint(ts));
            while (ts.accept(","));
        }
        ts.expect("]");
        ts.expect(".");
        if (pred.is_false()) detail::TokenStream::fail_at(name_tok, "a model has no facts for false");
        std::set<std::string> vars;
        for (const auto& c : cs) c.collect_vars(vars);
        for (const auto& v : vars)
            if (std::find(params.begin(), params.end(), v) == params.end())
                detail::TokenStream::fail_at(name_tok, "variable " + v + " is not a parameter");
        try {
            m.add(ConstrainedFact{pred, params, Polyhedron(params, std::move(cs))});
        } catch (const ArityError& e) {
            detail::TokenStream::fail_at(name_tok, e.what());
        }
    }
    return m;
}

}  // namespace dimsolve
