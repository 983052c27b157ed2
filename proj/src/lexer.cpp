#include "lexer.hpp"

#include <cctype>

namespace dimsolve {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

namespace detail {

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const char* const puncts[] = {":-", "=<", ">=", "<=", "=", "<", ">", "(", ")", "[", "]", ",", ".", "+", "-", "*"};
    while (i < text.size()) {
        const unsigned char ch = static_cast<unsigned char>(text[i]);
        if (std::isspace(ch)) {
            advance(1);
            continue;
        }
        if (ch == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        const int l = line, c = col;
        if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            std::string word(text.substr(i, j - i));
            Tok kind = (std::islower(ch)) ? Tok::Ident : Tok::Var;
            out.push_back({kind, word, l, c});
            advance(j - i);
            continue;
        }
        if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Int, std::string(text.substr(i, j - i)), l, c});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const char* p : puncts) {
            std::string_view pv(p);
            if (text.substr(i, pv.size()) == pv) {
                out.push_back({Tok::Punct, std::string(pv), l, c});
                advance(pv.size());
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(std::string("unexpected character '") + text[i] + "'", l, c);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == p;
}

bool TokenStream::accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
}

const Token& TokenStream::expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    return next();
}

const Token& TokenStream::expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
}

void TokenStream::fail(const std::string& msg) const {
    const Token& t = peek();
    fail_at(t, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
}

void TokenStream::fail_at(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

namespace {

// term := INT | INT "*" VAR | VAR
LinExpr parse_term(TokenStream& ts) {
    const Token& t = ts.peek();
    if (t.kind == Tok::Var) {
        std::string name = ts.next().text;
        if (ts.is_punct("*")) ts.fail("non-linear term");
        return LinExpr::var(name);
    }
    if (t.kind == Tok::Int) {
        Rational k(Integer(ts.next().text));
        if (ts.accept("*")) {
            const Token& v = ts.expect(Tok::Var, "variable after '*'");
            if (ts.is_punct("*")) ts.fail("non-linear term");
            return LinExpr::var(v.text, k);
        }
        return LinExpr(k);
    }
    ts.fail("expected a term");
}

LinExpr parse_signed_term(TokenStream& ts) {
    bool negative = false;
    while (ts.is_punct("-") || ts.is_punct("+")) negative ^= ts.next().text == "-";
    LinExpr e = parse_term(ts);
    return negative ? -e : e;
}

LinExpr parse_linexpr(TokenStream& ts) {
    LinExpr e = parse_signed_term(ts);
    while (ts.is_punct("+") || ts.is_punct("-")) {
        bool minus = ts.next().text == "-";
        LinExpr t = parse_signed_term(ts);
        if (minus)
            e -= t;
        else
            e += t;
    }
    return e;
}

}  // namespace

AtomicConstraint parse_constraint(TokenStream& ts) {
    LinExpr lhs = parse_linexpr(ts);
    const Token& r = ts.peek();
    Rel rel;
    if (r.kind != Tok::Punct) ts.fail("expected a relation");
    if (r.text == "=")
        rel = Rel::Eq;
    else if (r.text == "=<" || r.text == "<=")
        rel = Rel::Le;
    else if (r.text == "<")
        rel = Rel::Lt;
    else if (r.text == ">=")
        rel = Rel::Ge;
    else if (r.text == ">")
        rel = Rel::Gt;
    else
        ts.fail("expected a relation");
    ts.next();
    LinExpr rhs = parse_linexpr(ts);
    return AtomicConstraint(lhs, rel, rhs);
}

}  // namespace detail
}  // namespace dimsolve
