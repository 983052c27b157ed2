#pragma once

// Tokenizer and shared parsing helpers for the program and model formats.

#include "dimsolve/chc.hpp"
#include "dimsolve/parser.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dimsolve::detail {

enum class Tok { Ident, Var, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view text);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_punct(std::string_view p, std::size_t ahead = 0) const;
    bool accept(std::string_view p);
    const Token& expect(std::string_view p);
    const Token& expect(Tok kind, const char* what);
    [[noreturn]] void fail(const std::string& msg) const;
    [[noreturn]] static void fail_at(const Token& t, const std::string& msg);

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// linexpr REL linexpr
AtomicConstraint parse_constraint(TokenStream& ts);

}  // namespace dimsolve::detail
