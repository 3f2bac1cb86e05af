#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/frontend.hpp"

namespace symdyn::frontend::detail {

enum class Tok { ident, number, string, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;  // ident/number text, punct spelling, string contents
    Position pos;
    // number
    bool integer = false;
    bool imaginary = false;
    double value = 0.0;
    // string: one entry per Unicode scalar of the contents
    std::vector<std::string> scalars;
    std::vector<Position> scalar_pos;
};

struct LexResult {
    std::vector<Token> tokens;  // always ends with Tok::end
    std::vector<Diagnostic> diagnostics;
    std::vector<std::string> lines;  // source lines, for excerpts
};

LexResult lex(std::string_view text);

/// Number of Unicode scalars in a UTF-8 string (invalid bytes count as one each).
std::size_t scalar_count(std::string_view s);

}  // namespace symdyn::frontend::detail
