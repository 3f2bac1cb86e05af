#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace symdyn::frontend::detail {

namespace {

// Length in bytes of the UTF-8 sequence starting at s[i], or 0 if malformed.
std::size_t utf8_length(std::string_view s, std::size_t i) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) return 1;
    if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    else return 0;
    if (i + len > s.size()) return 0;
    for (std::size_t k = 1; k < len; ++k) {
        if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
    }
    return len;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : s_(text) {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= s_.size(); ++i) {
            if (i == s_.size() || s_[i] == '\n') {
                auto line = std::string(s_.substr(start, i - start));
                if (!line.empty() && line.back() == '\r') line.pop_back();
                out_.lines.push_back(std::move(line));
                start = i + 1;
            }
        }
    }

    LexResult run() {
        while (true) {
            skip_space();
            if (i_ >= s_.size()) break;
            const auto c = static_cast<unsigned char>(s_[i_]);
            if (c == '"') {
                string_token();
            } else if (std::isdigit(c)) {
                number_token();
            } else if (ident_start(c)) {
                ident_token();
            } else if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
                punct("->", 2);
            } else if (std::string_view("{}[](),;:=+-").find(static_cast<char>(c)) != std::string_view::npos) {
                punct(std::string(1, static_cast<char>(c)), 1);
            } else {
                error("unexpected character '" + std::string(s_.substr(i_, std::max<std::size_t>(1, utf8_length(s_, i_)))) + "'", pos());
                advance();
            }
        }
        Token end;
        end.kind = Tok::end;
        end.pos = pos();
        out_.tokens.push_back(std::move(end));
        return std::move(out_);
    }

private:
    Position pos() const { return {line_, col_}; }

    // Moves past one scalar.
    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
            ++i_;
            return;
        }
        const auto len = utf8_length(s_, i_);
        i_ += len == 0 ? 1 : len;
        ++col_;
    }

    void skip_space() {
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    void error(std::string message, Position at) {
        Diagnostic d;
        d.message = std::move(message);
        d.position = at;
        d.excerpt = at.line <= out_.lines.size() ? out_.lines[at.line - 1] : "";
        out_.diagnostics.push_back(std::move(d));
    }

    void punct(std::string text, std::size_t len) {
        Token t;
        t.kind = Tok::punct;
        t.text = std::move(text);
        t.pos = pos();
        for (std::size_t k = 0; k < len; ++k) advance();
        out_.tokens.push_back(std::move(t));
    }

    void ident_token() {
        Token t;
        t.kind = Tok::ident;
        t.pos = pos();
        const std::size_t begin = i_;
        while (i_ < s_.size()) {
            const auto c = static_cast<unsigned char>(s_[i_]);
            // '-' joins words as in cover-of, but never swallows an arrow.
            const bool joiner = c == '-' && i_ + 1 < s_.size() && ident_start(static_cast<unsigned char>(s_[i_ + 1]));
            if (!ident_char(c) && !joiner) break;
            if (c >= 0x80 && utf8_length(s_, i_) == 0) {
                error("invalid UTF-8 byte", pos());
            }
            advance();
        }
        t.text = std::string(s_.substr(begin, i_ - begin));
        out_.tokens.push_back(std::move(t));
    }

    void number_token() {
        Token t;
        t.kind = Tok::number;
        t.pos = pos();
        const std::size_t begin = i_;
        bool integer = true;
        auto digits = [&] {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) advance();
        };
        digits();
        if (i_ + 1 < s_.size() && s_[i_] == '.' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
            integer = false;
            advance();
            digits();
        }
        if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
            if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                integer = false;
                while (i_ < j) advance();
                digits();
            }
        }
        t.text = std::string(s_.substr(begin, i_ - begin));
        t.integer = integer;
        t.value = std::strtod(t.text.c_str(), nullptr);
        if (i_ < s_.size() && s_[i_] == 'i' &&
            (i_ + 1 >= s_.size() || !ident_char(static_cast<unsigned char>(s_[i_ + 1])))) {
            t.imaginary = true;
            t.integer = false;
            advance();
        }
        out_.tokens.push_back(std::move(t));
    }

    void string_token() {
        Token t;
        t.kind = Tok::string;
        t.pos = pos();
        advance();
        while (true) {
            if (i_ >= s_.size() || s_[i_] == '\n') {
                error("unterminated string", t.pos);
                break;
            }
            if (s_[i_] == '"') {
                advance();
                break;
            }
            std::size_t len = utf8_length(s_, i_);
            if (len == 0) {
                error("invalid UTF-8 byte in string", pos());
                advance();
                continue;
            }
            if (s_[i_] == '\\' && i_ + 1 < s_.size() && (s_[i_ + 1] == '"' || s_[i_ + 1] == '\\')) {
                advance();
                len = 1;
            }
            t.scalar_pos.push_back(pos());
            t.scalars.emplace_back(s_.substr(i_, len));
            t.text += s_.substr(i_, len);
            advance();
        }
        out_.tokens.push_back(std::move(t));
    }

    std::string_view s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    LexResult out_;
};

}  // namespace

LexResult lex(std::string_view text) { return Lexer(text).run(); }

std::size_t scalar_count(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size();) {
        const auto len = utf8_length(s, i);
        i += len == 0 ? 1 : len;
        ++n;
    }
    return n;
}

}  // namespace symdyn::frontend::detail
