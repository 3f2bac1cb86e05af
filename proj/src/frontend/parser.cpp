#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"
#include "symdyn/arith.hpp"
#include "symdyn/frontend.hpp"

namespace symdyn::frontend {

using detail::Tok;
using detail::Token;

namespace {

constexpr std::string_view kDigits36 = "0123456789abcdefghijklmnopqrstuvwxyz";

int digit36(std::string_view s) {
    if (s.size() != 1) return -1;
    const auto p = kDigits36.find(s[0]);
    return p == std::string_view::npos ? -1 : static_cast<int>(p);
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct SyntaxError {};

// Source positions the resolver needs after parsing; kept out of the AST so
// that documents compare equal regardless of layout.
struct Extra {
    Position group_pos;
    std::vector<Token> blocks;  // morse block strings (prefix then cycle)
    std::vector<Token> psi;     // veech psi strings
    Position system_pos, observable_pos, kbsz_pos, n_pos;
};

const std::set<std::string, std::less<>> kKeywords = {"substitution", "morse", "rs", "veech", "observable", "experiment"};

class Parser {
public:
    explicit Parser(std::string_view text) {
        auto lexed = detail::lex(text);
        toks_ = std::move(lexed.tokens);
        lines_ = std::move(lexed.lines);
        diags_ = std::move(lexed.diagnostics);
    }

    ParseResult parse_document() {
        while (peek().kind != Tok::end) {
            try {
                declaration();
            } catch (const SyntaxError&) {
                recover();
            }
        }
        resolve();
        return finish();
    }

    ParseResult parse_lone_observable() {
        try {
            Declaration d;
            d.name = "_";
            d.span_begin = d.name_position = peek().pos;
            d.body = observable_expr();
            d.span_end = peek().pos;
            if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after observable", peek().pos);
            doc_.declarations.push_back(std::move(d));
            extras_.emplace_back();
        } catch (const SyntaxError&) {
        }
        return finish();
    }

private:
    // ---- token helpers ----
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::end) ++pos_;
        return t;
    }
    bool is_punct(std::string_view p, std::size_t k = 0) const {
        return peek(k).kind == Tok::punct && peek(k).text == p;
    }
    bool is_word(std::string_view w) const { return peek().kind == Tok::ident && peek().text == w; }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::end: return "end of input";
            case Tok::string: return "string \"" + t.text + "\"";
            default: return "'" + t.text + "'";
        }
    }

    void report(Diagnostic::Severity sev, std::string message, Position at) {
        Diagnostic d;
        d.severity = sev;
        d.message = std::move(message);
        d.position = at;
        d.excerpt = at.line >= 1 && at.line <= lines_.size() ? lines_[at.line - 1] : "";
        diags_.push_back(std::move(d));
    }
    void error(std::string message, Position at) { report(Diagnostic::Severity::error, std::move(message), at); }
    [[noreturn]] void fail(std::string message, Position at) {
        error(std::move(message), at);
        throw SyntaxError{};
    }

    const Token& expect_punct(std::string_view p, std::string_view context) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "' " + std::string(context) + ", found " + describe(peek()), peek().pos);
        return take();
    }
    const Token& expect_word(std::string_view w, std::string_view context) {
        if (!is_word(w)) fail("expected '" + std::string(w) + "' " + std::string(context) + ", found " + describe(peek()), peek().pos);
        return take();
    }
    const Token& expect_ident(std::string_view what) {
        if (peek().kind != Tok::ident) fail("expected " + std::string(what) + ", found " + describe(peek()), peek().pos);
        return take();
    }
    const Token& expect_string(std::string_view what) {
        if (peek().kind != Tok::string) fail("expected " + std::string(what) + " (a quoted string), found " + describe(peek()), peek().pos);
        return take();
    }
    std::uint64_t expect_uint(std::string_view what, std::uint64_t max = UINT32_MAX) {
        const Token& t = peek();
        if (t.kind != Tok::number || !t.integer) fail("expected " + std::string(what) + " (a nonnegative integer), found " + describe(t), t.pos);
        take();
        std::uint64_t v = 0;
        for (char c : t.text) {
            if (v > (max - static_cast<std::uint64_t>(c - '0')) / 10) fail(std::string(what) + " is too large", t.pos);
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
    }
    void optional_semicolon() {
        if (is_punct(";")) take();
    }

    void recover() {
        if (peek().kind != Tok::end) take();
        while (peek().kind != Tok::end) {
            const Token& t = peek();
            const bool line_start = pos_ == 0 || toks_[pos_ - 1].pos.line < t.pos.line;
            if (t.kind == Tok::ident && line_start && kKeywords.count(t.text)) return;
            take();
        }
    }

    // ---- declarations ----
    void declaration() {
        const Token& kw = peek();
        if (kw.kind != Tok::ident || !kKeywords.count(kw.text)) {
            fail("expected a declaration (substitution, morse, rs, veech, observable or experiment), found " + describe(kw), kw.pos);
        }
        take();
        const Token& name = expect_ident("a name after '" + kw.text + "'");
        Declaration d;
        d.name = name.text;
        d.span_begin = kw.pos;
        d.name_position = name.pos;
        Extra extra;
        if (kw.text == "substitution") d.body = substitution();
        else if (kw.text == "morse") d.body = morse(extra);
        else if (kw.text == "rs") d.body = rs();
        else if (kw.text == "veech") d.body = veech(extra);
        else if (kw.text == "observable") {
            expect_punct("=", "after the observable name");
            d.body = observable_expr();
        } else {
            d.body = experiment(extra);
        }
        d.span_end = pos_ > 0 ? toks_[pos_ - 1].pos : kw.pos;
        doc_.declarations.push_back(std::move(d));
        extras_.push_back(std::move(extra));
    }

    std::string letter(std::string_view context) {
        const Token& t = peek();
        if (t.kind != Tok::ident && t.kind != Tok::number) {
            fail("expected a letter " + std::string(context) + ", found " + describe(t), t.pos);
        }
        take();
        if (detail::scalar_count(t.text) != 1) error("letters are single characters, '" + t.text + "' is not", t.pos);
        return t.text;
    }

    SubstitutionDecl substitution() {
        SubstitutionDecl s;
        expect_word("on", "before the alphabet");
        expect_punct("{", "to open the alphabet");
        std::map<std::string, std::size_t> index;
        while (true) {
            const Position at = peek().pos;
            auto l = letter("in the alphabet");
            if (!index.emplace(l, s.letters.size()).second) error("letter '" + l + "' repeated in the alphabet", at);
            else s.letters.push_back(std::move(l));
            if (is_punct(",")) {
                take();
                continue;
            }
            expect_punct("}", "to close the alphabet");
            break;
        }
        if (is_word("seed")) {
            take();
            const Position at = peek().pos;
            auto l = letter("after 'seed'");
            if (!index.count(l)) error("seed '" + l + "' is not in the alphabet", at);
            s.seed = std::move(l);
        }
        const Token& open = expect_punct("{", "to open the rows");
        s.rows.assign(s.letters.size(), {});
        std::vector<bool> seen(s.letters.size(), false);
        std::optional<std::pair<std::size_t, std::string>> first_len;  // length, letter
        while (!is_punct("}")) {
            if (peek().kind == Tok::end) fail("unterminated substitution rows (missing '}')", open.pos);
            const Position lhs_pos = peek().pos;
            auto lhs = letter("at the start of a row");
            expect_punct("->", "after the row letter");
            const Token& row = expect_string("the image word");
            optional_semicolon();
            std::vector<std::string> image;
            for (std::size_t k = 0; k < row.scalars.size(); ++k) {
                if (!index.count(row.scalars[k])) {
                    error("letter '" + row.scalars[k] + "' in the row for '" + lhs + "' is not in the alphabet", row.scalar_pos[k]);
                }
                image.push_back(row.scalars[k]);
            }
            const auto it = index.find(lhs);
            if (it == index.end()) {
                error("row for '" + lhs + "', which is not in the alphabet", lhs_pos);
                continue;
            }
            if (seen[it->second]) {
                error("second row for '" + lhs + "'", lhs_pos);
                continue;
            }
            seen[it->second] = true;
            if (image.size() < 2) error("the image of '" + lhs + "' must have length >= 2", row.pos);
            if (!first_len) {
                first_len.emplace(image.size(), lhs);
            } else if (image.size() != first_len->first) {
                error("row for '" + lhs + "' has length " + std::to_string(image.size()) + " but the row for '" +
                          first_len->second + "' has length " + std::to_string(first_len->first),
                      row.pos);
            }
            s.rows[it->second] = std::move(image);
        }
        const Token& close = take();
        for (std::size_t a = 0; a < seen.size(); ++a) {
            if (!seen[a]) error("no row for letter '" + s.letters[a] + "'", close.pos);
        }
        return s;
    }

    GroupRef group(Extra& extra) {
        const Token& t = expect_ident("a group (Z2, Zn(k), Sym(r) or cover-of NAME)");
        extra.group_pos = t.pos;
        GroupRef g;
        if (t.text == "Z2") {
            g.kind = GroupRef::Kind::z2;
        } else if (t.text == "Zn" || t.text == "Sym") {
            expect_punct("(", "after " + t.text);
            const Position at = peek().pos;
            const auto k = expect_uint(t.text == "Zn" ? "the cyclic group order" : "the symmetric group degree");
            expect_punct(")", "after the group parameter");
            if (t.text == "Zn") {
                g.kind = GroupRef::Kind::zn;
                if (k < 1 || k > 10000) error("Zn(k) needs 1 <= k <= 10000", at);
            } else {
                g.kind = GroupRef::Kind::sym;
                if (k < 2 || k > 7) error("Sym(r) needs 2 <= r <= 7", at);
            }
            g.degree = static_cast<std::uint32_t>(k);
        } else if (t.text == "cover-of") {
            g.kind = GroupRef::Kind::cover_of;
            g.cover_name = expect_ident("a substitution name after 'cover-of'").text;
        } else {
            fail("unknown group '" + t.text + "' (expected Z2, Zn(k), Sym(r) or cover-of NAME)", t.pos);
        }
        return g;
    }

    // Checks a string of base-36 symbols; returns it unchanged.
    std::string symbols36(const Token& t, std::string_view what) {
        for (std::size_t k = 0; k < t.scalars.size(); ++k) {
            if (digit36(t.scalars[k]) < 0) {
                error("'" + t.scalars[k] + "' in " + std::string(what) + " is not a symbol (use 0-9, a-z)", t.scalar_pos[k]);
            }
        }
        return t.text;
    }

    MorseDecl morse(Extra& extra) {
        MorseDecl m;
        expect_word("over", "before the group");
        m.group = group(extra);
        expect_word("blocks", "before the block list");
        const Token& open = expect_punct("[", "to open the block list");
        bool cycle = false;
        while (true) {
            if (is_word("repeat")) {
                if (cycle) error("'repeat' appears twice", peek().pos);
                take();
                cycle = true;
            }
            const Token& b = expect_string("a block");
            auto text = symbols36(b, "a block");
            if (b.scalars.size() < 2) error("blocks must have length >= 2", b.pos);
            else if (b.scalars[0] != "0") error("blocks must start with the identity 0", b.scalar_pos[0]);
            (cycle ? m.cycle : m.prefix).push_back(std::move(text));
            extra.blocks.push_back(b);
            if (is_punct(",")) {
                take();
                continue;
            }
            const Token& close = expect_punct("]", "to close the block list");
            if (!cycle) error("the block list needs a 'repeat' part", close.pos);
            break;
        }
        (void)open;
        return m;
    }

    RsDecl rs() {
        expect_word("pattern", "before the digit pattern");
        const Token& p = expect_string("a digit pattern");
        try {
            arith::DigitPattern check(p.text);
        } catch (const std::invalid_argument& e) {
            error(e.what(), p.pos);
        }
        return {p.text};
    }

    VeechDecl veech(Extra& extra) {
        VeechDecl v;
        expect_word("base", "before the odometer base");
        const Position at = peek().pos;
        v.base = static_cast<std::uint32_t>(expect_uint("the odometer base"));
        if (v.base < 2) error("the odometer base must be >= 2", at);
        expect_word("group", "before the group");
        v.group = group(extra);
        expect_word("psi", "before the psi sequence");
        if (peek().kind == Tok::string) {
            const Token& p = take();
            v.psi_prefix = symbols36(p, "psi");
            extra.psi.push_back(p);
        }
        expect_word("repeat", "before the repeated part of psi");
        const Token& c = expect_string("the repeated part of psi");
        v.psi_cycle = symbols36(c, "psi");
        if (c.scalars.empty()) error("the repeated part of psi is empty", c.pos);
        extra.psi.push_back(c);
        return v;
    }

    // [sign] term [(+|-) term], where a term is a number, an imaginary number or i.
    std::complex<double> complex_value() {
        auto term = [&](double sign, bool& imaginary) -> double {
            const Token& t = peek();
            if (t.kind == Tok::ident && t.text == "i") {
                take();
                imaginary = true;
                return sign;
            }
            if (t.kind != Tok::number) fail("expected a number, found " + describe(t), t.pos);
            take();
            imaginary = t.imaginary;
            return sign * t.value;
        };
        double sign = 1.0;
        if (is_punct("-") || is_punct("+")) sign = take().text == "-" ? -1.0 : 1.0;
        bool imag1 = false;
        const double a = term(sign, imag1);
        std::complex<double> z = imag1 ? std::complex<double>(0.0, a) : std::complex<double>(a, 0.0);
        if (!imag1 && (is_punct("+") || is_punct("-"))) {
            const double s2 = take().text == "-" ? -1.0 : 1.0;
            bool imag2 = false;
            const Position at = peek().pos;
            const double b = term(s2, imag2);
            if (!imag2) fail("the second part of a complex number must be imaginary (e.g. 1-0.5i)", at);
            z = {a, b};
        }
        return z;
    }

    ObservableDecl observable_expr() {
        ObservableDecl o;
        const Token& kind = expect_ident("an observable (walsh, indicator, table or constant)");
        if (kind.text == "walsh") {
            o.kind = ObservableDecl::Kind::walsh;
            expect_punct("{", "to open the walsh offsets");
            std::set<std::uint64_t> seen;
            while (!is_punct("}")) {
                const Position at = peek().pos;
                const auto off = expect_uint("a walsh offset");
                if (!seen.insert(off).second) error("offset " + std::to_string(off) + " repeated", at);
                else o.offsets.push_back(static_cast<std::uint32_t>(off));
                if (!is_punct(",")) break;
                take();
            }
            expect_punct("}", "to close the walsh offsets");
            std::sort(o.offsets.begin(), o.offsets.end());
        } else if (kind.text == "indicator") {
            o.kind = ObservableDecl::Kind::indicator;
            const Token& b = expect_string("the indicator block");
            o.block = symbols36(b, "the indicator block");
            if (b.scalars.empty()) error("the indicator block is empty", b.pos);
            if (is_word("at")) {
                take();
                o.at = static_cast<std::uint32_t>(expect_uint("the indicator offset"));
            }
        } else if (kind.text == "table") {
            o.kind = ObservableDecl::Kind::table;
            expect_punct("{", "to open the table");
            std::set<std::uint32_t> seen;
            while (!is_punct("}")) {
                const Position at = peek().pos;
                const auto sym = static_cast<std::uint32_t>(expect_uint("a symbol"));
                expect_punct(":", "after the symbol");
                const auto value = complex_value();
                if (!seen.insert(sym).second) error("symbol " + std::to_string(sym) + " appears twice in the table", at);
                else o.table.emplace_back(sym, value);
                if (!is_punct(",")) break;
                take();
            }
            expect_punct("}", "to close the table");
            if (o.table.empty()) error("the table is empty", kind.pos);
            std::sort(o.table.begin(), o.table.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        } else if (kind.text == "constant") {
            o.kind = ObservableDecl::Kind::constant;
            o.constant = complex_value();
        } else {
            fail("unknown observable '" + kind.text + "' (expected walsh, indicator, table or constant)", kind.pos);
        }
        return o;
    }

    ExperimentDecl experiment(Extra& extra) {
        ExperimentDecl e;
        const Token& open = expect_punct("{", "to open the experiment");
        std::map<std::string, Position> seen;
        while (!is_punct("}")) {
            if (peek().kind == Tok::end) fail("unterminated experiment (missing '}')", open.pos);
            const Token& key = expect_ident("an experiment field");
            if (!seen.emplace(key.text, key.pos).second) {
                error("field '" + key.text + "' given twice", key.pos);
            }
            expect_punct(":", "after '" + key.text + "'");
            if (key.text == "system") {
                extra.system_pos = peek().pos;
                const Token& n = expect_ident("a system name");
                if (n.text == "hat" && is_punct("(")) {
                    take();
                    e.system = {expect_ident("a system name inside hat(...)").text, true};
                    expect_punct(")", "to close hat(...)");
                } else {
                    e.system = {n.text, false};
                }
            } else if (key.text == "observable") {
                extra.observable_pos = peek().pos;
                e.observable = expect_ident("an observable name").text;
            } else if (key.text == "weight") {
                const Token& w = expect_ident("a weight (moebius, liouville or none)");
                if (w.text != "moebius" && w.text != "liouville" && w.text != "none") {
                    error("unknown weight '" + w.text + "' (expected moebius, liouville or none)", w.pos);
                }
                e.weight = w.text;
            } else if (key.text == "N") {
                extra.n_pos = peek().pos;
                e.sample_size = expect_uint("the sample size", std::uint64_t{1} << 40);
                if (e.sample_size == 0) error("N must be positive", extra.n_pos);
            } else if (key.text == "checkpoints") {
                if (is_word("pow2")) {
                    take();
                    e.checkpoints.reset();
                } else {
                    expect_punct("[", "to open the checkpoint list (or use pow2)");
                    std::vector<std::uint64_t> list;
                    std::vector<Position> where;
                    while (!is_punct("]")) {
                        where.push_back(peek().pos);
                        list.push_back(expect_uint("a checkpoint", std::uint64_t{1} << 40));
                        if (!is_punct(",")) break;
                        take();
                    }
                    expect_punct("]", "to close the checkpoint list");
                    for (std::size_t k = 0; k < list.size(); ++k) {
                        if (list[k] == 0) error("checkpoints must be >= 1", where[k]);
                        else if (k > 0 && list[k] <= list[k - 1]) error("checkpoints must be strictly ascending", where[k]);
                    }
                    if (list.empty()) error("empty checkpoint list", key.pos);
                    checkpoint_pos_ = where;
                    e.checkpoints = std::move(list);
                }
            } else if (key.text == "kbsz") {
                extra.kbsz_pos = peek().pos;
                expect_punct("(", "to open the prime pair");
                const auto r = expect_uint("the prime r");
                expect_punct(",", "between r and s");
                const auto s = expect_uint("the prime s");
                expect_punct(")", "to close the prime pair");
                e.kbsz.emplace(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(s));
                if (r == s || !is_prime(static_cast<std::uint32_t>(r)) || !is_prime(static_cast<std::uint32_t>(s))) {
                    error("kbsz needs two distinct primes", extra.kbsz_pos);
                }
            } else {
                error("unknown experiment field '" + key.text + "'", key.pos);
                // skip the value
                while (!is_punct(";") && !is_punct("}") && peek().kind != Tok::end) take();
            }
            if (!is_punct("}")) expect_punct(";", "after the field value");
        }
        const Token& close = take();
        for (const char* required : {"system", "observable", "N"}) {
            if (!seen.count(required)) error(std::string("experiment is missing the '") + required + "' field", close.pos);
        }
        if (e.checkpoints && !e.checkpoints->empty() && e.sample_size > 0 && e.checkpoints->back() > e.sample_size) {
            error("checkpoint beyond N", checkpoint_pos_.back());
        }
        if (e.kbsz && e.weight != "none") {
            report(Diagnostic::Severity::warning, "weight is ignored in kbsz mode", extra.kbsz_pos);
        }
        if (!e.kbsz && e.weight != "none" && e.sample_size > (std::uint64_t{1} << 26)) {
            error("N above 2^26 is beyond the weight table limit", extra.n_pos);
        }
        return e;
    }

    // ---- cross-declaration checks ----
    void resolve() {
        std::map<std::string, std::size_t> first;
        for (std::size_t i = 0; i < doc_.declarations.size(); ++i) {
            const auto& d = doc_.declarations[i];
            const auto [it, fresh] = first.emplace(d.name, i);
            if (!fresh) {
                const auto& prev = doc_.declarations[it->second].name_position;
                error("duplicate name '" + d.name + "' (line " + std::to_string(d.name_position.line) + ", column " +
                          std::to_string(d.name_position.column) + "); first declared at line " +
                          std::to_string(prev.line) + ", column " + std::to_string(prev.column),
                      d.name_position);
                report(Diagnostic::Severity::note, "'" + d.name + "' first declared here", prev);
            }
        }
        if (has_errors()) return;  // the checks below assume unique names

        auto kind_of = [&](const std::string& name) -> const DeclBody* {
            const auto it = first.find(name);
            return it == first.end() ? nullptr : &doc_.declarations[it->second].body;
        };
        for (std::size_t i = 0; i < doc_.declarations.size(); ++i) {
            const auto& d = doc_.declarations[i];
            const auto& x = extras_[i];
            const GroupRef* g = nullptr;
            if (auto* m = std::get_if<MorseDecl>(&d.body)) g = &m->group;
            if (auto* v = std::get_if<VeechDecl>(&d.body)) g = &v->group;
            if (g && g->kind == GroupRef::Kind::cover_of) {
                const auto* target = kind_of(g->cover_name);
                if (!target) error("unknown substitution '" + g->cover_name + "' in cover-of", x.group_pos);
                else if (!std::holds_alternative<SubstitutionDecl>(*target))
                    error("'" + g->cover_name + "' is not a substitution", x.group_pos);
            }
            if (auto* e = std::get_if<ExperimentDecl>(&d.body)) {
                const auto* sys = kind_of(e->system.name);
                if (!sys) error("unknown system '" + e->system.name + "'", x.system_pos);
                else if (std::holds_alternative<ObservableDecl>(*sys) || std::holds_alternative<ExperimentDecl>(*sys))
                    error("'" + e->system.name + "' is not a system", x.system_pos);
                const auto* obs = kind_of(e->observable);
                if (!obs) error("unknown observable '" + e->observable + "'", x.observable_pos);
                else if (!std::holds_alternative<ObservableDecl>(*obs))
                    error("'" + e->observable + "' is not an observable", x.observable_pos);
            }
        }
        if (has_errors()) return;

        // Build every system once so that library preconditions surface as diagnostics.
        std::map<std::string, std::size_t> alphabet;
        std::map<std::string, std::optional<permgrp::FiniteGroup>> groups;
        for (std::size_t i = 0; i < doc_.declarations.size(); ++i) {
            const auto& d = doc_.declarations[i];
            const auto& x = extras_[i];
            if (std::holds_alternative<ObservableDecl>(d.body) || std::holds_alternative<ExperimentDecl>(d.body)) continue;
            std::optional<permgrp::FiniteGroup> group;
            const GroupRef* g = nullptr;
            if (auto* m = std::get_if<MorseDecl>(&d.body)) g = &m->group;
            if (auto* v = std::get_if<VeechDecl>(&d.body)) g = &v->group;
            if (g) {
                try {
                    group = build_group(doc_, *g);
                } catch (const std::exception& e) {
                    error(std::string("cannot build the group: ") + e.what(), x.group_pos);
                    continue;
                }
                const std::vector<Token>& strings = std::holds_alternative<MorseDecl>(d.body) ? x.blocks : x.psi;
                bool ok = true;
                for (const auto& t : strings) {
                    for (std::size_t k = 0; k < t.scalars.size(); ++k) {
                        const int v = digit36(t.scalars[k]);
                        if (v >= 0 && static_cast<std::size_t>(v) >= group->order()) {
                            error("symbol '" + t.scalars[k] + "' is outside the group (order " +
                                      std::to_string(group->order()) + ")",
                                  t.scalar_pos[k]);
                            ok = false;
                        }
                    }
                }
                if (!ok) continue;
            }
            try {
                const auto sys = build_system(doc_, d.name);
                alphabet[d.name] = sys.source->alphabet_size();
                groups[d.name] = sys.group;
            } catch (const std::exception& e) {
                const Position at = std::holds_alternative<MorseDecl>(d.body) && !x.blocks.empty() ? x.blocks.front().pos
                                                                                                   : d.name_position;
                error("'" + d.name + "': " + e.what(), at);
            }
        }
        if (has_errors()) return;

        for (std::size_t i = 0; i < doc_.declarations.size(); ++i) {
            const auto& d = doc_.declarations[i];
            const auto* e = std::get_if<ExperimentDecl>(&d.body);
            if (!e) continue;
            const auto& x = extras_[i];
            std::size_t size = alphabet.at(e->system.name);
            if (e->system.hat) {
                if (!groups.at(e->system.name) && size != 2) {
                    error("hat(" + e->system.name + ") needs a group system or a binary alphabet", x.system_pos);
                    continue;
                }
            }
            const auto& obs = std::get<ObservableDecl>(doc_.find(e->observable)->body);
            try {
                build_observable(obs, size);
            } catch (const std::invalid_argument& err) {
                error("observable '" + e->observable + "' does not fit system '" + e->system.name + "': " + err.what(),
                      x.observable_pos);
            }
        }
    }

    bool has_errors() const {
        return std::any_of(diags_.begin(), diags_.end(),
                           [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; });
    }

    ParseResult finish() {
        ParseResult r;
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::pair(a.position.line, a.position.column) < std::pair(b.position.line, b.position.column);
        });
        r.diagnostics = std::move(diags_);
        if (!std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                         [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; })) {
            r.document = std::move(doc_);
        }
        return r;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> lines_;
    std::vector<Diagnostic> diags_;
    SpecDocument doc_;
    std::vector<Extra> extras_;
    std::vector<Position> checkpoint_pos_;
};

}  // namespace

const Declaration* SpecDocument::find(std::string_view name) const {
    for (const auto& d : declarations)
        if (d.name == name) return &d;
    return nullptr;
}

ParseResult parse_spec(std::string_view text) { return Parser(text).parse_document(); }

ParseResult parse_observable_expr(std::string_view text) { return Parser(text).parse_lone_observable(); }

std::string format_diagnostic(const Diagnostic& d, std::string_view filename) {
    std::ostringstream os;
    const char* sev = d.severity == Diagnostic::Severity::error     ? "error"
                      : d.severity == Diagnostic::Severity::warning ? "warning"
                                                                    : "note";
    os << filename << ':' << d.position.line << ':' << d.position.column << ": " << sev << ": " << d.message << '\n';
    if (!d.excerpt.empty()) {
        os << "  " << d.excerpt << '\n' << "  ";
        // caret under the column, copying tabs so that it lines up
        std::size_t col = 1;
        for (std::size_t i = 0; i < d.excerpt.size() && col < d.position.column; ++col) {
            const auto c = static_cast<unsigned char>(d.excerpt[i]);
            os << (c == '\t' ? '\t' : ' ');
            std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
            i += len;
        }
        os << "^\n";
    }
    return os.str();
}

}  // namespace symdyn::frontend
