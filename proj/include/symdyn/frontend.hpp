#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "symdyn/experiment.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/spectral.hpp"
#include "symdyn/stream.hpp"
#include "symdyn/subst.hpp"

namespace symdyn::frontend {

/// 1-based line and column; columns count Unicode scalars, not bytes.
struct Position {
    std::size_t line = 1;
    std::size_t column = 1;

    bool operator==(const Position&) const = default;
};

struct Diagnostic {
    enum class Severity { error, warning, note };
    Severity severity = Severity::error;
    std::string message;
    Position position;
    std::string excerpt;  // the source line containing `position`
};

std::string format_diagnostic(const Diagnostic& d, std::string_view filename = "<input>");

struct GroupRef {
    enum class Kind { z2, zn, sym, cover_of };
    Kind kind = Kind::z2;
    std::uint32_t degree = 2;  // n for Zn, r for Sym
    std::string cover_name;

    bool operator==(const GroupRef&) const = default;
};

struct SubstitutionDecl {
    std::vector<std::string> letters;
    std::vector<std::vector<std::string>> rows;  // rows[a] spelled letter by letter
    std::optional<std::string> seed;

    bool operator==(const SubstitutionDecl&) const = default;
};

// Block symbols are base-36 element indices ("0".."9", "a".."z").
struct MorseDecl {
    GroupRef group;
    std::vector<std::string> prefix;
    std::vector<std::string> cycle;

    bool operator==(const MorseDecl&) const = default;
};

struct RsDecl {
    std::string pattern;

    bool operator==(const RsDecl&) const = default;
};

struct VeechDecl {
    std::uint32_t base = 2;
    GroupRef group;
    std::string psi_prefix;
    std::string psi_cycle;

    bool operator==(const VeechDecl&) const = default;
};

struct ObservableDecl {
    enum class Kind { constant, walsh, indicator, table };
    Kind kind = Kind::constant;
    std::complex<double> constant{1.0, 0.0};
    std::vector<std::uint32_t> offsets;                              // walsh
    std::string block;                                               // indicator, base-36 symbols
    std::uint32_t at = 0;                                            // indicator
    std::vector<std::pair<std::uint32_t, std::complex<double>>> table;  // sorted by symbol

    bool operator==(const ObservableDecl&) const = default;
};

/// A system reference inside an experiment: NAME or hat(NAME).
struct SystemRef {
    std::string name;
    bool hat = false;

    bool operator==(const SystemRef&) const = default;
};

struct ExperimentDecl {
    SystemRef system;
    std::string observable;
    std::string weight = "none";  // moebius | liouville | none
    std::uint64_t sample_size = 0;
    std::optional<std::vector<std::uint64_t>> checkpoints;  // nullopt: pow2
    std::optional<std::pair<std::uint32_t, std::uint32_t>> kbsz;

    bool operator==(const ExperimentDecl&) const = default;
};

using DeclBody = std::variant<SubstitutionDecl, MorseDecl, RsDecl, VeechDecl, ObservableDecl, ExperimentDecl>;

struct Declaration {
    std::string name;
    DeclBody body;
    Position span_begin;  // keyword
    Position span_end;    // one past the last token
    Position name_position;

    /// Spans are ignored: two documents are equal when they declare the same things.
    bool operator==(const Declaration& o) const { return name == o.name && body == o.body; }
};

struct SpecDocument {
    std::vector<Declaration> declarations;

    const Declaration* find(std::string_view name) const;
    bool operator==(const SpecDocument&) const = default;
};

struct ParseResult {
    std::optional<SpecDocument> document;  // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

/// Parses and validates a whole document. Any error diagnostic rejects it.
ParseResult parse_spec(std::string_view text);

/// Parses a lone observable expression such as `walsh {0,1}`.
ParseResult parse_observable_expr(std::string_view text);

/// Canonical text form; parse_spec(print_spec(d)) yields a document equal to d.
std::string print_spec(const SpecDocument& doc);
std::string print_declaration(const Declaration& decl);

// Binding declarations to library objects. These throw std::invalid_argument
// for unknown names or declarations of the wrong kind.

struct System {
    SourcePtr source;
    std::optional<permgrp::FiniteGroup> group;      // set for morse/veech/cover systems
    std::optional<subst::Substitution> substitution;
    std::vector<std::string> letters;                // display letters, one per symbol
};

permgrp::FiniteGroup build_group(const SpecDocument& doc, const GroupRef& ref);
System build_system(const SpecDocument& doc, std::string_view name);
/// hat of a system: uses its group, or Z/2 for a binary alphabet.
System build_hat(const System& system, std::string_view name);
spectral::Observable build_observable(const ObservableDecl& decl, std::size_t alphabet_size);
experiment::ExperimentConfig build_experiment(const SpecDocument& doc, std::string_view name, unsigned threads = 1);

/// Built-in declarations (thue-morse, rudin-shapiro, herning, ...) usable without a file.
const SpecDocument& builtin_library();

std::string spell(const System& system, const Word& w);

}  // namespace symdyn::frontend
