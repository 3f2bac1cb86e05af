#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "symdyn/core.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/permgrp.hpp"
#include "symdyn/stream.hpp"

namespace symdyn::subst {

using permgrp::Element;
using permgrp::FiniteGroup;
using permgrp::Perm;

/// Constant-length substitution theta: A -> A^length, letters 0..r-1.
class Substitution {
public:
    Substitution(std::vector<std::string> letters, std::vector<Word> rows, Symbol seed = 0);

    /// Convenience for single-character letters: rows given as strings over `alphabet`.
    static Substitution from_strings(std::string_view alphabet, const std::vector<std::string>& rows,
                                     char seed = 0);

    std::size_t alphabet_size() const { return letters_.size(); }
    std::size_t length() const { return length_; }
    const std::vector<Word>& rows() const { return rows_; }
    const Word& row(Symbol a) const { return rows_.at(a); }
    Symbol seed() const { return seed_; }
    const std::vector<std::string>& letters() const { return letters_; }

    Substitution with_seed(Symbol seed) const { return Substitution(letters_, rows_, seed); }

    /// Image of a word under theta.
    Word apply(const Word& w) const;
    std::string spell(const Word& w) const;

    bool operator==(const Substitution&) const = default;

private:
    std::vector<std::string> letters_;
    std::vector<Word> rows_;
    std::size_t length_;
    Symbol seed_;
};

/// theta^n, of length lambda^n. Throws CapacityError if lambda^n exceeds 2^24.
Substitution power(const Substitution& sub, unsigned n);

struct AnalysisReport {
    bool primitive = false;
    /// Least n with every letter in every theta^n(a); 0 when not primitive.
    unsigned primitivity_exponent = 0;
    bool bijective = false;
    /// Least n with theta^n(seed)[0] = seed, if the seed lies on a cycle of sigma_0.
    std::optional<unsigned> power_for_seed;
    /// Least k <= r! with sigma_0^k = Id; set only for bijective substitutions.
    std::optional<unsigned> power_for_identity_column;
};

AnalysisReport analyze(const Substitution& sub);

/// One-sided fixed point x[lambda*j + i] = theta(x[j])[i], x[0] = seed.
class FixedPointSource final : public SymbolSource {
public:
    explicit FixedPointSource(Substitution sub);

    Symbol at(std::uint64_t n) const override;
    void fill(std::uint64_t start, std::span<Symbol> out) const override;
    std::size_t alphabet_size() const override { return sub_.alphabet_size(); }
    std::string name() const override { return "fixed point"; }

    const Substitution& substitution() const { return sub_; }

private:
    Substitution sub_;
};

/// Throws std::invalid_argument unless rows[seed][0] == seed.
SourcePtr fixed_point_source(const Substitution& sub);
Word fixed_point(const Substitution& sub, std::uint64_t count);

struct ColumnMaps {
    std::vector<Word> maps;  // maps[i][a] = rows[a][i]
    bool bijective = false;

    /// The column maps as permutations; requires bijective.
    std::vector<Perm> perms() const;
};

ColumnMaps column_maps(const Substitution& sub);

struct GroupCover {
    FiniteGroup group;
    permgrp::GroupEmbedding embedding;
    Word block;  // group elements sigma_0, ..., sigma_{lambda-1}
    Substitution base;

    /// The group substitution tau -> block o tau on the cover group.
    Substitution cover_substitution() const;
};

struct GroupCoverResult {
    GroupCover cover;
    morse::MorseSpec morse;  // block x block x ...
};

/// Throws PreconditionError if the columns are not bijective, if sigma_0 != Id
/// (the message names the power that fixes this), or if the base is not primitive.
GroupCoverResult group_cover(const Substitution& sub);

/// Group substitution g -> block o g over `group`; letters are the group element names.
Substitution group_substitution(const FiniteGroup& group, const Word& block);

/// Pointwise tau -> tau(seed). `seed` defaults to the base substitution's seed.
Word factor_map(const GroupCover& cover, std::span<const Symbol> input,
                std::optional<Symbol> seed = std::nullopt);

/// The t-skeleton offset of S^k x: the unique i = -k (mod lambda^t) in [-lambda^t + 1, 0].
std::int64_t skeleton_index(std::uint64_t lambda, unsigned t, std::uint64_t k);

struct LanguageScan {
    std::set<Word> words;
    std::uint64_t horizon = 0;
};

/// Smallest horizon callers are expected to pass: lambda^ceil(log_lambda k) + k.
std::uint64_t language_horizon_bound(std::size_t lambda, std::size_t k);

/// All length-k factors of the fixed-point prefix of length `horizon`.
LanguageScan language(const Substitution& sub, std::size_t k, std::uint64_t horizon);

/// The complete set of length-k words of a primitive substitution, via the
/// closure of its two-letter words (independent of any prefix length).
std::set<Word> language_exact(const Substitution& sub, std::size_t k);

struct QuotientSubstitution {
    FiniteGroup group;
    std::vector<Element> projection;
    Word block;
    Substitution substitution;
};

QuotientSubstitution quotient_substitution(const FiniteGroup& group, const Word& block,
                                           const permgrp::Subset& normal);
QuotientSubstitution quotient_substitution(const GroupCover& cover, const permgrp::Subset& normal);

struct LetterMapImage {
    Word image;
    bool in_language = false;
};

/// Pointwise eta-image of the fixed-point prefix of length n, with a check that
/// every factor of length <= 8 lies in the language. Throws std::invalid_argument
/// naming a non-commuting column when eta is not in C(theta).
LetterMapImage letter_map_image(const Substitution& sub, const Perm& eta, std::uint64_t n);

}  // namespace symdyn::subst
