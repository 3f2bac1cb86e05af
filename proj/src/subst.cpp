#include "symdyn/subst.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace symdyn::subst {

Substitution::Substitution(std::vector<std::string> letters, std::vector<Word> rows, Symbol seed)
    : letters_(std::move(letters)), rows_(std::move(rows)), length_(0), seed_(seed) {
    if (letters_.empty()) throw std::invalid_argument("Substitution: empty alphabet");
    if (rows_.size() != letters_.size()) throw std::invalid_argument("Substitution: need one row per letter");
    length_ = rows_.front().size();
    if (length_ < 2) throw std::invalid_argument("Substitution: length must be >= 2");
    for (std::size_t a = 0; a < rows_.size(); ++a) {
        if (rows_[a].size() != length_) {
            throw std::invalid_argument("Substitution: row of letter " + letters_[a] + " has length " +
                                        std::to_string(rows_[a].size()) + ", expected " +
                                        std::to_string(length_));
        }
        for (auto s : rows_[a]) {
            if (s >= letters_.size()) throw std::invalid_argument("Substitution: row uses an unknown letter");
        }
    }
    if (seed_ >= letters_.size()) throw std::invalid_argument("Substitution: seed outside the alphabet");
}

Substitution Substitution::from_strings(std::string_view alphabet, const std::vector<std::string>& rows,
                                        char seed) {
    std::vector<std::string> letters;
    for (char c : alphabet) letters.emplace_back(1, c);
    auto index = [&](char c) -> Symbol {
        const auto pos = alphabet.find(c);
        if (pos == std::string_view::npos) throw std::invalid_argument(std::string("unknown letter '") + c + "'");
        return static_cast<Symbol>(pos);
    };
    std::vector<Word> words;
    for (const auto& r : rows) {
        Word w;
        for (char c : r) w.push_back(index(c));
        words.push_back(std::move(w));
    }
    return Substitution(std::move(letters), std::move(words), seed == 0 ? 0 : index(seed));
}

Word Substitution::apply(const Word& w) const {
    Word out;
    out.reserve(w.size() * length_);
    for (auto a : w) out.insert(out.end(), rows_.at(a).begin(), rows_.at(a).end());
    return out;
}

std::string Substitution::spell(const Word& w) const {
    std::string out;
    for (auto a : w) out += letters_.at(a);
    return out;
}

Substitution power(const Substitution& sub, unsigned n) {
    if (n == 0) throw std::invalid_argument("power: exponent must be >= 1");
    std::uint64_t len = 1;
    for (unsigned i = 0; i < n; ++i) {
        len *= sub.length();
        if (len > (1u << 24)) throw CapacityError("power: theta^n is longer than 2^24");
    }
    std::vector<Word> rows;
    for (Symbol a = 0; a < sub.alphabet_size(); ++a) {
        Word w{a};
        for (unsigned i = 0; i < n; ++i) w = sub.apply(w);
        rows.push_back(std::move(w));
    }
    return Substitution(sub.letters(), std::move(rows), sub.seed());
}

ColumnMaps column_maps(const Substitution& sub) {
    ColumnMaps cm;
    const auto r = sub.alphabet_size();
    cm.maps.assign(sub.length(), Word(r));
    cm.bijective = true;
    for (std::size_t i = 0; i < sub.length(); ++i) {
        std::vector<bool> hit(r, false);
        for (Symbol a = 0; a < r; ++a) {
            const auto b = sub.row(a)[i];
            cm.maps[i][a] = b;
            if (hit[b]) cm.bijective = false;
            hit[b] = true;
        }
    }
    return cm;
}

std::vector<Perm> ColumnMaps::perms() const {
    if (!bijective) throw PreconditionError("column maps are not bijective");
    std::vector<Perm> out;
    for (const auto& m : maps) out.emplace_back(std::vector<std::uint32_t>(m.begin(), m.end()));
    return out;
}

AnalysisReport analyze(const Substitution& sub) {
    AnalysisReport rep;
    const auto r = sub.alphabet_size();
    using Matrix = std::vector<std::vector<bool>>;
    Matrix m(r, std::vector<bool>(r, false));
    for (Symbol a = 0; a < r; ++a)
        for (auto b : sub.row(a)) m[a][b] = true;

    Matrix power = m;
    for (unsigned n = 1; n <= r * r; ++n) {
        bool positive = true;
        for (const auto& row : power)
            for (bool v : row) positive = positive && v;
        if (positive) {
            rep.primitive = true;
            rep.primitivity_exponent = n;
            break;
        }
        Matrix next(r, std::vector<bool>(r, false));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t c = 0; c < r; ++c)
                if (power[a][c])
                    for (std::size_t b = 0; b < r; ++b)
                        if (m[c][b]) next[a][b] = true;
        power = std::move(next);
    }

    const auto cols = column_maps(sub);
    rep.bijective = cols.bijective;
    const auto& sigma0 = cols.maps[0];

    Symbol x = sub.seed();
    for (unsigned n = 1; n <= r; ++n) {
        x = sigma0[x];
        if (x == sub.seed()) {
            rep.power_for_seed = n;
            break;
        }
    }

    if (cols.bijective) {
        const Perm s0 = cols.perms()[0];
        Perm p = s0;
        for (unsigned k = 1;; ++k) {
            if (p.is_identity()) {
                rep.power_for_identity_column = k;
                break;
            }
            p = s0 * p;
        }
    }
    return rep;
}

FixedPointSource::FixedPointSource(Substitution sub) : sub_(std::move(sub)) {
    if (sub_.row(sub_.seed())[0] != sub_.seed()) {
        throw std::invalid_argument("fixed point: theta(" + sub_.letters()[sub_.seed()] +
                                    ") does not start with " + sub_.letters()[sub_.seed()] +
                                    "; use a power of theta or another seed");
    }
}

Symbol FixedPointSource::at(std::uint64_t n) const {
    const std::uint64_t lam = sub_.length();
    std::uint32_t digits[64];
    int count = 0;
    while (n > 0) {
        digits[count++] = static_cast<std::uint32_t>(n % lam);
        n /= lam;
    }
    Symbol y = sub_.seed();
    while (count > 0) y = sub_.row(y)[digits[--count]];
    return y;
}

void FixedPointSource::fill(std::uint64_t start, std::span<Symbol> out) const {
    if (out.size() <= 64) {
        SymbolSource::fill(start, out);
        return;
    }
    const std::uint64_t lam = sub_.length();
    const std::uint64_t first = start / lam;
    const std::uint64_t last = (start + out.size() - 1) / lam;
    Word parents(last - first + 1);
    fill(first, parents);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::uint64_t n = start + i;
        out[i] = sub_.row(parents[n / lam - first])[n % lam];
    }
}

SourcePtr fixed_point_source(const Substitution& sub) { return std::make_shared<FixedPointSource>(sub); }

Word fixed_point(const Substitution& sub, std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("fixed_point: count must be >= 1");
    return FixedPointSource(sub).prefix(count);
}

Substitution GroupCover::cover_substitution() const { return group_substitution(group, block); }

Substitution group_substitution(const FiniteGroup& group, const Word& block) {
    std::vector<Word> rows(group.order(), Word(block.size()));
    for (Element g = 0; g < group.order(); ++g)
        for (std::size_t i = 0; i < block.size(); ++i) rows[g][i] = group.mul(block[i], g);
    return Substitution(group.names(), std::move(rows), 0);
}

GroupCoverResult group_cover(const Substitution& sub) {
    const auto rep = analyze(sub);
    if (!rep.bijective) throw PreconditionError("group_cover: substitution is not bijective");
    if (rep.power_for_identity_column != 1u) {
        throw PreconditionError("group_cover: sigma_0 is not the identity; use theta^" +
                                std::to_string(*rep.power_for_identity_column));
    }
    if (!rep.primitive) throw PreconditionError("group_cover: substitution is not primitive");

    const auto perms = column_maps(sub).perms();
    auto pg = permgrp::closure(perms, sub.alphabet_size());
    std::map<Perm, Element> index;
    for (Element g = 0; g < pg.group.order(); ++g) index.emplace(pg.embedding.images[g], g);

    std::vector<std::string> names;
    for (const auto& p : pg.embedding.images) names.push_back(p.cycles(sub.letters()));
    auto table = std::vector<std::uint16_t>();
    const auto m = pg.group.order();
    table.reserve(m * m);
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) table.push_back(static_cast<std::uint16_t>(pg.group.mul(a, b)));
    FiniteGroup named(std::move(names), std::move(table));

    Word block;
    for (const auto& p : perms) block.push_back(index.at(p));

    GroupCover cover{named, std::move(pg.embedding), block, sub};
    morse::MorseSpec spec(std::move(named), EventuallyPeriodic<Word>({}, {block}));
    return {std::move(cover), std::move(spec)};
}

Word factor_map(const GroupCover& cover, std::span<const Symbol> input, std::optional<Symbol> seed) {
    const Symbol a = seed.value_or(cover.base.seed());
    if (a >= cover.base.alphabet_size()) throw std::invalid_argument("factor_map: seed outside the alphabet");
    Word out(input.size());
    for (std::size_t n = 0; n < input.size(); ++n) {
        if (input[n] >= cover.group.order()) throw std::invalid_argument("factor_map: symbol outside the group");
        out[n] = cover.embedding.images[input[n]](a);
    }
    return out;
}

std::int64_t skeleton_index(std::uint64_t lambda, unsigned t, std::uint64_t k) {
    if (t == 0) throw std::invalid_argument("skeleton_index: level must be >= 1");
    if (lambda < 2) throw std::invalid_argument("skeleton_index: lambda must be >= 2");
    std::uint64_t period = 1;
    for (unsigned i = 0; i < t; ++i) {
        if (period > (std::uint64_t{1} << 62) / lambda) throw std::overflow_error("skeleton_index: lambda^t overflows");
        period *= lambda;
    }
    return -static_cast<std::int64_t>(k % period);
}

std::uint64_t language_horizon_bound(std::size_t lambda, std::size_t k) {
    std::uint64_t p = 1;
    while (p < k) p *= lambda;
    return p + k;
}

LanguageScan language(const Substitution& sub, std::size_t k, std::uint64_t horizon) {
    if (k == 0) throw std::invalid_argument("language: block length must be >= 1");
    if (horizon < k) throw std::invalid_argument("language: horizon shorter than the block length");
    const Word x = fixed_point(sub, horizon);
    LanguageScan scan;
    scan.horizon = horizon;
    for (std::size_t i = 0; i + k <= x.size(); ++i) scan.words.emplace(x.begin() + i, x.begin() + i + k);
    return scan;
}

std::set<Word> language_exact(const Substitution& sub, std::size_t k) {
    if (k == 0) throw std::invalid_argument("language_exact: block length must be >= 1");
    if (sub.row(sub.seed())[0] != sub.seed()) {
        throw std::invalid_argument("language_exact: seed is not self-starting");
    }
    // Letters and two-letter words of theta^n(seed), closed under one more application of theta.
    std::set<Symbol> letters{sub.seed()};
    std::set<Word> pairs;
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<Symbol> new_letters = letters;
        std::set<Word> new_pairs = pairs;
        for (auto a : letters) {
            const auto& row = sub.row(a);
            for (std::size_t i = 0; i < row.size(); ++i) {
                new_letters.insert(row[i]);
                if (i + 1 < row.size()) new_pairs.insert({row[i], row[i + 1]});
            }
        }
        for (const auto& ab : pairs) new_pairs.insert({sub.row(ab[0]).back(), sub.row(ab[1]).front()});
        if (new_letters != letters || new_pairs != pairs) {
            grew = true;
            letters = std::move(new_letters);
            pairs = std::move(new_pairs);
        }
    }
    std::set<Word> out;
    if (k == 1) {
        for (auto a : letters) out.insert({a});
        return out;
    }
    unsigned m = 0;
    std::uint64_t len = 1;
    while (len + 1 < k) {
        len *= sub.length();
        ++m;
    }
    std::vector<Word> images(sub.alphabet_size());
    for (Symbol a = 0; a < sub.alphabet_size(); ++a) {
        Word w{a};
        for (unsigned i = 0; i < m; ++i) w = sub.apply(w);
        images[a] = std::move(w);
    }
    for (const auto& ab : pairs) {
        Word w = images[ab[0]];
        w.insert(w.end(), images[ab[1]].begin(), images[ab[1]].end());
        for (std::size_t i = 0; i + k <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + k);
    }
    return out;
}

QuotientSubstitution quotient_substitution(const FiniteGroup& group, const Word& block,
                                           const permgrp::Subset& normal) {
    auto q = permgrp::quotient(group, normal);
    Word qblock;
    for (auto g : block) qblock.push_back(q.projection.at(g));
    auto s = group_substitution(q.group, qblock);
    return {std::move(q.group), std::move(q.projection), std::move(qblock), std::move(s)};
}

QuotientSubstitution quotient_substitution(const GroupCover& cover, const permgrp::Subset& normal) {
    return quotient_substitution(cover.group, cover.block, normal);
}

LetterMapImage letter_map_image(const Substitution& sub, const Perm& eta, std::uint64_t n) {
    if (eta.degree() != sub.alphabet_size()) {
        throw std::invalid_argument("letter_map_image: eta has the wrong degree");
    }
    const auto cols = column_maps(sub);
    for (std::size_t i = 0; i < cols.maps.size(); ++i) {
        for (Symbol a = 0; a < sub.alphabet_size(); ++a) {
            if (eta(cols.maps[i][a]) != cols.maps[i][eta(a)]) {
                throw std::invalid_argument("letter_map_image: eta = " + eta.cycles(sub.letters()) +
                                            " does not commute with sigma_" + std::to_string(i));
            }
        }
    }
    LetterMapImage out;
    out.image = fixed_point(sub, n);
    for (auto& s : out.image) s = eta(s);
    out.in_language = true;
    for (std::size_t k = 1; k <= 8 && k <= out.image.size() && out.in_language; ++k) {
        const auto lang = language_exact(sub, k);
        for (std::size_t i = 0; i + k <= out.image.size(); ++i) {
            if (!lang.contains(Word(out.image.begin() + i, out.image.begin() + i + k))) {
                out.in_language = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace symdyn::subst
