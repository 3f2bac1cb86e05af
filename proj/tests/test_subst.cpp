#include "doctest.h"
#include "oracles.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/subst.hpp"

using namespace symdyn;
using namespace symdyn::subst;

namespace {

Substitution thue_morse() { return Substitution::from_strings("01", {"01", "10"}, '0'); }
Substitution herning() { return Substitution::from_strings("abc", {"aabaa", "bcabb", "cbccc"}, 'a'); }
Substitution rudin_shapiro() { return Substitution::from_strings("abcd", {"ab", "ac", "db", "dc"}, 'a'); }

// Least n with M^n > 0 by explicit boolean matrix powers; 0 if none up to r^2.
unsigned primitivity_oracle(const Substitution& s) {
    const std::size_t r = s.alphabet_size();
    std::vector<std::vector<bool>> m(r, std::vector<bool>(r)), p;
    for (std::size_t a = 0; a < r; ++a)
        for (auto b : s.row(static_cast<Symbol>(a))) m[a][b] = true;
    p = m;
    for (unsigned n = 1; n <= r * r; ++n) {
        bool all = true;
        for (auto& row : p)
            for (bool x : row) all = all && x;
        if (all) return n;
        std::vector<std::vector<bool>> q(r, std::vector<bool>(r));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t c = 0; c < r; ++c) q[a][c] = q[a][c] || (p[a][b] && m[b][c]);
        p = q;
    }
    return 0;
}

}  // namespace

TEST_CASE("analyze") {
    const auto tm = analyze(thue_morse());
    CHECK(tm.primitive);
    CHECK(tm.primitivity_exponent == primitivity_oracle(thue_morse()));
    CHECK(tm.bijective);
    CHECK(tm.power_for_seed == 1u);
    CHECK(tm.power_for_identity_column == 1u);

    const auto h = analyze(herning());
    CHECK(h.primitive);
    CHECK(h.primitivity_exponent == primitivity_oracle(herning()));

    const auto np = Substitution::from_strings("ab", {"ab", "bb"}, 'a');
    CHECK_FALSE(analyze(np).primitive);
    CHECK(primitivity_oracle(np) == 0);

    CHECK_FALSE(analyze(rudin_shapiro()).bijective);

    // sigma_0 = (0 1): theta^2 fixes the first column
    const auto swap = Substitution::from_strings("01", {"10", "01"}, '0');
    CHECK(analyze(swap).power_for_identity_column == 2u);
    CHECK(analyze(swap).power_for_seed == 2u);
}

TEST_CASE("fixed points") {
    CHECK(format_word(fixed_point(thue_morse(), 16)) == "0110100110010110");
    CHECK(herning().spell(fixed_point(herning(), 5)) == "aabaa");
    CHECK(fixed_point(herning(), 1) == Word{0});

    const std::map<char, std::string> rows{{'a', "aabaa"}, {'b', "bcabb"}, {'c', "cbccc"}};
    const auto ref = oracle::iterate_substitution(rows, 'a', 20000);
    CHECK(herning().spell(fixed_point(herning(), 20000)) == ref);

    const auto src = fixed_point_source(thue_morse());
    for (std::uint64_t n : {0ull, 1ull, 77ull, 1000003ull, (1ull << 40) + 12345ull}) {
        CHECK(src->at(n) == static_cast<Symbol>(oracle::thue_morse(n)));
    }
    Word chunk(1000);
    src->fill(123456, chunk);
    for (std::size_t i = 0; i < chunk.size(); ++i) REQUIRE(chunk[i] == static_cast<Symbol>(oracle::thue_morse(123456 + i)));

    const auto swap = Substitution::from_strings("01", {"10", "01"}, '0');
    CHECK_THROWS_AS(fixed_point_source(swap), std::invalid_argument);
    CHECK_THROWS_AS(Substitution::from_strings("ab", {"a", "b"}, 'a'), std::invalid_argument);
    CHECK_THROWS_AS(Substitution::from_strings("ab", {"ab", "bab"}, 'a'), std::invalid_argument);
}

TEST_CASE("column maps") {
    const auto tm = column_maps(thue_morse());
    CHECK(tm.bijective);
    CHECK(tm.perms()[0].is_identity());
    CHECK(tm.perms()[1] == permgrp::Perm::transposition(2, 0, 1));

    CHECK_FALSE(column_maps(rudin_shapiro()).bijective);

    const auto h = column_maps(herning());
    REQUIRE(h.bijective);
    const std::vector<std::string> letters{"a", "b", "c"};
    std::vector<std::string> cyc;
    for (const auto& p : h.perms()) cyc.push_back(p.cycles(letters));
    CHECK(cyc == std::vector<std::string>{"Id", "(b c)", "(a b)", "Id", "Id"});
}

TEST_CASE("group covers") {
    const auto tm = group_cover(thue_morse());
    CHECK(tm.cover.group.order() == 2);
    CHECK(tm.cover.block == Word{0, 1});
    CHECK(tm.morse.block(0) == Word{0, 1});
    CHECK(tm.morse.block(7) == Word{0, 1});

    const auto h = group_cover(herning());
    CHECK(h.cover.group.order() == 6);
    const std::vector<std::string> letters{"a", "b", "c"};
    std::vector<std::string> cyc;
    for (auto g : h.cover.block) cyc.push_back(h.cover.embedding.images[g].cycles(letters));
    CHECK(cyc == std::vector<std::string>{"Id", "(b c)", "(a b)", "Id", "Id"});
    CHECK(h.cover.group.verify_associative());

    // block entries generate the group; the orbit of the seed is the alphabet
    const auto& blk = h.cover.block;
    CHECK(h.cover.group.generated_subgroup(std::span<const permgrp::Element>(blk.data(), blk.size())).size() == 6);
    std::set<std::uint32_t> orbit;
    for (const auto& p : h.cover.embedding.images) orbit.insert(p(0));
    CHECK(orbit.size() == 3);

    // factor map of the cover's fixed point equals the base fixed point
    const auto cover_fp = fixed_point(h.cover.cover_substitution(), 10000);
    CHECK(factor_map(h.cover, cover_fp) == fixed_point(herning(), 10000));
    CHECK(herning().spell(factor_map(h.cover, Word(cover_fp.begin(), cover_fp.begin() + 5))) == "aabaa");
    CHECK(factor_map(h.cover, Word(7, 0)) == Word(7, 0));

    CHECK_THROWS_AS(group_cover(rudin_shapiro()), PreconditionError);
    const auto swap = Substitution::from_strings("01", {"10", "01"}, '0');
    try {
        group_cover(swap);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("theta^2") != std::string::npos);
    }
    const auto constant = Substitution::from_strings("01", {"00", "11"}, '0');
    CHECK_THROWS_AS(group_cover(constant), PreconditionError);
}

TEST_CASE("group substitutions match the Morse product") {
    const auto h = group_cover(herning());
    const auto sub = h.cover.cover_substitution();
    const auto via_morse = morse::prefix_block(h.morse, 4);
    CHECK(fixed_point(sub, via_morse.size()) == via_morse);
}

TEST_CASE("skeleton index") {
    CHECK(skeleton_index(2, 3, 0) == 0);
    CHECK(skeleton_index(2, 3, 5) == -5);
    CHECK(skeleton_index(2, 3, 8) == 0);
    // alignment: x[i + k, i + k + 2^t) is theta^t of a letter
    const auto x = fixed_point(thue_morse(), 4096);
    const auto p3 = power(thue_morse(), 3);
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto i = skeleton_index(2, 3, k);
        CHECK(((static_cast<std::int64_t>(k) + i) % 8 + 8) % 8 == 0);
        if (static_cast<std::int64_t>(k) + i < 0) continue;
        const auto start = static_cast<std::size_t>(static_cast<std::int64_t>(k) + i);
        const Word window(x.begin() + start, x.begin() + start + 8);
        CHECK((window == p3.row(0) || window == p3.row(1)));
    }
}

TEST_CASE("language") {
    const auto tm = thue_morse();
    CHECK(language(tm, 2, 4096).words.size() == 4);
    CHECK(language(tm, 3, 4096).words.size() == 6);
    CHECK(language(tm, 1, 4096).words.size() == 2);
    CHECK(language_exact(tm, 3) == language(tm, 3, 4096).words);
    for (std::size_t k = 1; k <= 8; ++k) {
        CHECK(language_exact(tm, k) == language(tm, k, 1 << 14).words);
        CHECK(language_exact(herning(), k) == language(herning(), k, 1 << 16).words);
    }
    // counts grow with the horizon and stabilize
    std::size_t prev = 0;
    for (std::uint64_t h = 4; h <= 4096; h *= 2) {
        const auto n = language(herning(), 4, h).words.size();
        CHECK(n >= prev);
        prev = n;
    }
    CHECK(prev == language_exact(herning(), 4).size());
}

TEST_CASE("quotient substitutions") {
    const auto z4 = permgrp::FiniteGroup::cyclic(4);
    const auto q = quotient_substitution(z4, Word{0, 1, 2, 3}, permgrp::Subset{0, 2});
    CHECK(q.group.order() == 2);
    CHECK(q.block == Word{0, 1, 0, 1});
    CHECK(quotient_substitution(z4, Word{0, 1, 2, 3}, permgrp::Subset{0, 1, 2, 3}).group.order() == 1);
    CHECK(quotient_substitution(z4, Word{0, 1, 2, 3}, permgrp::Subset{0}).block == Word{0, 1, 2, 3});

    const auto h = group_cover(herning());
    const auto ns = permgrp::normal_subgroups(h.cover.group);
    REQUIRE(ns.size() == 3);
    const auto qh = quotient_substitution(h.cover, ns[1]);
    CHECK(qh.group.order() == 2);

    // (B x C) mod H = (B mod H) x (C mod H)
    const auto& g = h.cover.group;
    for (Symbol a = 0; a < 6; ++a) {
        const Word b{0, a, static_cast<Symbol>(5 - a)};
        const Word c{0, static_cast<Symbol>((a + 1) % 6)};
        const auto bc = morse::block_product(b, c, g);
        Word lhs, rb, rc;
        for (auto x : bc) lhs.push_back(qh.projection[x]);
        for (auto x : b) rb.push_back(qh.projection[x]);
        for (auto x : c) rc.push_back(qh.projection[x]);
        CHECK(lhs == morse::block_product(rb, rc, qh.group));
    }

    const auto s3 = permgrp::symmetric_group(3).group;
    permgrp::Subset non_normal{0};
    for (permgrp::Element x = 1; x < 6; ++x)
        if (s3.mul(x, x) == 0) {
            non_normal.push_back(x);
            break;
        }
    CHECK_THROWS_AS(quotient_substitution(s3, Word{0, 1}, non_normal), std::invalid_argument);
}

TEST_CASE("letter map images") {
    const auto img = letter_map_image(thue_morse(), permgrp::Perm::transposition(2, 0, 1), 16);
    CHECK(format_word(img.image) == "1001011001101001");
    CHECK(img.in_language);
    const auto id = letter_map_image(herning(), permgrp::Perm::identity(3), 100);
    CHECK(id.in_language);
    CHECK(id.image == fixed_point(herning(), 100));

    // only the identity commutes with the Herning columns
    const auto cols = column_maps(herning()).perms();
    const auto cent = permgrp::centralizer_in_sym(cols, 3);
    CHECK(cent.group.order() == 1);
    try {
        letter_map_image(herning(), permgrp::Perm::transposition(3, 0, 1), 10);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("sigma_") != std::string::npos);
    }
}

TEST_CASE("powers") {
    const auto p2 = power(thue_morse(), 2);
    CHECK(p2.length() == 4);
    CHECK(format_word(p2.row(0)) == "0110");
    CHECK_THROWS_AS(power(thue_morse(), 25), CapacityError);
}
