#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/subst.hpp"

using namespace symdyn;
using namespace symdyn::morse;

namespace {

Word w(std::string_view s) {
    Word out;
    for (char c : s) out.push_back(static_cast<Symbol>(c - '0'));
    return out;
}

const FiniteGroup z2 = FiniteGroup::cyclic(2);

MorseSpec tm_spec() { return MorseSpec(z2, EventuallyPeriodic<Word>::constant(w("01"))); }

// B x C spelled out from the definition, without the library.
Word expand(const Word& b, const Word& c, const FiniteGroup& g) {
    Word out;
    for (auto cj : c)
        for (auto bi : b) out.push_back(g.mul(bi, cj));
    return out;
}

Word random_block(std::mt19937& rng, const FiniteGroup& g, std::size_t len) {
    Word b{0};
    std::uniform_int_distribution<Symbol> d(0, static_cast<Symbol>(g.order() - 1));
    while (b.size() < len) b.push_back(d(rng));
    return b;
}

}  // namespace

TEST_CASE("block products") {
    CHECK(block_product(w("01"), w("01"), z2) == w("0110"));
    CHECK(block_product(w("0110"), w("0"), z2) == w("0110"));
    CHECK(block_product(w("01"), w("0110"), z2) == w("01101001"));

    std::mt19937 rng(7);
    const auto s3 = permgrp::symmetric_group(3).group;
    for (int trial = 0; trial < 200; ++trial) {
        const auto b = random_block(rng, s3, 2 + trial % 3);
        const auto c = random_block(rng, s3, 2 + trial % 2);
        const auto d = random_block(rng, s3, 3);
        CHECK(block_product(b, c, s3) == expand(b, c, s3));
        CHECK(block_product(block_product(b, c, s3), d, s3) == block_product(b, block_product(c, d, s3), s3));
    }
}

TEST_CASE("morse streams") {
    const auto tm = morse_source(tm_spec());
    CHECK(format_word(tm->prefix(16)) == "0110100110010110");
    const auto x = tm->prefix(1 << 14);
    for (std::size_t n = 0; n < x.size(); ++n) REQUIRE(x[n] == static_cast<Symbol>(oracle::thue_morse(n)));

    const MorseSpec two(z2, {{w("01")}, {w("00")}});
    CHECK(prefix_block(two, 2) == w("0101"));
    CHECK(morse_source(two)->prefix(4) == w("0101"));
    CHECK(prefix_block(two, 0) == w("0"));

    const MorseSpec zero(z2, EventuallyPeriodic<Word>::constant(w("00")));
    CHECK(zero.degenerate());
    CHECK(morse_source(zero)->prefix(64) == Word(64, 0));

    CHECK(tm_spec().n(5) == 32);
    CHECK(tm_spec().lambda_primes() == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(MorseSpec(z2, EventuallyPeriodic<Word>::constant(w("10"))), std::invalid_argument);
    CHECK_THROWS_AS(MorseSpec(z2, EventuallyPeriodic<Word>::constant(w("0"))), std::invalid_argument);

    // prefix of length n_t is c_t for a mixed-length spec over S3
    const auto s3 = permgrp::symmetric_group(3).group;
    const MorseSpec mixed(s3, {{Word{0, 3, 1}}, {Word{0, 2}, Word{0, 5, 4}}});
    const auto src = morse_source(mixed);
    for (std::size_t t = 0; t <= 5; ++t) {
        const auto c = prefix_block(mixed, t);
        CHECK(c.size() == mixed.n(t));
        CHECK(src->prefix(c.size()) == c);
    }
}

TEST_CASE("morse streams agree with group covers") {
    const auto herning = subst::Substitution::from_strings("abc", {"aabaa", "bcabb", "cbccc"}, 'a');
    const auto cover = subst::group_cover(herning);
    const auto src = morse_source(cover.morse);
    CHECK(src->prefix(3125) == subst::fixed_point(cover.cover.cover_substitution(), 3125));
}

TEST_CASE("hat") {
    CHECK(hat(w("0110"), z2) == w("101"));
    CHECK(format_word(hat(w("0110100110010110"), z2)) == "101110101011101");
    CHECK(hat(w("1111"), z2) == w("000"));
    CHECK_THROWS_AS(hat(Word{}, z2), std::invalid_argument);

    // hat kills right translation
    const auto s3 = permgrp::symmetric_group(3).group;
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto y = random_block(rng, s3, 7);
        const auto ref = hat(y, s3);
        for (Element g = 0; g < 6; ++g) {
            Word yg;
            for (auto a : y) yg.push_back(s3.mul(a, g));
            REQUIRE(hat(yg, s3) == ref);
        }
    }

    const auto hs = hat_source(morse_source(tm_spec()), z2);
    CHECK(format_word(hs->prefix(15)) == "101110101011101");
    Word chunk(500);
    hs->fill(1000, chunk);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
        const auto n = 1000 + i;
        REQUIRE(chunk[i] == static_cast<Symbol>(oracle::thue_morse(n + 1) ^ oracle::thue_morse(n)));
    }
}

TEST_CASE("toeplitz stages") {
    const auto s2 = toeplitz_stage(tm_spec(), 2);
    CHECK(s2.filled == w("101"));
    CHECK(s2.hole_residue() == 3);
    CHECK(s2.is_hole(7));
    CHECK_FALSE(s2.is_hole(6));
    const auto s1 = toeplitz_stage(tm_spec(), 1);
    CHECK(s1.filled == w("1"));
    CHECK(s1.is_hole(1));

    const auto s3 = permgrp::symmetric_group(3).group;
    const MorseSpec mixed(s3, {{Word{0, 3, 1}}, {Word{0, 2}, Word{0, 5, 4}}});
    for (const MorseSpec& spec : {tm_spec(), mixed}) {
        for (std::size_t t = 1; t <= 4; ++t) {
            const auto st = toeplitz_stage(spec, t);
            const auto xh = hat(prefix_block(spec, t + 2), spec.group());
            REQUIRE(4 * st.period <= xh.size() + 1);
            for (std::uint64_t n = 0; n + 1 < 4 * st.period; ++n) {
                if (st.is_hole(n)) continue;
                REQUIRE(xh[n] == st.filled[n % st.period]);
            }
            if (t > 1) {
                const auto prev = toeplitz_stage(spec, t - 1);
                for (std::uint64_t n = 0; n < st.filled.size(); ++n)
                    if (!prev.is_hole(n)) REQUIRE(st.filled[n] == prev.filled[n % prev.period]);
            }
        }
    }
}

TEST_CASE("cocycle values and block recovery") {
    CHECK(cocycle_values(tm_spec(), 2) == w("101"));
    CHECK(cocycle_values(tm_spec(), 1) == w("1"));
    const MorseSpec zero(z2, EventuallyPeriodic<Word>::constant(w("00")));
    CHECK(cocycle_values(zero, 3) == Word(7, 0));

    const std::vector<Word> tm_stages{w("1"), w("101")};
    const std::vector<std::size_t> lambdas{2, 2};
    const auto rec = blocks_from_cocycle(tm_stages, lambdas, z2);
    CHECK(rec.blocks == std::vector<Word>{w("01"), w("01")});
    CHECK_FALSE(rec.degenerate);

    const std::vector<Word> flat{w("0"), w("000")};
    CHECK(blocks_from_cocycle(flat, lambdas, z2).degenerate);

    const std::vector<Word> broken{w("1"), w("001")};
    try {
        blocks_from_cocycle(broken, lambdas, z2);
        FAIL("expected a mismatch");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }

    std::mt19937 rng(2024);
    for (std::size_t order : {2u, 3u}) {
        const auto g = FiniteGroup::cyclic(order);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Word> blocks;
            std::vector<std::size_t> lens;
            for (int t = 0; t < 5; ++t) {
                blocks.push_back(random_block(rng, g, 2 + rng() % 2));
                lens.push_back(blocks.back().size());
            }
            const MorseSpec spec(g, {blocks, {w("01")}});
            std::vector<Word> stages;
            for (std::size_t t = 1; t <= 5; ++t) stages.push_back(cocycle_values(spec, t));
            const auto back = blocks_from_cocycle(stages, lens, g);
            REQUIRE(back.blocks == blocks);
        }
    }
}

TEST_CASE("kakutani") {
    CHECK(kakutani_spec(EventuallyPeriodic<int>::constant(1)) == tm_spec());
    CHECK(kakutani_spec(EventuallyPeriodic<int>::constant(0)).degenerate());
    CHECK(prefix_block(kakutani_spec({{}, {1, 0}}), 2) == w("0101"));
}

TEST_CASE("toeplitz check") {
    const auto xh = hat_source(morse_source(tm_spec()), z2)->prefix(1 << 16);
    std::vector<std::uint64_t> periods;
    for (unsigned t = 1; t <= 12; ++t) periods.push_back(std::uint64_t{1} << t);
    const auto v = toeplitz_check(xh, 0, 512, periods);
    REQUIRE(v.size() == 512);
    CHECK(v[0].period == 2u);
    CHECK(v[1].period == 4u);
    for (const auto& r : v) {
        REQUIRE(r.level.has_value());
        // the level is the number of trailing ones of n, plus one
        CHECK(*r.level == static_cast<std::size_t>(std::countr_one(r.position)) + 1);
    }

    const Word constant(200, 1);
    const std::vector<std::uint64_t> p2{2};
    for (const auto& r : toeplitz_check(constant, 0, 10, p2)) CHECK(r.period == 2u);
    CHECK_THROWS_AS(toeplitz_check(constant, 0, 300, p2), std::invalid_argument);
}
