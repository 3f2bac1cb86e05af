#include "doctest.h"
#include "oracles.hpp"
#include "symdyn/permgrp.hpp"

using namespace symdyn;
using namespace symdyn::permgrp;

namespace {

// Every subset of a tiny group that is a normal subgroup, by brute force.
std::size_t count_normal_subsets(const FiniteGroup& g) {
    const std::size_t m = g.order();
    std::size_t count = 0;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (!(mask & 1u)) continue;
        bool closed = true;
        for (Element a = 0; a < m && closed; ++a) {
            if (!(mask >> a & 1u)) continue;
            for (Element b = 0; b < m && closed; ++b) {
                if ((mask >> b & 1u) && !(mask >> g.mul(a, g.inv(b)) & 1u)) closed = false;
            }
            for (Element x = 0; x < m && closed; ++x) {
                if (!(mask >> g.mul(g.mul(x, a), g.inv(x)) & 1u)) closed = false;
            }
        }
        count += closed;
    }
    return count;
}

void check_table_closed(const PermGroup& pg) {
    const auto& g = pg.group;
    CHECK(g.verify_associative());
    CHECK(pg.embedding.is_homomorphism(g));
    CHECK(pg.embedding.is_injective());
    for (Element a = 0; a < g.order(); ++a) {
        CHECK(g.mul(0, a) == a);
        CHECK(g.mul(a, 0) == a);
        CHECK(g.mul(a, g.inv(a)) == 0);
    }
}

}  // namespace

TEST_CASE("perm basics") {
    const Perm a({1, 2, 0});
    const Perm b = Perm::transposition(3, 0, 1);
    CHECK((a * b)(0) == a(b(0)));
    CHECK((a * a.inverse()).is_identity());
    CHECK(Perm::identity(3).cycles() == "Id");
    const std::vector<std::string> letters{"a", "b", "c"};
    CHECK(Perm::transposition(3, 1, 2).cycles(letters) == "(b c)");
    CHECK_THROWS_AS(Perm({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("closure") {
    const std::vector<Perm> s2{Perm::transposition(2, 0, 1)};
    CHECK(closure(s2, 2).group.order() == 2);

    const std::vector<Perm> s3{Perm::transposition(3, 0, 1), Perm::transposition(3, 1, 2)};
    const auto pg = closure(s3, 3);
    CHECK(pg.group.order() == 6);
    check_table_closed(pg);
    CHECK(oracle::closure({s3[0].images(), s3[1].images()}).size() == 6);
    CHECK(pg.embedding.images[0].is_identity());

    CHECK(closure(std::vector<Perm>{}, 3).group.order() == 1);
    CHECK_THROWS_AS(closure_of(std::vector<Perm>{}), std::invalid_argument);

    const std::vector<Perm> mixed{Perm::transposition(2, 0, 1), Perm::transposition(3, 0, 1)};
    CHECK_THROWS_AS(closure(mixed, 3), std::invalid_argument);

    // S_8 has 40320 elements, above the default cap
    const auto s8 = std::vector<Perm>{Perm::transposition(8, 0, 1), Perm({1, 2, 3, 4, 5, 6, 7, 0})};
    CHECK_THROWS_AS(closure(s8, 8), CapacityError);
}

TEST_CASE("closure matches the oracle on random generator sets") {
    const std::vector<std::vector<std::uint32_t>> gens{{1, 0, 2, 3}, {0, 2, 3, 1}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i; j < gens.size(); ++j) {
            std::vector<Perm> ps{Perm(gens[i]), Perm(gens[j])};
            const auto pg = closure(ps, 4);
            const auto ref = oracle::closure({gens[i], gens[j]});
            REQUIRE(pg.group.order() == ref.size());
            std::set<std::vector<std::uint32_t>> got;
            for (const auto& p : pg.embedding.images) got.insert(p.images());
            CHECK(got == ref);
            check_table_closed(pg);
        }
    }
}

TEST_CASE("symmetric group") {
    for (std::size_t r = 2; r <= 5; ++r) {
        std::size_t fact = 1;
        for (std::size_t k = 2; k <= r; ++k) fact *= k;
        CHECK(symmetric_group(r).group.order() == fact);
    }
}

TEST_CASE("centralizers") {
    const std::vector<Perm> ab{Perm::transposition(2, 0, 1)};
    CHECK(centralizer_in_sym(ab, 2).group.order() == 2);

    const std::vector<Perm> s3{Perm::transposition(3, 0, 1), Perm::transposition(3, 1, 2)};
    CHECK(centralizer_in_sym(s3, 3).group.order() == 1);
    CHECK(centralizer_in_sym(std::vector<Perm>{}, 3).group.order() == 6);

    // re-check commutation exhaustively
    const std::vector<Perm> c3{Perm({1, 2, 0})};
    const auto cent = centralizer_in_sym(c3, 3);
    CHECK(cent.group.order() == 3);
    for (const auto& eta : cent.embedding.images) CHECK(eta * c3[0] == c3[0] * eta);

    CHECK_THROWS_AS(centralizer_in_sym(std::vector<Perm>{}, 9), CapacityError);
}

TEST_CASE("normal subgroups") {
    const auto s3 = symmetric_group(3).group;
    const auto ns = normal_subgroups(s3);
    CHECK(ns.size() == 3);
    CHECK(ns.size() == count_normal_subsets(s3));
    CHECK(ns[0].size() == 1);
    CHECK(ns[1].size() == 3);
    CHECK(ns[2].size() == 6);

    const auto z4 = FiniteGroup::cyclic(4);
    const auto nz = normal_subgroups(z4);
    REQUIRE(nz.size() == 3);
    CHECK(nz[1].size() == 2);
    CHECK(normal_subgroups(FiniteGroup::trivial()).size() == 1);

    const auto s4 = symmetric_group(4).group;
    CHECK(normal_subgroups(s4).size() == 4);  // e, V4, A4, S4
    for (const auto& h : normal_subgroups(s4)) CHECK(s4.is_normal_subgroup(h));
}

TEST_CASE("quotients") {
    const auto s3 = symmetric_group(3).group;
    const auto ns = normal_subgroups(s3);
    const auto q = quotient(s3, ns[1]);
    CHECK(q.group.order() == 2);
    for (Element x = 0; x < 6; ++x)
        for (Element y = 0; y < 6; ++y)
            CHECK(q.projection[s3.mul(x, y)] == q.group.mul(q.projection[x], q.projection[y]));

    CHECK(quotient(s3, ns[2]).group.order() == 1);
    const auto same = quotient(s3, ns[0]);
    CHECK(same.group.order() == 6);
    for (Element x = 0; x < 6; ++x) CHECK(same.projection[x] == x);

    // a non-normal subgroup of order 2
    Subset h{0};
    for (Element x = 1; x < 6; ++x) {
        if (s3.mul(x, x) == 0) {
            h.push_back(x);
            break;
        }
    }
    CHECK(s3.is_subgroup(h));
    CHECK_FALSE(s3.is_normal_subgroup(h));
    CHECK_THROWS_AS(quotient(s3, h), std::invalid_argument);
}

TEST_CASE("group validation") {
    CHECK_THROWS(FiniteGroup({"e", "a"}, {0, 1, 1, 1}));
    const auto z5 = FiniteGroup::cyclic(5);
    CHECK(z5.verify_associative());
    const std::vector<Element> gen{2};
    CHECK(z5.generated_subgroup(gen).size() == 5);
}
