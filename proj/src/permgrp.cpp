#include "symdyn/permgrp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace symdyn::permgrp {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
        if (x >= images_.size() || seen[x]) throw std::invalid_argument("Perm: images are not a bijection");
        seen[x] = true;
    }
}

Perm Perm::identity(std::size_t degree) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    return Perm(std::move(img));
}

Perm Perm::transposition(std::size_t degree, std::uint32_t a, std::uint32_t b) {
    auto p = identity(degree).images_;
    std::swap(p.at(a), p.at(b));
    return Perm(std::move(p));
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

Perm Perm::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
    Perm p;
    p.images_ = std::move(inv);
    return p;
}

std::string Perm::cycles(std::span<const std::string> letters) const {
    auto letter = [&](std::uint32_t x) {
        return x < letters.size() ? letters[x] : std::to_string(x);
    };
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (std::uint32_t start = 0; start < images_.size(); ++start) {
        if (done[start] || images_[start] == start) continue;
        out += '(';
        std::uint32_t x = start;
        bool first = true;
        while (!done[x]) {
            done[x] = true;
            if (!first) out += ' ';
            out += letter(x);
            first = false;
            x = images_[x];
        }
        out += ')';
    }
    return out.empty() ? "Id" : out;
}

Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("Perm: composing different degrees");
    std::vector<std::uint32_t> img(a.degree());
    for (std::uint32_t x = 0; x < img.size(); ++x) img[x] = a(b(x));
    return Perm(std::move(img));
}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::uint16_t> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const std::size_t m = names_.size();
    if (m == 0) throw std::invalid_argument("FiniteGroup: empty group");
    if (m > 0xFFFF) throw CapacityError("FiniteGroup: order exceeds table index range");
    if (table_.size() != m * m) throw std::invalid_argument("FiniteGroup: table is not m x m");
    for (auto v : table_) {
        if (v >= m) throw std::invalid_argument("FiniteGroup: table entry out of range");
    }
    inverse_.assign(m, 0);
    for (Element g = 0; g < m; ++g) {
        if (mul(0, g) != g || mul(g, 0) != g) {
            throw std::invalid_argument("FiniteGroup: element 0 is not the identity");
        }
        bool found = false;
        for (Element h = 0; h < m; ++h) {
            if (mul(g, h) == 0 && mul(h, g) == 0) {
                inverse_[g] = h;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("FiniteGroup: element " + names_[g] + " has no inverse");
    }
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {0}); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic group of order 0");
    std::vector<std::string> names(n);
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        names[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
    }
    return FiniteGroup(std::move(names), std::move(table));
}

bool FiniteGroup::verify_associative() const {
    const auto m = static_cast<Element>(order());
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b)
            for (Element c = 0; c < m; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
}

Subset FiniteGroup::generated_subgroup(std::span<const Element> generators) const {
    std::vector<bool> in(order(), false);
    std::deque<Element> queue{0};
    in[0] = true;
    while (!queue.empty()) {
        const Element h = queue.front();
        queue.pop_front();
        for (Element g : generators) {
            const Element p = mul(h, g);
            if (!in[p]) {
                in[p] = true;
                queue.push_back(p);
            }
        }
    }
    Subset out;
    for (Element g = 0; g < order(); ++g)
        if (in[g]) out.push_back(g);
    return out;
}

bool FiniteGroup::is_subgroup(const Subset& s) const {
    if (s.empty() || !std::is_sorted(s.begin(), s.end())) return false;
    if (s.back() >= order() || s.front() != 0) return false;
    std::vector<bool> in(order(), false);
    for (auto g : s) in[g] = true;
    for (auto a : s) {
        if (!in[inv(a)]) return false;
        for (auto b : s)
            if (!in[mul(a, b)]) return false;
    }
    return true;
}

bool FiniteGroup::is_normal_subgroup(const Subset& s) const {
    if (!is_subgroup(s)) return false;
    std::vector<bool> in(order(), false);
    for (auto h : s) in[h] = true;
    for (Element g = 0; g < order(); ++g)
        for (auto h : s)
            if (!in[mul(mul(g, h), inv(g))]) return false;
    return true;
}

bool GroupEmbedding::is_homomorphism(const FiniteGroup& group) const {
    if (images.size() != group.order() || !images[0].is_identity()) return false;
    for (Element a = 0; a < group.order(); ++a)
        for (Element b = 0; b < group.order(); ++b)
            if (images[a] * images[b] != images[group.mul(a, b)]) return false;
    return true;
}

bool GroupEmbedding::is_injective() const {
    std::set<Perm> distinct(images.begin(), images.end());
    return distinct.size() == images.size();
}

PermGroup closure(std::span<const Perm> generators, std::size_t degree, std::size_t cap) {
    if (degree == 0) throw std::invalid_argument("closure: degree must be positive");
    for (const auto& g : generators) {
        if (g.degree() != degree) throw std::invalid_argument("closure: generators of mixed degree");
    }
    std::vector<Perm> elems{Perm::identity(degree)};
    std::map<Perm, Element> index{{elems[0], 0}};
    // elems[k] = generators[via[k]] * elems[parent[k]] for k > 0
    std::vector<Element> parent{0};
    std::vector<std::size_t> via{0};
    for (std::size_t k = 0; k < elems.size(); ++k) {
        for (std::size_t j = 0; j < generators.size(); ++j) {
            Perm p = generators[j] * elems[k];
            if (index.contains(p)) continue;
            if (elems.size() >= cap) {
                throw CapacityError("closure: group order exceeds cap " + std::to_string(cap));
            }
            index.emplace(p, static_cast<Element>(elems.size()));
            elems.push_back(std::move(p));
            parent.push_back(static_cast<Element>(k));
            via.push_back(j);
        }
    }
    const std::size_t m = elems.size();
    // left[j][x] = index of generators[j] * elems[x]
    std::vector<std::vector<Element>> left(generators.size(), std::vector<Element>(m));
    for (std::size_t j = 0; j < generators.size(); ++j)
        for (std::size_t x = 0; x < m; ++x) left[j][x] = index.at(generators[j] * elems[x]);

    std::vector<std::uint16_t> table(m * m);
    for (std::size_t b = 0; b < m; ++b) table[b] = static_cast<std::uint16_t>(b);
    for (std::size_t k = 1; k < m; ++k) {
        const auto& row_parent = parent[k];
        for (std::size_t b = 0; b < m; ++b) {
            table[k * m + b] = static_cast<std::uint16_t>(left[via[k]][table[row_parent * m + b]]);
        }
    }
    std::vector<std::string> names(m);
    for (std::size_t k = 0; k < m; ++k) names[k] = elems[k].cycles();
    return {FiniteGroup(std::move(names), std::move(table)), GroupEmbedding{std::move(elems)}};
}

PermGroup closure_of(std::span<const Perm> generators, std::size_t cap) {
    if (generators.empty()) {
        throw std::invalid_argument("closure: empty generator list needs an explicit degree");
    }
    return closure(generators, generators.front().degree(), cap);
}

PermGroup symmetric_group(std::size_t degree, std::size_t cap) {
    std::vector<Perm> gens;
    if (degree >= 2) {
        gens.push_back(Perm::transposition(degree, 0, 1));
        std::vector<std::uint32_t> cyc(degree);
        for (std::uint32_t i = 0; i < degree; ++i) cyc[i] = static_cast<std::uint32_t>((i + 1) % degree);
        gens.emplace_back(std::move(cyc));
    }
    return closure(gens, degree, cap);
}

PermGroup centralizer_in_sym(std::span<const Perm> set, std::size_t degree) {
    if (degree > kCentralizerDegreeCap) {
        throw CapacityError("centralizer_in_sym: degree " + std::to_string(degree) + " exceeds cap " +
                            std::to_string(kCentralizerDegreeCap));
    }
    for (const auto& s : set) {
        if (s.degree() != degree) throw std::invalid_argument("centralizer_in_sym: degree mismatch");
    }
    std::vector<Perm> found;
    std::vector<std::uint32_t> img = Perm::identity(degree).images();
    do {
        Perm eta(img);
        bool commutes = true;
        for (const auto& s : set) {
            if (eta * s != s * eta) {
                commutes = false;
                break;
            }
        }
        if (commutes && !eta.is_identity()) found.push_back(std::move(eta));
    } while (std::next_permutation(img.begin(), img.end()));
    return closure(found, degree);
}

namespace {

using Mask = std::vector<bool>;

Mask to_mask(const Subset& s, std::size_t m) {
    Mask mask(m, false);
    for (auto g : s) mask[g] = true;
    return mask;
}

Subset to_subset(const Mask& mask) {
    Subset s;
    for (Element g = 0; g < mask.size(); ++g)
        if (mask[g]) s.push_back(g);
    return s;
}

}  // namespace

std::vector<Subset> normal_subgroups(const FiniteGroup& group) {
    const std::size_t m = group.order();
    if (m > kNormalSubgroupCap) {
        throw CapacityError("normal_subgroups: order " + std::to_string(m) + " exceeds cap " +
                            std::to_string(kNormalSubgroupCap));
    }
    // Every normal subgroup is a join of normal closures of conjugacy classes.
    std::vector<bool> classified(m, false);
    std::set<Mask> found{to_mask({0}, m)};
    for (Element x = 0; x < m; ++x) {
        if (classified[x]) continue;
        Subset cls;
        for (Element g = 0; g < m; ++g) {
            const Element c = group.mul(group.mul(g, x), group.inv(g));
            if (!classified[c]) {
                classified[c] = true;
                cls.push_back(c);
            }
        }
        found.insert(to_mask(group.generated_subgroup(cls), m));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Mask> current(found.begin(), found.end());
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                Subset gens = to_subset(current[i]);
                const Subset other = to_subset(current[j]);
                gens.insert(gens.end(), other.begin(), other.end());
                if (found.insert(to_mask(group.generated_subgroup(gens), m)).second) grew = true;
            }
        }
    }
    std::vector<Subset> out;
    for (const auto& mask : found) out.push_back(to_subset(mask));
    std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Quotient quotient(const FiniteGroup& group, const Subset& normal) {
    if (!group.is_normal_subgroup(normal)) {
        throw std::invalid_argument("quotient: subset is not a normal subgroup");
    }
    const std::size_t m = group.order();
    constexpr Element kUnset = ~Element{0};
    std::vector<Element> projection(m, kUnset);
    std::vector<Element> reps;
    for (Element g = 0; g < m; ++g) {
        if (projection[g] != kUnset) continue;
        const auto coset = static_cast<Element>(reps.size());
        reps.push_back(g);
        for (auto h : normal) projection[group.mul(g, h)] = coset;
    }
    const std::size_t q = reps.size();
    std::vector<std::string> names(q);
    std::vector<std::uint16_t> table(q * q);
    for (std::size_t a = 0; a < q; ++a) {
        names[a] = group.name(reps[a]) + "H";
        for (std::size_t b = 0; b < q; ++b) {
            table[a * q + b] = static_cast<std::uint16_t>(projection[group.mul(reps[a], reps[b])]);
        }
    }
    if (q == 1) names[0] = "e";
    return {FiniteGroup(std::move(names), std::move(table)), std::move(projection)};
}

}  // namespace symdyn::permgrp
