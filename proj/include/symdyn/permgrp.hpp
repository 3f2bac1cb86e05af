#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symdyn/core.hpp"

namespace symdyn::permgrp {

/// Permutation of {0, ..., degree-1}.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<std::uint32_t> images);

    static Perm identity(std::size_t degree);
    static Perm transposition(std::size_t degree, std::uint32_t a, std::uint32_t b);

    std::size_t degree() const { return images_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool is_identity() const;
    Perm inverse() const;

    /// Cycle notation over the given letter names, e.g. "(b c)"; "Id" for the identity.
    std::string cycles(std::span<const std::string> letters = {}) const;

    auto operator<=>(const Perm&) const = default;

private:
    std::vector<std::uint32_t> images_;
};

/// (a * b)(x) = a(b(x)).
Perm operator*(const Perm& a, const Perm& b);

using Element = std::uint32_t;
using Subset = std::vector<Element>;  // sorted element indices

/// Finite group as a multiplication table. Element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() : FiniteGroup(trivial()) {}

    /// Validates identity and inverses; associativity is checked separately
    /// by verify_associative() because it is cubic in the order.
    FiniteGroup(std::vector<std::string> names, std::vector<std::uint16_t> table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t n);

    std::size_t order() const { return names_.size(); }
    Element mul(Element a, Element b) const { return table_[a * order() + b]; }
    Element inv(Element a) const { return inverse_[a]; }
    const std::string& name(Element a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }

    bool verify_associative() const;

    /// Subgroup generated by the given elements.
    Subset generated_subgroup(std::span<const Element> generators) const;
    bool is_subgroup(const Subset& s) const;
    bool is_normal_subgroup(const Subset& s) const;

    bool operator==(const FiniteGroup&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<std::uint16_t> table_;
    std::vector<Element> inverse_;
};

/// Permutation realization of a finite group: images[g] is the permutation of element g.
struct GroupEmbedding {
    std::vector<Perm> images;

    std::size_t degree() const { return images.empty() ? 0 : images.front().degree(); }
    /// Homomorphism and identity checks (exhaustive).
    bool is_homomorphism(const FiniteGroup& group) const;
    bool is_injective() const;
};

inline constexpr std::size_t kClosureCap = 10000;
inline constexpr std::size_t kNormalSubgroupCap = 1000;
inline constexpr std::size_t kCentralizerDegreeCap = 8;

struct PermGroup {
    FiniteGroup group;
    GroupEmbedding embedding;
};

/// Group generated by `generators` under composition, enumerated breadth first
/// from the identity. Throws std::invalid_argument on mixed degrees and
/// CapacityError once more than `cap` elements appear.
PermGroup closure(std::span<const Perm> generators, std::size_t degree, std::size_t cap = kClosureCap);
PermGroup closure_of(std::span<const Perm> generators, std::size_t cap = kClosureCap);

/// Full symmetric group on `degree` points, generated by (0 1) and (0 1 ... r-1).
PermGroup symmetric_group(std::size_t degree, std::size_t cap = kClosureCap);

/// All eta in Sym(degree) commuting with every element of `set`, by full enumeration.
PermGroup centralizer_in_sym(std::span<const Perm> set, std::size_t degree);

/// Normal subgroups of `group` (including {e} and the whole group), ordered by
/// size and then lexicographically.
std::vector<Subset> normal_subgroups(const FiniteGroup& group);

struct Quotient {
    FiniteGroup group;
    std::vector<Element> projection;  // element index -> coset index
};

/// G/H with cosets numbered by their smallest element; the coset of e is 0.
Quotient quotient(const FiniteGroup& group, const Subset& normal);

}  // namespace symdyn::permgrp
