#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symdyn/core.hpp"
#include "symdyn/permgrp.hpp"
#include "symdyn/stream.hpp"

namespace symdyn::morse {

using permgrp::Element;
using permgrp::FiniteGroup;

/// Generalized Morse sequence x = b^0 x b^1 x ... over a finite group.
/// Every block starts with the identity and has length >= 2.
class MorseSpec {
public:
    MorseSpec(FiniteGroup group, EventuallyPeriodic<Word> blocks);

    const FiniteGroup& group() const { return group_; }
    const EventuallyPeriodic<Word>& blocks() const { return blocks_; }
    const Word& block(std::size_t t) const { return blocks_.at(t); }
    std::size_t lambda(std::size_t t) const { return block(t).size(); }

    /// n_t = lambda_0 * ... * lambda_{t-1}, n_0 = 1. Throws std::overflow_error past 2^63.
    std::uint64_t n(std::size_t t) const;

    /// All blocks constant e: the sequence is constant (valid but trivial).
    bool degenerate() const;
    /// Primes dividing some lambda_t (finite by construction).
    std::vector<std::uint64_t> lambda_primes() const;

    bool operator==(const MorseSpec&) const = default;

private:
    FiniteGroup group_;
    EventuallyPeriodic<Word> blocks_;
};

/// (B x C)[i + |B| j] = B[i] * C[j].
Word block_product(std::span<const Element> lhs, std::span<const Element> rhs, const FiniteGroup& group);

/// c_t = b^0 x ... x b^{t-1}; c_0 = (e).
Word prefix_block(const MorseSpec& spec, std::size_t t);

class MorseSource final : public SymbolSource {
public:
    explicit MorseSource(MorseSpec spec);

    Symbol at(std::uint64_t n) const override;
    std::size_t alphabet_size() const override { return spec_.group().order(); }
    std::string name() const override { return "morse"; }
    const MorseSpec& spec() const { return spec_; }

private:
    MorseSpec spec_;
};

SourcePtr morse_source(const MorseSpec& spec);

/// hat(y)[n] = y[n+1] * y[n]^{-1}. Throws std::invalid_argument on empty input.
Word hat(std::span<const Element> word, const FiniteGroup& group);

class HatSource final : public SymbolSource {
public:
    HatSource(SourcePtr inner, FiniteGroup group);

    Symbol at(std::uint64_t n) const override;
    void fill(std::uint64_t start, std::span<Symbol> out) const override;
    std::size_t alphabet_size() const override { return group_.order(); }
    std::string name() const override { return "hat(" + inner_->name() + ")"; }
    std::uint64_t length() const override;

private:
    SourcePtr inner_;
    FiniteGroup group_;
};

SourcePtr hat_source(SourcePtr inner, const FiniteGroup& group);

/// hat(x) = c^_t * c^_t * ... with holes at positions = n_t - 1 (mod n_t).
struct ToeplitzStage {
    std::size_t t = 0;
    std::uint64_t period = 1;  // n_t
    Word filled;               // c^_t, length n_t - 1

    std::uint64_t hole_residue() const { return period - 1; }
    bool is_hole(std::uint64_t n) const { return n % period == period - 1; }
};

ToeplitzStage toeplitz_stage(const MorseSpec& spec, std::size_t t);

/// Values of the Morse cocycle on the tower levels D^t_0, ..., D^t_{n_t - 2}.
Word cocycle_values(const MorseSpec& spec, std::size_t t);

struct RecoveredBlocks {
    std::vector<Word> blocks;
    bool degenerate = false;
};

/// Inverts cocycle_values: stages[t-1] = c^_t for t = 1..T gives b^0..b^{T-1}.
/// `lambdas` must match the stage lengths. Throws std::invalid_argument naming
/// the first position where stage t+1 disagrees with stage t.
RecoveredBlocks blocks_from_cocycle(std::span<const Word> stages, std::span<const std::size_t> lambdas,
                                    const FiniteGroup& group);

/// Morse spec over Z/2 with b^t = 01 where choice bit t is 1 and 00 where it is 0.
MorseSpec kakutani_spec(const EventuallyPeriodic<int>& choices);

struct ToeplitzVerdict {
    std::uint64_t position = 0;
    std::optional<std::size_t> level;    // least t with a verified period
    std::optional<std::uint64_t> period;  // n_t
};

inline constexpr std::size_t kToeplitzRepetitions = 8;

/// For each position n in [begin, end), the least t <= periods.size() such that
/// prefix is constant on n, n + n_t, ..., n + K n_t. periods[t-1] = n_t.
/// Throws std::invalid_argument unless prefix.size() >= end + K * n_T.
std::vector<ToeplitzVerdict> toeplitz_check(std::span<const Symbol> prefix, std::uint64_t begin,
                                            std::uint64_t end, std::span<const std::uint64_t> periods,
                                            std::size_t repetitions = kToeplitzRepetitions);

}  // namespace symdyn::morse
