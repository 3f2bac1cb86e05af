#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/stream.hpp"

namespace symdyn::arith {

enum class WeightKind { moebius, liouville };

std::string to_string(WeightKind kind);
WeightKind parse_weight_kind(std::string_view text);

/// mu(n) or lambda(n) for 1 <= n <= limit. Immutable once built.
class MultiplicativeWeightTable {
public:
    WeightKind kind() const { return kind_; }
    std::uint64_t limit() const { return limit_; }

    int operator[](std::uint64_t n) const { return values_.at(n); }

    /// Values indexed by n; slot 0 is unused and holds 0.
    std::span<const std::int8_t> values() const { return values_; }

    friend MultiplicativeWeightTable build_weight_table(WeightKind kind, std::uint64_t limit);

private:
    WeightKind kind_ = WeightKind::moebius;
    std::uint64_t limit_ = 0;
    std::vector<std::int8_t> values_;
};

inline constexpr std::uint64_t kMaxWeightLimit = std::uint64_t{1} << 26;

/// Linear sieve. Throws std::invalid_argument for limit == 0 and
/// CapacityError above kMaxWeightLimit.
MultiplicativeWeightTable build_weight_table(WeightKind kind, std::uint64_t limit);

/// Smallest-prime-factor table for factorization queries.
class FactorSieve {
public:
    explicit FactorSieve(std::uint32_t limit);

    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t smallest_prime_factor(std::uint32_t n) const { return spf_.at(n); }

    /// Prime factors with multiplicity, ascending.
    std::vector<std::uint32_t> factorize(std::uint32_t n) const;

private:
    std::vector<std::uint32_t> spf_;
};

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Binary pattern 1 x ... x t where interior symbols are '1' or '*' (wildcard)
/// and the terminal bit t is '1' or '0'.
class DigitPattern {
public:
    enum class Cell : std::uint8_t { zero, one, star };

    explicit DigitPattern(std::string_view text);

    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    int terminal_bit() const { return cells_.back() == Cell::one ? 1 : 0; }
    std::string str() const;

    bool operator==(const DigitPattern&) const = default;

private:
    std::vector<Cell> cells_;
};

/// Parity of the number of (overlapping) occurrences of `pattern` in the
/// MSB-first binary expansion of n. n = 0 has the empty expansion.
int pattern_parity(std::uint64_t n, const DigitPattern& pattern);

/// x[n] = pattern_parity(n, pattern), a binary sequence.
class PatternParitySource final : public SymbolSource {
public:
    explicit PatternParitySource(DigitPattern pattern) : pattern_(std::move(pattern)) {}

    Symbol at(std::uint64_t n) const override { return static_cast<Symbol>(pattern_parity(n, pattern_)); }
    std::size_t alphabet_size() const override { return 2; }
    std::string name() const override { return "rs(" + pattern_.str() + ")"; }
    const DigitPattern& pattern() const { return pattern_; }

private:
    DigitPattern pattern_;
};

}  // namespace symdyn::arith
