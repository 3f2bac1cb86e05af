#include "symdyn/arith.hpp"

#include <bit>
#include <stdexcept>

#include "symdyn/core.hpp"

namespace symdyn::arith {

std::string to_string(WeightKind kind) {
    return kind == WeightKind::moebius ? "moebius" : "liouville";
}

WeightKind parse_weight_kind(std::string_view text) {
    if (text == "moebius") return WeightKind::moebius;
    if (text == "liouville") return WeightKind::liouville;
    throw std::invalid_argument("unknown weight kind '" + std::string(text) + "'");
}

MultiplicativeWeightTable build_weight_table(WeightKind kind, std::uint64_t limit) {
    if (limit == 0) throw std::invalid_argument("build_weight_table: limit must be >= 1");
    if (limit > kMaxWeightLimit) {
        throw CapacityError("build_weight_table: limit " + std::to_string(limit) +
                            " exceeds the table budget 2^26");
    }
    const auto n_max = static_cast<std::uint32_t>(limit);

    MultiplicativeWeightTable table;
    table.kind_ = kind;
    table.limit_ = limit;
    table.values_.assign(n_max + 1, 0);
    auto& v = table.values_;
    v[1] = 1;

    // Linear sieve: every composite m is visited once, as m = i * p with p = spf(m).
    std::vector<bool> composite(n_max + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= n_max; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            v[i] = -1;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t m = std::uint64_t{i} * p;
            if (m > n_max) break;
            composite[m] = true;
            if (i % p == 0) {
                v[m] = kind == WeightKind::moebius ? 0 : static_cast<std::int8_t>(-v[i]);
                break;
            }
            v[m] = static_cast<std::int8_t>(-v[i]);
        }
    }
    return table;
}

FactorSieve::FactorSieve(std::uint32_t limit) : spf_(std::size_t{limit} + 1, 0) {
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes.push_back(i);
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t m = std::uint64_t{i} * p;
            if (p > spf_[i] || m > limit) break;
            spf_[m] = p;
        }
    }
}

std::vector<std::uint32_t> FactorSieve::factorize(std::uint32_t n) const {
    if (n == 0 || n > limit()) throw std::out_of_range("FactorSieve::factorize: n out of range");
    std::vector<std::uint32_t> out;
    while (n > 1) {
        out.push_back(spf_[n]);
        n /= spf_[n];
    }
    return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(std::size_t{limit} + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

DigitPattern::DigitPattern(std::string_view text) {
    if (text.size() < 2) throw std::invalid_argument("digit pattern needs at least two symbols");
    if (text.size() > 63) throw std::invalid_argument("digit pattern longer than 63 symbols");
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool first = i == 0;
        const bool last = i + 1 == text.size();
        if (c == '1') {
            cells_.push_back(Cell::one);
        } else if (c == '*' && !first && !last) {
            cells_.push_back(Cell::star);
        } else if (c == '0' && last) {
            cells_.push_back(Cell::zero);
        } else {
            throw std::invalid_argument("invalid digit pattern '" + std::string(text) +
                                        "': expected 1 followed by 1/* and a final 1 or 0");
        }
    }
}

std::string DigitPattern::str() const {
    std::string s;
    for (Cell c : cells_) s.push_back(c == Cell::one ? '1' : c == Cell::zero ? '0' : '*');
    return s;
}

int pattern_parity(std::uint64_t n, const DigitPattern& pattern) {
    const auto len = static_cast<int>(pattern.size());
    const int bits = std::bit_width(n);
    if (bits < len) return 0;

    // cells()[0] is the most significant bit of a window.
    std::uint64_t care = 0;
    std::uint64_t want = 0;
    for (int i = 0; i < len; ++i) {
        const auto cell = pattern.cells()[static_cast<std::size_t>(i)];
        const std::uint64_t bit = std::uint64_t{1} << (len - 1 - i);
        if (cell != DigitPattern::Cell::star) care |= bit;
        if (cell == DigitPattern::Cell::one) want |= bit;
    }
    const std::uint64_t mask = (std::uint64_t{1} << len) - 1;
    int count = 0;
    for (int shift = 0; shift + len <= bits; ++shift) {
        if ((((n >> shift) & mask) & care) == want) ++count;
    }
    return count & 1;
}

}  // namespace symdyn::arith
