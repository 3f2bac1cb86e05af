#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "symdyn/core.hpp"
#include "symdyn/stream.hpp"

namespace symdyn::spectral {

using Complex = std::complex<double>;

enum class ObservableKind { constant, walsh, block_indicator, symbol_table };

/// A function of the symbols at positions k + offset, offset in window().
/// Two-sided windows [-K, K] are expressed as [0, 2K].
class Observable {
public:
    /// The constant observable 1.
    Observable() = default;

    ObservableKind kind() const { return kind_; }
    const std::vector<std::uint32_t>& window() const { return window_; }
    std::uint32_t span() const;  // max offset + 1

    /// f at position `pos` of `seq`; reads seq[pos + offset] for every offset.
    Complex evaluate(std::span<const Symbol> seq, std::size_t pos) const;

    /// f(S^k x) for k in [begin, begin + count).
    std::vector<Complex> series(const SymbolSource& source, std::uint64_t begin, std::uint64_t count) const;

    /// symbol_table only: sum of the table values is zero.
    bool zero_mean() const { return zero_mean_; }
    const std::vector<Complex>& table() const { return table_; }
    const Word& block() const { return block_; }

    std::string describe() const;

    friend Observable make_walsh(std::vector<std::uint32_t> offsets, std::size_t alphabet_size);
    friend Observable make_block_indicator(Word block, std::uint32_t offset);
    friend Observable make_symbol_table(const std::map<Symbol, Complex>& values, std::size_t alphabet_size);
    friend Observable make_constant(Complex value);

private:
    void check_alphabet(std::size_t alphabet_size) const;

    ObservableKind kind_ = ObservableKind::constant;
    std::vector<std::uint32_t> window_{0};
    Word block_;
    std::vector<Complex> table_{1.0};
    bool zero_mean_ = false;
};

/// f(y) = value for every y.
Observable make_constant(Complex value);

/// f_C(y) = (-1)^{sum_{i in C} y[i]}. Throws std::invalid_argument unless alphabet_size == 2.
Observable make_walsh(std::vector<std::uint32_t> offsets, std::size_t alphabet_size = 2);

/// 1 when y[offset, offset + |B|) == B. Throws std::invalid_argument on an empty block.
Observable make_block_indicator(Word block, std::uint32_t offset = 0);

/// f(y) = values[y[0]]. Throws std::invalid_argument unless every symbol of the alphabet is mapped.
Observable make_symbol_table(const std::map<Symbol, Complex>& values, std::size_t alphabet_size);

struct AutocorrelationEstimate {
    std::size_t max_lag = 0;
    std::vector<Complex> values;  // gamma(0..L)
    std::uint64_t sample_size = 0;
    std::string note;
};

/// gamma(n) = (1/N) sum_{k < N - n} f(k + n) conj(f(k)), for n <= L, over the
/// first N samples. Throws std::invalid_argument when N < 4L.
AutocorrelationEstimate autocorrelation(const SymbolSource& source, const Observable& obs, std::uint64_t sample_size,
                                        std::size_t max_lag, unsigned threads = 1);

/// Fejer-weighted lag-window density on the grid j / M, j = 0..M-1.
std::vector<double> periodogram(const AutocorrelationEstimate& estimate, std::size_t grid_size);

/// |(1/N) sum_{n<N} f(n) e^{-2 pi i n p / q}|^2. Throws std::invalid_argument when N < q.
double atom_mass(const SymbolSource& source, const Observable& obs, std::int64_t p, std::uint64_t q,
                 std::uint64_t sample_size);

/// (1/(L+1)) sum_{n <= L} |gamma(n)|^2.
double wiener_average(const AutocorrelationEstimate& estimate);

}  // namespace symdyn::spectral
