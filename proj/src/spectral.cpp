#include "symdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "symdyn/reduce.hpp"

namespace symdyn::spectral {

std::uint32_t Observable::span() const {
    return window_.empty() ? 1 : *std::max_element(window_.begin(), window_.end()) + 1;
}

Complex Observable::evaluate(std::span<const Symbol> seq, std::size_t pos) const {
    switch (kind_) {
        case ObservableKind::constant:
            return table_.front();
        case ObservableKind::walsh: {
            unsigned parity = 0;
            for (auto off : window_) {
                const auto s = seq[pos + off];
                if (s > 1) throw std::invalid_argument("walsh observable applied to a non-binary symbol");
                parity ^= s;
            }
            return parity ? -1.0 : 1.0;
        }
        case ObservableKind::block_indicator:
            for (std::size_t i = 0; i < block_.size(); ++i) {
                if (seq[pos + window_[i]] != block_[i]) return 0.0;
            }
            return 1.0;
        case ObservableKind::symbol_table:
            return table_.at(seq[pos]);
    }
    return 0.0;
}

void Observable::check_alphabet(std::size_t alphabet_size) const {
    if (kind_ == ObservableKind::walsh && alphabet_size != 2) {
        throw std::invalid_argument("walsh observable needs a binary alphabet");
    }
    if (kind_ == ObservableKind::symbol_table && table_.size() != alphabet_size) {
        throw std::invalid_argument("symbol table does not match the stream alphabet");
    }
}

std::vector<Complex> Observable::series(const SymbolSource& source, std::uint64_t begin, std::uint64_t count) const {
    check_alphabet(source.alphabet_size());
    const std::uint32_t extra = span() - 1;
    Word seq(count + extra);
    source.fill(begin, seq);
    std::vector<Complex> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = evaluate(seq, k);
    return out;
}

std::string Observable::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case ObservableKind::constant:
            os << "constant " << table_.front().real();
            if (table_.front().imag() != 0.0) os << (table_.front().imag() < 0 ? "-" : "+") << std::abs(table_.front().imag()) << "i";
            break;
        case ObservableKind::walsh:
            os << "walsh {";
            for (std::size_t i = 0; i < window_.size(); ++i) os << (i ? "," : "") << window_[i];
            os << "}";
            break;
        case ObservableKind::block_indicator:
            os << "indicator \"" << format_word(block_) << "\" at " << window_.front();
            break;
        case ObservableKind::symbol_table:
            os << "table";
            break;
    }
    return os.str();
}

Observable make_constant(Complex value) {
    Observable o;
    o.table_ = {value};
    o.zero_mean_ = value == Complex{};
    return o;
}

Observable make_walsh(std::vector<std::uint32_t> offsets, std::size_t alphabet_size) {
    if (alphabet_size != 2) throw std::invalid_argument("walsh observable needs a binary alphabet");
    std::sort(offsets.begin(), offsets.end());
    if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end()) {
        throw std::invalid_argument("walsh observable: repeated offset");
    }
    Observable o;
    o.kind_ = ObservableKind::walsh;
    o.window_ = std::move(offsets);
    return o;
}

Observable make_block_indicator(Word block, std::uint32_t offset) {
    if (block.empty()) throw std::invalid_argument("block indicator: empty block");
    Observable o;
    o.kind_ = ObservableKind::block_indicator;
    o.window_.clear();
    for (std::uint32_t i = 0; i < block.size(); ++i) o.window_.push_back(offset + i);
    o.block_ = std::move(block);
    return o;
}

Observable make_symbol_table(const std::map<Symbol, Complex>& values, std::size_t alphabet_size) {
    Observable o;
    o.kind_ = ObservableKind::symbol_table;
    o.window_ = {0};
    o.table_.resize(alphabet_size);
    Complex total = 0.0;
    double scale = 0.0;
    for (Symbol s = 0; s < alphabet_size; ++s) {
        const auto it = values.find(s);
        if (it == values.end()) {
            throw std::invalid_argument("symbol table has no value for symbol " + std::to_string(s));
        }
        o.table_[s] = it->second;
        total += it->second;
        scale = std::max(scale, std::abs(it->second));
    }
    if (values.size() != alphabet_size) throw std::invalid_argument("symbol table maps symbols outside the alphabet");
    o.zero_mean_ = std::abs(total) <= 1e-12 * std::max(1.0, scale);
    return o;
}

AutocorrelationEstimate autocorrelation(const SymbolSource& source, const Observable& obs, std::uint64_t sample_size,
                                        std::size_t max_lag, unsigned threads) {
    if (sample_size < 4 * static_cast<std::uint64_t>(max_lag) || sample_size == 0) {
        throw std::invalid_argument("autocorrelation: need N >= 4L (N = " + std::to_string(sample_size) +
                                    ", L = " + std::to_string(max_lag) + ")");
    }
    const auto f = obs.series(source, 0, sample_size);
    AutocorrelationEstimate est;
    est.max_lag = max_lag;
    est.sample_size = sample_size;
    est.note = source.name() + " / " + obs.describe();
    est.values.resize(max_lag + 1);

    auto lag_range = [&](std::size_t first, std::size_t last) {
        std::vector<Complex> prod;
        for (std::size_t n = first; n < last; ++n) {
            prod.resize(sample_size - n);
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = f[k + n] * std::conj(f[k]);
            est.values[n] = reduce::pairwise_sum(prod) / static_cast<double>(sample_size);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(max_lag + 1)));
    std::vector<std::future<void>> jobs;
    const std::size_t per = (max_lag + 1 + threads - 1) / threads;
    for (unsigned w = 1; w < threads; ++w) {
        const std::size_t first = w * per;
        const std::size_t last = std::min(max_lag + 1, first + per);
        if (first < last) jobs.push_back(std::async(std::launch::async, lag_range, first, last));
    }
    lag_range(0, std::min(max_lag + 1, per));
    for (auto& j : jobs) j.get();
    est.values[0] = est.values[0].real();
    return est;
}

std::vector<double> periodogram(const AutocorrelationEstimate& estimate, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("periodogram: grid size must be >= 2");
    const std::size_t L = estimate.max_lag;
    const double g0 = estimate.values.at(0).real();
    std::vector<double> out(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        double acc = g0;
        for (std::size_t n = 1; n <= L; ++n) {
            const double w = 1.0 - static_cast<double>(n) / static_cast<double>(L + 1);
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>((n * j) % grid_size) / static_cast<double>(grid_size);
            acc += 2.0 * w * (estimate.values[n] * std::polar(1.0, angle)).real();
        }
        // The Fejer-windowed estimate is a nonnegative density; only rounding can push it below 0.
        out[j] = std::max(0.0, acc);
    }
    return out;
}

double atom_mass(const SymbolSource& source, const Observable& obs, std::int64_t p, std::uint64_t q,
                 std::uint64_t sample_size) {
    if (q == 0) throw std::invalid_argument("atom_mass: denominator must be positive");
    if (sample_size < q) throw std::invalid_argument("atom_mass: need N >= q");
    const auto f = obs.series(source, 0, sample_size);
    const std::int64_t qs = static_cast<std::int64_t>(q);
    const auto pr = static_cast<std::uint64_t>(((p % qs) + qs) % qs);
    std::vector<Complex> terms(sample_size);
    for (std::uint64_t n = 0; n < sample_size; ++n) {
        const auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(n) * pr) % q);
        terms[n] = f[n] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
    }
    return std::norm(reduce::pairwise_sum(terms) / static_cast<double>(sample_size));
}

double wiener_average(const AutocorrelationEstimate& estimate) {
    std::vector<double> sq;
    sq.reserve(estimate.values.size());
    for (const auto& g : estimate.values) sq.push_back(std::norm(g));
    return reduce::pairwise_sum(std::span<const double>(sq)) / static_cast<double>(estimate.values.size());
}

}  // namespace symdyn::spectral
