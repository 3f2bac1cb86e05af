#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/arith.hpp"
#include "symdyn/spectral.hpp"
#include "symdyn/stream.hpp"

namespace symdyn::experiment {

using spectral::Complex;
using spectral::Observable;

struct ReportMetadata {
    std::string system;
    std::string observable;
    std::string weight = "none";
    std::optional<std::uint32_t> r, s;

    bool operator==(const ReportMetadata&) const = default;
};

struct ConvergenceReport {
    std::vector<std::uint64_t> checkpoints;
    std::vector<Complex> values;
    std::uint64_t sample_size = 0;
    ReportMetadata metadata;

    bool operator==(const ConvergenceReport&) const = default;
};

/// 1, 2, 4, ... up to N, with N appended when it is not a power of two.
std::vector<std::uint64_t> pow2_checkpoints(std::uint64_t n);

/// Checks that the list is nonempty, strictly ascending and starts at >= 1.
void validate_checkpoints(std::span<const std::uint64_t> checkpoints);

/// Weight sequence w[n], n >= 1 (slot 0 unused).
std::vector<std::int8_t> unit_weights(std::uint64_t limit);

/// S_M = (1/M) sum_{n=1}^{M} f(S^n x) w[n] at every checkpoint M. Each partial
/// sum is a balanced-tree reduction over n = 1..M, so the output does not depend
/// on `threads`. Throws std::invalid_argument when the weights are too short.
ConvergenceReport sarnak_series(const SymbolSource& source, const Observable& obs, std::span<const std::int8_t> weights,
                                std::span<const std::uint64_t> checkpoints, unsigned threads = 1);
ConvergenceReport sarnak_series(const SymbolSource& source, const Observable& obs,
                                const arith::MultiplicativeWeightTable& weights,
                                std::span<const std::uint64_t> checkpoints, unsigned threads = 1);

/// C_M = (1/M) sum_{n=1}^{M} f(S^{nr} x) conj(f(S^{ns} x)). Requires r, s >= 2.
ConvergenceReport kbsz_series(const SymbolSource& source, const Observable& obs, std::uint32_t r, std::uint32_t s,
                              std::span<const std::uint64_t> checkpoints, unsigned threads = 1);

struct BlockReport {
    Word block;
    ConvergenceReport report;
};

/// One sarnak_series per block of length exactly k that occurs in x[1, N + k),
/// in lexicographic order.
std::vector<BlockReport> block_sweep(const SymbolSource& source, std::size_t k, std::span<const std::int8_t> weights,
                                     std::span<const std::uint64_t> checkpoints, unsigned threads = 1);

struct ExperimentConfig {
    SourcePtr system;
    std::string system_name;
    Observable observable;
    std::string observable_name;
    std::optional<arith::WeightKind> weight;  // nullopt: plain orbit average
    std::uint64_t sample_size = 0;
    std::vector<std::uint64_t> checkpoints;   // empty: pow2_checkpoints(N)
    std::optional<std::pair<std::uint32_t, std::uint32_t>> kbsz;
    unsigned threads = 1;
};

/// Runs the configured series. Throws std::invalid_argument on an invalid config
/// (in KBSZ mode r and s must be distinct primes).
ConvergenceReport run_experiment(const ExperimentConfig& config);

/// Header `N,real,imag`, one row per checkpoint, %.12g, LF endings.
void write_csv(const ConvergenceReport& report, std::ostream& out);
std::string to_csv(const ConvergenceReport& report);
std::string to_json(const ConvergenceReport& report);

/// Writes the report; throws std::runtime_error naming the path on I/O failure.
void save_report(const ConvergenceReport& report, const std::string& path, const std::string& format);

}  // namespace symdyn::experiment
