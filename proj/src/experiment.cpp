#include "symdyn/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "symdyn/reduce.hpp"

namespace symdyn::experiment {

namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;

// f(S^k x) for k in [begin, begin + count), filled in parallel chunks.
std::vector<Complex> observe(const SymbolSource& source, const Observable& obs, std::uint64_t begin,
                             std::uint64_t count, unsigned threads) {
    if (threads <= 1 || count <= kChunk) return obs.series(source, begin, count);
    std::vector<Complex> out(count);
    const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
    auto work = [&](std::uint64_t first) {
        for (std::uint64_t c = first; c < chunks; c += threads) {
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t n = std::min(kChunk, count - lo);
            const auto part = obs.series(source, begin + lo, n);
            std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    };
    std::vector<std::future<void>> jobs;
    for (unsigned w = 1; w < threads; ++w) jobs.push_back(std::async(std::launch::async, work, w));
    work(0);
    for (auto& j : jobs) j.get();
    return out;
}

// Partial averages of terms[0..M) at each checkpoint M.
std::vector<Complex> partial_averages(std::span<const Complex> terms, std::span<const std::uint64_t> checkpoints,
                                      unsigned threads) {
    std::vector<Complex> values;
    values.reserve(checkpoints.size());
    for (auto m : checkpoints) {
        values.push_back(reduce::pairwise_sum(terms.first(m), threads) / static_cast<double>(m));
    }
    return values;
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string format_g12(double v) {
    if (v == 0.0) v = 0.0;  // print -0 as 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::uint64_t> pow2_checkpoints(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("checkpoints: N must be >= 1");
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= n; m *= 2) {
        out.push_back(m);
        if (m > n / 2) break;
    }
    if (out.back() != n) out.push_back(n);
    return out;
}

void validate_checkpoints(std::span<const std::uint64_t> checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("checkpoints: list is empty");
    if (checkpoints.front() == 0) throw std::invalid_argument("checkpoints: values must be >= 1");
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints: not strictly ascending");
    }
}

std::vector<std::int8_t> unit_weights(std::uint64_t limit) {
    std::vector<std::int8_t> w(limit + 1, 1);
    w[0] = 0;
    return w;
}

ConvergenceReport sarnak_series(const SymbolSource& source, const Observable& obs, std::span<const std::int8_t> weights,
                                std::span<const std::uint64_t> checkpoints, unsigned threads) {
    validate_checkpoints(checkpoints);
    const std::uint64_t n = checkpoints.back();
    if (weights.size() <= n) {
        throw std::invalid_argument("sarnak_series: weight table covers n <= " +
                                    std::to_string(weights.empty() ? 0 : weights.size() - 1) + " but N = " +
                                    std::to_string(n));
    }
    // terms[k] is the summand for orbit position n = k + 1.
    auto terms = observe(source, obs, 1, n, threads);
    for (std::uint64_t k = 0; k < n; ++k) terms[k] *= static_cast<double>(weights[k + 1]);

    ConvergenceReport rep;
    rep.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    rep.values = partial_averages(terms, checkpoints, threads);
    rep.sample_size = n;
    rep.metadata.system = source.name();
    rep.metadata.observable = obs.describe();
    return rep;
}

ConvergenceReport sarnak_series(const SymbolSource& source, const Observable& obs,
                                const arith::MultiplicativeWeightTable& weights,
                                std::span<const std::uint64_t> checkpoints, unsigned threads) {
    auto rep = sarnak_series(source, obs, weights.values(), checkpoints, threads);
    rep.metadata.weight = arith::to_string(weights.kind());
    return rep;
}

ConvergenceReport kbsz_series(const SymbolSource& source, const Observable& obs, std::uint32_t r, std::uint32_t s,
                              std::span<const std::uint64_t> checkpoints, unsigned threads) {
    if (r < 2 || s < 2) throw std::invalid_argument("kbsz_series: r and s must be >= 2");
    validate_checkpoints(checkpoints);
    const std::uint64_t n = checkpoints.back();
    const std::uint64_t top = n * std::max(r, s);
    const auto f = observe(source, obs, 0, top + 1, threads);
    std::vector<Complex> terms(n);
    for (std::uint64_t k = 1; k <= n; ++k) terms[k - 1] = f[k * r] * std::conj(f[k * s]);

    ConvergenceReport rep;
    rep.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    rep.values = partial_averages(terms, checkpoints, threads);
    rep.sample_size = n;
    rep.metadata.system = source.name();
    rep.metadata.observable = obs.describe();
    rep.metadata.r = r;
    rep.metadata.s = s;
    return rep;
}

std::vector<BlockReport> block_sweep(const SymbolSource& source, std::size_t k, std::span<const std::int8_t> weights,
                                     std::span<const std::uint64_t> checkpoints, unsigned threads) {
    if (k == 0) throw std::invalid_argument("block_sweep: block length must be >= 1");
    validate_checkpoints(checkpoints);
    const std::uint64_t n = checkpoints.back();
    Word seq(n + k - 1);
    source.fill(1, seq);
    std::set<Word> blocks;
    for (std::uint64_t i = 0; i < n; ++i) blocks.emplace(seq.begin() + static_cast<std::ptrdiff_t>(i),
                                                         seq.begin() + static_cast<std::ptrdiff_t>(i + k));
    std::vector<BlockReport> out;
    for (const auto& b : blocks) {
        out.push_back({b, sarnak_series(source, spectral::make_block_indicator(b, 0), weights, checkpoints, threads)});
    }
    return out;
}

ConvergenceReport run_experiment(const ExperimentConfig& config) {
    if (!config.system) throw std::invalid_argument("experiment: no system");
    if (config.sample_size == 0) throw std::invalid_argument("experiment: N must be >= 1");
    auto checkpoints = config.checkpoints.empty() ? pow2_checkpoints(config.sample_size) : config.checkpoints;
    validate_checkpoints(checkpoints);
    if (checkpoints.back() > config.sample_size) throw std::invalid_argument("experiment: checkpoint beyond N");
    if (checkpoints.back() != config.sample_size) checkpoints.push_back(config.sample_size);

    ConvergenceReport rep;
    if (config.kbsz) {
        const auto [r, s] = *config.kbsz;
        if (r == s || !is_prime(r) || !is_prime(s)) {
            throw std::invalid_argument("experiment: kbsz needs two distinct primes, got (" + std::to_string(r) +
                                        "," + std::to_string(s) + ")");
        }
        rep = kbsz_series(*config.system, config.observable, r, s, checkpoints, config.threads);
    } else if (config.weight) {
        const auto table = arith::build_weight_table(*config.weight, static_cast<std::uint32_t>(config.sample_size));
        rep = sarnak_series(*config.system, config.observable, table, checkpoints, config.threads);
    } else {
        rep = sarnak_series(*config.system, config.observable, unit_weights(config.sample_size), checkpoints,
                            config.threads);
    }
    if (!config.system_name.empty()) rep.metadata.system = config.system_name;
    if (!config.observable_name.empty()) rep.metadata.observable = config.observable_name;
    if (config.weight && !config.kbsz) rep.metadata.weight = arith::to_string(*config.weight);
    return rep;
}

void write_csv(const ConvergenceReport& report, std::ostream& out) {
    out << "N,real,imag\n";
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
        out << report.checkpoints[i] << ',' << format_g12(report.values[i].real()) << ','
            << format_g12(report.values[i].imag()) << '\n';
    }
}

std::string to_csv(const ConvergenceReport& report) {
    std::ostringstream os;
    write_csv(report, os);
    return os.str();
}

std::string to_json(const ConvergenceReport& report) {
    nlohmann::ordered_json j;
    auto& meta = j["metadata"];
    meta["system"] = report.metadata.system;
    meta["observable"] = report.metadata.observable;
    meta["weight"] = report.metadata.weight;
    meta["r"] = report.metadata.r ? nlohmann::ordered_json(*report.metadata.r) : nlohmann::ordered_json(nullptr);
    meta["s"] = report.metadata.s ? nlohmann::ordered_json(*report.metadata.s) : nlohmann::ordered_json(nullptr);
    j["N"] = report.sample_size;
    auto& rows = j["rows"];
    rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
        rows.push_back({{"N", report.checkpoints[i]},
                        {"real", report.values[i].real()},
                        {"imag", report.values[i].imag()}});
    }
    return j.dump(2) + "\n";
}

void save_report(const ConvergenceReport& report, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "csv") {
        text = to_csv(report);
    } else if (format == "json") {
        text = to_json(report);
    } else {
        throw std::invalid_argument("unknown report format '" + format + "' (expected csv or json)");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace symdyn::experiment
