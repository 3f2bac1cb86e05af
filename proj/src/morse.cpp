#include "symdyn/morse.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace symdyn::morse {

namespace {

void check_block(const Word& b, const FiniteGroup& group) {
    if (b.size() < 2) throw std::invalid_argument("Morse block must have length >= 2");
    if (b[0] != 0) throw std::invalid_argument("Morse block must start with the identity");
    for (auto g : b) {
        if (g >= group.order()) throw std::invalid_argument("Morse block symbol outside the group");
    }
}

}  // namespace

MorseSpec::MorseSpec(FiniteGroup group, EventuallyPeriodic<Word> blocks)
    : group_(std::move(group)), blocks_(std::move(blocks)) {
    if (blocks_.cycle.empty()) throw std::invalid_argument("MorseSpec: missing repeated tail block");
    for (const auto& b : blocks_.prefix) check_block(b, group_);
    for (const auto& b : blocks_.cycle) check_block(b, group_);
}

std::uint64_t MorseSpec::n(std::size_t t) const {
    std::uint64_t n = 1;
    for (std::size_t s = 0; s < t; ++s) {
        const std::uint64_t lam = lambda(s);
        if (n > (std::uint64_t{1} << 63) / lam) throw std::overflow_error("MorseSpec::n: n_t overflows");
        n *= lam;
    }
    return n;
}

bool MorseSpec::degenerate() const {
    auto constant = [](const Word& b) { return std::all_of(b.begin(), b.end(), [](Symbol g) { return g == 0; }); };
    return std::all_of(blocks_.prefix.begin(), blocks_.prefix.end(), constant) &&
           std::all_of(blocks_.cycle.begin(), blocks_.cycle.end(), constant);
}

std::vector<std::uint64_t> MorseSpec::lambda_primes() const {
    std::set<std::uint64_t> primes;
    auto add = [&](std::uint64_t v) {
        for (std::uint64_t p = 2; p * p <= v; ++p) {
            while (v % p == 0) {
                primes.insert(p);
                v /= p;
            }
        }
        if (v > 1) primes.insert(v);
    };
    for (const auto& b : blocks_.prefix) add(b.size());
    for (const auto& b : blocks_.cycle) add(b.size());
    return {primes.begin(), primes.end()};
}

Word block_product(std::span<const Element> lhs, std::span<const Element> rhs, const FiniteGroup& group) {
    Word out;
    out.reserve(lhs.size() * rhs.size());
    for (auto c : rhs)
        for (auto b : lhs) out.push_back(group.mul(b, c));
    return out;
}

Word prefix_block(const MorseSpec& spec, std::size_t t) {
    Word c{0};
    for (std::size_t s = 0; s < t; ++s) c = block_product(c, spec.block(s), spec.group());
    return c;
}

MorseSource::MorseSource(MorseSpec spec) : spec_(std::move(spec)) {}

Symbol MorseSource::at(std::uint64_t n) const {
    const auto& g = spec_.group();
    Element acc = 0;
    for (std::size_t t = 0; n > 0; ++t) {
        const auto& b = spec_.block(t);
        acc = g.mul(acc, b[n % b.size()]);
        n /= b.size();
    }
    return acc;
}

SourcePtr morse_source(const MorseSpec& spec) { return std::make_shared<MorseSource>(spec); }

Word hat(std::span<const Element> word, const FiniteGroup& group) {
    if (word.empty()) throw std::invalid_argument("hat: empty input");
    Word out(word.size() - 1);
    for (std::size_t n = 0; n + 1 < word.size(); ++n) out[n] = group.mul(word[n + 1], group.inv(word[n]));
    return out;
}

HatSource::HatSource(SourcePtr inner, FiniteGroup group) : inner_(std::move(inner)), group_(std::move(group)) {
    if (inner_->alphabet_size() > group_.order()) {
        throw std::invalid_argument("hat: source alphabet larger than the group");
    }
}

Symbol HatSource::at(std::uint64_t n) const {
    return group_.mul(inner_->at(n + 1), group_.inv(inner_->at(n)));
}

void HatSource::fill(std::uint64_t start, std::span<Symbol> out) const {
    Word raw(out.size() + 1);
    inner_->fill(start, raw);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = group_.mul(raw[i + 1], group_.inv(raw[i]));
}

std::uint64_t HatSource::length() const {
    const auto len = inner_->length();
    if (len == kInfinite) return kInfinite;
    if (len == 0) throw std::invalid_argument("hat: empty input");
    return len - 1;
}

SourcePtr hat_source(SourcePtr inner, const FiniteGroup& group) {
    return std::make_shared<HatSource>(std::move(inner), group);
}

ToeplitzStage toeplitz_stage(const MorseSpec& spec, std::size_t t) {
    if (t == 0) throw std::invalid_argument("toeplitz_stage: level must be >= 1");
    ToeplitzStage stage;
    stage.t = t;
    stage.period = spec.n(t);
    stage.filled = hat(prefix_block(spec, t), spec.group());
    return stage;
}

Word cocycle_values(const MorseSpec& spec, std::size_t t) { return toeplitz_stage(spec, t).filled; }

RecoveredBlocks blocks_from_cocycle(std::span<const Word> stages, std::span<const std::size_t> lambdas,
                                    const FiniteGroup& group) {
    if (stages.size() != lambdas.size()) {
        throw std::invalid_argument("blocks_from_cocycle: need one lambda per stage");
    }
    std::uint64_t n = 1;  // n_t
    for (std::size_t t = 0; t < stages.size(); ++t) {
        if (lambdas[t] < 2) throw std::invalid_argument("blocks_from_cocycle: lambda must be >= 2");
        const std::uint64_t next = n * lambdas[t];
        const auto& stage = stages[t];  // c^_{t+1}
        if (stage.size() != next - 1) {
            throw std::invalid_argument("blocks_from_cocycle: stage " + std::to_string(t + 1) + " has length " +
                                        std::to_string(stage.size()) + ", expected " + std::to_string(next - 1));
        }
        for (auto g : stage) {
            if (g >= group.order()) throw std::invalid_argument("blocks_from_cocycle: symbol outside the group");
        }
        if (t > 0) {
            const auto& prev = stages[t - 1];
            for (std::uint64_t k = 0; k < stage.size(); ++k) {
                const std::uint64_t r = k % n;
                if (r == n - 1) continue;
                if (stage[k] != prev[r]) {
                    throw std::invalid_argument("blocks_from_cocycle: stage " + std::to_string(t + 1) +
                                                " disagrees with stage " + std::to_string(t) + " at position " +
                                                std::to_string(k));
                }
            }
        }
        n = next;
    }

    // b^t[i] = prod_{j=i..1} c^_{t+1}[j n_t - 1] c_t[n_t - 1], with n_0 = 1, c_0 = (e).
    RecoveredBlocks out;
    Word c{0};
    for (std::size_t t = 0; t < stages.size(); ++t) {
        const std::uint64_t nt = c.size();
        const Element top = c.back();
        Word b(lambdas[t], 0);
        for (std::size_t i = 1; i < b.size(); ++i) {
            const Element step = group.mul(stages[t][i * nt - 1], top);
            b[i] = group.mul(step, b[i - 1]);
        }
        c = block_product(c, b, group);
        out.blocks.push_back(std::move(b));
    }
    out.degenerate = std::all_of(out.blocks.begin(), out.blocks.end(), [](const Word& b) {
        return std::all_of(b.begin(), b.end(), [](Element g) { return g == 0; });
    });
    return out;
}

MorseSpec kakutani_spec(const EventuallyPeriodic<int>& choices) {
    auto block = [](int bit) { return bit ? Word{0, 1} : Word{0, 0}; };
    EventuallyPeriodic<Word> blocks;
    for (int bit : choices.prefix) blocks.prefix.push_back(block(bit));
    for (int bit : choices.cycle) blocks.cycle.push_back(block(bit));
    return MorseSpec(FiniteGroup::cyclic(2), std::move(blocks));
}

std::vector<ToeplitzVerdict> toeplitz_check(std::span<const Symbol> prefix, std::uint64_t begin,
                                            std::uint64_t end, std::span<const std::uint64_t> periods,
                                            std::size_t repetitions) {
    if (begin > end) throw std::invalid_argument("toeplitz_check: empty position range");
    if (periods.empty()) throw std::invalid_argument("toeplitz_check: no candidate periods");
    const std::uint64_t needed = end + repetitions * periods.back();
    if (prefix.size() < needed) {
        throw std::invalid_argument("toeplitz_check: prefix of length " + std::to_string(prefix.size()) +
                                    " is shorter than the required " + std::to_string(needed));
    }
    std::vector<ToeplitzVerdict> out;
    out.reserve(end - begin);
    for (std::uint64_t n = begin; n < end; ++n) {
        ToeplitzVerdict v;
        v.position = n;
        for (std::size_t t = 0; t < periods.size() && !v.level; ++t) {
            const std::uint64_t p = periods[t];
            bool constant = true;
            for (std::size_t j = 1; j <= repetitions && constant; ++j) constant = prefix[n + j * p] == prefix[n];
            if (constant) {
                v.level = t + 1;
                v.period = p;
            }
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace symdyn::morse
