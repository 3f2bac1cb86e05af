#include "symdyn/odometer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symdyn::odometer {

OdometerSpec::OdometerSpec(EventuallyPeriodic<std::uint32_t> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.cycle.empty()) throw std::invalid_argument("OdometerSpec: missing repeated radix");
    auto bad = [](std::uint32_t l) { return l < 2; };
    if (std::any_of(lambdas_.prefix.begin(), lambdas_.prefix.end(), bad) ||
        std::any_of(lambdas_.cycle.begin(), lambdas_.cycle.end(), bad)) {
        throw std::invalid_argument("OdometerSpec: every lambda_t must be >= 2");
    }
}

std::uint64_t OdometerSpec::n(std::size_t t) const {
    std::uint64_t n = 1;
    for (std::size_t s = 0; s < t; ++s) {
        if (n > (std::uint64_t{1} << 63) / lambda(s)) throw std::overflow_error("OdometerSpec::n: n_t overflows");
        n *= lambda(s);
    }
    return n;
}

OdometerPoint::OdometerPoint(OdometerSpec spec, std::vector<std::uint32_t> digits, bool top_tail)
    : spec_(std::move(spec)), digits_(std::move(digits)), top_tail_(top_tail) {
    for (std::size_t t = 0; t < digits_.size(); ++t) {
        if (digits_[t] >= spec_.lambda(t)) throw std::invalid_argument("OdometerPoint: digit out of range");
    }
    normalize();
}

void OdometerPoint::normalize() {
    while (!digits_.empty()) {
        const std::size_t t = digits_.size() - 1;
        const std::uint32_t tail = top_tail_ ? spec_.lambda(t) - 1 : 0;
        if (digits_.back() != tail) break;
        digits_.pop_back();
    }
}

std::uint32_t OdometerPoint::digit(std::size_t t) const {
    if (t < digits_.size()) return digits_[t];
    return top_tail_ ? spec_.lambda(t) - 1 : 0;
}

OdometerPoint OdometerPoint::from_integer(OdometerSpec spec, std::int64_t n) {
    std::vector<std::uint32_t> digits;
    if (n >= 0) {
        auto v = static_cast<std::uint64_t>(n);
        for (std::size_t t = 0; v > 0; ++t) {
            digits.push_back(static_cast<std::uint32_t>(v % spec.lambda(t)));
            v /= spec.lambda(t);
        }
        return {std::move(spec), std::move(digits), false};
    }
    // -m = (n_T - m) followed by the all-top tail, for any n_T >= m.
    const std::uint64_t m = static_cast<std::uint64_t>(-(n + 1)) + 1;
    std::size_t t_max = 0;
    while (spec.n(t_max) < m) ++t_max;
    std::uint64_t v = spec.n(t_max) - m;
    for (std::size_t t = 0; t < t_max; ++t) {
        digits.push_back(static_cast<std::uint32_t>(v % spec.lambda(t)));
        v /= spec.lambda(t);
    }
    return {std::move(spec), std::move(digits), true};
}

OdometerPoint add(const OdometerPoint& x, const OdometerPoint& y) {
    if (!(x.spec() == y.spec())) throw std::invalid_argument("odometer add: points of different odometers");
    const std::size_t len = std::max(x.digits().size(), y.digits().size()) + 2;
    std::vector<std::uint32_t> digits(len);
    std::uint64_t carry = 0;
    for (std::size_t t = 0; t < len; ++t) {
        const std::uint64_t s = std::uint64_t{x.digit(t)} + y.digit(t) + carry;
        digits[t] = static_cast<std::uint32_t>(s % x.spec().lambda(t));
        carry = s / x.spec().lambda(t);
    }
    // Beyond `len` the digit pairs are (0,0), (top,0) or (top,top) with a settled carry.
    const int tops = int{x.top_tail()} + int{y.top_tail()};
    const bool top_tail = tops == 2 || (tops == 1 && carry == 0);
    return {x.spec(), std::move(digits), top_tail};
}

OdometerPoint translate(const OdometerPoint& x, std::int64_t n) {
    return add(x, OdometerPoint::from_integer(x.spec(), n));
}

std::uint64_t tower_index(const OdometerPoint& x, std::size_t t) {
    std::uint64_t index = 0;
    std::uint64_t scale = 1;
    for (std::size_t j = 0; j < t; ++j) {
        index += std::uint64_t{x.digit(j)} * scale;
        scale *= x.spec().lambda(j);
    }
    return index;
}

Element morse_cocycle_eval(const morse::MorseSpec& spec, const OdometerPoint& x) {
    if (x.is_all_top()) {
        throw UndefinedAtPoint("morse cocycle is undefined at the point where every digit is lambda_t - 1");
    }
    const morse::MorseSource seq(spec);
    const auto& g = spec.group();
    for (std::size_t t = 1;; ++t) {
        if (x.spec().lambda(t - 1) != spec.lambda(t - 1)) {
            throw std::invalid_argument("morse_cocycle_eval: odometer radices differ from the block lengths");
        }
        const std::uint64_t nt = spec.n(t);
        const std::uint64_t i = tower_index(x, t);
        if (i + 2 <= nt) return g.mul(seq.at(i + 1), g.inv(seq.at(i)));
    }
}

std::size_t veech_tau(const OdometerPoint& x) {
    if (x.is_all_top()) throw UndefinedAtPoint("tau is undefined at -theta");
    std::size_t t = 0;
    while (x.digit(t) == x.spec().lambda(t) - 1) ++t;
    return t + 1;
}

VeechSource::VeechSource(VeechSpec spec, OdometerPoint start) : spec_(std::move(spec)), start_(std::move(start)) {
    if (!(start_.spec() == spec_.odometer)) throw std::invalid_argument("veech: start point on another odometer");
    for (auto k : spec_.psi.prefix)
        if (k >= spec_.group.order()) throw std::invalid_argument("veech: Psi value outside the group");
    for (auto k : spec_.psi.cycle)
        if (k >= spec_.group.order()) throw std::invalid_argument("veech: Psi value outside the group");
}

Symbol VeechSource::at(std::uint64_t n) const {
    if (n > static_cast<std::uint64_t>(INT64_MAX)) throw std::out_of_range("veech: index too large");
    if (start_.top_tail() || start_.digits().size() > 16) {
        return spec_.psi_at(veech_tau(translate(start_, static_cast<std::int64_t>(n))));
    }
    // Integer start: count the leading top digits of start + n directly.
    std::uint64_t v = tower_index(start_, start_.digits().size()) + n;
    std::size_t t = 0;
    while (v % spec_.odometer.lambda(t) == spec_.odometer.lambda(t) - 1) {
        v /= spec_.odometer.lambda(t);
        ++t;
    }
    return spec_.psi_at(t + 1);
}

SourcePtr veech_source(const VeechSpec& spec, const OdometerPoint& start) {
    return std::make_shared<VeechSource>(spec, start);
}

VeechConditions veech_conditions(const VeechSpec& spec, std::size_t horizon) {
    if (horizon < 2) throw std::invalid_argument("veech_conditions: horizon must be >= 2");
    VeechConditions rep;
    rep.horizon = horizon;
    std::vector<Element> psi(horizon);
    for (std::size_t t = 1; t <= horizon; ++t) psi[t - 1] = spec.psi_at(t);

    std::set<Element> tail_values(psi.begin() + static_cast<std::ptrdiff_t>(horizon / 2), psi.end());
    rep.no_limit = tail_values.size() >= 2;

    const auto& k = spec.group;
    std::set<Element> values(psi.begin(), psi.end());
    std::vector<Element> gens(values.begin(), values.end());
    rep.generates = k.generated_subgroup(gens).size() == k.order();
    std::set<Element> diffs;
    for (auto a : values)
        for (auto b : values) diffs.insert(k.mul(a, k.inv(b)));
    std::vector<Element> dgens(diffs.begin(), diffs.end());
    rep.differences_generate = k.generated_subgroup(dgens).size() == k.order();

    rep.recurrent = true;
    for (std::size_t len = 1; len <= horizon / 4 && rep.recurrent; ++len) {
        int hits = 0;
        for (std::size_t s = 1; s + len <= horizon && hits < 2; ++s) {
            if (std::equal(psi.begin(), psi.begin() + static_cast<std::ptrdiff_t>(len),
                           psi.begin() + static_cast<std::ptrdiff_t>(s)))
                ++hits;
        }
        rep.recurrent = hits >= 2;
    }
    return rep;
}

std::vector<std::uint64_t> ExtensionStage::defined_levels() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= 0) out.push_back(i);
    return out;
}

ExtensionCocycle::ExtensionCocycle(EventuallyPeriodic<int> choices) : choices_(std::move(choices)) {
    if (choices_.cycle.empty()) throw std::invalid_argument("extension cocycle: missing repeated choice");
    auto bad = [](int c) { return c != 0 && c != 1; };
    if (std::any_of(choices_.prefix.begin(), choices_.prefix.end(), bad) ||
        std::any_of(choices_.cycle.begin(), choices_.cycle.end(), bad)) {
        throw std::invalid_argument("extension cocycle: choices must be bits");
    }
}

std::vector<ExtensionStage> ExtensionCocycle::stages(std::size_t max_level) const {
    if (max_level == 0) throw std::invalid_argument("extension stages: max_level must be >= 1");
    if (max_level > 24) throw CapacityError("extension stages: more than 2^24 levels requested");
    std::vector<ExtensionStage> out;
    out.push_back({1, {-1, -1}});
    for (std::size_t t = 1; t < max_level; ++t) {
        const auto& prev = out.back().values;
        const std::uint64_t half = std::uint64_t{1} << t;
        ExtensionStage next{t + 1, std::vector<int>(2 * half)};
        for (std::uint64_t i = 0; i < 2 * half; ++i) next.values[i] = prev[i % half];
        const int c = choice(t);
        next.values[half / 2 - 1] = c;
        next.values[half + half / 2 - 1] = 1 - c;
        out.push_back(std::move(next));
    }
    return out;
}

int ExtensionCocycle::value(std::uint64_t n) const {
    for (std::size_t t = 1; t <= 62; ++t) {
        const std::uint64_t half = std::uint64_t{1} << t;
        const std::uint64_t i = n % (2 * half);
        if (i == half / 2 - 1) return choice(t);
        if (i == half + half / 2 - 1) return 1 - choice(t);
    }
    throw std::out_of_range("extension cocycle: integer point beyond 2^62");
}

int ExtensionCocycle::value(const OdometerPoint& x) const {
    if (x.is_all_top()) throw UndefinedAtPoint("extension cocycle is never defined at the all-top point");
    for (std::size_t t = 1;; ++t) {
        if (x.spec().lambda(t - 1) != 2 || x.spec().lambda(t) != 2) {
            throw std::invalid_argument("extension cocycle lives on the dyadic odometer");
        }
        const std::uint64_t half = std::uint64_t{1} << t;
        const std::uint64_t i = tower_index(x, t + 1);
        if (i == half / 2 - 1) return choice(t);
        if (i == half + half / 2 - 1) return 1 - choice(t);
        if (t > 62) throw std::out_of_range("extension cocycle: point not resolved below level 62");
    }
}

ExtensionStages rs_extension_stages(const EventuallyPeriodic<int>& choices, std::size_t max_level) {
    ExtensionCocycle cocycle(choices);
    auto stages = cocycle.stages(max_level);
    return {std::move(stages), std::make_shared<ExtensionSource>(std::move(cocycle))};
}

}  // namespace symdyn::odometer
