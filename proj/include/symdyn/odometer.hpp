#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/core.hpp"
#include "symdyn/morse.hpp"
#include "symdyn/permgrp.hpp"
#include "symdyn/stream.hpp"

namespace symdyn::odometer {

using permgrp::Element;
using permgrp::FiniteGroup;

/// Radices lambda_t >= 2 of X = prod Z/lambda_t Z.
class OdometerSpec {
public:
    explicit OdometerSpec(EventuallyPeriodic<std::uint32_t> lambdas);
    static OdometerSpec constant(std::uint32_t lambda) { return OdometerSpec({{}, {lambda}}); }

    std::uint32_t lambda(std::size_t t) const { return lambdas_.at(t); }
    /// n_t = lambda_0 ... lambda_{t-1}; throws std::overflow_error past 2^63.
    std::uint64_t n(std::size_t t) const;
    const EventuallyPeriodic<std::uint32_t>& lambdas() const { return lambdas_; }

    bool operator==(const OdometerSpec&) const = default;

private:
    EventuallyPeriodic<std::uint32_t> lambdas_;
};

/// Point of the odometer: explicit digits, then either all zeros or (top_tail)
/// all digits equal to lambda_t - 1. Integers n >= 0 have a zero tail; negative
/// integers have a top tail, and -1 is the all-top point -theta.
class OdometerPoint {
public:
    OdometerPoint(OdometerSpec spec, std::vector<std::uint32_t> digits, bool top_tail = false);

    static OdometerPoint zero(OdometerSpec spec) { return {std::move(spec), {}, false}; }
    static OdometerPoint from_integer(OdometerSpec spec, std::int64_t n);

    const OdometerSpec& spec() const { return spec_; }
    std::uint32_t digit(std::size_t t) const;
    const std::vector<std::uint32_t>& digits() const { return digits_; }
    bool top_tail() const { return top_tail_; }

    /// Every digit equals lambda_t - 1.
    bool is_all_top() const { return top_tail_ && digits_.empty(); }

    bool operator==(const OdometerPoint&) const = default;

private:
    void normalize();

    OdometerSpec spec_;
    std::vector<std::uint32_t> digits_;
    bool top_tail_;
};

OdometerPoint add(const OdometerPoint& x, const OdometerPoint& y);

/// x + n (n may be negative).
OdometerPoint translate(const OdometerPoint& x, std::int64_t n);

/// sum_{j<t} x_j n_j: the level i with x in D^t_i.
std::uint64_t tower_index(const OdometerPoint& x, std::size_t t);

/// psi(x) = c^_t[i] for the least t >= 1 with i = tower_index(x, t) <= n_t - 2.
/// Throws UndefinedAtPoint at the all-top point.
Element morse_cocycle_eval(const morse::MorseSpec& spec, const OdometerPoint& x);

/// min{t >= 1 : tower_index(x, t) != n_t - 1}. Throws UndefinedAtPoint at -theta.
std::size_t veech_tau(const OdometerPoint& x);

struct VeechSpec {
    OdometerSpec odometer;
    FiniteGroup group;
    /// psi.at(t - 1) = Psi(t) for t >= 1.
    EventuallyPeriodic<Element> psi;

    Element psi_at(std::size_t t) const { return psi.at(t - 1); }
};

/// n -> Psi(tau(start + n)).
class VeechSource final : public SymbolSource {
public:
    VeechSource(VeechSpec spec, OdometerPoint start);

    Symbol at(std::uint64_t n) const override;
    std::size_t alphabet_size() const override { return spec_.group.order(); }
    std::string name() const override { return "veech"; }

private:
    VeechSpec spec_;
    OdometerPoint start_;
};

SourcePtr veech_source(const VeechSpec& spec, const OdometerPoint& start);

/// Finite-horizon readings of the three conditions on Psi. None is a proof;
/// each flag says the condition was not falsified on [1, horizon].
struct VeechConditions {
    std::size_t horizon = 0;
    bool no_limit = false;           // (i): >= 2 values in the tail half (horizon/2, horizon]
    bool generates = false;          // (ii): {Psi(t)} generates K
    bool differences_generate = false;  // (ii): {Psi(t) Psi(u)^-1} generates K
    bool recurrent = false;          // (iii): every initial block of length <= horizon/4 recurs twice
    std::string label = "finite-horizon semidecision";
};

VeechConditions veech_conditions(const VeechSpec& spec, std::size_t horizon);

/// Stage t of the dyadic Toeplitz-extension cocycle: values[i] on D^t_i, -1 where undefined.
struct ExtensionStage {
    std::size_t t = 0;
    std::vector<int> values;

    std::vector<std::uint64_t> defined_levels() const;
};

/// Choice bit c_t (t >= 1) decides the values put on D^{t+1}_{2^{t-1}-1} and
/// D^{t+1}_{2^t+2^{t-1}-1} when passing from stage t: (0, 1) for c_t = 0 and
/// (1, 0) for c_t = 1. choices.at(t - 1) = c_t. Stage 1 has no defined level.
class ExtensionCocycle {
public:
    explicit ExtensionCocycle(EventuallyPeriodic<int> choices);

    int choice(std::size_t t) const { return choices_.at(t - 1); }

    /// Stages 1..max_level; stage t has 2^t levels. Throws CapacityError past t = 24.
    std::vector<ExtensionStage> stages(std::size_t max_level) const;

    /// Value at an odometer point (lambda = 2); UndefinedAtPoint at the all-top point.
    int value(const OdometerPoint& x) const;
    /// Value at the integer point n >= 0.
    int value(std::uint64_t n) const;

    const EventuallyPeriodic<int>& choices() const { return choices_; }

private:
    EventuallyPeriodic<int> choices_;
};

/// n -> psi(n) along the orbit of 0.
class ExtensionSource final : public SymbolSource {
public:
    explicit ExtensionSource(ExtensionCocycle cocycle) : cocycle_(std::move(cocycle)) {}

    Symbol at(std::uint64_t n) const override { return static_cast<Symbol>(cocycle_.value(n)); }
    std::size_t alphabet_size() const override { return 2; }
    std::string name() const override { return "toeplitz extension"; }

private:
    ExtensionCocycle cocycle_;
};

struct ExtensionStages {
    std::vector<ExtensionStage> stages;
    SourcePtr stream;
};

ExtensionStages rs_extension_stages(const EventuallyPeriodic<int>& choices, std::size_t max_level);

}  // namespace symdyn::odometer
