#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symdyn {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Raised when a size guard (closure cap, symmetric-group degree, ...) trips.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition of the operation does not hold for the input.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The quantity is not defined at the requested point (e.g. the top point of an odometer).
class UndefinedAtPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A sequence given by a finite prefix followed by a cycle repeated forever.
/// Index 0 is the first prefix element.
template <typename T>
struct EventuallyPeriodic {
    std::vector<T> prefix;
    std::vector<T> cycle;

    EventuallyPeriodic() = default;
    EventuallyPeriodic(std::vector<T> prefix_, std::vector<T> cycle_)
        : prefix(std::move(prefix_)), cycle(std::move(cycle_)) {
        if (cycle.empty()) throw std::invalid_argument("eventually periodic sequence needs a nonempty cycle");
    }

    static EventuallyPeriodic constant(T value) { return {{}, {std::move(value)}}; }

    const T& at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return cycle[(i - prefix.size()) % cycle.size()];
    }

    bool operator==(const EventuallyPeriodic&) const = default;
};

std::string format_word(const Word& w);

}  // namespace symdyn
