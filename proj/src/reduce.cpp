#include "symdyn/reduce.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace symdyn::reduce {

namespace {

template <typename T>
T tree_sum(std::span<const T> v, unsigned threads) {
    if (v.size() <= kLeafSize) {
        T acc{};
        for (const auto& x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    if (threads > 1) {
        const unsigned left_threads = threads / 2;
        auto left = std::async(std::launch::async, [&] { return tree_sum(v.first(half), left_threads); });
        const T right = tree_sum(v.subspan(half), threads - left_threads);
        return left.get() + right;
    }
    return tree_sum(v.first(half), 1) + tree_sum(v.subspan(half), 1);
}

}  // namespace

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values, unsigned threads) {
    return tree_sum(values, std::max(1u, threads));
}

double pairwise_sum(std::span<const double> values, unsigned threads) {
    return tree_sum(values, std::max(1u, threads));
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace symdyn::reduce
