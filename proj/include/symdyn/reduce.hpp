#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace symdyn::reduce {

/// Leaves of the reduction tree are summed left to right.
inline constexpr std::size_t kLeafSize = 512;

/// Balanced-tree sum: a range longer than kLeafSize is split at len / 2 and the
/// halves are added as (left + right). The tree depends only on the length, so
/// the result is bit-identical for every `threads` value.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values, unsigned threads = 1);
double pairwise_sum(std::span<const double> values, unsigned threads = 1);

/// Number of worker threads to use when the caller passes 0.
unsigned default_threads();

}  // namespace symdyn::reduce
