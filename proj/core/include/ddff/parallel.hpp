#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ddff {

// Worker cap used when a call passes threads = 0. Starts at the hardware
// concurrency; set_default_threads(0) restores that.
unsigned default_threads();
void set_default_threads(unsigned threads);

// Runs body(i) for i in [0, n). Iterations must write to disjoint outputs;
// the first exception (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

// Pairwise summation; result independent of how the values were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace ddff
