#ifndef BSPEC_PARALLEL_HPP
#define BSPEC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bspec {

// Worker count: hardware concurrency, capped by BRATTELI_SPECTRA_THREADS when set.
unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index is written by exactly one worker, so
// results stored by index are independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace bspec

#endif
