#pragma once

#include <cstddef>
#include <functional>

namespace orthantmc {

// Worker count used when a caller passes 0: the ORTHANTMC_WORKERS environment
// variable if set, otherwise the hardware concurrency.
unsigned default_workers();

unsigned resolve_workers(unsigned requested);

// Runs fn over [0, n_items) split into fixed-size chunks claimed by a pool of
// workers. Chunk boundaries depend only on (n_items, chunk_size), never on
// the worker count, so callers that write results into per-chunk or per-item
// slots get bit-identical output for any parallel degree.
// fn(chunk_index, begin, end) must be safe to call concurrently for distinct
// chunks. Exceptions are captured and rethrown on the calling thread.
void parallel_chunks(std::size_t n_items, std::size_t chunk_size, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t chunk_count(std::size_t n_items, std::size_t chunk_size);

}  // namespace orthantmc
