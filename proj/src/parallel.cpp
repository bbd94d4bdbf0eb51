#include "orthantmc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace orthantmc {

unsigned default_workers() {
  if (const char* env = std::getenv("ORTHANTMC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

unsigned resolve_workers(unsigned requested) {
  return requested > 0 ? requested : default_workers();
}

std::size_t chunk_count(std::size_t n_items, std::size_t chunk_size) {
  return n_items == 0 ? 0 : (n_items + chunk_size - 1) / chunk_size;
}

void parallel_chunks(std::size_t n_items, std::size_t chunk_size, unsigned workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n_items == 0) return;
  const std::size_t n_chunks = chunk_count(n_items, chunk_size);
  workers = resolve_workers(workers);
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(begin + chunk_size, n_items);
    fn(c, begin, end);
  };

  if (n_threads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;  // written once, guarded by the failed flag
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c >= n_chunks || failed.load()) return;
        try {
          run_chunk(c);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace orthantmc
