#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace walkzeta {

/// Worker cap: WALK_ZETA_THREADS if set, else hardware concurrency.
inline int worker_limit() {
  if (const char* env = std::getenv("WALK_ZETA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Deterministic chunked map-reduce. Items are split into fixed-size chunks
/// independent of the worker count; each chunk is reduced sequentially in
/// item order and the chunk results are combined in chunk order, so the
/// result is bitwise identical for any thread count.
template <typename Acc, typename MapFn, typename CombineFn>
Acc deterministic_map_reduce(long n_items, Acc init, MapFn&& per_item, CombineFn&& combine,
                             long chunk_size = 64) {
  if (n_items <= 0) return init;
  const long n_chunks = (n_items + chunk_size - 1) / chunk_size;
  std::vector<Acc> partial(n_chunks, init);
  auto run_chunk = [&](long c) {
    const long lo = c * chunk_size;
    const long hi = std::min(n_items, lo + chunk_size);
    Acc acc = init;
    for (long i = lo; i < hi; ++i) per_item(i, acc);
    partial[c] = std::move(acc);
  };

  const int workers = static_cast<int>(std::min<long>(worker_limit(), n_chunks));
  if (workers <= 1) {
    for (long c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (long c = t; c < n_chunks; c += workers) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  Acc total = init;
  for (long c = 0; c < n_chunks; ++c) combine(total, partial[c]);
  return total;
}

}  // namespace walkzeta
