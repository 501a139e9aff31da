#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace recq {

/// Worker count used by parallel loops. 0 = hardware concurrency.
/// Results never depend on this value; only wall time does.
void set_worker_count(unsigned n);
unsigned worker_count();

namespace detail {

inline unsigned& worker_count_slot() {
  static unsigned count = 0;
  return count;
}

}  // namespace detail

inline void set_worker_count(unsigned n) { detail::worker_count_slot() = n; }

inline unsigned worker_count() {
  unsigned n = detail::worker_count_slot();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Splits [lo, hi) into fixed-size chunks, maps each chunk to a value of
/// type R, and folds the values in chunk order. The chunk grid depends only
/// on `chunk`, never on the worker count, so floating-point reductions are
/// bit-identical for any number of threads.
template <class R, class Map, class Fold>
R parallel_chunked(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk,
                   R init, Map&& map, Fold&& fold) {
  if (hi <= lo) return init;
  const std::uint64_t n_chunks = (hi - lo + chunk - 1) / chunk;
  std::vector<R> partial(static_cast<std::size_t>(n_chunks));
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n_chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      const std::uint64_t a = lo + c * chunk;
      const std::uint64_t b = std::min(hi, a + chunk);
      partial[static_cast<std::size_t>(c)] = map(a, b);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            if (failed.load(std::memory_order_relaxed)) break;
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t a = lo + c * chunk;
            const std::uint64_t b = std::min(hi, a + chunk);
            partial[static_cast<std::size_t>(c)] = map(a, b);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!failed.exchange(true)) error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  R acc = init;
  for (auto& part : partial) acc = fold(std::move(acc), std::move(part));
  return acc;
}

/// Compensated (Kahan) accumulator. Merge order matters; parallel_chunked
/// guarantees a fixed order.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  void merge(const KahanSum& o) {
    add(o.sum);
    add(-o.carry);
  }
};

}  // namespace recq
