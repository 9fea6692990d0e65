#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace blotto::detail {

// Chunk size is a fixed constant, never derived from the thread count, so the
// slot layout (and any reduction over it) is identical for every thread count.
inline constexpr std::uint64_t kChunkSize = 8192;

template <class Slot, class Fn>
std::vector<Slot> run_chunked(std::uint64_t total, unsigned threads, Fn&& fn) {
  const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Slot> slots(chunks);
  if (chunks == 0) return slots;

  std::uint64_t want = threads == 0 ? 1 : threads;
  want = std::min<std::uint64_t>(want, chunks);
  if (want <= 1) {
    for (std::uint64_t k = 0; k < chunks; ++k) {
      const std::uint64_t b = k * kChunkSize;
      fn(b, std::min(total, b + kChunkSize), slots[k]);
    }
    return slots;
  }

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::uint64_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= chunks) return;
      const std::uint64_t b = k * kChunkSize;
      fn(b, std::min(total, b + kChunkSize), slots[k]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(want));
  for (std::uint64_t i = 0; i < want; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return slots;
}

// Deterministic pairwise merge in slot (chunk) order.
template <class Slot, class Add>
Slot pairwise_reduce(std::span<const Slot> slots, Add add) {
  if (slots.empty()) return Slot{};
  if (slots.size() == 1) return slots[0];
  const std::size_t mid = slots.size() / 2;
  return add(pairwise_reduce(slots.first(mid), add),
             pairwise_reduce(slots.subspan(mid), add));
}

}  // namespace blotto::detail
