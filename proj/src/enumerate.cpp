#include "impsel/enumerate.hpp"

#include "impsel/errors.hpp"

#include <exception>
#include <limits>
#include <string>

namespace impsel {

std::uint64_t nomination_graph_count(int n) {
  if (n < 2) throw InputError("G_n needs n >= 2");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n - 1)) {
      throw InputError("|G_" + std::to_string(n) + "| does not fit in 64 bits");
    }
    count *= static_cast<std::uint64_t>(n - 1);
  }
  return count;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw InputError(std::to_string(n) + "! does not fit in 64 bits");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

NominationGraph nomination_graph_at(int n, std::uint64_t index) {
  const auto base = static_cast<std::uint64_t>(n - 1);
  if (index >= nomination_graph_count(n)) throw InputError("graph index out of range");
  std::vector<Vertex> out(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    const auto digit = static_cast<Vertex>(index % base);
    index /= base;
    out[static_cast<std::size_t>(v - 1)] = digit + 1 < v ? digit + 1 : digit + 2;
  }
  return NominationGraph(std::move(out));
}

std::uint64_t nomination_graph_index(const NominationGraph& g) {
  const int n = g.size();
  const auto base = static_cast<std::uint64_t>(n - 1);
  std::uint64_t index = 0;
  for (int v = n; v >= 1; --v) {
    const Vertex t = g.target(v);
    const auto digit = static_cast<std::uint64_t>(t < v ? t - 1 : t - 2);
    index = index * base + digit;
  }
  return index;
}

int resolve_jobs(int requested) {
  const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  return requested <= 0 ? hw : requested;
}

void parallel_chunks(std::uint64_t count, int jobs,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  const int workers = static_cast<int>(std::min<std::uint64_t>(count == 0 ? 1 : count,
                                                               static_cast<std::uint64_t>(std::max(1, jobs))));
  if (workers <= 1) {
    fn(0, count, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t chunk =
        (count + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(count, chunk * static_cast<std::uint64_t>(w));
      const std::uint64_t end = std::min(count, begin + chunk);
      threads.emplace_back([&fn, &errors, begin, end, w] {
        try {
          fn(begin, end, w);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace impsel
