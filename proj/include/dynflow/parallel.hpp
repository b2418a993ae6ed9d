#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dynflow {

/// Fixed set of workers executing blocking parallel-for loops. Each call to
/// parallel_for() is a phase: it returns only after every chunk has run, which
/// is the barrier the solvers rely on between phases. With one worker the body
/// runs inline on the caller, chunk by chunk in index order.
class WorkerPool {
 public:
  using ChunkFn = std::function<void(std::size_t begin, std::size_t end)>;

  explicit WorkerPool(unsigned workers = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  unsigned size() const noexcept { return workers_; }

  void parallel_for(std::size_t count, std::size_t grain, const ChunkFn& body);

  // 0 maps to std::thread::hardware_concurrency() (at least 1).
  static unsigned resolve(unsigned requested);

 private:
  void worker_loop();
  void drain();

  unsigned workers_;
  std::vector<std::thread> threads_;

  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::uint64_t generation_ = 0;
  bool stopping_ = false;
  unsigned busy_ = 0;

  const ChunkFn* body_ = nullptr;
  std::size_t count_ = 0;
  std::size_t grain_ = 1;
  std::atomic<std::size_t> next_{0};
};

}  // namespace dynflow
