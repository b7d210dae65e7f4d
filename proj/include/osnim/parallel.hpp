#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace osnim {

// Fixed-size pool running index-parallel loops. Work items write results by
// index, so output never depends on the number of workers.
class WorkerPool {
 public:
  // body(index, worker_id); worker_id < size().
  using Body = std::function<void(std::size_t, std::size_t)>;

  explicit WorkerPool(std::size_t threads = 1);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return helpers_.size() + 1; }

  // Runs body for every index in [0, count). Exceptions thrown by body are
  // rethrown on the calling thread (the first one wins).
  void parallel_for(std::size_t count, const Body& body);

  // Process-wide pool used by overloads that don't take one explicitly.
  static WorkerPool& shared();
  static void set_shared_threads(std::size_t threads);

 private:
  void helper_loop(std::size_t worker);
  void drain(std::size_t worker);

  std::vector<std::thread> helpers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const Body* body_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace osnim
