#include "osnim/parallel.hpp"

#include <memory>

namespace osnim {

WorkerPool::WorkerPool(std::size_t threads) {
  if (threads == 0) threads = 1;
  helpers_.reserve(threads - 1);
  for (std::size_t w = 1; w < threads; ++w) {
    helpers_.emplace_back([this, w] { helper_loop(w); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : helpers_) t.join();
}

void WorkerPool::drain(std::size_t worker) {
  for (;;) {
    std::size_t index;
    {
      std::lock_guard lock(mutex_);
      if (next_ >= count_ || error_) return;
      index = next_++;
    }
    try {
      (*body_)(index, worker);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
}

void WorkerPool::helper_loop(std::size_t worker) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      ++active_;
    }
    drain(worker);
    {
      std::lock_guard lock(mutex_);
      --active_;
    }
    done_.notify_all();
  }
}

void WorkerPool::parallel_for(std::size_t count, const Body& body) {
  if (count == 0) return;
  if (helpers_.empty() || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    body_ = &body;
    count_ = count;
    next_ = 0;
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  drain(0);
  std::exception_ptr error;
  {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return active_ == 0 && next_ >= count_; });
    // Helpers that haven't woken yet will find no work left.
    next_ = count_;
    error = error_;
    body_ = nullptr;
  }
  if (error) std::rethrow_exception(error);
}

namespace {
std::unique_ptr<WorkerPool>& shared_slot() {
  static std::unique_ptr<WorkerPool> pool;
  return pool;
}
}  // namespace

WorkerPool& WorkerPool::shared() {
  auto& slot = shared_slot();
  if (!slot) slot = std::make_unique<WorkerPool>(1);
  return *slot;
}

void WorkerPool::set_shared_threads(std::size_t threads) {
  auto& slot = shared_slot();
  if (slot && slot->size() == threads) return;
  slot = std::make_unique<WorkerPool>(threads);
}

}  // namespace osnim
