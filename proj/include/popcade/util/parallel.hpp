#pragma once

#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace popcade {

// Worker count: hardware concurrency, capped by POPCADE_THREADS if set.
inline int worker_count() {
    static const int n = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("POPCADE_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1 && cap < hw) hw = cap;
        }
        return hw;
    }();
    return n;
}

namespace detail {

// Minimal persistent pool. Tasks are (begin, end) index ranges; results must
// not depend on how the range is partitioned, which holds whenever every
// output element is written by exactly one index.
class ThreadPool {
  public:
    static ThreadPool& instance() {
        static ThreadPool pool(worker_count() - 1);
        return pool;
    }

    void run(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
        if (n <= 0) return;
        const int workers = static_cast<int>(threads_.size()) + 1;
        if (workers == 1 || n == 1) {
            body(0, n);
            return;
        }
        const std::int64_t chunk = (n + workers - 1) / workers;
        {
            std::unique_lock lock(mu_);
            body_ = &body;
            next_ = chunk;  // main thread takes the first chunk
            total_ = n;
            chunk_ = chunk;
            pending_ = static_cast<int>(threads_.size());
            ++epoch_;
        }
        cv_.notify_all();
        body(0, std::min(chunk, n));
        std::unique_lock lock(mu_);
        done_cv_.wait(lock, [&] { return pending_ == 0; });
        body_ = nullptr;
    }

  private:
    explicit ThreadPool(int extra_workers) {
        for (int i = 0; i < extra_workers; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~ThreadPool() {
        {
            std::unique_lock lock(mu_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(std::int64_t, std::int64_t)>* body = nullptr;
            std::int64_t begin = 0, end = 0;
            {
                std::unique_lock lock(mu_);
                cv_.wait(lock, [&] { return stop_ || epoch_ != seen; });
                if (stop_) return;
                seen = epoch_;
                begin = next_;
                next_ = std::min(total_, next_ + chunk_);
                end = next_;
                body = body_;
            }
            if (begin < end && body) (*body)(begin, end);
            {
                std::unique_lock lock(mu_);
                if (--pending_ == 0) done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_, done_cv_;
    const std::function<void(std::int64_t, std::int64_t)>* body_ = nullptr;
    std::int64_t next_ = 0, total_ = 0, chunk_ = 0;
    int pending_ = 0;
    std::uint64_t epoch_ = 0;
    bool stop_ = false;
};

}  // namespace detail

// Runs body(begin, end) over a static partition of [0, n).
inline void parallel_for(std::int64_t n,
                         const std::function<void(std::int64_t, std::int64_t)>& body) {
    detail::ThreadPool::instance().run(n, body);
}

}  // namespace popcade
