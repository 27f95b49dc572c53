#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mpdata {

/// Fixed pool of workers with a fork/join parallel_for. Items are assigned
/// to workers by a static contiguous split, so the work each worker does is
/// a pure function of (n, size) and results never depend on scheduling.
/// Worker 0 is the calling thread.
class WorkerPool {
public:
    explicit WorkerPool(int workers) : workers_(workers < 1 ? 1 : workers)
    {
        threads_.reserve(static_cast<std::size_t>(workers_ - 1));
        for (int w = 1; w < workers_; ++w)
            threads_.emplace_back([this, w] { helper_loop(w); });
    }

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    ~WorkerPool()
    {
        {
            std::lock_guard<std::mutex> lock(m_);
            stop_ = true;
        }
        cv_work_.notify_all();
        for (auto& t : threads_) t.join();
    }

    int size() const { return workers_; }

    void parallel_for(int n, const std::function<void(int item, int worker)>& fn)
    {
        if (workers_ == 1 || n <= 1) {
            for (int i = 0; i < n; ++i) fn(i, 0);
            return;
        }
        {
            std::lock_guard<std::mutex> lock(m_);
            job_ = &fn;
            job_n_ = n;
            done_ = 0;
            error_ = nullptr;
            ++generation_;
        }
        cv_work_.notify_all();
        run_items(fn, n, 0);
        {
            std::unique_lock<std::mutex> lock(m_);
            cv_main_.wait(lock, [this] { return done_ == workers_ - 1; });
            job_ = nullptr;
            if (error_) std::rethrow_exception(error_);
        }
    }

private:
    void run_items(const std::function<void(int, int)>& fn, int n, int worker)
    {
        const int chunk = (n + workers_ - 1) / workers_;
        const int lo = worker * chunk;
        const int hi = lo + chunk < n ? lo + chunk : n;
        for (int i = lo; i < hi; ++i) fn(i, worker);
    }

    void helper_loop(int worker)
    {
        long seen = 0;
        for (;;) {
            const std::function<void(int, int)>* job = nullptr;
            int n = 0;
            {
                std::unique_lock<std::mutex> lock(m_);
                cv_work_.wait(lock, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
                job = job_;
                n = job_n_;
            }
            try {
                run_items(*job, n, worker);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m_);
                if (!error_) error_ = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(m_);
                ++done_;
            }
            cv_main_.notify_one();
        }
    }

    int workers_;
    std::vector<std::thread> threads_;
    std::mutex m_;
    std::condition_variable cv_work_, cv_main_;
    const std::function<void(int, int)>* job_ = nullptr;
    int job_n_ = 0;
    int done_ = 0;
    long generation_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

} // namespace mpdata
