#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace mpdata {

struct TimerRoutine {
    std::string name;
    long calls = 0;
    double avg = 0, min = 0, max = 0; // seconds, per-worker totals aggregated
    bool malformed = false;
};

struct TimerReport {
    std::vector<TimerRoutine> routines;

    const TimerRoutine* find(const std::string& name) const
    {
        for (const auto& r : routines)
            if (r.name == name) return &r;
        return nullptr;
    }
};

/// Inclusive wall-clock accumulators per named scope and worker. Each worker
/// writes only its own slots, so scopes may run concurrently; the report
/// aggregates per-worker totals into avg/min/max across workers.
class Timers {
public:
    explicit Timers(int workers = 1) : slots_(static_cast<std::size_t>(workers < 1 ? 1 : workers)) {}

    void start(const std::string& name, int worker)
    {
        Slot& s = slots_[static_cast<std::size_t>(worker)][name];
        if (s.open == 0) s.t0 = clock::now();
        ++s.open;
        ++s.calls;
    }

    void stop(const std::string& name, int worker)
    {
        Slot& s = slots_[static_cast<std::size_t>(worker)][name];
        if (s.open <= 0) {
            s.malformed = true;
            return;
        }
        --s.open;
        if (s.open == 0)
            s.total += std::chrono::duration<double>(clock::now() - s.t0).count();
    }

    class Scope {
    public:
        Scope(Timers& t, std::string name, int worker)
            : t_(&t), name_(std::move(name)), worker_(worker)
        {
            t_->start(name_, worker_);
        }
        Scope(Scope&& o) noexcept : t_(o.t_), name_(std::move(o.name_)), worker_(o.worker_)
        {
            o.t_ = nullptr;
        }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;
        Scope& operator=(Scope&&) = delete;
        ~Scope()
        {
            if (t_) t_->stop(name_, worker_);
        }

    private:
        Timers* t_;
        std::string name_;
        int worker_;
    };

    Scope scope(std::string name, int worker) { return Scope(*this, std::move(name), worker); }

    /// Scopes still open (or stopped more often than started) are reported
    /// as malformed rather than silently dropped.
    TimerReport report() const
    {
        TimerReport rep;
        auto routine = [&rep](const std::string& name) -> TimerRoutine& {
            for (auto& r : rep.routines)
                if (r.name == name) return r;
            rep.routines.push_back(TimerRoutine{name, 0, 0, 0, 0, false});
            return rep.routines.back();
        };
        std::map<std::string, std::vector<double>> totals;
        for (const auto& worker_slots : slots_)
            for (const auto& [name, s] : worker_slots) {
                if (s.calls == 0 && !s.malformed) continue;
                TimerRoutine& r = routine(name);
                r.calls = std::max(r.calls, s.calls);
                r.malformed = r.malformed || s.malformed || s.open != 0;
                totals[name].push_back(s.total);
            }
        for (auto& r : rep.routines) {
            const auto& ts = totals[r.name];
            if (ts.empty()) continue;
            double sum = 0, mn = ts[0], mx = ts[0];
            for (double t : ts) {
                sum += t;
                mn = std::min(mn, t);
                mx = std::max(mx, t);
            }
            r.avg = sum / static_cast<double>(ts.size());
            r.min = mn;
            r.max = mx;
        }
        return rep;
    }

    static std::string render_table(const TimerReport& rep)
    {
        std::string out;
        char line[256];
        std::snprintf(line, sizeof line, "%-16s %10s %14s %14s %14s\n",
                      "routine", "calls", "avg[s]", "min[s]", "max[s]");
        out += line;
        for (const auto& r : rep.routines) {
            std::snprintf(line, sizeof line, "%-16s %10ld %14.6f %14.6f %14.6f%s\n",
                          r.name.c_str(), r.calls, r.avg, r.min, r.max,
                          r.malformed ? "  (malformed)" : "");
            out += line;
        }
        return out;
    }

    static std::string render_csv(const TimerReport& rep)
    {
        std::string out = "routine,calls,avg,min,max\n";
        char line[256];
        for (const auto& r : rep.routines) {
            std::snprintf(line, sizeof line, "%s,%ld,%.9g,%.9g,%.9g\n",
                          r.name.c_str(), r.calls, r.avg, r.min, r.max);
            out += line;
        }
        return out;
    }

private:
    using clock = std::chrono::steady_clock;

    struct Slot {
        long calls = 0;
        double total = 0;
        int open = 0;
        clock::time_point t0;
        bool malformed = false;
    };

    std::vector<std::map<std::string, Slot>> slots_;
};

} // namespace mpdata
