#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mpdata/config.hpp"
#include "mpdata/norms.hpp"
#include "mpdata/io.hpp"
#include "mpdata/step.hpp"
#include "mpdata/testcases.hpp"

namespace mpdata {

struct RunResult {
    int exit_code = 0;       // 0 ok, 1 reference mismatch, 2 abort
    bool aborted = false;
    std::string abort_phase;
    int abort_step = -1;
    int steps_run = 0;
    ErrorNorms final_norms{};
    std::string norms_csv;   // also written to <output>/norms.csv
    TimerReport timers;
    double timeloop_seconds = 0;
};

namespace detail {

inline void append_norms_row(std::string& csv, int step, double time, const ErrorNorms& e)
{
    char line[256];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  step, time, e.emin, e.emax, e.err0, e.err1, e.err2, e.linf);
    csv += line;
}

inline Variant parse_variant(const std::string& s, Variant fallback)
{
    if (s == "gauge") return Variant::gauge;
    if (s == "standard") return Variant::standard;
    if (s == "sphere") return Variant::sphere;
    return fallback;
}

} // namespace detail

template <class T>
RunResult run_simulation_t(const RunConfig& cfg)
{
    validate_config(cfg);
    Problem<T> problem = make_preset<T>(cfg.preset, cfg.n, cfg.nlon, cfg.nlat, cfg.nlev,
                                        cfg.courant);

    MpdataOptions<T> opts;
    opts.variant = detail::parse_variant(cfg.variant, problem.default_variant);
    opts.fct = cfg.fct ? *cfg.fct : problem.default_fct;
    opts.corrective_passes = cfg.corrective_passes;
    opts.ep = cfg.ep > 0 ? static_cast<T>(cfg.ep) : default_ep<T>();
    opts.upwind_only = cfg.scheme == "upwind";

    const int nsteps = cfg.nsteps > 0 ? cfg.nsteps : problem.period_steps;

    Domain<T> dom = make_domain(problem.grid, problem.bounds, cfg.npx, cfg.npy, cfg.npz);
    WorkerPool pool(cfg.workers);
    Timers timers(cfg.workers);

    StepState<T> st = make_step_state(dom, opts);
    st.x_in = scatter(problem.initial, dom);
    const std::vector<FaceVelocity<T>> wind = slice_velocity(problem.wind, dom);

    Field3<T> numeric(*problem.grid);
    Field3<T> exact(*problem.grid);

    RunResult res;
    res.norms_csv = "step,time,emin,emax,err0,err1,err2,linf\n";

    const std::filesystem::path outdir(cfg.output);
    std::filesystem::create_directories(outdir);

    auto emit = [&](int step) {
        gather(st.x_in, dom, numeric);
        problem.analytic(step, exact);
        const ErrorNorms e = error_norms(numeric, exact, static_cast<double>(opts.ep));
        detail::append_norms_row(res.norms_csv, step, step * problem.dt, e);
        res.final_norms = e;
        if (cfg.dump_fields) {
            char name[64];
            std::snprintf(name, sizeof name, "field_%06d.bin", step);
            write_field_dump(numeric, (outdir / name).string());
        }
    };

    int last_emitted = 0;
    try {
        for (int step = 1; step <= nsteps; ++step) {
            timers.start("timeloop", 0);
            mpdata_step(st, wind, dom, opts, pool, &timers);
            timers.stop("timeloop", 0);
            res.steps_run = step;
            if (cfg.iout > 0 && step % cfg.iout == 0) {
                emit(step);
                last_emitted = step;
            }
        }
        if (last_emitted != nsteps) emit(nsteps);
    } catch (const NanError& e) {
        res.aborted = true;
        res.abort_phase = e.phase;
        res.abort_step = res.steps_run + 1;
        res.exit_code = 2;
    }

    res.timers = timers.report();
    if (const TimerRoutine* r = res.timers.find("timeloop")) res.timeloop_seconds = r->max;

    std::ofstream csv(outdir / "norms.csv");
    csv << res.norms_csv;
    std::ofstream tcsv(outdir / "timers.csv");
    tcsv << Timers::render_csv(res.timers);

    if (!res.aborted && cfg.reference) {
        const auto& ref = *cfg.reference;
        if (std::abs(res.final_norms.err0 - ref.err0) > ref.tol ||
            std::abs(res.final_norms.linf - ref.linf) > ref.tol)
            res.exit_code = 1;
    }
    return res;
}

inline RunResult run_simulation(const RunConfig& cfg)
{
    if (cfg.precision == "f32") return run_simulation_t<float>(cfg);
    return run_simulation_t<double>(cfg);
}

} // namespace mpdata
