#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace mpdata;
using namespace testutil;

namespace {

template <class T>
double run_l2(const Problem<T>& p, const MpdataOptions<T>& opts, int steps, int npx = 1,
              int workers = 1)
{
    Domain<T> dom = make_domain(p.grid, p.bounds, npx, 1, 1);
    WorkerPool pool(workers);
    StepState<T> st = make_step_state(dom, opts);
    st.x_in = scatter(p.initial, dom);
    auto wind = slice_velocity(p.wind, dom);
    for (int s = 0; s < steps; ++s) mpdata_step(st, wind, dom, opts, pool);
    Field3<T> num = gather(st.x_in, dom);
    Field3<T> exact = analytic_solution(p, steps);
    return error_norms(num, exact).err0;
}

} // namespace

TEST_CASE("a uniform tracer is a fixed point of the step")
{
    Problem<double> p = make_revolving_sphere<double>(16, "cart16");
    Field3<double> uniform(*p.grid);
    for (auto& v : uniform.data.raw()) v = 2.5;

    MpdataOptions<double> opts;
    Domain<double> dom = make_domain(p.grid, p.bounds, 1, 1, 1);
    WorkerPool pool(1);
    StepState<double> st = make_step_state(dom, opts);
    st.x_in = scatter(uniform, dom);
    auto wind = slice_velocity(p.wind, dom);
    for (int s = 0; s < 5; ++s) mpdata_step(st, wind, dom, opts, pool);
    Field3<double> out = gather(st.x_in, dom);
    for (int k = 0; k < 16; ++k)
        for (int j = 0; j < 16; ++j)
            for (int i = 0; i < 16; ++i)
                REQUIRE(out(i, j, k) == Catch::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("gauge correction beats plain upwind on an advected sine")
{
    Problem<double> p = make_sine1d<double>(64, 0.5);
    MpdataOptions<double> mp;
    MpdataOptions<double> up;
    up.upwind_only = true;
    const double e_mp = run_l2(p, mp, 100);
    const double e_up = run_l2(p, up, 100);
    CHECK(e_mp < e_up);
    CHECK(e_up / e_mp > 1.0);
}

TEST_CASE("second-order convergence at a fixed Courant number")
{
    // fixed C = 0.25, error after one period at two resolutions
    MpdataOptions<double> mp;
    MpdataOptions<double> up;
    up.upwind_only = true;
    Problem<double> p64 = make_sine1d<double>(64, 0.25);
    Problem<double> p128 = make_sine1d<double>(128, 0.25);
    const double r_mp = run_l2(p64, mp, p64.period_steps) / run_l2(p128, mp, p128.period_steps);
    const double r_up = run_l2(p64, up, p64.period_steps) / run_l2(p128, up, p128.period_steps);
    CHECK(r_mp > 3.4);
    CHECK(r_mp < 4.6);
    CHECK(r_up > 1.8);
    CHECK(r_up < 2.2);
}

TEST_CASE("interiors are bit-identical across decompositions and workers")
{
    std::mt19937 rng(77);
    auto g = std::make_shared<Grid3<double>>(8, 8, 8, 1.0, 1.0, 1.0, 2);
    std::shared_ptr<const Grid3<double>> gc = g;
    Field3<double> init = random_field(*gc, rng, 0.0, 1.0);
    FaceVelocity<double> wind = random_periodic_velocity(gc, rng, 0.3);

    MpdataOptions<double> opts;
    opts.variant = Variant::standard;
    opts.fct = true;
    opts.corrective_passes = 2;

    Field3<double> ref;
    const int cases[4][3] = {{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}};
    for (int c = 0; c < 4; ++c)
        for (int workers = 1; workers <= 4; ++workers) {
            Domain<double> dom = make_domain(gc, periodic_bounds(), cases[c][0], cases[c][1],
                                             cases[c][2]);
            WorkerPool pool(workers);
            StepState<double> st = make_step_state(dom, opts);
            st.x_in = scatter(init, dom);
            auto w = slice_velocity(wind, dom);
            for (int s = 0; s < 3; ++s) mpdata_step(st, w, dom, opts, pool);
            Field3<double> out = gather(st.x_in, dom);
            if (c == 0 && workers == 1) {
                ref = out;
                continue;
            }
            for (int k = 0; k < 8; ++k)
                for (int j = 0; j < 8; ++j)
                    for (int i = 0; i < 8; ++i) REQUIRE(out(i, j, k) == ref(i, j, k));
        }
}

TEST_CASE("flux limiting keeps the update inside the local extrema")
{
    // one limited step stays within [mn, mx] for any velocity field,
    // divergent ones included
    std::mt19937 rng(88);
    for (int rep = 0; rep < 5; ++rep) {
        auto g = std::make_shared<Grid3<double>>(10, 10, 10, 1.0, 1.0, 1.0, 2);
        std::shared_ptr<const Grid3<double>> gc = g;
        Field3<double> init = random_field(*gc, rng, 0.0, 1.0);
        FaceVelocity<double> wind = random_periodic_velocity(gc, rng, 0.16); // axis sum <= 0.5

        MpdataOptions<double> opts;
        opts.variant = Variant::standard;
        opts.fct = true;

        Domain<double> dom = make_domain(gc, periodic_bounds(), 1, 1, 1);
        WorkerPool pool(2);
        StepState<double> st = make_step_state(dom, opts);
        st.x_in = scatter(init, dom);
        auto w = slice_velocity(wind, dom);
        mpdata_step(st, w, dom, opts, pool);
        Field3<double> out = gather(st.x_in, dom);

        // recompute the step's bounds from the public kernels
        Field3<double> x = init;
        apply_boundary(x, periodic_bounds());
        Field3<double> xant(*gc), mx(*gc), mn(*gc);
        upwind_pass(x, wind, *gc, xant);
        apply_boundary(xant, periodic_bounds());
        local_extrema(x, xant, *gc, mx, mn);

        for (int k = 0; k < 10; ++k)
            for (int j = 0; j < 10; ++j)
                for (int i = 0; i < 10; ++i) {
                    REQUIRE(out(i, j, k) >= mn(i, j, k) - 1e-12);
                    REQUIRE(out(i, j, k) <= mx(i, j, k) + 1e-12);
                }
    }
}

TEST_CASE("mass is conserved step by step on a periodic domain")
{
    std::mt19937 rng(99);
    auto g = std::make_shared<Grid3<double>>(8, 8, 8, 1.0, 1.0, 1.0, 2);
    std::shared_ptr<const Grid3<double>> gc = g;
    Field3<double> init = random_field(*gc, rng, 0.0, 2.0);
    FaceVelocity<double> wind = random_periodic_velocity(gc, rng, 0.2);

    for (bool fct : {false, true}) {
        MpdataOptions<double> opts;
        opts.variant = fct ? Variant::standard : Variant::gauge;
        opts.fct = fct;
        Domain<double> dom = make_domain(gc, periodic_bounds(), 2, 1, 1);
        WorkerPool pool(2);
        StepState<double> st = make_step_state(dom, opts);
        st.x_in = scatter(init, dom);
        auto w = slice_velocity(wind, dom);
        double prev = total_mass(init);
        for (int s = 0; s < 8; ++s) {
            mpdata_step(st, w, dom, opts, pool);
            const double m = total_mass(gather(st.x_in, dom));
            REQUIRE(std::abs(m - prev) / std::abs(prev) <= 1e-13);
            prev = m;
        }
    }
}

TEST_CASE("iterated corrective passes run decomposed and stay conservative")
{
    std::mt19937 rng(111);
    auto g = std::make_shared<Grid3<double>>(8, 8, 8, 1.0, 1.0, 1.0, 2);
    std::shared_ptr<const Grid3<double>> gc = g;
    Field3<double> init = random_field(*gc, rng, 0.0, 1.0);
    FaceVelocity<double> wind = random_periodic_velocity(gc, rng, 0.2);

    MpdataOptions<double> opts;
    opts.variant = Variant::standard;
    opts.fct = true;
    opts.corrective_passes = 3;
    Domain<double> dom = make_domain(gc, periodic_bounds(), 2, 2, 1);
    WorkerPool pool(3);
    StepState<double> st = make_step_state(dom, opts);
    st.x_in = scatter(init, dom);
    auto w = slice_velocity(wind, dom);
    const double m0 = total_mass(init);
    for (int s = 0; s < 5; ++s) mpdata_step(st, w, dom, opts, pool);
    const double m1 = total_mass(gather(st.x_in, dom));
    CHECK(std::abs(m1 - m0) / std::abs(m0) <= 5e-13);
}

TEST_CASE("a non-finite tracer aborts with the phase name")
{
    Problem<double> p = make_sine1d<double>(16);
    MpdataOptions<double> opts;
    Domain<double> dom = make_domain(p.grid, p.bounds, 1, 1, 1);
    WorkerPool pool(1);
    StepState<double> st = make_step_state(dom, opts);
    st.x_in = scatter(p.initial, dom);
    st.x_in[0](3, 0, 0) = std::numeric_limits<double>::quiet_NaN();
    auto wind = slice_velocity(p.wind, dom);
    try {
        mpdata_step(st, wind, dom, opts, pool);
        FAIL("expected NanError");
    } catch (const NanError& e) {
        CHECK(e.phase == "upwind");
    }
}

TEST_CASE("the step refuses a halo narrower than the stencil reach")
{
    auto g = std::make_shared<Grid3<double>>(8, 8, 8, 1.0, 1.0, 1.0, 1);
    std::shared_ptr<const Grid3<double>> gc = g;
    Domain<double> dom = make_domain(gc, periodic_bounds(), 1, 1, 1);
    WorkerPool pool(1);
    MpdataOptions<double> opts;
    StepState<double> st = make_step_state(dom, opts);
    std::mt19937 rng(1);
    FaceVelocity<double> wind = random_periodic_velocity(gc, rng, 0.2);
    auto w = slice_velocity(wind, dom);
    CHECK_THROWS_AS(mpdata_step(st, w, dom, opts, pool), std::invalid_argument);

    // plain upwind only needs one ring
    MpdataOptions<double> up;
    up.upwind_only = true;
    StepState<double> st2 = make_step_state(dom, up);
    st2.x_in = scatter(random_field(*gc, rng), dom);
    CHECK_NOTHROW(mpdata_step(st2, w, dom, up, pool));
}

TEST_CASE("options validation")
{
    MpdataOptions<double> opts;
    opts.corrective_passes = 0;
    CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
    opts.corrective_passes = 1;
    opts.ep = 0;
    CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
    CHECK(default_ep<double>() == 1e-10);
    CHECK(default_ep<float>() == 1e-6f);
}
