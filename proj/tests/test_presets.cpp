#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace mpdata;

TEST_CASE("every preset wind is discretely divergence-free")
{
    CHECK(max_flux_divergence(make_preset<double>("cart32").wind,
                              *make_preset<double>("cart32").grid) <= 1e-12);
    const Problem<double> sine = make_preset<double>("sine1d");
    CHECK(max_flux_divergence(sine.wind, *sine.grid) <= 1e-12);
    const Problem<double> pole = make_preset<double>("sphere-pole", 0, 32, 16);
    CHECK(max_flux_divergence(pole.wind, *pole.grid) <= 1e-12);
    const Problem<double> diag = make_preset<double>("sphere-diagonal", 0, 32, 16);
    CHECK(max_flux_divergence(diag.wind, *diag.grid) <= 1e-12);
}

TEST_CASE("revolving-sphere tracer starts at the prescribed extrema")
{
    const Problem<double> p = make_revolving_sphere<double>(24, "cart24");
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 24; ++k)
        for (int j = 0; j < 24; ++j)
            for (int i = 0; i < 24; ++i) {
                lo = std::min(lo, p.initial(i, j, k));
                hi = std::max(hi, p.initial(i, j, k));
            }
    CHECK(lo == 0.0);
    CHECK(hi == 4.0);
    CHECK(p.period_steps == static_cast<int>(std::lround(556.0 * 24 / 59.0)));
    CHECK_THROWS_AS(make_revolving_sphere<double>(8, "tiny"), std::invalid_argument);
}

TEST_CASE("the analytic solution closes its orbit bit for bit")
{
    const Problem<double> cart = make_revolving_sphere<double>(16, "cart16");
    Field3<double> a0 = analytic_solution(cart, 0);
    Field3<double> a1 = analytic_solution(cart, cart.period_steps);
    CHECK(a0.data.raw() == a1.data.raw());
    CHECK(a0.data.raw() == cart.initial.data.raw());

    const Problem<double> sine = make_sine1d<double>(32, 0.5);
    CHECK(analytic_solution(sine, 0).data.raw() ==
          analytic_solution(sine, sine.period_steps).data.raw());

    const Problem<double> pole = make_solid_body_sphere<double>(M_PI / 2, "sphere-pole", 16, 8);
    CHECK(analytic_solution(pole, 0).data.raw() ==
          analytic_solution(pole, pole.period_steps).data.raw());
}

TEST_CASE("sine preset phase speed: four steps at C=0.25 shift one cell")
{
    const Problem<double> p = make_sine1d<double>(32, 0.25);
    Field3<double> shifted = analytic_solution(p, 4);
    for (int i = 0; i < 32; ++i) {
        const int left = (i - 1 + 32) % 32;
        if (i > 0) // the wrapped column differs only by the 2*pi periodicity of sin
            CHECK(shifted(i, 0, 0) == p.initial(left, 0, 0));
        else
            CHECK(shifted(i, 0, 0) == Catch::Approx(p.initial(left, 0, 0)).margin(1e-15));
    }
    CHECK(p.period_steps == 128);
}

TEST_CASE("sine preset has unit amplitude and zero mean")
{
    const Problem<double> p = make_sine1d<double>(64, 0.5);
    double sum = 0, amp = 0;
    for (int i = 0; i < 64; ++i) {
        sum += p.initial(i, 0, 0);
        amp = std::max(amp, std::abs(p.initial(i, 0, 0)));
    }
    CHECK(std::abs(sum) <= 1e-13);
    CHECK(amp <= 1.0);
    CHECK(amp >= 0.99);
}

TEST_CASE("sine preset advects with exactly conserved mass")
{
    const Problem<double> p = make_sine1d<double>(64, 0.5);
    MpdataOptions<double> opts;
    Domain<double> dom = make_domain(p.grid, p.bounds, 1, 1, 1);
    WorkerPool pool(1);
    StepState<double> st = make_step_state(dom, opts);
    st.x_in = scatter(p.initial, dom);
    auto wind = slice_velocity(p.wind, dom);
    const double m0 = total_mass(p.initial);
    for (int s = 0; s < 16; ++s) mpdata_step(st, wind, dom, opts, pool);
    const double m1 = total_mass(gather(st.x_in, dom));
    CHECK(std::abs(m1 - m0) <= 1e-13 * 64);
}

TEST_CASE("gauge correction beats upwind on the revolving sphere")
{
    const Problem<double> p = make_revolving_sphere<double>(16, "cart16");
    double errs[2];
    for (int mode = 0; mode < 2; ++mode) {
        MpdataOptions<double> opts;
        opts.upwind_only = mode == 1;
        Domain<double> dom = make_domain(p.grid, p.bounds, 2, 1, 1);
        WorkerPool pool(2);
        StepState<double> st = make_step_state(dom, opts);
        st.x_in = scatter(p.initial, dom);
        auto wind = slice_velocity(p.wind, dom);
        for (int s = 0; s < p.period_steps; ++s) mpdata_step(st, wind, dom, opts, pool);
        errs[mode] = error_norms(gather(st.x_in, dom), p.initial).err0;
    }
    CHECK(errs[0] < errs[1]);
}

TEST_CASE("preset lookup and overrides")
{
    CHECK(make_preset<double>("cart32").grid->nx == 32);
    CHECK(make_preset<double>("cart59", 24).grid->nx == 24);
    CHECK(make_preset<double>("sine1d", 48).grid->nx == 48);
    const Problem<float> sp = make_preset<float>("sphere-equator", 0, 64, 32, 2);
    CHECK(sp.grid->nx == 64);
    CHECK(sp.grid->nz == 2);
    CHECK_THROWS_WITH(make_preset<double>("nope"),
                      Catch::Matchers::ContainsSubstring("unknown preset"));
}
