#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "mpdata/norms.hpp"
#include "mpdata/timers.hpp"
#include "test_util.hpp"

using namespace mpdata;
using namespace testutil;

TEST_CASE("identical fields give all-zero norms")
{
    std::mt19937 rng(9);
    auto g = random_grid<double>(4, 4, 4, rng);
    Field3<double> f = random_field(*g, rng);
    const ErrorNorms e = error_norms(f, f);
    CHECK(e.emin == 0.0);
    CHECK(e.emax == 0.0);
    CHECK(e.err0 == 0.0);
    CHECK(e.err1 == 0.0);
    CHECK(e.err2 == 0.0);
    CHECK(e.linf == 0.0);
}

TEST_CASE("a constant offset shows up in err0, linf, emin and emax")
{
    std::mt19937 rng(10);
    auto g = random_grid<double>(4, 4, 4, rng);
    Field3<double> exact = random_field(*g, rng);
    Field3<double> num = exact;
    const double delta = 0.25;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) num(i, j, k) += delta;
    const ErrorNorms e = error_norms(num, exact);
    CHECK(e.err0 == Catch::Approx(delta).epsilon(1e-12));
    CHECK(e.linf == Catch::Approx(delta).epsilon(1e-12));
    CHECK(e.emin == Catch::Approx(delta).epsilon(1e-12));
    CHECK(e.emax == Catch::Approx(delta).epsilon(1e-12));
}

TEST_CASE("norms match a naive weighted oracle")
{
    std::mt19937 rng(12);
    auto g = random_grid<double>(4, 4, 4, rng);
    Field3<double> num = random_field(*g, rng);
    Field3<double> exact = random_field(*g, rng);
    const double ep = 1e-10;
    const ErrorNorms e = error_norms(num, exact, ep);

    const double vol = g->dx * g->dy * g->dz;
    double wsum = 0, acc = 0, linf = 0, mn_n = 1e300, mx_n = -1e300, mn_e = 1e300,
           mx_e = -1e300, sn = 0, se = 0;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const double w = g->g(i, j, k) * vol;
                const double d = num(i, j, k) - exact(i, j, k);
                wsum += w;
                acc += w * d * d;
                linf = std::max(linf, std::abs(d));
                sn += w * num(i, j, k);
                se += w * exact(i, j, k);
                mn_n = std::min(mn_n, num(i, j, k));
                mx_n = std::max(mx_n, num(i, j, k));
                mn_e = std::min(mn_e, exact(i, j, k));
                mx_e = std::max(mx_e, exact(i, j, k));
            }
    double vn = 0, ve = 0;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const double w = g->g(i, j, k) * vol;
                vn += w * std::pow(num(i, j, k) - sn / wsum, 2);
                ve += w * std::pow(exact(i, j, k) - se / wsum, 2);
            }
    CHECK(e.err0 == Catch::Approx(std::sqrt(acc / wsum)).epsilon(1e-14));
    CHECK(e.linf == Catch::Approx(linf).epsilon(1e-14));
    CHECK(e.emin == Catch::Approx(mn_n - mn_e).margin(1e-14));
    CHECK(e.emax == Catch::Approx(mx_n - mx_e).margin(1e-14));
    CHECK(e.err1 ==
          Catch::Approx((sn / wsum - se / wsum) / (std::abs(se / wsum) + ep)).epsilon(1e-12));
    CHECK(e.err2 == Catch::Approx((vn / wsum - ve / wsum) / (ve / wsum + ep)).epsilon(1e-12));
    CHECK(e.err0 <= e.linf); // the weighted RMS never exceeds the max error
}

TEST_CASE("swapping the fields negates the signed measures and keeps the magnitudes")
{
    std::mt19937 rng(14);
    auto g = random_grid<double>(5, 4, 3, rng);
    Field3<double> a = random_field(*g, rng);
    // build b with the same weighted mean as a, so the err1 denominators match
    Field3<double> b = a;
    Field3<double> pert = random_field(*g, rng, -0.1, 0.1);
    double wsum = 0, psum = 0;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 5; ++i) {
                wsum += g->g(i, j, k);
                psum += g->g(i, j, k) * pert(i, j, k);
            }
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 5; ++i) b(i, j, k) += pert(i, j, k) - psum / wsum;

    const ErrorNorms e1 = error_norms(a, b);
    const ErrorNorms e2 = error_norms(b, a);
    CHECK(e1.err0 == Catch::Approx(e2.err0).epsilon(1e-14));
    CHECK(e1.linf == Catch::Approx(e2.linf).epsilon(1e-14));
    CHECK(e1.emin == -e2.emin);
    CHECK(e1.emax == -e2.emax);
    CHECK(e1.err1 == Catch::Approx(-e2.err1).margin(1e-10));
}

TEST_CASE("norms reject a grid mismatch")
{
    Grid3<double> a(4, 4, 4, 1, 1, 1, 1);
    Grid3<double> b(5, 4, 4, 1, 1, 1, 1);
    Field3<double> fa(a), fb(b);
    CHECK_THROWS_AS(error_norms(fa, fb), std::invalid_argument);
}

TEST_CASE("timer counts and aggregation")
{
    Timers t(1);
    for (int rep = 0; rep < 5; ++rep) {
        auto s = t.scope("solve", 0);
    }
    const TimerReport rep = t.report();
    const TimerRoutine* r = rep.find("solve");
    REQUIRE(r != nullptr);
    CHECK(r->calls == 5);
    CHECK(r->min == r->avg);
    CHECK(r->avg == r->max);
    CHECK_FALSE(r->malformed);
}

TEST_CASE("nested scopes are inclusive")
{
    Timers t(1);
    {
        auto outer = t.scope("outer", 0);
        auto inner = t.scope("inner", 0);
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    const TimerReport rep = t.report();
    REQUIRE(rep.find("outer"));
    REQUIRE(rep.find("inner"));
    CHECK(rep.find("outer")->max >= rep.find("inner")->max);
}

TEST_CASE("per-worker totals aggregate into min/avg/max")
{
    Timers t(3);
    t.start("work", 0);
    t.stop("work", 0);
    t.start("work", 2);
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    t.stop("work", 2);
    const TimerReport rep = t.report();
    const TimerRoutine* r = rep.find("work");
    REQUIRE(r);
    CHECK(r->min <= r->avg);
    CHECK(r->avg <= r->max);
    CHECK(r->max >= 0.002);
}

TEST_CASE("unbalanced scopes are flagged as malformed")
{
    Timers t(1);
    t.stop("oops", 0);
    const TimerReport rep = t.report();
    REQUIRE(rep.find("oops"));
    CHECK(rep.find("oops")->malformed);

    Timers t2(1);
    t2.start("open", 0);
    const TimerReport rep2 = t2.report();
    REQUIRE(rep2.find("open"));
    CHECK(rep2.find("open")->malformed);
}

TEST_CASE("timer report renders as a table and as CSV")
{
    Timers t(1);
    {
        auto s = t.scope("phase_a", 0);
    }
    const TimerReport rep = t.report();
    const std::string table = Timers::render_table(rep);
    CHECK(table.find("routine") != std::string::npos);
    CHECK(table.find("phase_a") != std::string::npos);
    const std::string csv = Timers::render_csv(rep);
    CHECK(csv.rfind("routine,calls,avg,min,max\n", 0) == 0);
    CHECK(csv.find("phase_a,1,") != std::string::npos);
}
