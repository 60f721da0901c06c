#include <doctest.h>

#include <cmath>

#include "ido/analysis.hpp"

using ido::StateTrace;

namespace {

std::vector<double> grid(double t0, double dt, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k) t[k] = t0 + static_cast<double>(k) * dt;
    return t;
}

std::vector<double> map_grid(const std::vector<double>& t, double (*f)(double)) {
    std::vector<double> v(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) v[k] = f(t[k]);
    return v;
}

/// Synthetic single-channel trace with state = ref + err(t).
StateTrace synthetic_trace(const std::vector<double>& times, double (*ref)(double),
                           double (*err)(double)) {
    StateTrace trace(1, {"x1"}, true, false, {});
    for (double t : times) {
        const double r = ref(t);
        const double s = r + err(t);
        trace.append(t, std::span(&s, 1), std::span(&r, 1), 0.0, {});
    }
    return trace;
}

}  // namespace

TEST_CASE("cumulative trapezoid on known integrands") {
    {
        const std::vector<double> t = {0.0, 0.5, 1.0};
        const std::vector<double> v = {0.0, 0.5, 1.0};  // f(t) = t
        const auto integral = ido::cumulative_trapezoid(t, v);
        REQUIRE(integral.size() == 3);
        CHECK(integral[0] == 0.0);
        CHECK(integral[1] == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(integral[2] == doctest::Approx(0.5).epsilon(1e-15));
    }
    {
        const auto t = grid(0.0, 0.1, 11);
        std::vector<double> v(11, 3.0);  // constant
        const auto integral = ido::cumulative_trapezoid(t, v);
        for (std::size_t k = 0; k < t.size(); ++k)
            CHECK(integral[k] == doctest::Approx(3.0 * t[k]).epsilon(1e-12));
    }
    {
        const auto t = grid(0.0, 1e-3, 1001);
        const auto v = map_grid(t, [](double x) { return std::cos(x); });
        const auto integral = ido::cumulative_trapezoid(t, v);
        CHECK(std::abs(integral.back() - std::sin(1.0)) < 1e-6);
    }
}

TEST_CASE("cumulative trapezoid rejects unsorted input") {
    CHECK_THROWS_AS(ido::cumulative_trapezoid(std::vector<double>{0.0, 1.0, 0.5},
                                              std::vector<double>{1.0, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        ido::cumulative_trapezoid(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0}),
        std::invalid_argument);
}

TEST_CASE("cumulative Simpson on known integrands") {
    {
        const std::vector<double> t = {0.0, 0.5, 1.0};
        const std::vector<double> v = {0.0, 0.25, 1.0};  // f(t) = t^2
        const auto integral = ido::cumulative_simpson(t, v);
        CHECK(integral.back() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    {
        const auto t = grid(0.0, 0.125, 9);
        std::vector<double> v(9, 1.0);
        const auto integral = ido::cumulative_simpson(t, v);
        for (std::size_t k = 0; k < t.size(); ++k)
            CHECK(integral[k] == doctest::Approx(t[k]).epsilon(1e-14));
    }
    {
        const auto t = grid(0.0, 1e-2, 101);
        const auto v = map_grid(t, [](double x) { return std::cos(x); });
        const auto integral = ido::cumulative_simpson(t, v);
        CHECK(std::abs(integral.back() - std::sin(1.0)) < 1e-9);
    }
    // Simpson is exact on cubics over complete panels
    {
        const auto t = grid(0.0, 0.25, 9);
        const auto v = map_grid(t, [](double x) { return x * x * x; });
        const auto integral = ido::cumulative_simpson(t, v);
        CHECK(std::abs(integral.back() - std::pow(2.0, 4) / 4.0) < 1e-12);
    }
}

TEST_CASE("trapezoid and Simpson difference shrinks at second order") {
    auto difference = [](double dt) {
        const auto count = static_cast<std::size_t>(std::llround(1.0 / dt)) + 1;
        const auto t = grid(0.0, dt, count);
        const auto v = map_grid(t, [](double x) { return std::cos(x); });
        return std::abs(ido::cumulative_trapezoid(t, v).back() - ido::cumulative_simpson(t, v).back());
    };
    const double ratio = difference(1e-2) / difference(5e-3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("fit_line recovers an exact line") {
    const auto t = grid(0.0, 0.1, 101);
    std::vector<double> y(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) y[k] = -1.5 + 0.25 * t[k];
    const auto fit = ido::fit_line(t, y);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.residual_rms < 1e-12);
}

TEST_CASE("compute_metrics on synthetic error channels") {
    const auto times = grid(0.0, 1e-2, 10001);  // 100 s
    {
        const auto trace = synthetic_trace(times, [](double t) { return std::sin(t); },
                                           [](double) { return 0.0; });
        const auto metrics = ido::compute_metrics(trace, 20.0);
        REQUIRE(metrics.channels.size() == 1);
        CHECK(metrics.channels[0].sup_error == 0.0);
        CHECK(metrics.channels[0].rmse == 0.0);
        CHECK(metrics.channels[0].drift_slope == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        const auto trace = synthetic_trace(times, [](double) { return 0.0; },
                                           [](double t) { return 0.005 * t; });
        const auto metrics = ido::compute_metrics(trace, 20.0);
        CHECK(metrics.channels[0].drift_slope == doctest::Approx(0.005).epsilon(1e-9));
        CHECK(metrics.channels[0].sup_error == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("compute_metrics rejects an empty settle window") {
    const auto times = grid(0.0, 0.1, 11);
    const auto trace = synthetic_trace(times, [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(ido::compute_metrics(trace, 5.0), std::invalid_argument);
}

TEST_CASE("metrics are stable under decimation up to 10x") {
    const auto times = grid(0.0, 1e-3, 100001);
    const auto trace = synthetic_trace(times, [](double t) { return std::cos(t); },
                                       [](double t) { return 0.01 * std::sin(0.3 * t) + 2e-4 * t; });
    const auto full = ido::compute_metrics(trace, 20.0);
    for (std::size_t m : {2, 5, 10}) {
        const auto thin = ido::compute_metrics(ido::decimate(trace, m), 20.0);
        CHECK(thin.channels[0].sup_error ==
              doctest::Approx(full.channels[0].sup_error).epsilon(0.02));
        CHECK(thin.channels[0].rmse == doctest::Approx(full.channels[0].rmse).epsilon(0.02));
        CHECK(thin.channels[0].drift_slope ==
              doctest::Approx(full.channels[0].drift_slope).epsilon(0.02));
    }
}
