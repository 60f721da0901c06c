#include <doctest.h>

#include <cmath>

#include "ido/ode.hpp"

using ido::SimSpec;
using ido::StepMethod;
using ido::StepScheme;

namespace {

void exp_rhs(double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0]; }
void decay_rhs(double, std::span<const double> x, std::span<double> dx) { dx[0] = -x[0]; }

double rk4_endpoint_error(double dt) {
    const StepScheme scheme{StepMethod::RK4, dt};
    std::vector<double> x = {1.0};
    const auto steps = static_cast<long long>(std::llround(1.0 / dt));
    for (long long k = 0; k < steps; ++k) x = ido::step(scheme, decay_rhs, k * dt, x);
    return std::abs(x[0] - std::exp(-1.0));
}

}  // namespace

TEST_CASE("single RK4 step tracks the exponential") {
    const auto x = ido::step({StepMethod::RK4, 0.1}, exp_rhs, 0.0, std::vector<double>{1.0});
    CHECK(x[0] == doctest::Approx(1.1051708333333332).epsilon(1e-15));
    CHECK(std::abs(x[0] - 1.1051709180756477) < 1e-7);  // vs exp(0.1)
}

TEST_CASE("Euler step on a zero field is the identity") {
    const auto x = ido::step({StepMethod::Euler, 0.25},
                             [](double, std::span<const double>, std::span<double> dx) { dx[0] = 0.0; },
                             0.0, std::vector<double>{3.75});
    CHECK(x[0] == 3.75);
}

TEST_CASE("RK4 measured convergence order is 4") {
    const double order = std::log2(rk4_endpoint_error(1e-2) / rk4_endpoint_error(5e-3));
    CHECK(order == doctest::Approx(4.0).epsilon(0.025));  // 4.0 +- 0.1
}

TEST_CASE("step rejects bad schemes and flags divergence") {
    CHECK_THROWS_AS(ido::step({StepMethod::RK4, 0.0}, exp_rhs, 0.0, std::vector<double>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ido::step({StepMethod::RK4, -1.0}, exp_rhs, 0.0, std::vector<double>{1.0}),
                    std::invalid_argument);
    // y' = y^2 from y(0)=1 blows up at t=1; a huge step overflows immediately
    CHECK_THROWS_AS(
        ido::step({StepMethod::Euler, 1e300},
                  [](double, std::span<const double> x, std::span<double> dx) { dx[0] = x[0] * x[0]; },
                  0.0, std::vector<double>{1e300}),
        ido::IntegrationDiverged);
}

TEST_CASE("simulate produces the uniform grid with exact times") {
    SimSpec spec;
    spec.scheme = {StepMethod::RK4, 0.5};
    spec.t0 = 0.0;
    spec.t_end = 1.0;
    spec.x0 = {2.5};
    spec.rhs = [](double, std::span<const double>, const ido::HeldInputs&, std::span<double> dx) {
        dx[0] = 0.0;
    };
    const auto trace = ido::simulate(spec);
    REQUIRE(trace.size() == 3);
    CHECK(trace.time(0) == 0.0);
    CHECK(trace.time(1) == 0.5);
    CHECK(trace.time(2) == 1.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(trace.state(k, 0) == 2.5);
    CHECK_FALSE(trace.diverged);

    // grid times come from multiplication, not accumulation
    SimSpec fine = spec;
    fine.scheme.dt = 1e-3;
    fine.t_end = 2.0;
    const auto ft = ido::simulate(fine);
    REQUIRE(ft.size() == 2001);
    for (std::size_t k = 0; k < ft.size(); ++k) CHECK(ft.time(k) == static_cast<double>(k) * 1e-3);
}

TEST_CASE("simulate is deterministic bit for bit") {
    SimSpec spec;
    spec.scheme = {StepMethod::RK4, 1e-2};
    spec.t0 = 0.0;
    spec.t_end = 5.0;
    spec.x0 = {1.0, 0.0};
    spec.rhs = [](double, std::span<const double> x, const ido::HeldInputs&, std::span<double> dx) {
        dx[0] = x[1];
        dx[1] = -x[0];
    };
    const auto a = ido::simulate(spec);
    const auto b = ido::simulate(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.time(k) == b.time(k));
        CHECK(a.state(k, 0) == b.state(k, 0));
        CHECK(a.state(k, 1) == b.state(k, 1));
    }
}

TEST_CASE("simulate returns a partial trace when the state blows up") {
    SimSpec spec;
    spec.scheme = {StepMethod::RK4, 1e-2};
    spec.t0 = 0.0;
    spec.t_end = 2.0;
    spec.x0 = {1.0};
    spec.rhs = [](double, std::span<const double> x, const ido::HeldInputs&, std::span<double> dx) {
        dx[0] = x[0] * x[0];  // finite-time escape at t = 1
    };
    const auto trace = ido::simulate(spec);
    CHECK(trace.diverged);
    CHECK(trace.diverged_at > 0.9);
    CHECK(trace.diverged_at < 1.2);
    CHECK(trace.size() >= 2);
    CHECK(trace.size() < 201);
    for (std::size_t k = 0; k < trace.size(); ++k) CHECK(std::isfinite(trace.state(k, 0)));
}

TEST_CASE("held channels are sampled once per step and recorded") {
    SimSpec spec;
    spec.scheme = {StepMethod::Euler, 0.25};
    spec.t0 = 0.0;
    spec.t_end = 1.0;
    spec.x0 = {0.0};
    spec.measurement = [](double t, std::span<const double>) { return t; };
    spec.extras.emplace_back("twice_state",
                             [](double, std::span<const double> x) { return 2.0 * x[0]; });
    spec.rhs = [](double, std::span<const double>, const ido::HeldInputs& held, std::span<double> dx) {
        dx[0] = held.measurement;  // integrate the held measurement
    };
    const auto trace = ido::simulate(spec);
    REQUIRE(trace.size() == 5);
    // measurement held from the step midpoint
    CHECK(trace.input(0) == 0.125);
    CHECK(trace.input(3) == 0.875);
    // Euler on held t: x_{k+1} = x_k + dt * (t_k + dt/2); midpoint rule is
    // exact for f(t) = t
    CHECK(trace.state(4, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(trace.extra("twice_state")[4] == doctest::Approx(2.0 * trace.state(4, 0)));
}
