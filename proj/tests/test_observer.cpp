#include <doctest.h>

#include <cmath>

#include "ido/observer.hpp"
#include "oracle.hpp"

using ido::ObserverParams;
using ido::ObserverVariantTag;

namespace {

ObserverParams paper_tracking_params() {
    // n=3, p=2, eps=1/2, k=(0.1, 2, 1), alpha3=0.8, x0=(0, 1, 0)
    ObserverParams params;
    params.n = 3;
    params.p = 2;
    params.gains = {0.1, 2.0, 1.0};
    params.epsilon = 0.5;
    params.alpha_n = 0.8;
    params.initial_state = {0.0, 1.0, 0.0};
    return params;
}

}  // namespace

TEST_CASE("validate accepts the tracking-experiment parameters") {
    const auto result = ido::validate(paper_tracking_params());
    REQUIRE(result.ok());
    const auto& config = *result.config;
    CHECK(config.chain().alpha(1) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
    CHECK(config.chain().alpha(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(config.labels() == std::vector<std::string>{"int_a", "a", "da_dt"});
    CHECK(config.suggested_max_dt() == doctest::Approx(0.5 * 0.5 * 0.5 * 0.5 / 10.0));
}

TEST_CASE("validate reports every violation of an infeasible config") {
    ObserverParams params;
    params.n = 5;
    params.p = 3;
    params.gains = {1.0, 1.0, -2.0, 1.0, 1.0};
    params.epsilon = 1.5;
    params.alpha_n = 0.8;
    params.initial_state = {0.0, 0.0, 0.0, 0.0, 0.0};
    const auto result = ido::validate(params);
    REQUIRE_FALSE(result.ok());

    bool saw_feasibility = false, saw_gain = false, saw_epsilon = false;
    for (const auto& d : result.diagnostics) {
        if (d.find("infeasible (n,p)") != std::string::npos) saw_feasibility = true;
        if (d.find("k3") != std::string::npos) saw_gain = true;
        if (d.find("epsilon") != std::string::npos) saw_epsilon = true;
    }
    CHECK(saw_feasibility);
    CHECK(saw_gain);
    CHECK(saw_epsilon);
}

TEST_CASE("gain inequality threshold for the (3,2) shape") {
    // alpha2 = 2/3 from alpha3 = 0.8; threshold eps^(2*alpha2)*k1/k3 = 0.5^(4/3)*0.1
    const auto result = ido::validate(paper_tracking_params());
    REQUIRE(result.ok());
    const double threshold =
        std::pow(0.5, 2.0 * result.config->chain().alpha(2)) * 0.1 / 1.0;
    CHECK(threshold == doctest::Approx(0.03968502629920499).epsilon(1e-14));
    CHECK(threshold < 2.0);  // satisfied by k2 = 2

    // push k2 below the threshold: must flag the inequality
    auto params = paper_tracking_params();
    params.gains[1] = threshold / 2.0;
    const auto bad = ido::validate(params);
    REQUIRE_FALSE(bad.ok());
    bool saw_inequality = false;
    for (const auto& d : bad.diagnostics)
        if (d.find("gain inequality") != std::string::npos) saw_inequality = true;
    CHECK(saw_inequality);
}

TEST_CASE("make_variant builds the four shapes") {
    const auto deriv = ido::make_variant(ObserverVariantTag::DerivIntegral, {0.1, 2.0, 1.0}, 0.5, 0.8,
                                         {0.0, 1.0, 0.0});
    REQUIRE(deriv.ok());
    CHECK(deriv.config->labels() == std::vector<std::string>{"int_a", "a", "da_dt"});

    const auto dbl = ido::make_variant(ObserverVariantTag::DoubleIntegral, {0.1, 2.0, 1.0}, 0.5, 0.8,
                                       {0.0, 0.0, 1.0});
    REQUIRE(dbl.ok());
    CHECK(dbl.config->labels() == std::vector<std::string>{"int2_a", "int_a", "a"});
    // its gain threshold: 0.5^2.4 * 0.1 / 1
    const double threshold = std::pow(0.5, 3.0 * dbl.config->chain().alpha(3)) * 0.1;
    CHECK(threshold == doctest::Approx(0.01894645708137998).epsilon(1e-13));
    CHECK(2.0 > threshold);

    // alpha_n = 1 collapses to the linear high-gain observer
    const auto linear = ido::make_variant(ObserverVariantTag::FoldIntegral, {1.0, 1.0}, 0.5, 1.0, {0.0, 1.0});
    REQUIRE(linear.ok());
    CHECK(linear.config->chain().alpha(1) == doctest::Approx(1.0));
    CHECK(linear.config->chain().alpha(2) == doctest::Approx(1.0));

    const auto quad = ido::make_variant(ObserverVariantTag::DerivDoubleIntegral, {0.1, 1.0, 2.0, 1.0}, 0.5,
                                        0.8, {0.0, 0.0, 1.0, 0.0});
    REQUIRE(quad.ok());
    CHECK(quad.config->labels() == std::vector<std::string>{"int2_a", "int_a", "a", "da_dt"});
}

TEST_CASE("observer_rhs matches hand-evaluated values") {
    {
        const auto result = ido::validate(paper_tracking_params());
        REQUIRE(result.ok());
        const double state[] = {0.0, 1.0, 0.0};
        const auto dxdt = ido::observer_rhs(*result.config, state, 1.0);
        CHECK(dxdt[0] == doctest::Approx(1.0));
        CHECK(dxdt[1] == doctest::Approx(0.0));
        CHECK(dxdt[2] == doctest::Approx(0.0));  // every nonlinear term vanishes
    }
    {
        const auto result =
            ido::make_variant(ObserverVariantTag::FoldIntegral, {1.0, 1.0}, 0.5, 0.8, {0.0, 0.0});
        REQUIRE(result.ok());
        const double state[] = {1.0, 2.0};
        const auto dxdt = ido::observer_rhs(*result.config, state, 0.0);
        CHECK(dxdt[0] == doctest::Approx(2.0));
        // 8 * (-(0.5)^(2/3) - 2^0.8)
        CHECK(dxdt[1] == doctest::Approx(-18.96849321231748).epsilon(1e-13));
    }
}

TEST_CASE("observer_rhs with epsilon=1 and zero slot error reduces to the unscaled form") {
    // epsilon inside (0,1) is required by validation; the reduction is about
    // the formula, so drive epsilon close to 1 via the raw polynomial pieces
    // and check the scaled terms match the plain sum at eps -> 1.
    ObserverParams params = paper_tracking_params();
    params.epsilon = 0.999999;
    const auto result = ido::validate(params);
    REQUIRE(result.ok());
    const auto& config = *result.config;

    const double state[] = {0.7, 0.3, -0.4};
    const double meas = 0.3;  // x_p - a = 0
    const auto dxdt = ido::observer_rhs(config, state, meas);

    double plain = 0.0;
    for (int i = 1; i <= 3; ++i) {
        if (i == 2) continue;
        plain -= config.gains()[static_cast<std::size_t>(i) - 1] *
                 ido::power_sign(state[i - 1], config.chain().alpha(i));
    }
    CHECK(dxdt[2] == doctest::Approx(plain).epsilon(1e-4));
}

TEST_CASE("observer_rhs is odd under joint negation of state and measurement") {
    const auto result = ido::validate(paper_tracking_params());
    REQUIRE(result.ok());
    oracle::TestRng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        double state[3], negated[3];
        for (int i = 0; i < 3; ++i) {
            state[i] = rng.uniform(-5.0, 5.0);
            negated[i] = -state[i];
        }
        const double meas = rng.uniform(-5.0, 5.0);
        const auto fwd = ido::observer_rhs(*result.config, state, meas);
        const auto rev = ido::observer_rhs(*result.config, negated, -meas);
        for (int i = 0; i < 3; ++i) CHECK(rev[i] == doctest::Approx(-fwd[i]).epsilon(1e-12));
    }
}

TEST_CASE("observer_rhs perturbations obey the per-term Hoelder bound") {
    const auto result = ido::validate(paper_tracking_params());
    REQUIRE(result.ok());
    const auto& config = *result.config;

    oracle::TestRng rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        double base[3], bumped[3];
        const double scale = std::pow(10.0, rng.uniform(-8.0, 0.0));
        for (int i = 0; i < 3; ++i) {
            base[i] = rng.uniform(-3.0, 3.0);
            bumped[i] = base[i] + scale * rng.uniform(-1.0, 1.0);
        }
        const double meas = rng.uniform(-3.0, 3.0);
        const auto f0 = ido::observer_rhs(config, base, meas);
        const auto f1 = ido::observer_rhs(config, bumped, meas);

        double bound = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const double a = config.chain().alpha(i);
            const double dz = i == 2 ? std::abs(bumped[1] - base[1])
                                     : config.epsilon_pow(i) * std::abs(bumped[i - 1] - base[i - 1]);
            bound += config.gains()[static_cast<std::size_t>(i) - 1] * std::pow(2.0, 1.0 - a) *
                     std::pow(dz, a);
        }
        bound *= config.stiffness();
        CHECK(std::abs(f1[2] - f0[2]) <= bound * (1.0 + 1e-9));
        CHECK(std::abs(f1[0] - f0[0]) <= std::abs(bumped[1] - base[1]) + 1e-18);
    }
}

TEST_CASE("linear limit decay rate matches the characteristic polynomial's dominant root") {
    // alpha = 1, zero input signal: the observer is the homogeneous linear
    // error system in the tau = t/eps time scale.
    ObserverParams params = paper_tracking_params();
    params.alpha_n = 1.0;
    const auto result = ido::validate(params);
    REQUIRE(result.ok());
    const auto& config = *result.config;

    const auto poly = ido::observer_char_poly(config);
    const double dominant = oracle::dominant_real_part(poly);
    REQUIRE(dominant < 0.0);
    const double rate_t = dominant / config.epsilon();  // per unit t

    // integrate with plain RK4 (measurement fixed at 0)
    const double dt = 1e-3;
    std::vector<double> x = {1.0, 1.0, 1.0};
    auto norm = [](const std::vector<double>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    auto rhs = [&](const std::vector<double>& s) { return ido::observer_rhs(config, s, 0.0); };
    auto rk4 = [&](std::vector<double>& s) {
        const auto k1 = rhs(s);
        std::vector<double> tmp(3);
        for (int i = 0; i < 3; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
        const auto k2 = rhs(tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
        const auto k3 = rhs(tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = s[i] + dt * k3[i];
        const auto k4 = rhs(tmp);
        for (int i = 0; i < 3; ++i) s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };

    // measure the log-norm slope over [60, 260]: the fast pair is long dead
    double t = 0.0;
    while (t < 60.0) {
        rk4(x);
        t += dt;
    }
    const double n0 = norm(x);
    while (t < 260.0) {
        rk4(x);
        t += dt;
    }
    const double measured = std::log(norm(x) / n0) / 200.0;
    CHECK(measured == doctest::Approx(rate_t).epsilon(0.05));
}
