// test_scheme.cpp — configuration validation, phase law, normalization

#include <cmath>
#include <limits>

#include "doctest.h"
#include "loopbloch/scheme.hpp"

using namespace loopbloch;

TEST_CASE("default config validates cleanly") {
    SchemeConfig c;
    CHECK(c.validate().empty());
    CHECK_NOTHROW(c.validate_or_throw());
}

TEST_CASE("negative decay rate is reported with its field name") {
    SchemeConfig c;
    c.gamma42 = -0.5;
    const auto v = c.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "gamma42");
    CHECK_THROWS_AS(c.validate_or_throw(), std::invalid_argument);
}

TEST_CASE("non-finite parameters are rejected") {
    SchemeConfig c;
    c.delta3 = std::numeric_limits<double>::quiet_NaN();
    c.g24 = std::numeric_limits<double>::infinity();
    const auto v = c.validate();
    CHECK(v.size() == 2);
    CHECK_THROWS_AS(c.validate_or_throw(), std::invalid_argument);
}

TEST_CASE("per-field phases must match the stored loop phase") {
    SchemeConfig c;
    c.laser_phases = LaserPhases{0.3, 0.1, 0.2, 0.15};
    c.phase.delta_chi = c.laser_phases->loop_mismatch();
    CHECK(c.validate().empty());

    c.phase.delta_chi += 0.1;  // inconsistent by 0.1
    const auto v = c.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "phase.delta_chi");
    CHECK(v[0].message.find("phase mismatch") != std::string::npos);
}

TEST_CASE("loop_mismatch combines the four phases with the loop signs") {
    LaserPhases p{0.3, 0.1, 0.2, 0.15};
    // chi12 + chi24 - chi34 - chi13
    CHECK(p.loop_mismatch() == doctest::Approx(0.3 + 0.2 - 0.15 - 0.1));
}

TEST_CASE("alpha is the upper-to-lower decay ratio") {
    SchemeConfig c;
    c.gamma2 = 1.5;
    c.gamma3 = 0.5;
    c.gamma42 = 3.0;
    c.gamma43 = 1.0;
    CHECK(c.gamma4() == doctest::Approx(4.0));
    CHECK(c.alpha() == doctest::Approx(2.0));

    c.gamma2 = c.gamma3 = 0.0;
    CHECK_THROWS_AS(c.alpha(), std::invalid_argument);
}

TEST_CASE("phase law evaluates delta_omega * t - delta_k * z + delta_chi") {
    PhaseLaw p{1.0, 0.0, 0.0};
    CHECK(p.at(kTwoPi) == doctest::Approx(kTwoPi));
    CHECK_FALSE(p.is_static());

    PhaseLaw q{0.0, 1.0, 0.0};
    CHECK(q.at(5.0, kPi) == doctest::Approx(-kPi));
    CHECK(q.is_static());

    PhaseLaw r{2.0, 3.0, 0.25};
    CHECK(r.at(1.5, -0.5) == doctest::Approx(2.0 * 1.5 + 3.0 * 0.5 + 0.25));
}

TEST_CASE("steady_state_exists tracks the phase law") {
    SchemeConfig c;
    CHECK(c.steady_state_exists().exists);
    CHECK(c.steady_state_exists().reason.empty());

    c.phase.delta_omega = 0.5;
    const auto drifting = c.steady_state_exists();
    CHECK_FALSE(drifting.exists);
    CHECK(drifting.reason.find("multiphoton resonance") != std::string::npos);

    c.phase.delta_omega = 0.0;
    c.phase.delta_k = 2.0;
    const auto zdep = c.steady_state_exists();
    CHECK(zdep.exists);
    CHECK(zdep.reason.find("z-dependent") != std::string::npos);
}

TEST_CASE("normalized rescales all rates so the largest decay is one") {
    SchemeConfig c;
    c.gamma2 = 2.0;
    c.gamma3 = 4.0;
    c.gamma42 = 3.0;
    c.gamma43 = 5.0;  // gamma4 = 8 is the largest rate
    c.g12 = 16.0;
    c.delta2 = 4.0;
    c.phase.delta_omega = 0.8;
    c.phase.delta_k = 1.3;
    c.phase.delta_chi = 0.7;

    const NormalizedScheme n = c.normalized();
    CHECK(n.scale == doctest::Approx(8.0));
    CHECK(n.config.gamma4() == doctest::Approx(1.0));
    CHECK(n.config.gamma2 == doctest::Approx(0.25));
    CHECK(n.config.g12 == doctest::Approx(2.0));
    CHECK(n.config.delta2 == doctest::Approx(0.5));
    CHECK(n.config.phase.delta_omega == doctest::Approx(0.1));
    // Ratios survive the rescaling.
    CHECK(n.config.alpha() == doctest::Approx(c.alpha()));
    // Phase offsets are dimensionless and untouched.
    CHECK(n.config.phase.delta_chi == doctest::Approx(0.7));
    CHECK(n.config.phase.delta_k == doctest::Approx(1.3));

    SchemeConfig zero;
    zero.gamma2 = zero.gamma3 = zero.gamma42 = zero.gamma43 = 0.0;
    CHECK(zero.normalized().scale == doctest::Approx(1.0));
}

TEST_CASE("symmetric family expands and round-trips exactly") {
    SymmetricParams p{2.5, 0.3, 1.1, SchemeKind::Diamond};
    const SchemeConfig c = p.expand();
    CHECK(c.gamma2 == 1.0);
    CHECK(c.gamma3 == 1.0);
    CHECK(c.gamma42 == doctest::Approx(0.3));
    CHECK(c.gamma43 == doctest::Approx(0.3));
    CHECK(c.g12 == 2.5);
    CHECK(c.g34 == 2.5);
    CHECK(c.phase.delta_chi == 1.1);
    CHECK(c.phase.is_static());
    CHECK(c.is_symmetric());
    // Round trip: Omega = g12 / gamma2, alpha and phi recovered exactly.
    CHECK(c.g12 / c.gamma2 == p.Omega);
    CHECK(c.alpha() == doctest::Approx(p.alpha));
    CHECK(c.phase_at(123.0, 45.0) == p.phi);
}

TEST_CASE("is_symmetric rejects detuned or lopsided configs") {
    SchemeConfig c = SymmetricParams{1.0, 1.0, 0.0}.expand();
    CHECK(c.is_symmetric());
    c.delta2 = 1e-3;
    CHECK_FALSE(c.is_symmetric());
    CHECK(c.is_symmetric(1e-2));
    c.delta2 = 0.0;
    c.g34 = 1.000001;
    CHECK_FALSE(c.is_symmetric());
    CHECK(c.is_symmetric(1e-5));
}

TEST_CASE("scheme kinds print their names") {
    CHECK(std::string(to_string(SchemeKind::Diamond)) == "diamond");
    CHECK(std::string(to_string(SchemeKind::DoubleLambda)) == "double-lambda");
}
