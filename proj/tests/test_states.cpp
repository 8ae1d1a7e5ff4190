// test_states.cpp — basis states, superpositions, Bloch component extraction

#include <random>

#include "doctest.h"
#include "loopbloch/states.hpp"

using namespace loopbloch;

namespace {

DensityMatrix random_hermitian(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DensityMatrix m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m(i, j) = Complex(u(rng), u(rng));
    }
    return hermitized(m);
}

}  // namespace

TEST_CASE("basis states are the four computational unit vectors") {
    for (int level = 1; level <= 4; ++level) {
        const StateVector v = basis_state(level);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(v(level - 1) - Complex(1, 0)) < 1e-15);
    }
    CHECK_THROWS_AS(basis_state(0), std::invalid_argument);
    CHECK_THROWS_AS(basis_state(5), std::invalid_argument);
}

TEST_CASE("superposition_23 uses e^{-i theta} on level 3") {
    const StateVector v0 = superposition_23(0.0);
    CHECK(std::abs(v0(1) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(v0(2) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

    const StateVector vpi = superposition_23(kPi);
    CHECK(std::abs(vpi(2) + Complex(1 / std::sqrt(2.0), 0)) < 1e-12);

    // Sign convention: the level-3 amplitude carries e^{-i theta}.
    const double theta = 0.73;
    const StateVector v = superposition_23(theta);
    CHECK(std::abs(v(2) - std::polar(1 / std::sqrt(2.0), -theta)) < 1e-15);

    CHECK(std::abs((superposition_23(0.0).adjoint() * superposition_23(kPi))(0, 0)) < 1e-12);
}

TEST_CASE("superposition_14 uses e^{+i theta} on level 4") {
    const StateVector v0 = superposition_14(0.0);
    CHECK(std::abs(v0(0) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(v0(3) - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);

    const StateVector vpi = superposition_14(kPi);
    CHECK(std::abs(vpi(3) + Complex(1 / std::sqrt(2.0), 0)) < 1e-12);

    const double theta = -1.21;
    const StateVector v = superposition_14(theta);
    CHECK(std::abs(v(3) - std::polar(1 / std::sqrt(2.0), theta)) < 1e-15);

    CHECK(std::abs((superposition_14(0.0).adjoint() * superposition_14(kPi))(0, 0)) < 1e-12);
}

TEST_CASE("superpositions have unit norm for random angles") {
    std::mt19937 rng(20260825);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int k = 0; k < 100; ++k) {
        const double theta = angle(rng);
        CHECK(std::abs(superposition_23(theta).norm() - 1.0) < 1e-12);
        CHECK(std::abs(superposition_14(theta).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("population_in computes expectation values and guards normalization") {
    const DensityMatrix ground = projector(basis_state(1));
    CHECK(population_in(ground, basis_state(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(population_in(ground, basis_state(2)) == doctest::Approx(0.0));
    // |<1|Psi14(pi)>|^2 = 1/2.
    CHECK(population_in(ground, superposition_14(kPi)) == doctest::Approx(0.5).epsilon(1e-12));

    StateVector bad = basis_state(1);
    bad *= 1.5;
    CHECK_THROWS_AS(population_in(ground, bad), std::invalid_argument);
}

TEST_CASE("bloch_components extracts named parts and rotates the 3-4 coherence") {
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 0.4;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.2;
    rho(3, 3) = 0.1;
    rho(0, 1) = Complex(0.05, -0.02);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(2, 3) = Complex(0.5, 0.0);
    rho(3, 2) = std::conj(rho(2, 3));

    const BlochComponents b = bloch_components(rho, kPi);
    CHECK(b.rho11 == doctest::Approx(0.4));
    CHECK(b.u12 == doctest::Approx(0.05));
    CHECK(b.v12 == doctest::Approx(-0.02));
    // rho34 = 1/2 rotated by e^{i pi} gives -1/2.
    CHECK(b.u34t == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(b.v34t == doctest::Approx(0.0));
    CHECK(b.population_sum() == doctest::Approx(1.0));

    // A pure population state has no coherences at any rotation angle.
    const BlochComponents g = bloch_components(projector(basis_state(1)), 0.37);
    CHECK(g.rho11 == doctest::Approx(1.0));
    for (std::size_t i = 4; i < 16; ++i) CHECK(g.values()[i] == doctest::Approx(0.0));
}

TEST_CASE("values() follows field_names() ordering") {
    BlochComponents b;
    const auto names = BlochComponents::field_names();
    // Spot-check the ends and the rotated pair in the middle.
    CHECK(std::string(names[0]) == "rho11");
    CHECK(std::string(names[10]) == "u34t");
    CHECK(std::string(names[15]) == "v23");
    b.rho11 = 1;
    b.u34t = 11;
    b.v23 = 16;
    CHECK(b.values()[0] == 1);
    CHECK(b.values()[10] == 11);
    CHECK(b.values()[15] == 16);
}

TEST_CASE("superposition-population identities recover the two-photon coherences") {
    // Projectors first: u14 of |Psi14(pi)><Psi14(pi)| is -1/2, of
    // |Psi14(0)><Psi14(0)| is +1/2, of the maximally mixed state 0.
    CHECK(u14_from_superpositions(projector(superposition_14(kPi))) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(u14_from_superpositions(projector(superposition_14(0.0))) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(u14_from_superpositions(DensityMatrix(DensityMatrix::Identity() * 0.25)) ==
          doctest::Approx(0.0));

    std::mt19937 rng(7);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = random_hermitian(rng);
        CHECK(u14_from_superpositions(rho) ==
              doctest::Approx(std::real(rho(0, 3))).epsilon(1e-12));
        CHECK(u23_from_superpositions(rho) ==
              doctest::Approx(std::real(rho(1, 2))).epsilon(1e-12));
    }
}
