// states.hpp — basis and superposition states, populations, named Bloch components

#pragma once

#include <stdexcept>
#include <string>

#include "loopbloch/core.hpp"

namespace loopbloch {

// |level> for level in 1..4.
template <typename Scalar = double>
StateVectorT<Scalar> basis_state(int level) {
    if (level < 1 || level > kLevels) {
        throw std::invalid_argument("basis_state: level must be in 1..4, got " +
                                    std::to_string(level));
    }
    StateVectorT<Scalar> v = StateVectorT<Scalar>::Zero();
    v(level - 1) = ComplexT<Scalar>(1, 0);
    return v;
}

// (|2> + e^{-i theta}|3>)/sqrt(2). Note the minus sign in the exponent;
// the 1-4 companion below uses the opposite sign.
template <typename Scalar>
StateVectorT<Scalar> superposition_23(Scalar theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("superposition_23: theta not finite");
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    StateVectorT<Scalar> v = StateVectorT<Scalar>::Zero();
    v(1) = ComplexT<Scalar>(r, 0);
    v(2) = std::polar(r, -theta);
    return v;
}

// (|1> + e^{+i theta}|4>)/sqrt(2).
template <typename Scalar>
StateVectorT<Scalar> superposition_14(Scalar theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("superposition_14: theta not finite");
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    StateVectorT<Scalar> v = StateVectorT<Scalar>::Zero();
    v(0) = ComplexT<Scalar>(r, 0);
    v(3) = std::polar(r, theta);
    return v;
}

template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& psi) {
    return (psi * psi.adjoint()).eval();
}

// <psi|rho|psi>. psi must be normalized to 1e-6.
template <typename DerivedRho, typename DerivedPsi>
double population_in(const Eigen::MatrixBase<DerivedRho>& rho,
                     const Eigen::MatrixBase<DerivedPsi>& psi) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw std::invalid_argument("population_in: state not normalized, |psi| = " +
                                    std::to_string(norm));
    }
    return std::real((psi.adjoint() * rho * psi)(0, 0));
}

// Real and imaginary parts of the density-matrix entries, with the 3-4
// coherence reported in the rotated frame rho34 * e^{i phi}. Field order
// here fixes the CSV column order.
template <typename Scalar>
struct BlochComponentsT {
    Scalar phi{};  // rotation angle used for u34t/v34t
    Scalar rho11{}, rho22{}, rho33{}, rho44{};
    Scalar u12{}, v12{}, u13{}, v13{}, u24{}, v24{}, u34t{}, v34t{};
    Scalar u14{}, v14{}, u23{}, v23{};

    static constexpr std::array<const char*, 16> field_names() {
        return {"rho11", "rho22", "rho33", "rho44", "u12", "v12", "u13", "v13",
                "u24",   "v24",   "u34t",  "v34t",  "u14", "v14", "u23", "v23"};
    }

    std::array<Scalar, 16> values() const {
        return {rho11, rho22, rho33, rho44, u12, v12, u13, v13,
                u24,   v24,   u34t,  v34t,  u14, v14, u23, v23};
    }

    Scalar population_sum() const { return rho11 + rho22 + rho33 + rho44; }
};

using BlochComponents = BlochComponentsT<double>;

template <typename Derived>
BlochComponents bloch_components(const Eigen::MatrixBase<Derived>& rho, double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("bloch_components: phi not finite");
    BlochComponents b;
    b.phi = phi;
    b.rho11 = std::real(rho(0, 0));
    b.rho22 = std::real(rho(1, 1));
    b.rho33 = std::real(rho(2, 2));
    b.rho44 = std::real(rho(3, 3));
    b.u12 = std::real(rho(0, 1));
    b.v12 = std::imag(rho(0, 1));
    b.u13 = std::real(rho(0, 2));
    b.v13 = std::imag(rho(0, 2));
    b.u24 = std::real(rho(1, 3));
    b.v24 = std::imag(rho(1, 3));
    const Complex rot34 = Complex(rho(2, 3)) * std::polar(1.0, phi);
    b.u34t = rot34.real();
    b.v34t = rot34.imag();
    b.u14 = std::real(rho(0, 3));
    b.v14 = std::imag(rho(0, 3));
    b.u23 = std::real(rho(1, 2));
    b.v23 = std::imag(rho(1, 2));
    return b;
}

// Re rho14 recovered from populations of the two 1-4 superpositions.
template <typename Derived>
double u14_from_superpositions(const Eigen::MatrixBase<Derived>& rho) {
    return 0.5 * (population_in(rho, superposition_14(0.0)) -
                  population_in(rho, superposition_14(kPi)));
}

// Same identity for the 2-3 pair.
template <typename Derived>
double u23_from_superpositions(const Eigen::MatrixBase<Derived>& rho) {
    return 0.5 * (population_in(rho, superposition_23(0.0)) -
                  population_in(rho, superposition_23(kPi)));
}

}  // namespace loopbloch
