// analytic.hpp — closed-form steady states of the symmetric resonant loop

#pragma once

#include <optional>
#include <stdexcept>

#include "loopbloch/scheme.hpp"
#include "loopbloch/states.hpp"

namespace loopbloch {

// Closed forms below assume the fully symmetric resonant configuration:
// gamma2 = gamma3 = gamma (the time unit), all four couplings equal to
// g = Omega * gamma, all detunings zero, static loop phase. They come in
// three overlapping families:
//   * alpha = 1 (gamma4 = 2 gamma), any phase;
//   * phase an odd multiple of pi, any alpha (gamma4 drops out entirely);
//   * phase an even multiple of pi, any alpha.
// Scalar is templated so tests can evaluate them in extended precision.

template <typename Scalar>
struct OracleOutput {
    BlochComponentsT<Scalar> bloch;
    Scalar denominator = Scalar(1);  // the common denominator D, useful in identities
};

template <typename Scalar>
OracleOutput<Scalar> analytic_alpha1(Scalar Omega, Scalar phi) {
    const Scalar O2 = Omega * Omega;
    const Scalar O3 = O2 * Omega;
    const Scalar O4 = O2 * O2;
    const Scalar O6 = O4 * O2;
    const Scalar O8 = O4 * O4;
    const Scalar sh = std::sin(phi / 2);
    const Scalar s = sh * sh;            // sin^2(phi/2)
    const Scalar c2 = 1 - s;             // cos^2(phi/2)
    const Scalar sp = std::sin(phi);
    const Scalar sp2 = sp * sp;          // sin^2(phi)

    OracleOutput<Scalar> out;
    const Scalar D = 1 + Scalar(22) / 3 * O2 + Scalar(4) / 9 * O4 * (7 * s + 27) +
                     Scalar(16) / 9 * O6 * (s + 3) + Scalar(8) / 9 * O8 * sp2;
    out.denominator = D;

    auto& b = out.bloch;
    b.phi = phi;
    b.rho11 = (1 + Scalar(16) / 3 * O2 + Scalar(19) / 9 * O4 * (s + 3) +
               Scalar(4) / 9 * O6 * (5 * s + 3) + Scalar(2) / 9 * O8 * sp2) /
              D;
    const Scalar pop23 = 1 + Scalar(1) / 3 * O2 * (7 + 3 * s) + Scalar(4) / 9 * O4 * (3 + s) +
                         Scalar(2) / 9 * O6 * sp2;
    b.rho22 = O2 / D * pop23;
    b.rho33 = b.rho22;
    const Scalar top = 1 + Scalar(4) / 3 * O2 + Scalar(8) / 9 * O4 * s;
    b.rho44 = O4 / D * c2 * top;

    b.u12 = O3 / (2 * D) * sp * (-1 + Scalar(2) / 3 * O2 + Scalar(8) / 9 * O4 * s);
    b.u13 = -b.u12;
    b.v12 = Omega / D * pop23;
    b.v13 = b.v12;

    b.u24 = O3 / (2 * D) * sp * (1 + 2 * O2 + Scalar(8) / 9 * O4 * s);
    b.u34t = -b.u24;
    b.v24 = O3 / D * c2 * top;
    b.v34t = b.v24;

    const Scalar cross = 1 + Scalar(4) / 3 * O2 + Scalar(4) / 9 * O4 * s;
    b.u14 = -O2 / D * c2 * cross;
    b.v14 = O2 / (2 * D) * sp * cross;

    b.u23 = O2 / D * (1 + Scalar(2) / 3 * O2 * (2 + 3 * s) + Scalar(4) / 9 * O4 * s * (1 + 3 * s));
    b.v23 = -O4 / D * sp * (1 + Scalar(2) / 3 * O2 * s);
    return out;
}

// Loop phase an odd multiple of pi: destructive two-photon interference
// empties the top level and the state is independent of gamma4.
template <typename Scalar>
OracleOutput<Scalar> analytic_phi_odd(Scalar Omega) {
    const Scalar O2 = Omega * Omega;
    OracleOutput<Scalar> out;
    const Scalar D = 1 + 4 * O2;
    out.denominator = D;
    auto& b = out.bloch;
    b.phi = kPi;
    b.rho11 = (1 + 2 * O2) / D;
    b.rho22 = O2 / D;
    b.rho33 = O2 / D;
    b.rho44 = 0;
    b.v12 = Omega / D;
    b.v13 = Omega / D;
    b.u23 = O2 / D;
    // u12, u13, u24, v24, u34t, v34t, u14, v14, v23 all vanish.
    return out;
}

// Loop phase an even multiple of pi, arbitrary alpha = gamma4 / (2 gamma).
template <typename Scalar>
OracleOutput<Scalar> analytic_phi_even(Scalar Omega, Scalar alpha) {
    const Scalar O2 = Omega * Omega;
    const Scalar O3 = O2 * Omega;
    const Scalar O4 = O2 * O2;
    const Scalar a = alpha;
    const Scalar a2 = a * a;

    OracleOutput<Scalar> out;
    const Scalar D = a2 * (1 + 2 * a) + O2 * a * (3 + 7 * a + 8 * a2) + 2 * O4 * (1 + 4 * a + a2);
    out.denominator = D;
    auto& b = out.bloch;
    b.phi = 0;
    b.rho11 = (a2 * (1 + 2 * a) + O2 * a * (3 + 5 * a + 4 * a2) + O4 * (1 + 2 * a)) / D;
    b.rho22 = a * O2 / D * (a * (1 + 2 * a) + O2 * (a + 2));
    b.rho33 = b.rho22;
    b.rho44 = O4 / D * (1 + 2 * a);
    b.v12 = a * Omega / D * (a * (1 + 2 * a) + O2 * (2 + a));
    b.v13 = b.v12;
    b.v24 = a * O3 / D * (1 + 2 * a);
    b.v34t = b.v24;
    b.u23 = a * O2 / D * (a * (1 + 2 * a) + O2 * (1 - a));
    b.u14 = -O2 / D * (a * (1 + 2 * a) + O2 * (1 - a));
    // u12, u13, u24, u34t, v14, v23 all vanish.
    return out;
}

// Beyond the trivial zeros at multiples of pi, u12 of the alpha = 1 family
// vanishes where sin^2(phi/2) = 3 (3 - 2 Omega^2) / (8 Omega^4). Returns the
// root in (0, pi) when that value lands in (0, 1), otherwise nothing.
template <typename Scalar>
std::optional<Scalar> extra_u12_zero_alpha1(Scalar Omega) {
    const Scalar O2 = Omega * Omega;
    const Scalar s = 3 * (3 - 2 * O2) / (8 * O2 * O2);
    if (!(s > 0) || !(s < 1)) return std::nullopt;
    return 2 * std::asin(std::sqrt(s));
}

// Thrown when a two-photon path amplitude has a vanishing denominator
// (resonant drive on an undamped intermediate level).
class PoleAtZeroError : public std::domain_error {
  public:
    PoleAtZeroError() : std::domain_error("two-photon amplitude pole: delta = 0 and gamma = 0") {}
};

// Second-order perturbative excitation probability of the top level: the
// coherent sum of the 1->2->4 and 1->3->4 path amplitudes, the second
// carrying the loop phase. Unnormalized.
template <typename Scalar = double>
Scalar two_photon_probability(const SchemeConfig& config, Scalar phi) {
    using C = ComplexT<Scalar>;
    const C d2(config.delta2, -config.gamma2 / 2);
    const C d3(config.delta3, -config.gamma3 / 2);
    if (std::abs(d2) == Scalar(0) || std::abs(d3) == Scalar(0)) throw PoleAtZeroError();
    const C amp = Scalar(config.g12 * config.g24) / d2 +
                  Scalar(config.g13 * config.g34) * std::polar(Scalar(1), phi) / d3;
    return std::norm(amp);
}

}  // namespace loopbloch
