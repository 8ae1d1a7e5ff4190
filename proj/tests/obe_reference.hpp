// obe_reference.hpp — independently coded component-wise equations of motion
//
// Deliberately written without Eigen or any library superoperator machinery:
// each density-matrix derivative is spelled out term by term, so agreement
// with the assembled 16x16 generator is a genuine cross-check of the
// Hamiltonian conventions, the vectorization order and the dissipator
// algebra. Input states must be Hermitian; the lower triangle is produced by
// conjugation.

#pragma once

#include <array>
#include <complex>

namespace obe_reference {

using C = std::complex<double>;
using Rho = std::array<std::array<C, 4>, 4>;

struct Params {
    // Lower decay channels: diamond 2->1 and 3->1; double-lambda 1->2, 1->3.
    double gl2 = 1.0, gl3 = 1.0;
    double g42 = 0.5, g43 = 0.5;  // upper channels 4->2, 4->3
    double g12 = 1.0, g13 = 1.0, g24 = 1.0, g34 = 1.0;
    double d2 = 0.0, d3 = 0.0, d4 = 0.0;
    double phi = 0.0;
    bool double_lambda = false;
};

// d rho / dt with rho Hermitian. Indices are 0-based (level n at n-1).
inline Rho rhs(const Params& p, const Rho& r) {
    const C i(0, 1);
    const C e = std::exp(i * p.phi);   // phase on the 3-4 drive
    const C ec = std::conj(e);
    const double G12 = p.g12 / 2, G13 = p.g13 / 2, G24 = p.g24 / 2, G34 = p.g34 / 2;

    // Per-level total decay rates entering coherence damping.
    double L1, L2, L3, L4;
    if (p.double_lambda) {
        L1 = p.gl2 + p.gl3;
        L2 = 0;
        L3 = 0;
        L4 = p.g42 + p.g43;
    } else {
        L1 = 0;
        L2 = p.gl2;
        L3 = p.gl3;
        L4 = p.g42 + p.g43;
    }

    Rho d{};

    // Populations: coherent exchange with each coupled neighbor plus
    // radiative feeding.
    d[0][0] = -i * (G12 * (r[1][0] - r[0][1]) + G13 * (r[2][0] - r[0][2]));
    d[1][1] = -i * (G12 * (r[0][1] - r[1][0]) + G24 * (r[3][1] - r[1][3]));
    d[2][2] = -i * (G13 * (r[0][2] - r[2][0]) + G34 * (ec * r[3][2] - e * r[2][3]));
    d[3][3] = -i * (G24 * (r[1][3] - r[3][1]) + G34 * (e * r[2][3] - ec * r[3][2]));
    if (p.double_lambda) {
        d[0][0] += -(p.gl2 + p.gl3) * r[0][0];
        d[1][1] += p.gl2 * r[0][0] + p.g42 * r[3][3];
        d[2][2] += p.gl3 * r[0][0] + p.g43 * r[3][3];
        d[3][3] += -(p.g42 + p.g43) * r[3][3];
    } else {
        d[0][0] += p.gl2 * r[1][1] + p.gl3 * r[2][2];
        d[1][1] += -p.gl2 * r[1][1] + p.g42 * r[3][3];
        d[2][2] += -p.gl3 * r[2][2] + p.g43 * r[3][3];
        d[3][3] += -(p.g42 + p.g43) * r[3][3];
    }

    // Coherences, upper triangle.
    d[0][1] = -i * (G12 * r[1][1] + G13 * r[2][1] - G12 * r[0][0] - p.d2 * r[0][1] -
                    G24 * r[0][3]) -
              0.5 * (L1 + L2) * r[0][1];
    d[0][2] = -i * (G12 * r[1][2] + G13 * r[2][2] - G13 * r[0][0] - p.d3 * r[0][2] -
                    G34 * e * r[0][3]) -
              0.5 * (L1 + L3) * r[0][2];
    d[0][3] = -i * (G12 * r[1][3] + G13 * r[2][3] - p.d4 * r[0][3] - G24 * r[0][1] -
                    G34 * ec * r[0][2]) -
              0.5 * (L1 + L4) * r[0][3];
    d[1][2] = -i * (G12 * r[0][2] + p.d2 * r[1][2] + G24 * r[3][2] - G13 * r[1][0] -
                    p.d3 * r[1][2] - G34 * e * r[1][3]) -
              0.5 * (L2 + L3) * r[1][2];
    d[1][3] = -i * (G12 * r[0][3] + p.d2 * r[1][3] + G24 * r[3][3] - G24 * r[1][1] -
                    G34 * ec * r[1][2] - p.d4 * r[1][3]) -
              0.5 * (L2 + L4) * r[1][3];
    d[2][3] = -i * (G13 * r[0][3] + p.d3 * r[2][3] + G34 * ec * r[3][3] - G24 * r[2][1] -
                    G34 * ec * r[2][2] - p.d4 * r[2][3]) -
              0.5 * (L3 + L4) * r[2][3];

    d[1][0] = std::conj(d[0][1]);
    d[2][0] = std::conj(d[0][2]);
    d[3][0] = std::conj(d[0][3]);
    d[2][1] = std::conj(d[1][2]);
    d[3][1] = std::conj(d[1][3]);
    d[3][2] = std::conj(d[2][3]);
    return d;
}

}  // namespace obe_reference
