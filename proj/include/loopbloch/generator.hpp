// generator.hpp — rotating-frame Hamiltonian, jump operators, Liouvillian assembly

#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <vector>

#include "loopbloch/core.hpp"
#include "loopbloch/scheme.hpp"

namespace loopbloch {

// Rotating-frame Hamiltonian (hbar = 1) at loop phase phi. The gauge puts
// the whole loop phase on the 3-4 drive:
//   H = delta2|2><2| + delta3|3><3| + delta4|4><4|
//     + (g12/2)|2><1| + (g13/2)|3><1| + (g24/2)|4><2|
//     + (g34/2) e^{i phi} |4><3|  + h.c.
inline DensityMatrix build_hamiltonian(const SchemeConfig& config, double phi) {
    DensityMatrix h = DensityMatrix::Zero();
    h(1, 1) = config.delta2;
    h(2, 2) = config.delta3;
    h(3, 3) = config.delta4;
    h(1, 0) = 0.5 * config.g12;
    h(2, 0) = 0.5 * config.g13;
    h(3, 1) = 0.5 * config.g24;
    h(3, 2) = 0.5 * config.g34 * std::polar(1.0, phi);
    h(0, 1) = std::conj(h(1, 0));
    h(0, 2) = std::conj(h(2, 0));
    h(1, 3) = std::conj(h(3, 1));
    h(2, 3) = std::conj(h(3, 2));
    return h;
}

struct JumpOp {
    double rate;        // gamma multiplying the Lindblad term
    DensityMatrix op;   // dimensionless operator |to><from|
};

inline DensityMatrix transition_op(int to, int from) {
    DensityMatrix m = DensityMatrix::Zero();
    m(to - 1, from - 1) = Complex(1, 0);
    return m;
}

// The four decay channels of each scheme.
inline std::vector<JumpOp> jump_operators(const SchemeConfig& config) {
    std::vector<JumpOp> jumps;
    jumps.reserve(4);
    if (config.kind == SchemeKind::Diamond) {
        jumps.push_back({config.gamma2, transition_op(1, 2)});
        jumps.push_back({config.gamma3, transition_op(1, 3)});
    } else {
        jumps.push_back({config.gamma2, transition_op(2, 1)});
        jumps.push_back({config.gamma3, transition_op(3, 1)});
    }
    jumps.push_back({config.gamma42, transition_op(2, 4)});
    jumps.push_back({config.gamma43, transition_op(3, 4)});
    return jumps;
}

// Column-stacking superoperator of rho -> -i[H, rho].
template <typename Derived>
GeneratorMatrix hamiltonian_superop(const Eigen::MatrixBase<Derived>& h) {
    const DensityMatrix hm = h;
    const DensityMatrix id = DensityMatrix::Identity();
    const Complex mi(0, -1);
    return mi * (Eigen::kroneckerProduct(id, hm) -
                 Eigen::kroneckerProduct(hm.transpose(), id))
                    .eval();
}

// Column-stacking superoperator of the Lindblad dissipator
// rho -> sum_j gamma_j (L rho L^dag - {L^dag L, rho}/2).
inline GeneratorMatrix dissipator_superop(const std::vector<JumpOp>& jumps) {
    GeneratorMatrix d = GeneratorMatrix::Zero();
    const DensityMatrix id = DensityMatrix::Identity();
    for (const auto& j : jumps) {
        if (j.rate == 0.0) continue;
        const DensityMatrix ldl = j.op.adjoint() * j.op;
        d += j.rate * (Eigen::kroneckerProduct(j.op.conjugate(), j.op) -
                       0.5 * Eigen::kroneckerProduct(id, ldl) -
                       0.5 * Eigen::kroneckerProduct(ldl.transpose(), id))
                          .eval();
    }
    return d;
}

// Dissipative part of the generator for the scheme's decay channels.
inline GeneratorMatrix build_dissipator(const SchemeConfig& config) {
    return dissipator_superop(jump_operators(config));
}

// Full generator at loop phase phi; d/dt vec(rho) = assemble(config, phi) vec(rho).
inline GeneratorMatrix assemble(const SchemeConfig& config, double phi) {
    return hamiltonian_superop(build_hamiltonian(config, phi)) + build_dissipator(config);
}

inline GeneratorMatrix assemble_at(const SchemeConfig& config, double t, double z = 0.0) {
    return assemble(config, config.phase_at(t, z));
}

// Devectorized action of an assembled generator.
inline DensityMatrix apply(const GeneratorMatrix& gen, const DensityMatrix& rho) {
    return devectorize(SuperVector(gen * vectorize(rho)));
}

// Direct action of the generator on a density matrix, bypassing the 16x16
// form. Used by the integrator and as an independent cross-check of assemble.
inline DensityMatrix apply_generator(const SchemeConfig& config, const DensityMatrix& rho,
                                     double phi) {
    const DensityMatrix h = build_hamiltonian(config, phi);
    const Complex mi(0, -1);
    DensityMatrix out = mi * (h * rho - rho * h);
    for (const auto& j : jump_operators(config)) {
        if (j.rate == 0.0) continue;
        const DensityMatrix ldl = j.op.adjoint() * j.op;
        out += j.rate * (j.op * rho * j.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

}  // namespace loopbloch
