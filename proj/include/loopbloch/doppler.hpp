// doppler.hpp — thermal averaging of steady states over a Gaussian detuning spread

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopbloch/core.hpp"
#include "loopbloch/parallel.hpp"
#include "loopbloch/scheme.hpp"
#include "loopbloch/steady_state.hpp"

namespace loopbloch {

// Gaussian spread of the single-photon detunings: a moving atom sees both
// intermediate levels shifted by the same delta ~ N(0, width^2) while the
// two-photon (top level) resonance condition is unaffected.
struct ThermalSpec {
    double width = 0.0;  // standard deviation of delta, same unit as the rates
    int nodes = 31;      // Gauss-Hermite node count; odd so delta = 0 is sampled
};

// Gauss-Hermite nodes and weights for weight function e^{-x^2}, computed by
// the Golub-Welsch eigenvalue method. Weights are normalized to sum to one,
// so sum_k w_k f(x_k) approximates E[f(X)] for X ~ N(0, 1/2).
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
    if (n < 3) throw std::invalid_argument("gauss_hermite: need at least 3 nodes");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = std::sqrt(k / 2.0);
        j(k, k - 1) = beta;
        j(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j);
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        x[static_cast<std::size_t>(k)] = eig.eigenvalues()(k);
        const double v0 = eig.eigenvectors()(0, k);
        w[static_cast<std::size_t>(k)] = v0 * v0;  // mu_0 cancels after normalization
    }
    return {std::move(x), std::move(w)};
}

struct DopplerResult {
    DensityMatrix rho = DensityMatrix::Zero();  // ensemble-averaged steady state
    double width = 0.0;
    int nodes = 0;
    bool all_unique = true;    // every node solve had a clean one-dimensional kernel
    double max_residual = 0.0; // worst per-node steady-state residual
};

// Average the steady state at loop phase phi over the thermal detuning
// distribution. width = 0 degenerates to a single resonant solve.
inline DopplerResult doppler_average(const SchemeConfig& config, double phi,
                                     const ThermalSpec& spec) {
    if (spec.width < 0 || !std::isfinite(spec.width)) {
        throw std::invalid_argument("doppler_average: width must be finite and nonnegative");
    }
    DopplerResult out;
    out.width = spec.width;

    if (spec.width == 0.0) {
        const auto ss = solve_steady_state(config, phi);
        out.rho = ss.rho;
        out.nodes = 1;
        out.all_unique = ss.unique;
        out.max_residual = ss.residual;
        return out;
    }

    if (spec.nodes % 2 == 0) {
        throw std::invalid_argument("doppler_average: node count must be odd");
    }
    const auto [x, w] = gauss_hermite(spec.nodes);
    out.nodes = spec.nodes;

    // Node solves are independent; the weighted reduction below always runs
    // in node order, so the result is identical for any worker count.
    struct NodeSolve {
        DensityMatrix rho = DensityMatrix::Zero();
        bool unique = true;
        double residual = 0.0;
    };
    const double root2 = std::sqrt(2.0);
    const auto solves = parallel_map(x.size(), [&](std::size_t k) {
        const double shift = root2 * spec.width * x[k];  // delta ~ N(0, width^2)
        SchemeConfig shifted = config;
        shifted.delta2 += shift;
        shifted.delta3 += shift;
        try {
            const auto ss = solve_steady_state(shifted, phi);
            return NodeSolve{ss.rho, ss.unique, ss.residual};
        } catch (const std::exception& e) {
            throw std::runtime_error("doppler_average: node at delta = " +
                                     std::to_string(shift) + " failed: " + e.what());
        }
    });

    DensityMatrix acc = DensityMatrix::Zero();
    for (std::size_t k = 0; k < solves.size(); ++k) {
        acc += w[k] * solves[k].rho;
        out.all_unique = out.all_unique && solves[k].unique;
        out.max_residual = std::max(out.max_residual, solves[k].residual);
    }
    acc = hermitized(acc);
    out.rho = acc / acc.trace().real();
    return out;
}

}  // namespace loopbloch
