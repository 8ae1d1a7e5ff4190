// steady_state.hpp — kernel solve of the static generator with certification

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include "loopbloch/core.hpp"
#include "loopbloch/generator.hpp"
#include "loopbloch/scheme.hpp"

namespace loopbloch {

// Thrown when no steady state exists (drifting loop phase).
class NoSteadyStateError : public std::runtime_error {
  public:
    explicit NoSteadyStateError(const std::string& reason)
        : std::runtime_error("no steady state: " + reason) {}
};

// Relative singular-value gap below which the kernel is treated as degenerate.
inline constexpr double kKernelGapThreshold = 1e-8;
// Eigenvalues of the solved state in [floor, 0) are clipped; anything more
// negative is an error.
inline constexpr double kEigenvalueClipFloor = -1e-9;

struct SteadyStateResult {
    DensityMatrix rho = DensityMatrix::Zero();
    double residual = 0.0;        // ||G vec(rho)||_inf, G with rates scaled to max 1
    double kernel_gap = 0.0;      // sigma_14 / sigma_0 of the scaled generator
    double min_eigenvalue = 0.0;  // smallest eigenvalue before any clipping
    bool unique = true;           // kernel gap above kKernelGapThreshold
    bool clipped = false;         // tiny negative eigenvalues were clipped
};

namespace detail {

// Row functional extracting tr(rho) from vec(rho).
inline Eigen::RowVector<Complex, kSuperDim> trace_row() {
    Eigen::RowVector<Complex, kSuperDim> row = Eigen::RowVector<Complex, kSuperDim>::Zero();
    for (int i = 0; i < kLevels; ++i) row(i * kLevels + i) = Complex(1, 0);
    return row;
}

// Unique-kernel path: replace one row of G with the trace constraint and
// solve A x = e_row, then one step of iterative refinement. Falls back to
// the SVD kernel when the bordered system is ill-conditioned.
inline SuperVector solve_bordered(const GeneratorMatrix& gen, bool& ill_conditioned) {
    GeneratorMatrix a = gen;
    constexpr int row = 0;
    a.row(row) = trace_row();
    SuperVector b = SuperVector::Zero();
    b(row) = Complex(1, 0);

    const Eigen::JacobiSVD<GeneratorMatrix> svd_a(a);
    const auto& sv = svd_a.singularValues();
    ill_conditioned = !(sv(kSuperDim - 1) > sv(0) * 1e-12);
    if (ill_conditioned) return SuperVector::Zero();

    Eigen::FullPivLU<GeneratorMatrix> lu(a);
    SuperVector x = lu.solve(b);
    x += lu.solve(b - a * x);
    return x;
}

// Degenerate path: minimal-norm trace-one element of the numerical kernel.
inline SuperVector solve_from_kernel(const Eigen::JacobiSVD<GeneratorMatrix>& svd) {
    const auto& sv = svd.singularValues();
    const double cutoff = sv(0) * kKernelGapThreshold;
    int first = kSuperDim - 1;
    while (first > 0 && sv(first - 1) <= cutoff) --first;

    const auto kernel = svd.matrixV().rightCols(kSuperDim - first);
    const Eigen::RowVectorXcd traces = trace_row() * kernel;
    const double norm2 = traces.squaredNorm();
    if (norm2 <= 1e-24) {
        throw std::runtime_error("steady-state kernel is traceless; cannot normalize");
    }
    return kernel * traces.adjoint() / norm2;
}

}  // namespace detail

// Solve G vec(rho) = 0, tr(rho) = 1 for the static generator at loop phase
// phi. Rates are rescaled so the largest decay rate is 1 before factoring;
// residual and kernel_gap refer to that scaled generator. A degenerate
// kernel (no decay at all, for instance) is reported via unique = false, not
// an exception; the returned state is then the minimal-norm representative.
inline SteadyStateResult solve_steady_state(const SchemeConfig& config, double phi) {
    config.validate_or_throw();
    const auto existence = config.steady_state_exists();
    if (!existence.exists) throw NoSteadyStateError(existence.reason);

    const GeneratorMatrix gen = assemble(config.normalized().config, phi);

    Eigen::JacobiSVD<GeneratorMatrix> svd(gen, Eigen::ComputeFullV);
    SteadyStateResult result;
    result.kernel_gap = svd.singularValues()(kSuperDim - 2) / svd.singularValues()(0);
    result.unique = result.kernel_gap > kKernelGapThreshold;

    SuperVector x;
    if (result.unique) {
        bool ill_conditioned = false;
        x = detail::solve_bordered(gen, ill_conditioned);
        if (ill_conditioned) x = detail::solve_from_kernel(svd);
    } else {
        x = detail::solve_from_kernel(svd);
    }
    result.residual = (gen * x).cwiseAbs().maxCoeff();

    DensityMatrix rho = hermitized(devectorize(x));
    rho /= rho.trace().real();

    Eigen::SelfAdjointEigenSolver<DensityMatrix> eig(rho);
    result.min_eigenvalue = eig.eigenvalues().minCoeff();
    if (result.min_eigenvalue < kEigenvalueClipFloor) {
        throw std::runtime_error("steady state has negative eigenvalue " +
                                 std::to_string(result.min_eigenvalue));
    }
    if (result.min_eigenvalue < 0.0) {
        const Eigen::Vector4d clipped = eig.eigenvalues().cwiseMax(0.0);
        rho = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
        rho /= rho.trace().real();
        result.clipped = true;
    }
    result.rho = rho;
    return result;
}

// Uses the configured static phase phi(0, 0).
inline SteadyStateResult solve_steady_state(const SchemeConfig& config) {
    return solve_steady_state(config, config.phase_at(0.0));
}

// One-line physicality report for a solver result.
inline std::string certify(const SteadyStateResult& result) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%s, %s (residual %.3e, kernel gap %.3e, min eigenvalue %.3e%s)",
                  result.unique ? "unique" : "degenerate kernel",
                  result.min_eigenvalue >= kEigenvalueClipFloor ? "physical" : "unphysical",
                  result.residual, result.kernel_gap, result.min_eigenvalue,
                  result.clipped ? ", clipped" : "");
    return buf;
}

struct SteadyStateCertificate {
    double residual = 0.0;  // ||G vec(rho)||_inf on the scaled generator
    double trace_error = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;
};

// Independent recomputation of the physicality numbers for an arbitrary
// candidate state; used by the validation battery.
inline SteadyStateCertificate recertify(const SchemeConfig& config, const DensityMatrix& rho,
                                        double phi) {
    SteadyStateCertificate cert;
    const GeneratorMatrix gen = assemble(config.normalized().config, phi);
    cert.residual = (gen * vectorize(rho)).cwiseAbs().maxCoeff();
    cert.trace_error = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    cert.hermiticity = hermiticity_defect(rho);
    Eigen::SelfAdjointEigenSolver<DensityMatrix> eig(hermitized(rho));
    cert.min_eigenvalue = eig.eigenvalues().minCoeff();
    return cert;
}

}  // namespace loopbloch
