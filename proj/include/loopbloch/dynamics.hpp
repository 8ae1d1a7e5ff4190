// dynamics.hpp — adaptive Dormand–Prince integration of the master equation

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "loopbloch/core.hpp"
#include "loopbloch/generator.hpp"
#include "loopbloch/scheme.hpp"

namespace loopbloch {

struct EvolveOptions {
    double t0 = 0.0;
    double t1 = 10.0;
    int samples = 201;                 // evenly spaced sample count incl. endpoints
    std::vector<double> sample_times;  // overrides samples when nonempty (sorted)
    double tol = 1e-10;                // absolute per-component error tolerance
    double z = 0.0;                    // position entering the phase law
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> phases;        // loop phase at each sample
    double max_trace_drift = 0.0;      // worst |tr(rho) - 1| seen at accepted steps
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;

    std::size_t size() const { return times.size(); }
    const DensityMatrix& back() const { return states.back(); }
};

// Max-abs entrywise distance; the metric used for convergence statements.
template <typename DerivedA, typename DerivedB>
double distance_to(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

namespace detail {

// Dormand–Prince 5(4) tableau.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
};

// Right-hand side d/dt vec(rho). When the phase law is static the 16x16
// generator is assembled once; otherwise it is re-evaluated per stage.
class MasterRhs {
  public:
    MasterRhs(const SchemeConfig& config, double z) : config_(config), z_(z) {
        if (config.phase.is_static()) {
            static_gen_ = assemble(config, config.phase_at(0.0, z));
            is_static_ = true;
        }
    }

    SuperVector operator()(double t, const SuperVector& y) const {
        if (is_static_) return static_gen_ * y;
        return vectorize(
            apply_generator(config_, devectorize(y), config_.phase_at(t, z_)));
    }

  private:
    SchemeConfig config_;
    double z_;
    bool is_static_ = false;
    GeneratorMatrix static_gen_ = GeneratorMatrix::Zero();
};

// Largest angular frequency in the problem, for the initial step guess.
inline double fastest_rate(const SchemeConfig& c) {
    return std::max({c.gamma2, c.gamma3, c.gamma42, c.gamma43, std::abs(c.g12), std::abs(c.g13),
                     std::abs(c.g24), std::abs(c.g34), std::abs(c.delta2), std::abs(c.delta3),
                     std::abs(c.delta4), std::abs(c.phase.delta_omega)});
}

}  // namespace detail

// Integrate d rho/dt = L(phi(t, z)) rho from rho0, sampling at the requested
// times. The trace is monitored, never re-imposed: max_trace_drift is an
// honest error indicator.
inline Trajectory evolve(const DensityMatrix& rho0, const SchemeConfig& config,
                         const EvolveOptions& opts) {
    config.validate_or_throw();
    if (!(opts.t1 >= opts.t0)) throw std::invalid_argument("evolve: t1 must be >= t0");
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4)) {
        throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-4]");
    }
    if (std::abs(rho0.trace().real() - 1.0) > 1e-6 || hermiticity_defect(rho0) > 1e-6) {
        throw std::invalid_argument("evolve: rho0 must be Hermitian with unit trace");
    }

    std::vector<double> samples = opts.sample_times;
    if (samples.empty()) {
        const int n = std::max(2, opts.samples);
        samples.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            samples.push_back(opts.t0 + (opts.t1 - opts.t0) * i / (n - 1));
        }
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const bool ordered = i == 0 ? samples[i] >= opts.t0 : samples[i] >= samples[i - 1];
        if (!ordered || samples[i] > opts.t1 + 1e-12) {
            throw std::invalid_argument("evolve: sample times must be sorted within [t0, t1]");
        }
    }

    const detail::MasterRhs rhs(config, opts.z);
    using T = detail::Dopri5;

    Trajectory traj;
    traj.times.reserve(samples.size());
    traj.states.reserve(samples.size());
    traj.phases.reserve(samples.size());

    double t = opts.t0;
    SuperVector y = vectorize(rho0);
    SuperVector k1 = rhs(t, y);

    auto record = [&](double ts, const SuperVector& ys) {
        traj.times.push_back(ts);
        traj.states.push_back(hermitized(devectorize(ys)));
        traj.phases.push_back(config.phase_at(ts, opts.z));
    };

    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] <= opts.t0) {
        record(samples[next_sample], y);
        ++next_sample;
    }

    const double rate = std::max(detail::fastest_rate(config), 1e-12);
    double dt = std::min(opts.t1 - opts.t0, 0.1 / rate);
    if (dt <= 0.0) dt = 1e-3;

    while (next_sample < samples.size()) {
        const double target = samples[next_sample];
        if (target - t < 1e-14 * std::max(1.0, std::abs(t))) {
            record(target, y);
            ++next_sample;
            continue;
        }
        // dt is the controller's preferred step; h is the trial step, shortened
        // to land exactly on the next sample time when it would overshoot.
        const double h = std::min(dt, target - t);
        const bool landing = h >= target - t;

        const SuperVector k2 = rhs(t + T::c2 * h, y + h * (T::a21 * k1));
        const SuperVector k3 = rhs(t + T::c3 * h, y + h * (T::a31 * k1 + T::a32 * k2));
        const SuperVector k4 =
            rhs(t + T::c4 * h, y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
        const SuperVector k5 =
            rhs(t + T::c5 * h, y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
        const SuperVector k6 =
            rhs(t + h,
                y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
        const SuperVector y5 =
            y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
        const SuperVector k7 = rhs(t + h, y5);  // first-same-as-last stage

        const double err =
            (h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7))
                .cwiseAbs()
                .maxCoeff();
        const double scale =
            std::clamp(err > 0 ? 0.9 * std::pow(opts.tol / err, 0.2) : 5.0, 0.2, 5.0);

        if (err <= opts.tol) {
            t = landing ? target : t + h;
            y = y5;
            k1 = k7;
            ++traj.steps_accepted;
            const Complex tr = devectorize(y).trace();
            traj.max_trace_drift = std::max(traj.max_trace_drift,
                                            std::abs(tr.real() - 1.0) + std::abs(tr.imag()));
            if (landing) {
                record(target, y);
                ++next_sample;
            }
            // A shortened accepted step leaves the preferred step untouched.
            if (h == dt) dt *= scale;
        } else {
            ++traj.steps_rejected;
            dt = h * scale;
        }
        if (dt < 1e-15 * std::max(1.0, std::abs(t))) {
            throw std::runtime_error("evolve: step size underflow at t = " + std::to_string(t));
        }
    }
    return traj;
}

}  // namespace loopbloch
