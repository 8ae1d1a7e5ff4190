// scheme.hpp — four-level scheme description: rates, couplings, detunings, loop phase

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopbloch/core.hpp"

namespace loopbloch {

// Both schemes couple (1,2), (1,3), (2,4), (3,4) and close the loop
// 1 -> 2 -> 4 -> 3 -> 1. They differ only in which levels decay.
enum class SchemeKind {
    Diamond,       // |1> ground; |2>,|3> decay to |1>; |4> decays to |2>,|3>
    DoubleLambda,  // |2>,|3> ground; |1> decays to |2>,|3>; |4> decays to |2>,|3>
};

inline const char* to_string(SchemeKind kind) {
    return kind == SchemeKind::Diamond ? "diamond" : "double-lambda";
}

// Closed-loop phase phi(t, z) = delta_omega * t - delta_k * z + delta_chi,
// built from the mismatches of the four drive frequencies, wavevectors and
// initial phases around the loop.
struct PhaseLaw {
    double delta_omega = 0.0;
    double delta_k = 0.0;
    double delta_chi = 0.0;

    double at(double t, double z = 0.0) const { return delta_omega * t - delta_k * z + delta_chi; }

    bool is_static() const { return delta_omega == 0.0; }
};

// Per-field laser phases. Optional convenience: when given, delta_chi is the
// loop combination chi12 + chi24 - chi34 - chi13.
struct LaserPhases {
    double chi12 = 0.0, chi13 = 0.0, chi24 = 0.0, chi34 = 0.0;

    double loop_mismatch() const { return chi12 + chi24 - chi34 - chi13; }
};

struct Violation {
    std::string field;
    std::string message;
};

struct SteadyStateExistence {
    bool exists = true;
    std::string reason;  // empty when exists
};

struct NormalizedScheme;  // defined below

// Full parameter set. Rates and couplings are angular frequencies in a common
// unit; the engine only ever sees their ratios.
struct SchemeConfig {
    SchemeKind kind = SchemeKind::Diamond;

    // Decay rates of the two single-photon channels touching level 1.
    // Diamond: gamma2, gamma3 are the |2>->|1>, |3>->|1> rates.
    // Double-lambda: they are the |1>->|2>, |1>->|3> rates instead; the
    // branching total gamma2 + gamma3 plays the same role in both schemes.
    double gamma2 = 1.0;
    double gamma3 = 1.0;
    // Upper-level decays |4>->|2> and |4>->|3>, identical in both schemes.
    double gamma42 = 0.5;
    double gamma43 = 0.5;

    // Rabi couplings of the four drives (angular frequency, not half).
    double g12 = 1.0;
    double g13 = 1.0;
    double g24 = 1.0;
    double g34 = 1.0;

    // Rotating-frame detunings of the intermediate levels and the top level.
    double delta2 = 0.0;
    double delta3 = 0.0;
    double delta4 = 0.0;

    PhaseLaw phase;

    // Optional per-field phases. The generator consumes only the loop
    // combination in phase.delta_chi; when these are supplied, validate()
    // checks the two against each other. Mainly for gauge-invariance tests.
    std::optional<LaserPhases> laser_phases;

    double gamma4() const { return gamma42 + gamma43; }

    // alpha = gamma4 / (gamma2 + gamma3), the decay-rate ratio that controls
    // which closed-loop interference survives.
    double alpha() const {
        const double denom = gamma2 + gamma3;
        if (denom <= 0.0) {
            throw std::invalid_argument("alpha: gamma2 + gamma3 must be positive");
        }
        return gamma4() / denom;
    }

    double phase_at(double t, double z = 0.0) const { return phase.at(t, z); }

    // True when every drive is on resonance and the couplings and lower
    // decays are pairwise equal; the closed forms assume this.
    bool is_symmetric(double tol = 0.0) const {
        auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };
        return close(gamma2, gamma3) && close(gamma42, gamma43) && close(g12, g13) &&
               close(g12, g24) && close(g12, g34) && close(delta2, 0.0) && close(delta3, 0.0) &&
               close(delta4, 0.0);
    }

    std::vector<Violation> validate() const {
        std::vector<Violation> out;
        auto require_finite = [&out](const char* field, double v) {
            if (!std::isfinite(v)) out.push_back({field, "must be finite"});
        };
        auto require_rate = [&out, &require_finite](const char* field, double v) {
            require_finite(field, v);
            if (v < 0.0) out.push_back({field, "decay rate must be nonnegative"});
        };
        require_rate("gamma2", gamma2);
        require_rate("gamma3", gamma3);
        require_rate("gamma42", gamma42);
        require_rate("gamma43", gamma43);
        require_finite("g12", g12);
        require_finite("g13", g13);
        require_finite("g24", g24);
        require_finite("g34", g34);
        require_finite("delta2", delta2);
        require_finite("delta3", delta3);
        require_finite("delta4", delta4);
        require_finite("phase.delta_omega", phase.delta_omega);
        require_finite("phase.delta_k", phase.delta_k);
        require_finite("phase.delta_chi", phase.delta_chi);
        if (laser_phases) {
            require_finite("laser_phases.chi12", laser_phases->chi12);
            require_finite("laser_phases.chi13", laser_phases->chi13);
            require_finite("laser_phases.chi24", laser_phases->chi24);
            require_finite("laser_phases.chi34", laser_phases->chi34);
            const double mismatch = laser_phases->loop_mismatch() - phase.delta_chi;
            if (std::isfinite(mismatch) && std::abs(mismatch) > 1e-12) {
                out.push_back({"phase.delta_chi",
                               "phase mismatch: delta_chi differs from the loop combination "
                               "chi12 + chi24 - chi13 - chi34 by " +
                                   std::to_string(mismatch)});
            }
        }
        return out;
    }

    void validate_or_throw() const {
        const auto violations = validate();
        if (violations.empty()) return;
        std::string msg = "invalid scheme configuration:";
        for (const auto& v : violations) msg += "\n  " + v.field + ": " + v.message;
        throw std::invalid_argument(msg);
    }

    // A static loop phase is the only obstruction the engine knows about:
    // with delta_omega != 0 the rotating-frame generator is time-periodic and
    // the state orbits instead of settling.
    SteadyStateExistence steady_state_exists() const {
        if (!phase.is_static()) {
            return {false,
                    "loop phase drifts at delta_omega = " + std::to_string(phase.delta_omega) +
                        "; the multiphoton resonance condition delta_omega = 0 is violated"};
        }
        if (phase.delta_k != 0.0) {
            return {true, "steady state is z-dependent through the loop phase"};
        }
        return {true, {}};
    }

    NormalizedScheme normalized() const;
};

// Config rescaled so the largest decay rate is 1. Time quantities from the
// rescaled problem must be multiplied by 1/scale to return to input units.
struct NormalizedScheme {
    SchemeConfig config;
    double scale = 1.0;  // the rate everything was divided by
};

inline NormalizedScheme SchemeConfig::normalized() const {
    const double r = std::max({gamma2, gamma3, gamma42 + gamma43});
    if (r <= 0.0 || !std::isfinite(r)) return {*this, 1.0};
    SchemeConfig c = *this;
    c.gamma2 /= r;
    c.gamma3 /= r;
    c.gamma42 /= r;
    c.gamma43 /= r;
    c.g12 /= r;
    c.g13 /= r;
    c.g24 /= r;
    c.g34 /= r;
    c.delta2 /= r;
    c.delta3 /= r;
    c.delta4 /= r;
    c.phase.delta_omega /= r;
    // delta_k and delta_chi are not rates; they are untouched.
    return {c, r};
}

// The fully symmetric resonant diamond family: gamma2 = gamma3 = 1 sets the
// unit, gamma42 = gamma43 = alpha, every coupling is Omega, and the loop
// phase is the static value phi.
struct SymmetricParams {
    double Omega = 1.0;
    double alpha = 1.0;
    double phi = 0.0;
    SchemeKind kind = SchemeKind::Diamond;

    SchemeConfig expand() const {
        SchemeConfig c;
        c.kind = kind;
        c.gamma2 = c.gamma3 = 1.0;
        c.gamma42 = c.gamma43 = alpha;
        c.g12 = c.g13 = c.g24 = c.g34 = Omega;
        c.delta2 = c.delta3 = c.delta4 = 0.0;
        c.phase = PhaseLaw{0.0, 0.0, phi};
        return c;
    }
};

}  // namespace loopbloch
