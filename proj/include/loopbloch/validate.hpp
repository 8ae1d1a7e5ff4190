// validate.hpp — oracle-equivalence battery: numeric engine against closed forms

#pragma once

#include <string>
#include <vector>

#include "loopbloch/analytic.hpp"
#include "loopbloch/core.hpp"
#include "loopbloch/generator.hpp"
#include "loopbloch/scheme.hpp"
#include "loopbloch/states.hpp"
#include "loopbloch/steady_state.hpp"
#include "loopbloch/sweep.hpp"

namespace loopbloch {

struct ValidateOptions {
    GridSpec omega_grid{0.2, 5.0, 8, false};
    GridSpec phi_grid{0.0, kTwoPi, 25, false};
    GridSpec alpha_grid{1e-3, 1e3, 13, true};
    // Added to every oracle rho11 prediction before comparing. Nonzero values
    // are a negative control proving the battery can fail.
    double perturb = 0.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double bound = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }
};

namespace detail {

// Largest absolute component difference, with the oracle's rho11 offset by
// the negative-control perturbation.
inline double oracle_gap(const BlochComponents& numeric, BlochComponents oracle,
                         double perturb) {
    oracle.rho11 += perturb;
    double err = 0.0;
    const auto a = numeric.values();
    const auto b = oracle.values();
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

}  // namespace detail

// Compare the numeric engine against every closed-form family and the
// structural generator identities. Pure function of the options.
inline ValidationReport run_validation(const ValidateOptions& opts = {}) {
    ValidationReport report;
    auto record = [&report](const std::string& name, double err, double bound) {
        report.checks.push_back({name, err <= bound, err, bound});
    };

    const std::vector<double> omegas = opts.omega_grid.points();
    const std::vector<double> phis = opts.phi_grid.points();
    const std::vector<double> alphas = opts.alpha_grid.points();

    // Closed forms at alpha = 1 against the solver, all 16 components.
    double err = 0.0;
    for (double Omega : omegas) {
        for (double phi : phis) {
            const auto ss = solve_steady_state(SymmetricParams{Omega, 1.0, phi}.expand(), phi);
            err = std::max(err, detail::oracle_gap(bloch_components(ss.rho, phi),
                                                   analytic_alpha1(Omega, phi).bloch,
                                                   opts.perturb));
        }
    }
    record("alpha=1 family vs solver", err, 1e-9);

    // Odd-pi family: closed form, and independence from gamma4.
    err = 0.0;
    double indep_err = 0.0;
    for (double Omega : omegas) {
        DensityMatrix first;
        const double test_alphas[] = {0.1, 1.0, 10.0};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto ss = solve_steady_state(
                SymmetricParams{Omega, test_alphas[i], kPi}.expand(), kPi);
            err = std::max(err, detail::oracle_gap(bloch_components(ss.rho, kPi),
                                                   analytic_phi_odd(Omega).bloch,
                                                   opts.perturb));
            if (i == 0) {
                first = ss.rho;
            } else {
                indep_err = std::max(indep_err, (ss.rho - first).cwiseAbs().maxCoeff());
            }
        }
    }
    record("odd-pi family vs solver", err, 1e-10);
    record("odd-pi family gamma4 independence", indep_err, 1e-10);

    // Even family across alpha at Omega = 2.
    err = 0.0;
    for (double alpha : alphas) {
        const auto ss = solve_steady_state(SymmetricParams{2.0, alpha, 0.0}.expand(), 0.0);
        err = std::max(err, detail::oracle_gap(bloch_components(ss.rho, 0.0),
                                               analytic_phi_even(2.0, alpha).bloch,
                                               opts.perturb));
    }
    record("even-phase family vs solver", err, 1e-9);

    // The families must agree with each other where they overlap.
    err = 0.0;
    for (double Omega : omegas) {
        err = std::max(err, detail::oracle_gap(analytic_alpha1(Omega, kPi).bloch,
                                               analytic_phi_odd(Omega).bloch, 0.0));
        err = std::max(err, detail::oracle_gap(analytic_alpha1(Omega, 0.0).bloch,
                                               analytic_phi_even(Omega, 1.0).bloch, 0.0));
    }
    record("cross-family consistency", err, 1e-12);

    // Transcription guard: each family's populations must sum to one.
    err = 0.0;
    for (double Omega : omegas) {
        for (double phi : phis) {
            err = std::max(err, std::abs(analytic_alpha1(Omega, phi).bloch.population_sum() +
                                         opts.perturb - 1.0));
        }
        err = std::max(err,
                       std::abs(analytic_phi_odd(Omega).bloch.population_sum() - 1.0));
        for (double alpha : alphas) {
            err = std::max(
                err, std::abs(analytic_phi_even(Omega, alpha).bloch.population_sum() - 1.0));
        }
    }
    record("oracle population sums", err, 1e-12);

    // Weak drive: the top-level population pattern follows the two-photon
    // interference probability.
    err = 0.0;
    {
        const double Omega = 0.05;
        const SchemeConfig weak = SymmetricParams{Omega, 1.0, 0.0}.expand();
        const double p0 = solve_steady_state(weak, 0.0).rho(3, 3).real();
        for (double phi : phis) {
            const double p = solve_steady_state(weak, phi).rho(3, 3).real();
            const double c = std::cos(phi / 2);
            err = std::max(err, std::abs(p / p0 - c * c));
            err = std::max(err, std::abs(two_photon_probability(weak, phi) /
                                             two_photon_probability(weak, 0.0) -
                                         c * c));
        }
    }
    record("weak-drive interference ratio", err, 1e-2);

    // Structural identities of the generator and the superposition basis.
    double trace_err = 0.0, herm_err = 0.0, action_err = 0.0, super_err = 0.0;
    for (double Omega : {omegas.front(), omegas.back()}) {
        for (double phi : {phis.front(), phis[phis.size() / 2], phis.back()}) {
            const SchemeConfig config = SymmetricParams{Omega, 1.0, phi}.expand();
            const GeneratorMatrix gen = assemble(config, phi);
            for (int j = 0; j < kSuperDim; ++j) {
                Complex acc = 0;
                for (int i = 0; i < kLevels; ++i) acc += gen(i * kLevels + i, j);
                trace_err = std::max(trace_err, std::abs(acc));
            }
            const auto ss = solve_steady_state(config, phi);
            herm_err = std::max(herm_err, hermiticity_defect(apply(gen, ss.rho)));
            action_err = std::max(
                action_err,
                (apply(gen, ss.rho) - apply_generator(config, ss.rho, phi)).cwiseAbs().maxCoeff());
            super_err = std::max(
                super_err,
                std::abs(u14_from_superpositions(ss.rho) - std::real(ss.rho(0, 3))));
            super_err = std::max(
                super_err,
                std::abs(u23_from_superpositions(ss.rho) - std::real(ss.rho(1, 2))));
        }
    }
    record("generator annihilates trace", trace_err, 1e-12);
    record("generator preserves hermiticity", herm_err, 1e-12);
    record("matrix form matches operator action", action_err, 1e-12);
    record("superposition identities", super_err, 1e-12);

    return report;
}

}  // namespace loopbloch
