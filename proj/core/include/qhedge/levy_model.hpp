#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qhedge {

using complex = std::complex<double>;

/// Variance gamma jump family: Levy density C e^{-M z}/z for z>0,
/// C e^{-G|z|}/|z| for z<0. No Brownian component.
struct VarianceGamma {
    double C = 0.0;
    double G = 0.0;
    double M = 0.0;
};

/// Compound Poisson jumps with normal sizes plus an optional Brownian part.
struct JumpDiffusion {
    double sigma = 0.0;
    double jump_rate = 0.0;
    double jump_mean = 0.0;
    double jump_sd = 0.0;
};

/// Pure Brownian exponential model (empty jump measure).
struct PureDiffusion {
    double sigma = 0.0;
};

/// Equivalent (kappa, m, delta) parametrisation of the variance gamma law:
/// time-changed Brownian motion m G_t + delta B_{G_t} with a gamma
/// subordinator of unit mean rate and variance rate kappa.
struct VgSubordinator {
    double kappa = 0.0;
    double m = 0.0;
    double delta = 0.0;
};

VarianceGamma vg_from_subordinator(const VgSubordinator& s);
VgSubordinator subordinator_from_vg(const VarianceGamma& vg);

/// Exponential Levy model of the spot: log(S_t/S_0) = mu_log t + sigma W_t
/// plus compensated jumps. mu_log is the expected log return per unit time.
struct LevyModel {
    std::variant<VarianceGamma, JumpDiffusion, PureDiffusion> law;
    double mu_log = 0.0;
    double S0 = 0.0;
    double T = 0.0;

    double sigma() const;
    bool has_jumps() const;
    const char* variant_name() const;

    // Named constructors. When mu_log is omitted for a jump model it
    // defaults to the raw jump-sum drift int z nu(dz), which makes the log
    // price the plain jump sum (for VG: the subordinated Brownian motion
    // itself, no extra drift).
    static LevyModel variance_gamma(double C, double G, double M, double S0, double T,
                                    std::optional<double> mu_log = std::nullopt);
    static LevyModel jump_diffusion(double sigma, double jump_rate, double jump_mean,
                                    double jump_sd, double S0, double T,
                                    std::optional<double> mu_log = std::nullopt);
    static LevyModel pure_diffusion(double sigma, double mu_log, double S0, double T);
};

/// Open strip of convergence { a : lo < Re(a) < hi } for the jump transforms.
struct Strip {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double re, double margin = 0.0) const {
        return re > lo + margin && re < hi - margin;
    }
};

/// Strip on which int (e^{a z} - 1) nu(dz) converges.
Strip exp_moment_strip(const LevyModel& model);

/// g(a) = int (e^{a z} - 1) nu(dz), closed form per variant.
/// Throws std::domain_error outside the strip.
complex exp_moment(const LevyModel& model, complex a);

double jump_mean(const LevyModel& model);            // int z nu(dz)
double jump_second_moment(const LevyModel& model);   // int z^2 nu(dz)
double jump_scale(const LevyModel& model);           // typical jump magnitude

/// Default mu_log used by the named constructors when none is given.
double default_mu_log(const LevyModel& model);

struct LevyMoments {
    double mu_S = 0.0;    // drift rate of dS/S
    double Gamma = 0.0;   // int (e^z - 1)^2 nu(dz)
    double denom = 0.0;   // sigma^2 + Gamma
};

/// Closed-form mu^S and Gamma. Throws std::domain_error when a needed
/// moment diverges (VG requires M > 2).
LevyMoments levy_moments(const LevyModel& model);

/// Cumulant exponent of log(S/S0) under the physical measure, normalised so
/// that E[(S_T/S_0)^w] = exp(T psi(w)). Throws outside the strip.
complex char_exponent_P(const LevyModel& model, complex w);

struct Violation {
    std::string check;
    std::string detail;
    double value = 0.0;
};

struct ValidationReport {
    bool ok = false;
    std::optional<double> epsilon;
    std::vector<Violation> violations;
};

/// Checks the standing model assumptions in the exponential Levy
/// specialisation: positivity of the price jumps (structural), a positive
/// lower bound on sigma^2 + Gamma, the drift/jump bound
/// sup_z lambda S (e^z - 1) < 1 - eps, fourth-moment integrability of the
/// price jumps, and boundedness of the coefficients. Never throws on a
/// well-typed model; failures are reported as named violations.
ValidationReport validate(const LevyModel& model);

} // namespace qhedge
