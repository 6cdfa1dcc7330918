#pragma once

#include "qhedge/levy_model.hpp"

namespace qhedge {

/// Change of measure to the variance-optimal (= minimal) martingale measure
/// P*. The transformed jump measure nu* carries the density factor
/// 1 - c0 (e^z - 1) with c0 = mu_S / (sigma^2 + Gamma); the exponent under
/// P* is pinned to the martingale condition psi*(1) = 0 by construction.
class MmmTransform {
public:
    explicit MmmTransform(const LevyModel& model);

    const LevyModel& model() const { return model_; }
    double mu_S() const { return moments_.mu_S; }
    double Gamma() const { return moments_.Gamma; }
    double denom() const { return moments_.denom; }
    double c0() const { return c0_; }
    double sigma() const { return model_.sigma(); }

    /// Density factor of nu* relative to nu: z -> 1 - c0 (e^z - 1).
    double density_factor(double z) const;

    /// Strip of Re(w) on which psi* (and the P* jump transform) is defined.
    Strip pstar_strip() const;

    /// g*(a) = int (e^{a z} - 1) nu*(dz), closed form from shifted-decay
    /// building blocks: (1+c0) g(a) - c0 (g(a+1) - g(1)).
    complex exp_moment_star(complex a) const;

    /// Exponent under P*: E_{P*}[(S_T/S_t)^w | F_t] = exp((T-t) psi*(w)).
    /// psi*(0) = psi*(1) = 0 identically.
    complex char_exponent_Pstar(complex w) const;

    /// Gamma_hat(w) = int (e^{w z} - 1)(e^z - 1) nu(dz) = g(w+1) - g(w) - g(1).
    /// This is the jump-moment transform folding the z-integral of the
    /// correction term K_t into a single Fourier kernel.
    complex gamma_hat(complex w) const;
    Strip gamma_hat_strip() const;

    /// Cached int (e^z - 1) nu*(dz); zero for sigma = 0 models.
    double exp_moment_star_one() const { return gstar1_; }

private:
    LevyModel model_;
    LevyMoments moments_;
    double c0_ = 0.0;
    double gstar1_ = 0.0; // int (e^z - 1) nu*(dz)
};

} // namespace qhedge
