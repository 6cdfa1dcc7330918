#pragma once

#include "qhedge/levy_model.hpp"

#include <cmath>
#include <functional>

namespace qhedge {

/// Adaptive Simpson on [a, b]. The integrand must be finite on the closed
/// interval. Used for the runtime Levy-measure integrals (terminal jump
/// term, path-dependent MC estimators); the test oracles use a separately
/// written Gauss-Kronrod integrator.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48);

/// int f(z) nu(dz) over both half lines. f(z)*nu(z) must stay bounded near
/// z = 0 (the 1/|z| VG singularity has to be cancelled by f, which holds
/// for all (e^z - 1)-type integrands used here). exp_growth bounds the
/// e^{a z} growth of f on the positive side so the truncation point can be
/// chosen safely.
double nu_integral(const LevyModel& model, const std::function<double(double)>& f,
                   double exp_growth = 2.0, double tol = 1e-10);

} // namespace qhedge
