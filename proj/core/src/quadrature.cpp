#include "qhedge/quadrature.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace qhedge {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return adapt(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

double nu_integral(const LevyModel& model, const std::function<double(double)>& f,
                   double exp_growth, double tol) {
    if (!model.has_jumps()) return 0.0;

    double z_pos = 0.0, z_neg = 0.0;
    std::function<double(double)> density;
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        const double C = vg->C, G = vg->G, M = vg->M;
        const double pos_decay = M - exp_growth;
        if (!(pos_decay > 0.5)) {
            throw std::domain_error("nu_integral: integrand growth too close to the VG decay M");
        }
        z_pos = 45.0 / pos_decay;
        z_neg = 45.0 / G;
        density = [C, G, M](double z) {
            return z > 0.0 ? C * std::exp(-M * z) / z : C * std::exp(G * z) / (-z);
        };
    } else {
        const auto& jd = std::get<JumpDiffusion>(model.law);
        const double span = jd.jump_sd * (10.0 + exp_growth * jd.jump_sd);
        z_pos = jd.jump_mean + span;
        z_neg = -(jd.jump_mean - span);
        const double rate = jd.jump_rate, mu = jd.jump_mean, sd = jd.jump_sd;
        const double norm = rate / (sd * std::sqrt(2.0 * std::numbers::pi_v<double>));
        density = [norm, mu, sd](double z) {
            const double x = (z - mu) / sd;
            return norm * std::exp(-0.5 * x * x);
        };
    }

    // keep clear of the removable singularity at 0
    const double z0 = 1e-12;
    auto integrand = [&](double z) { return f(z) * density(z); };
    double total = 0.0;
    if (z_pos > z0) total += adaptive_simpson(integrand, z0, z_pos, tol);
    if (z_neg > z0) total += adaptive_simpson(integrand, -z_neg, -z0, tol);
    return total;
}

} // namespace qhedge
