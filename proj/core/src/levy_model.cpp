#include "qhedge/levy_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qhedge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

[[noreturn]] void strip_error(const char* what, complex a, const Strip& s) {
    std::ostringstream os;
    os << what << ": Re(a) = " << a.real() << " outside the admissible interval ("
       << s.lo << ", " << s.hi << ")";
    throw std::domain_error(os.str());
}

} // namespace

VarianceGamma vg_from_subordinator(const VgSubordinator& s) {
    require_positive(s.kappa, "kappa");
    require_positive(s.delta, "delta");
    const double root = std::sqrt(s.m * s.m + 2.0 * s.delta * s.delta / s.kappa);
    VarianceGamma vg;
    vg.C = 1.0 / s.kappa;
    vg.G = (root + s.m) / (s.delta * s.delta);
    vg.M = (root - s.m) / (s.delta * s.delta);
    return vg;
}

VgSubordinator subordinator_from_vg(const VarianceGamma& vg) {
    require_positive(vg.C, "C");
    require_positive(vg.G, "G");
    require_positive(vg.M, "M");
    VgSubordinator s;
    s.kappa = 1.0 / vg.C;
    s.delta = std::sqrt(2.0 * vg.C / (vg.G * vg.M));
    s.m = vg.C * (vg.G - vg.M) / (vg.G * vg.M);
    return s;
}

double LevyModel::sigma() const {
    if (const auto* jd = std::get_if<JumpDiffusion>(&law)) return jd->sigma;
    if (const auto* pd = std::get_if<PureDiffusion>(&law)) return pd->sigma;
    return 0.0;
}

bool LevyModel::has_jumps() const {
    if (std::holds_alternative<VarianceGamma>(law)) return true;
    if (const auto* jd = std::get_if<JumpDiffusion>(&law)) return jd->jump_rate > 0.0;
    return false;
}

const char* LevyModel::variant_name() const {
    if (std::holds_alternative<VarianceGamma>(law)) return "variance_gamma";
    if (std::holds_alternative<JumpDiffusion>(law)) return "jump_diffusion";
    return "pure_diffusion";
}

LevyModel LevyModel::variance_gamma(double C, double G, double M, double S0, double T,
                                    std::optional<double> mu_log) {
    require_positive(C, "C");
    require_positive(G, "G");
    require_positive(M, "M");
    require_positive(S0, "S0");
    require_positive(T, "T");
    LevyModel m;
    m.law = VarianceGamma{C, G, M};
    m.S0 = S0;
    m.T = T;
    m.mu_log = mu_log ? *mu_log : default_mu_log(m);
    return m;
}

LevyModel LevyModel::jump_diffusion(double sigma, double jump_rate, double jump_mean,
                                    double jump_sd, double S0, double T,
                                    std::optional<double> mu_log) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (jump_rate < 0.0) throw std::invalid_argument("jump_rate must be >= 0");
    require_positive(jump_sd, "jump_sd");
    require_positive(S0, "S0");
    require_positive(T, "T");
    LevyModel m;
    m.law = JumpDiffusion{sigma, jump_rate, jump_mean, jump_sd};
    m.S0 = S0;
    m.T = T;
    m.mu_log = mu_log ? *mu_log : default_mu_log(m);
    return m;
}

LevyModel LevyModel::pure_diffusion(double sigma, double mu_log, double S0, double T) {
    require_positive(sigma, "sigma");
    require_positive(S0, "S0");
    require_positive(T, "T");
    LevyModel m;
    m.law = PureDiffusion{sigma};
    m.mu_log = mu_log;
    m.S0 = S0;
    m.T = T;
    return m;
}

Strip exp_moment_strip(const LevyModel& model) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        return Strip{-vg->G, vg->M};
    }
    return Strip{-kInf, kInf};
}

complex exp_moment(const LevyModel& model, complex a) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        const Strip s = exp_moment_strip(model);
        if (!s.contains(a.real())) strip_error("exp_moment", a, s);
        // Frullani in closed form: C log(MG / ((M-a)(G+a))). Both M-a and
        // G+a stay in the right half plane on the strip, so principal logs
        // give the analytic continuation.
        const double C = vg->C, G = vg->G, M = vg->M;
        return C * (std::log(complex(M)) - std::log(M - a) +
                    std::log(complex(G)) - std::log(G + a));
    }
    if (const auto* jd = std::get_if<JumpDiffusion>(&model.law)) {
        if (jd->jump_rate == 0.0) return complex(0.0);
        const complex mgf = std::exp(a * jd->jump_mean + 0.5 * a * a * jd->jump_sd * jd->jump_sd);
        return jd->jump_rate * (mgf - 1.0);
    }
    return complex(0.0);
}

double jump_mean(const LevyModel& model) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        return vg->C * (1.0 / vg->M - 1.0 / vg->G);
    }
    if (const auto* jd = std::get_if<JumpDiffusion>(&model.law)) {
        return jd->jump_rate * jd->jump_mean;
    }
    return 0.0;
}

double jump_second_moment(const LevyModel& model) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        return vg->C * (1.0 / (vg->M * vg->M) + 1.0 / (vg->G * vg->G));
    }
    if (const auto* jd = std::get_if<JumpDiffusion>(&model.law)) {
        return jd->jump_rate * (jd->jump_mean * jd->jump_mean + jd->jump_sd * jd->jump_sd);
    }
    return 0.0;
}

double jump_scale(const LevyModel& model) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        return std::max(1.0 / vg->G, 1.0 / vg->M);
    }
    if (const auto* jd = std::get_if<JumpDiffusion>(&model.law)) {
        return std::abs(jd->jump_mean) + jd->jump_sd;
    }
    return 0.0;
}

double default_mu_log(const LevyModel& model) {
    if (std::holds_alternative<PureDiffusion>(model.law)) return 0.0;
    return jump_mean(model);
}

LevyMoments levy_moments(const LevyModel& model) {
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        if (!(vg->M > 2.0)) {
            throw std::domain_error("levy_moments: Gamma diverges for VG with M <= 2");
        }
    }
    const double sigma = model.sigma();
    // mu^S = mu_log + sigma^2/2 + int (e^z - 1 - z) nu(dz)
    const double jump_drift = exp_moment(model, complex(1.0)).real() - jump_mean(model);
    LevyMoments m;
    m.mu_S = model.mu_log + (0.5 * sigma * sigma + jump_drift);
    // Gamma = g(2) - 2 g(1), same arithmetic path as gamma_hat(1)
    const complex g1 = exp_moment(model, complex(1.0));
    const complex g2 = exp_moment(model, complex(2.0));
    m.Gamma = (g2 - g1 - g1).real();
    m.denom = sigma * sigma + m.Gamma;
    return m;
}

complex char_exponent_P(const LevyModel& model, complex w) {
    const Strip s = exp_moment_strip(model);
    if (!s.contains(w.real())) strip_error("char_exponent_P", w, s);
    const double sigma = model.sigma();
    return model.mu_log * w + 0.5 * sigma * sigma * w * w +
           (exp_moment(model, w) - w * jump_mean(model));
}

ValidationReport validate(const LevyModel& model) {
    ValidationReport rep;
    const double sigma = model.sigma();

    // (a) price jump factor e^z - 1 > -1: structural for exponential models.

    // (d) fourth-moment integrability of (e^z - 1); for VG the positive tail
    // carries e^{4z} e^{-Mz}, so M > 4 is required.
    bool moments_ok = true;
    if (const auto* vg = std::get_if<VarianceGamma>(&model.law)) {
        if (!(vg->M > 4.0)) {
            rep.violations.push_back({"fourth_moment",
                                      "VG requires M > 4 for int (e^z-1)^4 nu(dz) < inf",
                                      vg->M});
            moments_ok = vg->M > 2.0; // Gamma itself still finite for M > 2
        }
    }

    if (!moments_ok) {
        rep.ok = false;
        return rep;
    }

    const LevyMoments m = levy_moments(model);

    // (b) sigma^2 + Gamma bounded away from zero
    if (!(m.denom > 0.0)) {
        rep.violations.push_back({"denominator_positive", "sigma^2 + Gamma must be > 0", m.denom});
    }

    // (c) sup_z lambda S (e^z - 1) < 1 - eps with lambda S = mu_S / denom.
    // For unbounded two-sided jump support the sup is +inf when c0 > 0 and
    // -c0 when c0 < 0, evaluated analytically from the tail behaviour.
    double bound_slack = 1.0; // 1 - sup_z lambda S gamma
    if (model.has_jumps() && m.denom > 0.0) {
        const double c0 = m.mu_S / m.denom;
        if (c0 > 0.0) {
            rep.violations.push_back(
                {"jump_drift_bound",
                 "mu_S > 0 with unbounded positive jumps makes sup lambda S (e^z-1) infinite", c0});
            bound_slack = -kInf;
        } else {
            bound_slack = 1.0 + c0; // sup over z < 0 tends to -c0
            if (!(bound_slack > 0.0)) {
                rep.violations.push_back(
                    {"jump_drift_bound", "needs mu_S/(sigma^2+Gamma) > -1", c0});
            }
        }
    }

    // (e) |alpha|, sigma^2, Gamma bounded: automatic for the shipped
    // time-homogeneous families.

    rep.ok = rep.violations.empty();
    if (rep.ok) {
        rep.epsilon = 0.5 * std::min(m.denom, bound_slack);
        if (!(*rep.epsilon > 0.0)) {
            rep.ok = false;
            rep.epsilon.reset();
        }
    }
    return rep;
}

} // namespace qhedge
