#include "qhedge/mmm_transform.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qhedge {

MmmTransform::MmmTransform(const LevyModel& model)
    : model_(model), moments_(levy_moments(model)) {
    if (!(moments_.denom > 0.0)) {
        throw std::domain_error("MmmTransform: sigma^2 + Gamma must be positive");
    }
    c0_ = moments_.mu_S / moments_.denom;
    if (model_.has_jumps() && (c0_ > 0.0 || c0_ <= -1.0)) {
        std::ostringstream os;
        os << "MmmTransform: density factor of nu* not positive (mu_S/(sigma^2+Gamma) = "
           << c0_ << ", admissible (-1, 0] for unbounded jump support)";
        throw std::domain_error(os.str());
    }
    gstar1_ = exp_moment_star(complex(1.0)).real();
}

double MmmTransform::density_factor(double z) const {
    return 1.0 - c0_ * std::expm1(z);
}

Strip MmmTransform::pstar_strip() const {
    Strip s = exp_moment_strip(model_);
    if (model_.has_jumps() && c0_ != 0.0) s.hi -= 1.0;
    return s;
}

complex MmmTransform::exp_moment_star(complex a) const {
    if (c0_ == 0.0) return exp_moment(model_, a);
    const Strip s = pstar_strip();
    if (!s.contains(a.real())) {
        std::ostringstream os;
        os << "exp_moment_star: Re(a) = " << a.real() << " outside the admissible interval ("
           << s.lo << ", " << s.hi << ")";
        throw std::domain_error(os.str());
    }
    const complex g1 = exp_moment(model_, complex(1.0));
    return (1.0 + c0_) * exp_moment(model_, a) - c0_ * (exp_moment(model_, a + 1.0) - g1);
}

complex MmmTransform::char_exponent_Pstar(complex w) const {
    // Martingale drift imposed exactly: psi*(w) = sigma^2 (w^2 - w)/2
    //   + g*(w) - w g*(1), so psi*(0) and psi*(1) vanish identically.
    const double s2 = model_.sigma() * model_.sigma();
    return 0.5 * s2 * (w * w - w) + (exp_moment_star(w) - w * gstar1_);
}

complex MmmTransform::gamma_hat(complex w) const {
    const Strip s = gamma_hat_strip();
    if (!s.contains(w.real())) {
        std::ostringstream os;
        os << "gamma_hat: Re(w) = " << w.real() << " outside the admissible interval ("
           << s.lo << ", " << s.hi << ")";
        throw std::domain_error(os.str());
    }
    const complex g1 = exp_moment(model_, complex(1.0));
    return exp_moment(model_, w + 1.0) - exp_moment(model_, w) - g1;
}

Strip MmmTransform::gamma_hat_strip() const {
    Strip s = exp_moment_strip(model_);
    if (model_.has_jumps()) s.hi -= 1.0;
    return s;
}

} // namespace qhedge
