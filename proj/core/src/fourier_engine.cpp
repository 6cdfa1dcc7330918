#include "qhedge/fourier_engine.hpp"

#include "qhedge/fft.hpp"
#include "qhedge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qhedge {

namespace {

constexpr double kPi = std::numbers::pi;

// Carr-Madan Simpson weights: eta/3 * (3 + (-1)^{j+1}), halved start.
double simpson_weight(std::size_t j, double eta) {
    if (j == 0) return eta / 3.0;
    return (j % 2 == 1) ? 4.0 * eta / 3.0 : 2.0 * eta / 3.0;
}

} // namespace

struct FourierEngine::IntegrandRow {
    std::vector<complex> f; // damped kernel values at u_j = j eta
    double contour = 0.0;
    double tail_estimate = 0.0;
    bool converged = true;
};

FourierEngine::FourierEngine(const MmmTransform& tr, FourierGrid grid)
    : tr_(tr), grid_(grid), sigma_(tr.sigma()) {
    if (!(grid_.alpha > 1.0)) throw std::invalid_argument("FourierGrid: alpha must be > 1");
    if (!is_power_of_two(grid_.n)) throw std::invalid_argument("FourierGrid: n must be a power of two");
    if (!(grid_.eta > 0.0)) throw std::invalid_argument("FourierGrid: eta must be > 0");
    if (grid_.max_refine_doublings < 0) grid_.max_refine_doublings = 0;

    if (tr_.model().has_jumps()) {
        const double hi = std::min(tr_.pstar_strip().hi, tr_.gamma_hat_strip().hi);
        if (!(grid_.alpha + 1.0 < hi)) {
            std::ostringstream os;
            os << "FourierGrid: contour alpha = " << grid_.alpha
               << " violates analyticity, need alpha + 1 < " << hi;
            throw std::invalid_argument(os.str());
        }
    }

    psi_row_.resize(grid_.n);
    ghat_row_.resize(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const complex w(grid_.alpha, static_cast<double>(j) * grid_.eta);
        psi_row_[j] = tr_.char_exponent_Pstar(w);
        ghat_row_[j] = tr_.model().has_jumps() ? tr_.gamma_hat(w) : complex(0.0);
    }
    // put contour, cached only when admissible for this model
    if (tr_.pstar_strip().contains(-grid_.alpha)) {
        psi_put_row_.resize(grid_.n);
        for (std::size_t j = 0; j < grid_.n; ++j) {
            const complex w(-grid_.alpha, static_cast<double>(j) * grid_.eta);
            psi_put_row_[j] = tr_.char_exponent_Pstar(w);
        }
    }
}

complex FourierEngine::integrand_at(Kernel kernel, double tau, double contour,
                                    std::size_t j) const {
    const complex w(contour, static_cast<double>(j) * grid_.eta);
    complex psi, num(1.0, 0.0);
    if (kernel == Kernel::Put) {
        psi = (j < psi_put_row_.size()) ? psi_put_row_[j] : tr_.char_exponent_Pstar(w);
    } else {
        psi = (j < psi_row_.size()) ? psi_row_[j] : tr_.char_exponent_Pstar(w);
        if (kernel == Kernel::JumpTerm) {
            num = (j < ghat_row_.size()) ? ghat_row_[j] : tr_.gamma_hat(w);
        }
    }
    const complex denom = (kernel == Kernel::DiffusionTerm) ? (w - 1.0) : (w * (w - 1.0));
    return std::exp(tau * psi) * num / denom;
}

FourierEngine::IntegrandRow FourierEngine::build_integrand(Kernel kernel, double tau) const {
    IntegrandRow row;
    row.contour = (kernel == Kernel::Put) ? -grid_.alpha : grid_.alpha;
    if (kernel == Kernel::Put && psi_put_row_.empty()) {
        throw std::domain_error("put_value: contour -alpha outside the P* analyticity strip");
    }

    std::size_t n_eff = grid_.n;
    row.f.resize(n_eff);
    for (std::size_t j = 0; j < n_eff; ++j) row.f[j] = integrand_at(kernel, tau, row.contour, j);

    // tail control: extrapolate the integral beyond u_max from the decay of
    // the last two octave masses, doubling u_max until the estimate meets
    // the budget or the cap is hit
    auto octave_mass = [&](std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t j = lo; j < hi; ++j) m += std::abs(row.f[j]);
        return m * grid_.eta;
    };
    int doublings = 0;
    for (;;) {
        const double m_last = octave_mass(n_eff / 2, n_eff);
        const double m_prev = octave_mass(n_eff / 4, n_eff / 2);
        double rho = (m_prev > 0.0) ? std::min(m_last / m_prev, 0.97) : 0.0;
        row.tail_estimate = (m_last > 0.0) ? m_last * rho / (1.0 - rho) / kPi : 0.0;
        if (row.tail_estimate <= grid_.tail_tol || doublings >= grid_.max_refine_doublings) {
            row.converged = row.tail_estimate <= grid_.tail_tol;
            break;
        }
        row.f.resize(2 * n_eff);
        for (std::size_t j = n_eff; j < 2 * n_eff; ++j) {
            row.f[j] = integrand_at(kernel, tau, row.contour, j);
        }
        n_eff *= 2;
        ++doublings;
    }
    return row;
}

double FourierEngine::direct_value(Kernel kernel, double tau, double log_moneyness,
                                   std::size_t n_override) const {
    IntegrandRow row;
    if (n_override != 0) {
        // fixed-size evaluation (no tail refinement), for truncation checks
        row.contour = (kernel == Kernel::Put) ? -grid_.alpha : grid_.alpha;
        if (kernel == Kernel::Put && psi_put_row_.empty()) {
            throw std::domain_error("put_value: contour -alpha outside the P* analyticity strip");
        }
        row.f.resize(n_override);
        for (std::size_t j = 0; j < n_override; ++j) {
            row.f[j] = integrand_at(kernel, tau, row.contour, j);
        }
    } else {
        row = build_integrand(kernel, tau);
    }

    const double k = log_moneyness;
    complex sum(0.0, 0.0);
    for (std::size_t j = 0; j < row.f.size(); ++j) {
        const double u = static_cast<double>(j) * grid_.eta;
        sum += simpson_weight(j, grid_.eta) * std::exp(complex(0.0, -u * k)) * row.f[j];
    }
    return std::exp((1.0 - row.contour) * k) * sum.real() / kPi;
}

FourierEngine::StrikeRow FourierEngine::strike_row(Kernel kernel, double tau) const {
    IntegrandRow in = build_integrand(kernel, tau);
    const std::size_t n = in.f.size();
    const double dk = 2.0 * kPi / (static_cast<double>(n) * grid_.eta);

    std::vector<complex> a(n);
    for (std::size_t j = 0; j < n; ++j) {
        // e^{-i u_j k_0} with k_0 = -n dk / 2 collapses to (-1)^j
        const double s = (j % 2 == 0) ? 1.0 : -1.0;
        a[j] = in.f[j] * simpson_weight(j, grid_.eta) * s;
    }
    fft_inplace(a);

    StrikeRow out;
    out.dk = dk;
    out.n_effective = n;
    out.tail_estimate = in.tail_estimate;
    out.converged = in.converged;
    out.value.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double k = (static_cast<double>(m) - 0.5 * static_cast<double>(n)) * dk;
        out.value[m] = std::exp((1.0 - in.contour) * k) * a[m].real() / kPi;
    }
    return out;
}

double FourierEngine::interpolate(const StrikeRow& row, double log_moneyness) {
    const std::size_t n = row.value.size();
    const double x = log_moneyness / row.dk + 0.5 * static_cast<double>(n);
    if (!(x >= 1.0) || !(x <= static_cast<double>(n) - 2.0)) {
        throw std::out_of_range("strike outside the covered log-strike window");
    }
    std::size_t i1 = static_cast<std::size_t>(std::floor(x));
    if (i1 < 1) i1 = 1;
    if (i1 > n - 3) i1 = n - 3;
    const double t = x - static_cast<double>(i1);
    // 4-point Lagrange cubic on nodes i1-1 .. i1+2
    const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    return w0 * row.value[i1 - 1] + w1 * row.value[i1] + w2 * row.value[i1 + 1] +
           w3 * row.value[i1 + 2];
}

void FourierEngine::check_inputs(double spot, double tau, double strike) const {
    if (!(spot > 0.0)) throw std::invalid_argument("spot must be positive");
    if (strike < 0.0) throw std::invalid_argument("strike must be >= 0");
    const double T = tr_.model().T;
    if (tau < 0.0 || tau > T * (1.0 + 1e-12) + 1e-12) {
        throw std::invalid_argument("tau must lie in [0, T]");
    }
}

double FourierEngine::closed_form_linear(Kernel kernel, double spot) const {
    switch (kernel) {
        case Kernel::Price: return spot;
        case Kernel::DiffusionTerm: return spot; // caller multiplies by sigma
        case Kernel::JumpTerm: return spot * tr_.Gamma();
        case Kernel::Put: return 0.0;
    }
    return 0.0;
}

double FourierEngine::terminal_value(Kernel kernel, double spot, double strike) const {
    switch (kernel) {
        case Kernel::Price: return std::max(spot - strike, 0.0);
        case Kernel::DiffusionTerm: return spot > strike ? spot : 0.0;
        case Kernel::Put: return std::max(strike - spot, 0.0);
        case Kernel::JumpTerm: {
            if (!tr_.model().has_jumps()) return 0.0;
            const double base = std::max(spot - strike, 0.0);
            auto f = [spot, strike, base](double z) {
                const double shifted = std::max(spot * std::exp(z) - strike, 0.0);
                return (shifted - base) * std::expm1(z);
            };
            return nu_integral(tr_.model(), f, 2.0, 1e-11);
        }
    }
    return 0.0;
}

double FourierEngine::call_value(double spot, double tau, double strike) const {
    check_inputs(spot, tau, strike);
    if (strike == 0.0) return closed_form_linear(Kernel::Price, spot);
    if (tau == 0.0) return terminal_value(Kernel::Price, spot, strike);
    return spot * direct_value(Kernel::Price, tau, std::log(strike / spot));
}

double FourierEngine::put_value(double spot, double tau, double strike) const {
    check_inputs(spot, tau, strike);
    if (strike == 0.0) return 0.0;
    if (tau == 0.0) return terminal_value(Kernel::Put, spot, strike);
    return spot * direct_value(Kernel::Put, tau, std::log(strike / spot));
}

double FourierEngine::compute_I(double spot, double tau, double strike) const {
    check_inputs(spot, tau, strike);
    if (sigma_ == 0.0) return 0.0;
    if (strike == 0.0) return sigma_ * closed_form_linear(Kernel::DiffusionTerm, spot);
    if (tau == 0.0) return sigma_ * terminal_value(Kernel::DiffusionTerm, spot, strike);
    return sigma_ * spot * direct_value(Kernel::DiffusionTerm, tau, std::log(strike / spot));
}

double FourierEngine::compute_K(double spot, double tau, double strike) const {
    check_inputs(spot, tau, strike);
    if (!tr_.model().has_jumps()) return 0.0;
    if (strike == 0.0) return closed_form_linear(Kernel::JumpTerm, spot);
    if (tau == 0.0) return terminal_value(Kernel::JumpTerm, spot, strike);
    return spot * direct_value(Kernel::JumpTerm, tau, std::log(strike / spot));
}

std::vector<HIK> FourierEngine::batch_over_strikes(double spot, double tau,
                                                   std::span<const double> strikes) const {
    if (strikes.empty()) return {};
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        if (!(strikes[i] > 0.0)) throw std::invalid_argument("batch strikes must be positive");
        if (i > 0 && !(strikes[i] > strikes[i - 1])) {
            throw std::invalid_argument("batch strikes must be ascending");
        }
    }
    check_inputs(spot, tau, strikes.front());

    std::vector<HIK> out(strikes.size());
    if (strikes.size() == 1 || tau == 0.0) {
        for (std::size_t i = 0; i < strikes.size(); ++i) {
            out[i].H = call_value(spot, tau, strikes[i]);
            out[i].I = compute_I(spot, tau, strikes[i]);
            out[i].K = compute_K(spot, tau, strikes[i]);
        }
        return out;
    }

    const StrikeRow h_row = strike_row(Kernel::Price, tau);
    const StrikeRow k_row = tr_.model().has_jumps() ? strike_row(Kernel::JumpTerm, tau) : StrikeRow{};
    const StrikeRow i_row = (sigma_ > 0.0) ? strike_row(Kernel::DiffusionTerm, tau) : StrikeRow{};

    for (std::size_t i = 0; i < strikes.size(); ++i) {
        const double k = std::log(strikes[i] / spot);
        out[i].H = spot * interpolate(h_row, k);
        out[i].I = (sigma_ > 0.0) ? sigma_ * spot * interpolate(i_row, k) : 0.0;
        out[i].K = tr_.model().has_jumps() ? spot * interpolate(k_row, k) : 0.0;
    }
    return out;
}

double FourierEngine::truncation_residual(Kernel kernel, double spot, double tau,
                                          double strike) const {
    check_inputs(spot, tau, strike);
    if (strike == 0.0 || tau == 0.0) return 0.0;
    const double k = std::log(strike / spot);
    const double v1 = direct_value(kernel, tau, k, grid_.n);
    const double v2 = direct_value(kernel, tau, k, 2 * grid_.n);
    return std::abs(spot * (v2 - v1));
}

} // namespace qhedge
