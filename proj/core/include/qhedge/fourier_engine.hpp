#pragma once

#include "qhedge/mmm_transform.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qhedge {

/// Damping and discretisation of the inverse transforms. u_max = n * eta is
/// the truncation bound of the frequency integral; the log-strike spacing of
/// a batch is 2 pi / (n eta).
struct FourierGrid {
    double alpha = 1.5;              // damping exponent, > 1
    std::size_t n = std::size_t{1} << 14; // power of two
    double eta = 0.05;               // frequency spacing
    double tail_tol = 1e-7;          // absolute tail budget per unit-spot row
    int max_refine_doublings = 6;    // cap on automatic u_max extension

    double u_max() const { return static_cast<double>(n) * eta; }
};

struct ClaimSpec {
    enum class Kind { Call };
    Kind kind = Kind::Call;
    double strike = 0.0;  // strike 0 denotes the linear claim H = S_T
    double maturity = 0.0;
};

/// Per-strike conditional-expectation values: H (claim price), I (diffusion
/// term) and K (jump term) under P*.
struct HIK {
    double H = 0.0;
    double I = 0.0;
    double K = 0.0;
};

/// Evaluates the conditional-expectation processes of a call claim by damped
/// inverse transforms along w = alpha + iu under P*, batched over strikes
/// with an FFT. All evaluation is done at unit spot and rescaled, which
/// makes the values exactly scale covariant.
class FourierEngine {
public:
    enum class Kernel { Price, DiffusionTerm, JumpTerm, Put };

    FourierEngine(const MmmTransform& tr, FourierGrid grid);

    /// E_{P*}[(S_T - K)^+ | S_t = S]; exact payoff at tau = 0.
    double call_value(double spot, double tau, double strike) const;
    /// E_{P*}[(K - S_T)^+ | S_t = S] via the put contour Re(w) = -alpha.
    double put_value(double spot, double tau, double strike) const;
    /// sigma E_{P*}[S_T 1{S_T > K} | S_{t-} = S]; exactly 0 when sigma = 0.
    double compute_I(double spot, double tau, double strike) const;
    /// K_t = int J_{t,z} (e^z - 1) nu(dz) as a single transform with the
    /// Gamma_hat(w) kernel factor.
    double compute_K(double spot, double tau, double strike) const;

    /// One FFT pass per kernel over a uniform log-strike grid; requested
    /// strikes are filled by 4-point cubic interpolation. A singleton batch
    /// delegates to the single-strike operations.
    std::vector<HIK> batch_over_strikes(double spot, double tau,
                                        std::span<const double> strikes) const;

    /// Unit-spot values on the centred log-strike grid k_m = (m - n/2) dk.
    /// value[m] is the kernel value at strike/spot = e^{k_m}.
    struct StrikeRow {
        double dk = 0.0;
        std::vector<double> value;
        std::size_t n_effective = 0; // grid size after tail refinement
        double tail_estimate = 0.0;
        bool converged = true;       // tail met tail_tol within the refinement cap
        double log_moneyness(std::size_t m) const {
            return (static_cast<double>(m) - 0.5 * static_cast<double>(value.size())) * dk;
        }
        double min_log_moneyness() const { return log_moneyness(2); }
        double max_log_moneyness() const { return log_moneyness(value.size() - 3); }
    };
    StrikeRow strike_row(Kernel kernel, double tau) const;
    static double interpolate(const StrikeRow& row, double log_moneyness);

    /// Change of the single-strike value when u_max is doubled; a cheap
    /// a-posteriori truncation check.
    double truncation_residual(Kernel kernel, double spot, double tau, double strike) const;

    const FourierGrid& grid() const { return grid_; }
    const MmmTransform& transform() const { return tr_; }

private:
    struct IntegrandRow;
    complex integrand_at(Kernel kernel, double tau, double contour, std::size_t j) const;
    IntegrandRow build_integrand(Kernel kernel, double tau) const;
    double direct_value(Kernel kernel, double tau, double log_moneyness,
                        std::size_t n_override = 0) const;
    double closed_form_linear(Kernel kernel, double spot) const;
    double terminal_value(Kernel kernel, double spot, double strike) const;
    void check_inputs(double spot, double tau, double strike) const;

    const MmmTransform& tr_;
    FourierGrid grid_;
    double sigma_ = 0.0;
    // cached rows at the base grid: psi*(alpha + i j eta) and Gamma_hat there
    std::vector<complex> psi_row_;
    std::vector<complex> ghat_row_;
    std::vector<complex> psi_put_row_;
};

} // namespace qhedge
