#include "nomasim/analysis.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nomasim::analysis {

namespace {

constexpr double ln2 = std::numbers::ln2;
constexpr double euler_gamma = specfun::euler_gamma;

// E(y) = -e^y Ei(-y) > 0 for y > 0; the scaled exponential integral all the
// rate formulas are built from.
double scaled_e(double y) { return -specfun::exp_integral_ei_scaled(-y); }

// Clamp a numerically evaluated probability into [0, 1]; anything further
// out than roundoff indicates a formula bug.
double clamp_probability(double p) {
    assert(p > -1e-12 && p < 1.0 + 1e-12);
    return std::min(1.0, std::max(0.0, p));
}

void check_user_index(int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("analysis: user index must be 1 or 2");
}

}  // namespace

PairScenario::PairScenario(double d1, double d2, const channel::LinkConfig& link)
    : d1_(d1), d2_(d2), link_(link) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::invalid_argument("PairScenario: distances must be positive");
    if (d1 > d2) throw std::invalid_argument("PairScenario: requires d1 <= d2");
    if (!(link.alpha > 0.0)) throw std::invalid_argument("PairScenario: path-loss exponent must be positive");
    if (link.sigma_ob2 < 0.0) throw std::invalid_argument("PairScenario: sigma_ob2 must be >= 0");
    if (link.target_rate_bpcu < 0.0) throw std::invalid_argument("PairScenario: target rate must be >= 0");
    lambda1_ = channel::path_loss_rate(d1, link.alpha);
    lambda2_ = channel::path_loss_rate(d2, link.alpha);
}

DownlinkPower::DownlinkPower(double rho_, double beta_) : rho(rho_), beta(beta_) {
    if (!(rho > 0.0)) throw std::invalid_argument("DownlinkPower: requires rho > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("DownlinkPower: requires 0 < beta < 1");
}

UplinkPower::UplinkPower(double rho1_, double rho2_, double omega1_, double omega2_)
    : rho1(rho1_), rho2(rho2_), omega1(omega1_), omega2(omega2_) {
    if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw std::invalid_argument("UplinkPower: requires rho_k > 0");
    if (rho1 > omega1 || rho2 > omega2) throw std::invalid_argument("UplinkPower: requires rho_k <= omega_k");
}

double phi(int k, double phiarg, const PairScenario& sc) {
    check_user_index(k);
    if (!(phiarg > 0.0)) throw std::invalid_argument("phi: requires phiarg > 0");
    return sc.lambda_of(k) / (sc.lambda() * ln2) * scaled_e(sc.lambda() / phiarg);
}

double phi_prime(int k, double phiarg, const PairScenario& sc) {
    check_user_index(k);
    if (!(phiarg > 0.0)) throw std::invalid_argument("phi_prime: requires phiarg > 0");
    return scaled_e(sc.lambda_of(k) / phiarg) / ln2;
}

double phi_high_snr(int k, double phiarg, const PairScenario& sc) {
    check_user_index(k);
    if (!(phiarg > 0.0)) throw std::invalid_argument("phi_high_snr: requires phiarg > 0");
    return -sc.lambda_of(k) / (sc.lambda() * ln2) * (euler_gamma + std::log(sc.lambda() / phiarg));
}

double phi_prime_high_snr(int k, double phiarg, const PairScenario& sc) {
    check_user_index(k);
    if (!(phiarg > 0.0)) throw std::invalid_argument("phi_prime_high_snr: requires phiarg > 0");
    return -(euler_gamma + std::log(sc.lambda_of(k) / phiarg)) / ln2;
}

double decoding_error_prob_fading_free(const PairScenario& sc, const specfun::SeriesTolerance& tol) {
    if (sc.link().sigma_ob2 == 0.0) return sc.d1() < sc.d2() ? 0.0 : 0.5;
    if (sc.d1() == sc.d2()) return 0.5;

    // Mixture weights use the squared distances as noncentralities, not the
    // path-loss rates.
    const double beta = 1.0 / (2.0 * sc.link().sigma_ob2);
    const specfun::PoissonWindow w1 = specfun::poisson_window(beta * sc.d1() * sc.d1(), tol);
    const specfun::PoissonWindow w2 = specfun::poisson_window(beta * sc.d2() * sc.d2(), tol);

    double pe1 = 0.0;
    for (int i = w1.lo; i <= w1.hi; ++i) {
        double inner = 0.0;
        for (int j = w2.lo; j <= w2.hi; ++j) {
            inner += w2.weight(j) * specfun::gamma_order_prob(i, j, tol);
        }
        pe1 += w1.weight(i) * inner;
    }
    return clamp_probability(pe1);
}

double decoding_error_prob_rayleigh(const PairScenario& sc, const specfun::SeriesTolerance& tol) {
    const double pe1 = decoding_error_prob_fading_free(sc, tol);
    const double d = sc.gain_ratio();
    return clamp_probability((d - 1.0) / (d + 1.0) * pe1 + 1.0 / (d + 1.0));
}

double downlink_avg_sum_rate(const PairScenario& sc, const DownlinkPower& pw, double pe1) {
    const double weak_arg = pw.rho * (1.0 - pw.beta);
    return (1.0 - pe1) * phi_prime(1, weak_arg, sc) + pe1 * phi_prime(2, weak_arg, sc) +
           phi(1, pw.rho, sc) + phi(2, pw.rho, sc) - phi(1, weak_arg, sc) - phi(2, weak_arg, sc);
}

double downlink_avg_sum_rate(const PairScenario& sc, const DownlinkPower& pw,
                             const specfun::SeriesTolerance& tol) {
    return downlink_avg_sum_rate(sc, pw, decoding_error_prob_fading_free(sc, tol));
}

double downlink_sum_rate_high_snr(const PairScenario& sc, const DownlinkPower& pw, double pe1) {
    return std::log2(pw.rho / sc.lambda1()) - pe1 * std::log2(sc.lambda2() / sc.lambda1()) -
           euler_gamma / ln2;
}

double downlink_cop(const PairScenario& sc, const DownlinkPower& pw, double pe1, double eps0) {
    if (eps0 < 0.0) throw std::invalid_argument("downlink_cop: requires eps0 >= 0");
    if (eps0 == 0.0) return 0.0;
    const double margin = pw.beta - (1.0 - pw.beta) * eps0;
    if (margin <= 0.0) return 1.0;  // the beta signal is interference-limited below its target

    const double a = eps0 / (pw.rho * margin);
    const double b = eps0 / (pw.rho * (1.0 - pw.beta));
    const double zeta = std::max(a, b);
    const double p = 1.0 - (1.0 - pe1) * std::exp(-(sc.lambda2() * a + sc.lambda1() * zeta)) -
                     pe1 * std::exp(-(sc.lambda1() * a + sc.lambda2() * zeta));
    return clamp_probability(p);
}

double downlink_cop(const PairScenario& sc, const DownlinkPower& pw, double pe1) {
    return downlink_cop(sc, pw, pe1, sc.link().target_snr());
}

double uplink_avg_sum_rate(const PairScenario& sc, const UplinkPower& pw) {
    const double u = sc.lambda1() / pw.rho1;
    const double v = sc.lambda2() / pw.rho2;
    if (std::fabs(v - u) < 1e-9 * std::max(u, v)) {
        // L'Hopital limit of the fraction below, using E'(y) = E(y) - 1/y.
        return ((1.0 - u) * scaled_e(u) + 1.0) / ln2;
    }
    return (v * scaled_e(u) - u * scaled_e(v)) / ((v - u) * ln2);
}

double uplink_sum_rate_high_snr(const PairScenario& sc, const UplinkPower& pw) {
    const double u = sc.lambda1() / pw.rho1;
    const double v = sc.lambda2() / pw.rho2;
    if (std::fabs(v - u) < 1e-9 * std::max(u, v)) {
        return (1.0 - euler_gamma) / ln2 - std::log2(u);
    }
    return (u * std::log2(v) - v * std::log2(u)) / (v - u) - euler_gamma / ln2;
}

double uplink_cop(const PairScenario& sc, const UplinkPower& pw, double pe1, double eps0) {
    if (eps0 < 0.0) throw std::invalid_argument("uplink_cop: requires eps0 >= 0");
    const double b = eps0 / pw.rho2;
    const double c = eps0 / pw.rho1;
    const double k = eps0 * pw.rho2 / pw.rho1;
    const double l1 = sc.lambda1();
    const double l2 = sc.lambda2();
    const double correct = l2 / (l2 + k * l1) * std::exp(-l1 * c - (l2 + k * l1) * b);
    const double swapped = l1 / (l1 + k * l2) * std::exp(-l2 * c - (l1 + k * l2) * b);
    return clamp_probability(1.0 - (1.0 - pe1) * correct - pe1 * swapped);
}

double uplink_cop(const PairScenario& sc, const UplinkPower& pw, double pe1) {
    return uplink_cop(sc, pw, pe1, sc.link().target_snr());
}

double uplink_cop_floor(const PairScenario& sc, const UplinkPower& pw, double pe1) {
    const double eps0 = sc.link().target_snr();
    const double k = eps0 * pw.rho2 / pw.rho1;
    const double l1 = sc.lambda1();
    const double l2 = sc.lambda2();
    return clamp_probability(1.0 - (1.0 - pe1) * l2 / (l2 + k * l1) - pe1 * l1 / (l1 + k * l2));
}

double oma_cop(const PairScenario& sc, double rho1, double rho2, double eps0_prime) {
    if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw std::invalid_argument("oma_cop: requires rho > 0");
    if (eps0_prime < 0.0) throw std::invalid_argument("oma_cop: requires eps0' >= 0");
    return clamp_probability(-std::expm1(-(sc.lambda1() / rho1 + sc.lambda2() / rho2) * eps0_prime));
}

double oma_cop(const PairScenario& sc, double rho1, double rho2) {
    return oma_cop(sc, rho1, rho2, sc.link().oma_target_snr());
}

double oma_cop(const PairScenario& sc, double rho) { return oma_cop(sc, rho, rho); }

}  // namespace nomasim::analysis
