#pragma once

#include "nomasim/channel.hpp"
#include "nomasim/specfun.hpp"

namespace nomasim::analysis {

// Two paired users at fixed distances d1 <= d2 under one link configuration.
// Rate parameters lambda_k = d_k^alpha are cached; D = lambda2/lambda1.
class PairScenario {
  public:
    PairScenario(double d1, double d2, const channel::LinkConfig& link);

    double d1() const { return d1_; }
    double d2() const { return d2_; }
    const channel::LinkConfig& link() const { return link_; }
    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }
    double lambda() const { return lambda1_ + lambda2_; }
    double gain_ratio() const { return lambda2_ / lambda1_; }  // D >= 1
    double lambda_of(int k) const { return k == 1 ? lambda1_ : lambda2_; }

  private:
    double d1_;
    double d2_;
    channel::LinkConfig link_;
    double lambda1_;
    double lambda2_;
};

// Downlink superposition: the user believed farther gets power share beta,
// the other 1 - beta; rho is the total transmit SNR.
struct DownlinkPower {
    double rho;
    double beta;

    DownlinkPower(double rho_, double beta_);
};

// Uplink per-user transmit SNRs with individual caps.  rho1 is the power of
// the user decoded first (believed nearer), rho2 of the other.
struct UplinkPower {
    double rho1;
    double rho2;
    double omega1;
    double omega2;

    UplinkPower(double rho1_, double rho2_, double omega1_, double omega2_);
    // Full-power configuration.
    UplinkPower(double omega1_, double omega2_) : UplinkPower(omega1_, omega2_, omega1_, omega2_) {}
};

// varphi(k, phi) = -(lambda_k / (lambda ln2)) e^{lambda/phi} Ei(-lambda/phi).
double phi(int k, double phiarg, const PairScenario& sc);
// varphi'(k, phi) = -(1/ln2) e^{lambda_k/phi} Ei(-lambda_k/phi).
double phi_prime(int k, double phiarg, const PairScenario& sc);
// High-SNR (phi -> inf) expansions of the two functions above.
double phi_high_snr(int k, double phiarg, const PairScenario& sc);
double phi_prime_high_snr(int k, double phiarg, const PairScenario& sc);

// P_e1: probability that the estimated-distance order contradicts the true
// distance order, fading-free.  Poisson-mixture double series over the
// gamma order probabilities; sigma_ob2 == 0 returns the noise-free limit.
double decoding_error_prob_fading_free(const PairScenario& sc,
                                       const specfun::SeriesTolerance& tol = {});

// P_e2: order error against the instantaneous faded gains,
// P_e2 = ((D-1)/(D+1)) P_e1 + 1/(D+1).
double decoding_error_prob_rayleigh(const PairScenario& sc,
                                    const specfun::SeriesTolerance& tol = {});

// Downlink average sum rate (exact closed form).  The pe1-explicit overload
// lets callers substitute 0, the analytic value, or an empirical estimate;
// the other computes the analytic pe1 from the scenario.
double downlink_avg_sum_rate(const PairScenario& sc, const DownlinkPower& pw, double pe1);
double downlink_avg_sum_rate(const PairScenario& sc, const DownlinkPower& pw,
                             const specfun::SeriesTolerance& tol = {});

// log2(rho/lambda1) - pe1 log2(lambda2/lambda1) - C/ln2.
double downlink_sum_rate_high_snr(const PairScenario& sc, const DownlinkPower& pw, double pe1);

// Downlink common outage probability.  Returns exactly 1 when
// beta <= eps0/(1+eps0) (the strong signal can never be decoded).  The
// explicit-target overload substitutes eps0 in place of the link's target.
double downlink_cop(const PairScenario& sc, const DownlinkPower& pw, double pe1);
double downlink_cop(const PairScenario& sc, const DownlinkPower& pw, double pe1, double eps0);

// Uplink average sum rate; independent of decoding order and of sigma_ob2.
// The removable singularity at lambda1/rho1 == lambda2/rho2 is evaluated by
// its analytic limit when the two values agree within 1e-9 relative.
double uplink_avg_sum_rate(const PairScenario& sc, const UplinkPower& pw);
double uplink_sum_rate_high_snr(const PairScenario& sc, const UplinkPower& pw);

// Uplink common outage probability and its infinite-power floor at a fixed
// rho2/rho1 ratio.
double uplink_cop(const PairScenario& sc, const UplinkPower& pw, double pe1);
double uplink_cop(const PairScenario& sc, const UplinkPower& pw, double pe1, double eps0);
double uplink_cop_floor(const PairScenario& sc, const UplinkPower& pw, double pe1);

// Orthogonal baseline: each user gets half the resources, so the per-block
// target is eps0' = 2^(2 R0*) - 1.  The single-rho form is the common
// transmit SNR case; the two-rho form generalizes to per-user powers.
double oma_cop(const PairScenario& sc, double rho);
double oma_cop(const PairScenario& sc, double rho1, double rho2);
double oma_cop(const PairScenario& sc, double rho1, double rho2, double eps0_prime);

}  // namespace nomasim::analysis
