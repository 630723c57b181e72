#include "nomasim/power.hpp"

#include <cmath>
#include <stdexcept>

namespace nomasim::power {

namespace {

// Exponent of the perfect-ordering outage branch; the COP 1 - e^{-f} is
// monotone in f, so minimizing f minimizes the COP.  f is decreasing up to
// the interior optimum and increasing after it over the feasible interval.
double dpa_objective(const analysis::PairScenario& sc, double rho, double eps0, double beta) {
    const double a = eps0 / (rho * (beta - (1.0 - beta) * eps0));
    const double b = eps0 / (rho * (1.0 - beta));
    return sc.lambda2() * a + sc.lambda1() * std::max(a, b);
}

double dpa_golden_section(const analysis::PairScenario& sc, double rho, double eps0) {
    constexpr double inv_phi = 0.6180339887498948;
    double lo = eps0 / (1.0 + eps0) + 1e-12;
    double hi = 1.0 - 1e-12;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = dpa_objective(sc, rho, eps0, x1);
    double f2 = dpa_objective(sc, rho, eps0, x2);
    while (hi - lo > 1e-14) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = dpa_objective(sc, rho, eps0, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = dpa_objective(sc, rho, eps0, x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DpaSolution dpa_optimal_beta(const analysis::PairScenario& scenario_est, double rho, double eps0) {
    if (!(rho > 0.0)) throw std::invalid_argument("dpa_optimal_beta: requires rho > 0");
    if (!(eps0 > 0.0)) throw std::invalid_argument("dpa_optimal_beta: requires eps0 > 0");

    const double l1 = scenario_est.lambda1();
    const double l2 = scenario_est.lambda2();
    const double denom_factor = l1 * (1.0 + eps0) - l2;

    DpaSolution sol{};
    if (std::fabs(denom_factor) <= 1e-12 * std::max(l1 * (1.0 + eps0), l2)) {
        sol.beta_star = dpa_golden_section(scenario_est, rho, eps0);
        sol.closed_form = false;
    } else {
        const double root = std::sqrt(1.0 + eps0);
        sol.beta_star = (root * (eps0 * l1 - l2) + std::sqrt(l1 * l2)) / (root * denom_factor);
        sol.closed_form = true;
    }
    sol.predicted_cop =
        analysis::downlink_cop(scenario_est, analysis::DownlinkPower(rho, sol.beta_star), 0.0, eps0);
    return sol;
}

DpcSolution dpc_optimal_power(const analysis::PairScenario& scenario_est, double omega1,
                              double omega2, double eps0) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
        throw std::invalid_argument("dpc_optimal_power: requires omega1, omega2 > 0");
    }
    if (!(eps0 > 0.0)) throw std::invalid_argument("dpc_optimal_power: requires eps0 > 0");

    const double l1 = scenario_est.lambda1();
    const double l2 = scenario_est.lambda2();
    const double rho2_plus =
        (eps0 * l1 * l2 + l2 * std::sqrt(4.0 * omega1 * l1 + eps0 * eps0 * l1 * l1)) / (2.0 * l1);

    DpcSolution sol{};
    sol.rho1_star = omega1;
    sol.rho2_star = std::min(omega2, rho2_plus);
    sol.predicted_cop = analysis::uplink_cop(
        scenario_est, analysis::UplinkPower(sol.rho1_star, sol.rho2_star, omega1, omega2), 0.0, eps0);
    return sol;
}

analysis::DownlinkPower fixed_downlink_beta(double rho, double beta) {
    if (!(beta > 0.5 && beta < 1.0)) {
        throw std::invalid_argument("fixed_downlink_beta: the far user must get the larger share, 0.5 < beta < 1");
    }
    return analysis::DownlinkPower(rho, beta);
}

analysis::UplinkPower fixed_uplink_power(double omega1, double omega2) {
    return analysis::UplinkPower(omega1, omega2);
}

}  // namespace nomasim::power
