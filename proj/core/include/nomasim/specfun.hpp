#pragma once

#include <cstddef>
#include <vector>

namespace nomasim::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243104;

// Shared knobs for the series evaluations below.  rel_tol stops a series once
// the running term is negligible, max_terms is the safety valve, tail_mass
// bounds the probability mass a truncated Poisson mixture may drop.
struct SeriesTolerance {
    double rel_tol = 1e-12;
    int max_terms = 10000;
    double tail_mass = 1e-12;
};

// Exponential integral Ei(x), defined here for x < 0 only.
// For x < ~-745 the value underflows to (signed) zero, which is the correct
// double rounding of a magnitude below DBL_DENORM_MIN.
double exp_integral_ei(double x);

// e^{-x} Ei(x) for x < 0.  Representable for arbitrarily large |x| (decays
// like 1/x), which is what rate formulas need when Ei itself underflows.
double exp_integral_ei_scaled(double x);

// Regularized lower incomplete gamma P(shape, x), shape > 0, x >= 0.
double regularized_gamma_p(double shape, double x, const SeriesTolerance& tol = {});

// Gauss hypergeometric 2F1(1, b; c; 1/2) for b, c > 0.
double hyp2f1_at_half(double b, double c, const SeriesTolerance& tol = {});

// Pr{X > Y} for independent X ~ Gamma(i+1, r), Y ~ Gamma(j+1, r), i, j >= 0.
// The common rate r cancels.  Evaluated as the hypergeometric series
// 2^-(i+j+2) C(i+j+1, j+1) 2F1(1, i+j+2; j+2; 1/2) with the binomial
// prefactor folded into the series in log space so no intermediate term
// overflows or underflows even for indices in the thousands.
double gamma_order_prob(int i, int j, const SeriesTolerance& tol = {});

// Poisson(lambda) pmf, evaluated in log space.  k < 0 yields -inf / 0.
double log_poisson_pmf(int k, double lambda);
double poisson_pmf(int k, double lambda);

// Contiguous index window centered on round(lambda) holding pmf mass of at
// least 1 - tail_mass, grown symmetrically (lo clamped at zero).  The realized
// bound is tail_mass plus the rounding error of the pmf sum, which matters
// only when tail_mass is pushed near lambda * DBL_EPSILON.
struct PoissonWindow {
    int lo = 0;
    int hi = 0;
    std::vector<double> pmf;  // pmf[i - lo] for i in [lo, hi]
    double mass = 0.0;

    double weight(int i) const { return pmf[static_cast<std::size_t>(i - lo)]; }
};
PoissonWindow poisson_window(double lambda, const SeriesTolerance& tol = {});

// pdf of |v + n|^2 at x, where |v|^2 = noncentrality and n is a 2-d Gaussian
// with per-component variance sigma2.  Evaluated as the Poisson(lambda*beta)
// mixture of Gamma(i+1, beta) densities, beta = 1/(2 sigma2); the Bessel-I0
// closed form is deliberately not used so the mixture truncation is the only
// error source.
double noncentral_chisq2_pdf(double x, double noncentrality, double sigma2,
                             const SeriesTolerance& tol = {});

// cdf companion of the mixture above; same truncation rules.
double noncentral_chisq2_cdf(double x, double noncentrality, double sigma2,
                             const SeriesTolerance& tol = {});

}  // namespace nomasim::specfun
