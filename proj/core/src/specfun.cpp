#include "nomasim/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nomasim::specfun {

namespace {

constexpr double kFpMin = 1e-300;

// log C(n, k) for real n >= k >= 0.
double log_choose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// E1(y) for 0 < y <= 1 via the convergent series
// E1(y) = -gamma - ln y + sum_{k>=1} (-1)^{k+1} y^k / (k k!).
double e1_series(double y) {
    double sum = 0.0;
    double pow_term = 1.0;  // y^k / k!
    double sign = 1.0;
    for (int k = 1; k <= 64; ++k) {
        pow_term *= y / k;
        const double term = sign * pow_term / k;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
        sign = -sign;
    }
    return -euler_gamma - std::log(y) + sum;
}

// e^y E1(y) for y > 1 via the modified Lentz continued fraction
// E1(y) = e^{-y} / (y + 1 - 1/(y + 3 - 4/(y + 5 - ...))).
double e1_cf_scaled(double y) {
    double b = y + 1.0;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 20000; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + a / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw std::runtime_error("exp_integral_ei: continued fraction failed to converge");
}

}  // namespace

double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw std::domain_error("exp_integral_ei: requires x < 0");
    const double y = -x;
    if (y <= 1.0) return -e1_series(y);
    return -std::exp(-y) * e1_cf_scaled(y);
}

double exp_integral_ei_scaled(double x) {
    if (!(x < 0.0)) throw std::domain_error("exp_integral_ei_scaled: requires x < 0");
    const double y = -x;
    if (y <= 1.0) return -std::exp(y) * e1_series(y);
    return -e1_cf_scaled(y);
}

double regularized_gamma_p(double shape, double x, const SeriesTolerance& tol) {
    if (!(shape > 0.0)) throw std::domain_error("regularized_gamma_p: requires shape > 0");
    if (x < 0.0) throw std::domain_error("regularized_gamma_p: requires x >= 0");
    if (x == 0.0) return 0.0;

    const double log_prefactor = shape * std::log(x) - x - std::lgamma(shape);

    if (x < shape + 1.0) {
        // Lower series: P = x^a e^{-x} / Gamma(a) * sum_{n>=0} x^n / (a)_{n+1}.
        double ap = shape;
        double del = 1.0 / shape;
        double sum = del;
        for (int n = 0; n < tol.max_terms; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * tol.rel_tol) {
                return std::min(1.0, sum * std::exp(log_prefactor));
            }
        }
        throw std::runtime_error("regularized_gamma_p: series failed to converge");
    }

    // Upper continued fraction (modified Lentz) for Q = 1 - P.
    double b = x + 1.0 - shape;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= tol.max_terms; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - shape);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < tol.rel_tol) {
            return 1.0 - std::exp(log_prefactor) * h;
        }
    }
    throw std::runtime_error("regularized_gamma_p: continued fraction failed to converge");
}

double hyp2f1_at_half(double b, double c, const SeriesTolerance& tol) {
    if (!(b > 0.0) || !(c > 0.0)) throw std::domain_error("hyp2f1_at_half: requires b, c > 0");
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < tol.max_terms; ++n) {
        const double ratio = 0.5 * (b + n) / (c + n);
        term *= ratio;
        sum += term;
        if (!std::isfinite(sum)) throw std::overflow_error("hyp2f1_at_half: series overflow");
        // Terms grow while b + n > 2(c + n); only stop once they shrink.
        if (ratio < 1.0 && term < sum * tol.rel_tol) return sum;
    }
    throw std::runtime_error("hyp2f1_at_half: series failed to converge");
}

double gamma_order_prob(int i, int j, const SeriesTolerance& tol) {
    if (i < 0 || j < 0) throw std::domain_error("gamma_order_prob: requires i, j >= 0");
    const double a = i + 1.0;  // shape of the larger-side variable
    const double b = j + 1.0;
    const double ab = a + b;

    // Scaled term s_n = 2^-ab C(ab-1, b) * (ab)_n / (b+1)_n * 2^-n.  Each s_n
    // is bounded by the total (a probability), so the linear recurrence is
    // overflow-free; the prefactor alone can underflow for lopsided (i, j), so
    // the recurrence runs in log space until the term is representable.
    double log_term = log_choose(ab - 1.0, b) - ab * std::numbers::ln2;
    double term = 0.0;
    bool linear = false;
    double sum = 0.0;
    for (int n = 0; n < tol.max_terms; ++n) {
        if (!linear && log_term > -690.0) {
            term = std::exp(log_term);
            linear = true;
        }
        if (linear) sum += term;
        const double ratio = 0.5 * (ab + n) / (b + 1.0 + n);
        if (linear) {
            // ratio decreases toward 1/2, so the tail is geometrically bounded.
            if (ratio < 1.0 && term * ratio / (1.0 - ratio) < sum * tol.rel_tol) {
                return std::min(1.0, sum);
            }
            term *= ratio;
        } else {
            log_term += std::log(ratio);
            // Once terms shrink the geometric tail bounds the remainder; if
            // that bound sits below the denormal floor the probability itself
            // rounds to zero and the linear phase would never engage.
            if (ratio < 1.0 && log_term - std::log1p(-ratio) < -745.0) return 0.0;
        }
    }
    throw std::runtime_error("gamma_order_prob: series failed to converge for i=" + std::to_string(i) +
                             " j=" + std::to_string(j));
}

double log_poisson_pmf(int k, double lambda) {
    if (lambda < 0.0) throw std::domain_error("log_poisson_pmf: requires lambda >= 0");
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (lambda == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
}

double poisson_pmf(int k, double lambda) { return std::exp(log_poisson_pmf(k, lambda)); }

PoissonWindow poisson_window(double lambda, const SeriesTolerance& tol) {
    if (lambda < 0.0) throw std::domain_error("poisson_window: requires lambda >= 0");
    PoissonWindow win;
    if (lambda == 0.0) {
        win.lo = win.hi = 0;
        win.pmf = {1.0};
        win.mass = 1.0;
        return win;
    }
    const int center = static_cast<int>(std::lround(lambda));
    const double target = 1.0 - tol.tail_mass;
    int lo = center;
    int hi = center;
    double mass = poisson_pmf(center, lambda);
    while (mass < target) {
        if (hi - lo >= 2 * tol.max_terms) {
            throw std::runtime_error("poisson_window: window exceeded max_terms");
        }
        const double before = mass;
        if (lo > 0) mass += poisson_pmf(--lo, lambda);
        mass += poisson_pmf(++hi, lambda);
        // For large lambda the pmf evaluations carry ~lambda*eps of systematic
        // log-space error, so the sum can saturate just below target.  Once the
        // edge terms no longer move it the true tails are below double rounding
        // and growing further cannot help.
        if (mass == before) break;
    }
    win.lo = lo;
    win.hi = hi;
    win.mass = mass;
    win.pmf.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) win.pmf.push_back(poisson_pmf(k, lambda));
    return win;
}

double noncentral_chisq2_pdf(double x, double noncentrality, double sigma2, const SeriesTolerance& tol) {
    if (!(sigma2 > 0.0)) throw std::domain_error("noncentral_chisq2_pdf: requires sigma2 > 0");
    if (noncentrality < 0.0) throw std::domain_error("noncentral_chisq2_pdf: requires noncentrality >= 0");
    if (x < 0.0) return 0.0;

    const double beta = 1.0 / (2.0 * sigma2);
    const double lambda = beta * noncentrality;
    if (lambda == 0.0) return beta * std::exp(-beta * x);

    const PoissonWindow win = poisson_window(lambda, tol);
    const double log_beta = std::log(beta);
    double pdf = 0.0;
    for (int i = win.lo; i <= win.hi; ++i) {
        if (x == 0.0) {
            if (i == 0) pdf += win.weight(i) * beta;  // Gamma(1, beta) density at 0
            continue;
        }
        const double log_gamma_pdf = (i + 1.0) * log_beta + i * std::log(x) - beta * x - std::lgamma(i + 1.0);
        pdf += win.weight(i) * std::exp(log_gamma_pdf);
    }
    return pdf;
}

double noncentral_chisq2_cdf(double x, double noncentrality, double sigma2, const SeriesTolerance& tol) {
    if (!(sigma2 > 0.0)) throw std::domain_error("noncentral_chisq2_cdf: requires sigma2 > 0");
    if (noncentrality < 0.0) throw std::domain_error("noncentral_chisq2_cdf: requires noncentrality >= 0");
    if (x <= 0.0) return 0.0;

    const double beta = 1.0 / (2.0 * sigma2);
    const double lambda = beta * noncentrality;
    if (lambda == 0.0) return -std::expm1(-beta * x);

    const PoissonWindow win = poisson_window(lambda, tol);
    double cdf = 0.0;
    for (int i = win.lo; i <= win.hi; ++i) {
        cdf += win.weight(i) * regularized_gamma_p(i + 1.0, beta * x, tol);
    }
    return std::min(1.0, cdf);
}

}  // namespace nomasim::specfun
