#pragma once

// Independent reference computations for the test suite.  Everything here is
// deliberately written from first principles (quadrature, combinatorial
// identities, direct series) so a bug in the library cannot hide inside the
// oracle that checks it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace detail {

template <typename F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature on [a, b] with an absolute tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12, int max_depth = 52) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Semi-infinite integral of an (eventually) exponentially decaying integrand
// via the substitution t = a + u/(1-u), u in [0, 1).
template <typename F>
double integrate_to_inf(const F& f, double a, double tol = 1e-12) {
    const auto g = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        const double t = a + u / w;
        const double v = f(t);
        return v == 0.0 ? 0.0 : v / (w * w);
    };
    return integrate(g, 0.0, 1.0, tol);
}

// Pr{Gamma(i+1, r) > Gamma(j+1, r)} by the coin-flip race identity: merge the
// two Poisson processes and ask which accumulates its arrivals first,
// i.e. a binomial tail over i+j+1 fair flips.
inline double gamma_race(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("gamma_race: indices must be nonnegative");
    const int total = i + j + 1;
    double sum = 0.0;
    for (int k = 0; k <= i; ++k) {
        sum += std::exp(std::lgamma(total + 1.0) - std::lgamma(k + 1.0) -
                        std::lgamma(total - k + 1.0) - total * std::numbers::ln2);
    }
    return sum;
}

// Modified Bessel function of the first kind, order zero, by its power
// series.  Adequate for the moderate arguments the tests use.
inline double bessel_i0(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < 1e-18 * sum) return sum;
    }
    throw std::runtime_error("bessel_i0: series failed to converge");
}

// Density of |v + n|^2 with |v|^2 = noncentrality and n a 2-d Gaussian of
// per-component variance sigma2, in the closed Bessel form the library
// deliberately avoids.
inline double chisq2_pdf_bessel(double x, double noncentrality, double sigma2) {
    if (x < 0.0) return 0.0;
    const double beta = 1.0 / (2.0 * sigma2);
    return beta * std::exp(-beta * (x + noncentrality)) * bessel_i0(2.0 * beta * std::sqrt(x * noncentrality));
}

// Two-sided Kolmogorov-Smirnov statistic of samples against a reference CDF.
// Sorts a copy; pass the raw draws.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double f = cdf(samples[k]);
        d = std::max(d, std::fabs(f - static_cast<double>(k + 1) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(k) / n));
    }
    return d;
}

// Asymptotic two-sided KS critical value; 1.628 corresponds to level 0.01.
inline double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

// Golden-section minimizer for unimodal objectives on [lo, hi].
template <typename F>
double golden_min(const F& f, double lo, double hi, double tol = 1e-12) {
    constexpr double inv_phi = 0.6180339887498948;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

// Mean and standard error of a sample stream.
struct RunningStat {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
    double std_error() const {
        if (n == 0) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, sum_sq / static_cast<double>(n) - m * m);
        return std::sqrt(var / static_cast<double>(n));
    }
};

inline double binomial_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace oracle
