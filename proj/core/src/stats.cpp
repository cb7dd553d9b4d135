#include "suspension/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>

namespace suspension {

Summary summarize(const std::vector<double>& values) {
    Summary out;
    out.n = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.variance = ss / static_cast<double>(values.size() - 1);
    out.se_mean = std::sqrt(out.variance / static_cast<double>(values.size()));
    return out;
}

ChiSquareResult chi_square_poisson(const std::vector<std::uint64_t>& histogram, double lambda,
                                   double min_expected) {
    std::uint64_t n = 0;
    for (std::uint64_t c : histogram) n += c;
    if (n < 10) throw std::invalid_argument("chi-square test needs more observations");

    // Expected counts n * pmf(k); everything from the first bin whose
    // remaining tail expectation drops below min_expected is pooled.
    std::vector<double> expected;
    double pmf = std::exp(-lambda);
    double cdf = 0.0;
    std::size_t k = 0;
    for (;; ++k) {
        double tail = static_cast<double>(n) * (1.0 - cdf);
        if (tail < 2.0 * min_expected || k >= histogram.size() + 16) break;
        expected.push_back(static_cast<double>(n) * pmf);
        cdf += pmf;
        pmf *= lambda / static_cast<double>(k + 1);
    }
    // tail bin
    double tail_expected = static_cast<double>(n) * (1.0 - cdf);
    double tail_observed = 0.0;
    for (std::size_t i = expected.size(); i < histogram.size(); ++i) {
        tail_observed += static_cast<double>(histogram[i]);
    }

    double stat = 0.0;
    int bins = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] < min_expected) {
            // pool sparse interior bins into the tail as well
            tail_expected += expected[i];
            tail_observed += i < histogram.size() ? static_cast<double>(histogram[i]) : 0.0;
            continue;
        }
        double observed = i < histogram.size() ? static_cast<double>(histogram[i]) : 0.0;
        stat += (observed - expected[i]) * (observed - expected[i]) / expected[i];
        ++bins;
    }
    if (tail_expected > 0.0) {
        stat += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
        ++bins;
    }

    ChiSquareResult out;
    out.statistic = stat;
    out.dof = bins - 1;
    if (out.dof < 1) throw std::invalid_argument("chi-square test degenerated to a single bin");
    out.p_value = boost::math::gamma_q(out.dof / 2.0, stat / 2.0);
    return out;
}

CovarianceEstimate covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("covariance needs two equally sized series");
    }
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    // covariance is the mean of the centered products; its standard error is
    // the spread of those products over sqrt(n)
    double mean_prod = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) mean_prod += (xs[i] - mx) * (ys[i] - my);
    mean_prod /= n;
    double ss = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double p = (xs[i] - mx) * (ys[i] - my) - mean_prod;
        ss += p * p;
        sx += (xs[i] - mx) * (xs[i] - mx);
        sy += (ys[i] - my) * (ys[i] - my);
    }
    CovarianceEstimate out;
    out.covariance = mean_prod * n / (n - 1);
    out.standard_error = std::sqrt(ss / n) / std::sqrt(n);
    double denom = std::sqrt(sx * sy);
    out.correlation = denom > 0.0 ? mean_prod * n / denom : 0.0;
    return out;
}

std::vector<std::uint64_t> tally(const std::vector<double>& values) {
    std::vector<std::uint64_t> hist;
    for (double v : values) {
        auto k = static_cast<std::size_t>(v);
        if (k >= hist.size()) hist.resize(k + 1, 0);
        ++hist[k];
    }
    return hist;
}

}  // namespace suspension
