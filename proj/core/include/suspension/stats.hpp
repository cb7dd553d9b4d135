#pragma once

#include <cstdint>
#include <vector>

namespace suspension {

struct Summary {
    std::uint64_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance
    double se_mean = 0.0;
};
Summary summarize(const std::vector<double>& values);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

/// Goodness of fit of an integer histogram against Poisson(lambda); bins
/// with small expectation are pooled into the tail.
ChiSquareResult chi_square_poisson(const std::vector<std::uint64_t>& histogram, double lambda,
                                   double min_expected = 5.0);

struct CovarianceEstimate {
    double covariance = 0.0;
    double standard_error = 0.0;  // asymptotic, from the product moments
    double correlation = 0.0;
};
CovarianceEstimate covariance(const std::vector<double>& xs, const std::vector<double>& ys);

/// Histogram of small nonnegative integer observations.
std::vector<std::uint64_t> tally(const std::vector<double>& values);

}  // namespace suspension
