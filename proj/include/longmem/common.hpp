#ifndef LONGMEM_COMMON_HPP
#define LONGMEM_COMMON_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace longmem {

inline constexpr const char* kVersion = "0.1.0";

// Invalid model or distribution parameters (CLI exit code 3).
class parameter_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configuration that cannot be honoured (truncation tolerance, coverage
// window, acceptance rate...). CLI exit code 3.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: embedding not nonnegative definite, non-finite
// intermediate, zero periodogram ordinate in a regression range.
// CLI exit code 4.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed config file / CLI usage. Exit code 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A law combination or request the library does not support.
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Regularly spaced observations plus sampling metadata.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    // Set when circulant-embedding eigenvalues were clipped at zero.
    bool embedding_clipped = false;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

double mean(std::span<const double> x);
double variance(std::span<const double> x);       // divisor n-1
double variance_mle(std::span<const double> x);   // divisor n
double skewness(std::span<const double> x);
double excess_kurtosis(std::span<const double> x);

// Two-pass OLS slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);
// Slope, intercept and R^2 of the simple regression of y on x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace longmem

#endif
