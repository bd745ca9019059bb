#include "rbgk/gamma.hpp"

#include <cmath>
#include <numbers>

#include "rbgk/errors.hpp"

namespace rbgk {

double incomplete_gamma_32(double x) {
    if (!(x >= 0.0)) {
        throw ConfigError("incomplete_gamma_32: argument must be nonnegative, got " + std::to_string(x));
    }
    double r = std::sqrt(x);
    return 0.5 * std::sqrt(std::numbers::pi) * std::erfc(r) + r * std::exp(-x);
}

double incomplete_gamma_32_ratio(double x) {
    if (!(x >= 0.0)) {
        throw ConfigError("incomplete_gamma_32_ratio: argument must be nonnegative, got " +
                          std::to_string(x));
    }
    double r = std::sqrt(x);
    // gamma_32(x) e^x = sqrt(x) + (sqrt(pi)/2) erfc(sqrt(x)) e^x; the scaled
    // erfc is replaced by its asymptotic expansion once e^x would overflow.
    double scaled;
    if (x < 700.0) {
        scaled = 0.5 * std::sqrt(std::numbers::pi) * std::erfc(r) * std::exp(x);
    } else {
        scaled = (1.0 - 0.5 / x) / (2.0 * r);
    }
    return x * r / (r + scaled);
}

}  // namespace rbgk
