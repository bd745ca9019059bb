#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "rbgk/errors.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// Normalization coefficient n * (m / (2 pi k T))^{3/2}.
inline double maxwellian_peak(double density, double temperature, double mass, double kb) {
    if (!(density > 0.0) || !(temperature > 0.0)) {
        throw FieldError("maxwellian: density and temperature must be positive, got n = " +
                         std::to_string(density) + ", T = " + std::to_string(temperature));
    }
    return density * std::pow(mass / (2.0 * std::numbers::pi * kb * temperature), 1.5);
}

// Pointwise Maxwellian n (m/(2 pi k T))^{3/2} exp(-m |v - U|^2 / (2 k T)).
inline double maxwellian(double density, const Vec3& velocity, double temperature, double mass,
                         double kb, const Vec3& v) {
    double coef = maxwellian_peak(density, temperature, mass, kb);
    return coef * std::exp(-mass * (v - velocity).norm2() / (2.0 * kb * temperature));
}

}  // namespace rbgk
