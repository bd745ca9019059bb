#include "rbgk/physical_config.hpp"

#include <cmath>
#include <string>

#include "rbgk/errors.hpp"

namespace rbgk {

namespace {

std::string pair_name(const char* base, int i, int j) {
    return std::string(base) + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace

void PhysicalConfig::validate() {
    for (int i = 0; i < kSpecies; ++i) {
        if (!(mass[static_cast<std::size_t>(i)] > 0.0)) {
            throw ConfigError("config: m" + std::to_string(i + 1) + " must be positive, got " +
                              std::to_string(mass[static_cast<std::size_t>(i)]));
        }
    }
    double m12 = mass[0] + mass[1];
    double m34 = mass[2] + mass[3];
    if (std::abs(m12 - m34) > 1e-12 * std::max(m12, m34)) {
        throw ConfigError("config: mass conservation violated, m1+m2 = " + std::to_string(m12) +
                          " but m3+m4 = " + std::to_string(m34));
    }
    total_mass = m12;

    delta_e = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        delta_e -= kLambda[static_cast<std::size_t>(i)] * bond_energy[static_cast<std::size_t>(i)];
    }
    if (!(delta_e > 0.0)) {
        throw ConfigError("config: energy threshold deltaE = -(E1+E2-E3-E4) must be positive, got " +
                          std::to_string(delta_e));
    }

    for (int i = 0; i < kSpecies; ++i) {
        for (int j = 0; j < kSpecies; ++j) {
            double nu = nu_elastic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            double ch = chi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!(nu > 0.0)) {
                throw ConfigError("config: " + pair_name("nu", i, j) + " must be positive, got " +
                                  std::to_string(nu));
            }
            if (ch < 0.0) {
                throw ConfigError("config: " + pair_name("chi", i, j) + " must be nonnegative, got " +
                                  std::to_string(ch));
            }
            if (ch > nu) {
                throw ConfigError("config: chi exceeds nu for pair (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + "): " + pair_name("chi", i, j) + " = " +
                                  std::to_string(ch) + " > " + pair_name("nu", i, j) + " = " +
                                  std::to_string(nu));
            }
        }
    }
    if (nu1234 < 0.0) throw ConfigError("config: nu1234 must be nonnegative, got " + std::to_string(nu1234));
    if (nu3412 < 0.0) throw ConfigError("config: nu3412 must be nonnegative, got " + std::to_string(nu3412));
    if (!(tau > 0.0)) throw ConfigError("config: tau must be positive, got " + std::to_string(tau));
    if (!(kb > 0.0)) throw ConfigError("config: k must be positive, got " + std::to_string(kb));
}

}  // namespace rbgk
