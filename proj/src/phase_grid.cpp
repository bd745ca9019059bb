#include "rbgk/phase_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rbgk/errors.hpp"

namespace rbgk {

PhaseGrid::PhaseGrid(const GridSpec& spec) {
    if (spec.nx < 2) throw GridError("grid: nx must be at least 2, got " + std::to_string(spec.nx));
    if (spec.nv1 < 4) throw GridError("grid: nv1 must be at least 4, got " + std::to_string(spec.nv1));
    if (spec.nv23 < 4) throw GridError("grid: nv23 must be at least 4, got " + std::to_string(spec.nv23));
    if (!(spec.vmax > 0.0)) throw GridError("grid: vmax must be positive, got " + std::to_string(spec.vmax));

    nx_ = spec.nx;
    dx_ = 1.0 / static_cast<double>(nx_);
    xs_.resize(static_cast<std::size_t>(nx_) + 1);
    for (int j = 0; j <= nx_; ++j) xs_[static_cast<std::size_t>(j)] = static_cast<double>(j) * dx_;
    xs_.back() = 1.0;

    // A midpoint node lands on v1 = 0 whenever the count is odd; bump to even.
    nv1_ = (spec.nv1 % 2 == 0) ? spec.nv1 : spec.nv1 + 1;
    nv23_ = spec.nv23;
    vmax_ = spec.vmax;
    dv1_ = 2.0 * vmax_ / static_cast<double>(nv1_);
    dv23_ = 2.0 * vmax_ / static_cast<double>(nv23_);
    wcell_ = dv1_ * dv23_ * dv23_;

    v1_axis_.resize(static_cast<std::size_t>(nv1_));
    for (int i = 0; i < nv1_; ++i) {
        v1_axis_[static_cast<std::size_t>(i)] = -vmax_ + (static_cast<double>(i) + 0.5) * dv1_;
    }
    v23_axis_.resize(static_cast<std::size_t>(nv23_));
    for (int i = 0; i < nv23_; ++i) {
        v23_axis_[static_cast<std::size_t>(i)] = -vmax_ + (static_cast<double>(i) + 0.5) * dv23_;
    }

    vcount_ = static_cast<std::size_t>(nv1_) * static_cast<std::size_t>(nv23_) *
              static_cast<std::size_t>(nv23_);
    v1_.resize(vcount_);
    v2_.resize(vcount_);
    v3_.resize(vcount_);
    speed2_.resize(vcount_);
    inv_v1_.resize(vcount_);
    for (int i1 = 0; i1 < nv1_; ++i1) {
        double a = v1_axis_[static_cast<std::size_t>(i1)];
        if (a == 0.0) throw GridError("grid: internal error, node at v1 = 0");
        for (int i2 = 0; i2 < nv23_; ++i2) {
            double b = v23_axis_[static_cast<std::size_t>(i2)];
            for (int i3 = 0; i3 < nv23_; ++i3) {
                double c = v23_axis_[static_cast<std::size_t>(i3)];
                std::size_t k = index(i1, i2, i3);
                v1_[k] = a;
                v2_[k] = b;
                v3_[k] = c;
                speed2_[k] = a * a + b * b + c * c;
                inv_v1_[k] = 1.0 / std::abs(a);
            }
        }
    }

    // Weight self test against the unit Gaussian, whose integral is (2*pi)^{3/2}.
    double s = 0.0;
    for (std::size_t k = 0; k < vcount_; ++k) s += std::exp(-0.5 * speed2_[k]);
    s *= wcell_;
    double exact = std::pow(2.0 * std::numbers::pi, 1.5);
    if (std::abs(s - exact) > spec.gauss_tol * exact) {
        throw GridError("grid: quadrature self test failed, unit Gaussian integrates to " +
                        std::to_string(s) + " (expected " + std::to_string(exact) +
                        "); increase node counts or reduce vmax");
    }
}

std::size_t PhaseGrid::reflect_v1(std::size_t idx) const {
    std::size_t plane = static_cast<std::size_t>(nv23_) * static_cast<std::size_t>(nv23_);
    std::size_t i1 = idx / plane;
    std::size_t rest = idx % plane;
    std::size_t m1 = static_cast<std::size_t>(nv1_) - 1 - i1;
    return m1 * plane + rest;
}

double PhaseGrid::integrate(std::span<const double> values, Weight mode) const {
    if (values.size() != vcount_) {
        throw FieldError("integrate: value count " + std::to_string(values.size()) +
                         " does not match grid velocity count " + std::to_string(vcount_));
    }
    double s = 0.0;
    if (mode == Weight::Plain) {
        for (std::size_t k = 0; k < vcount_; ++k) s += values[k];
    } else {
        for (std::size_t k = 0; k < vcount_; ++k) s += values[k] * inv_v1_[k];
    }
    if (!std::isfinite(s)) throw FieldError("integrate: non-finite integrand");
    return s * wcell_;
}

PhaseGrid build_grid(const GridSpec& spec) { return PhaseGrid(spec); }

}  // namespace rbgk
