#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rbgk/types.hpp"

namespace rbgk {

struct GridSpec {
    int nx = 64;            // spatial cells; nodes are nx + 1
    int nv1 = 48;           // nodes along the slab axis velocity (forced even)
    int nv23 = 24;          // nodes along each transverse velocity axis
    double vmax = 8.0;      // velocity truncation radius per axis
    double gauss_tol = 1e-8;  // acceptance for the unit-Gaussian weight self test
};

enum class Weight { Plain, InverseV1 };

// Tensor-product phase space discretization: uniform spatial nodes on [0,1]
// and cell-centered midpoint velocity nodes on [-vmax, vmax]^3. The v1 axis
// uses an even node count so no node sits at v1 = 0 and the node set is closed
// under v1 -> -v1 with equal weights.
class PhaseGrid {
  public:
    explicit PhaseGrid(const GridSpec& spec);

    int cells() const { return nx_; }
    int nodes_x() const { return nx_ + 1; }
    double dx() const { return dx_; }
    double x(int j) const { return xs_[static_cast<std::size_t>(j)]; }

    int nv1() const { return nv1_; }
    int nv23() const { return nv23_; }
    double vmax() const { return vmax_; }
    double dv1() const { return dv1_; }
    std::size_t velocity_count() const { return vcount_; }
    double cell_weight() const { return wcell_; }

    double v1_axis(int i) const { return v1_axis_[static_cast<std::size_t>(i)]; }
    double v23_axis(int i) const { return v23_axis_[static_cast<std::size_t>(i)]; }

    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * static_cast<std::size_t>(nv23_) +
                static_cast<std::size_t>(i2)) *
                   static_cast<std::size_t>(nv23_) +
               static_cast<std::size_t>(i3);
    }
    // Index of the node obtained by v1 -> -v1.
    std::size_t reflect_v1(std::size_t idx) const;

    Vec3 velocity(std::size_t idx) const {
        return {v1_[idx], v2_[idx], v3_[idx]};
    }
    std::span<const double> v1() const { return v1_; }
    std::span<const double> v2() const { return v2_; }
    std::span<const double> v3() const { return v3_; }
    std::span<const double> speed2() const { return speed2_; }     // |v|^2 per node
    std::span<const double> inv_abs_v1() const { return inv_v1_; }  // 1/|v1| per node

    // Quadrature of the tabulated integrand, optionally with the singular
    // 1/|v1| weight used by the wall budgets. Throws FieldError on non-finite
    // input. Summation order is fixed for reproducibility.
    double integrate(std::span<const double> values, Weight mode = Weight::Plain) const;

  private:
    int nx_;
    double dx_;
    std::vector<double> xs_;

    int nv1_, nv23_;
    double vmax_, dv1_, dv23_, wcell_;
    std::size_t vcount_;
    std::vector<double> v1_axis_, v23_axis_;
    std::vector<double> v1_, v2_, v3_, speed2_, inv_v1_;
};

PhaseGrid build_grid(const GridSpec& spec);

}  // namespace rbgk
