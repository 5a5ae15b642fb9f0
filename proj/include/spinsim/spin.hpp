#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinsim {

/// Spin quantum number stored as the integer 2s, so half-integral spins stay exact.
/// The Hilbert-space dimension is two_s + 1.
class TwoSpin {
  public:
    explicit TwoSpin(int two_s) : two_s_(two_s) {
        if (two_s < 1) {
            throw std::invalid_argument("spin must satisfy 2s >= 1, got 2s = " + std::to_string(two_s));
        }
    }

    int two_s() const { return two_s_; }
    int dim() const { return two_s_ + 1; }
    double spin() const { return 0.5 * two_s_; }

    /// Protocol-eligible spins have 2s + 1 = 2^n.
    bool protocol_eligible() const { return (dim() & (dim() - 1)) == 0; }

    /// n = log2(2s + 1). Throws if the spin is not protocol-eligible.
    int cbits() const {
        if (!protocol_eligible()) {
            throw std::domain_error("protocol requires 2s + 1 to be a power of two; spin " + to_string() +
                                    " has 2s + 1 = " + std::to_string(dim()));
        }
        int n = 0;
        while ((1 << n) < dim()) ++n;
        return n;
    }

    /// Doubled outcome 2m at sorted index i (index 0 is m = s).
    int doubled_outcome(int index) const { return two_s_ - 2 * index; }
    /// Inverse of doubled_outcome.
    int outcome_index(int doubled) const { return (two_s_ - doubled) / 2; }

    /// "1/2", "3/2", "1", "2", ...
    std::string to_string() const {
        return (two_s_ % 2 == 0) ? std::to_string(two_s_ / 2) : std::to_string(two_s_) + "/2";
    }

    friend bool operator==(TwoSpin, TwoSpin) = default;

  private:
    int two_s_;
};

/// Parses "1/2", "3/2", "15/2" or integer forms "1", "2".
TwoSpin parse_spin(const std::string& text);

/// Direction in R^3 with unit norm.
class UnitVector3 {
  public:
    static constexpr double kMinNorm = 1e-6;
    static constexpr double kUnitTolerance = 1e-12;

    /// Scales (x, y, z) to unit length; rejects vectors of norm < 1e-6.
    static UnitVector3 normalized(double x, double y, double z) {
        double norm = std::sqrt(x * x + y * y + z * z);
        if (!(norm >= kMinNorm)) {
            throw std::invalid_argument("direction vector has norm below 1e-6");
        }
        return UnitVector3(x / norm, y / norm, z / norm);
    }

    /// Accepts components that already form a unit vector (within 1e-12).
    static UnitVector3 from_unit(double x, double y, double z) {
        double n2 = x * x + y * y + z * z;
        if (!(std::abs(n2 - 1.0) <= kUnitTolerance)) {
            throw std::invalid_argument("components do not form a unit vector");
        }
        return UnitVector3(x, y, z);
    }

    /// The (sin t, 0, cos t) direction in the x-z plane.
    static UnitVector3 from_polar_xz(double theta) { return UnitVector3(std::sin(theta), 0.0, std::cos(theta)); }

    static UnitVector3 z_axis() { return UnitVector3(0.0, 0.0, 1.0); }

    UnitVector3() = default;

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double dot(const UnitVector3& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

    friend bool operator==(const UnitVector3&, const UnitVector3&) = default;

  private:
    friend UnitVector3 make_unit_unchecked(double, double, double);
    UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {}

    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 1.0;
};

/// For producers that guarantee unit norm by construction (the sphere sampler).
inline UnitVector3 make_unit_unchecked(double x, double y, double z) { return UnitVector3(x, y, z); }

}  // namespace spinsim
