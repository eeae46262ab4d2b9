#pragma once

#include <cmath>

namespace breathing {

/// Vector in the local cylindrical basis (e_r, e_phi, e_z) at some point.
/// Only combine vectors that live at the same point.
struct Cyl3 {
    double r = 0.0;
    double phi = 0.0;
    double z = 0.0;

    constexpr Cyl3& operator+=(const Cyl3& o)
    {
        r += o.r;
        phi += o.phi;
        z += o.z;
        return *this;
    }
    constexpr Cyl3& operator-=(const Cyl3& o)
    {
        r -= o.r;
        phi -= o.phi;
        z -= o.z;
        return *this;
    }
    constexpr Cyl3& operator*=(double k)
    {
        r *= k;
        phi *= k;
        z *= k;
        return *this;
    }
    friend constexpr Cyl3 operator+(Cyl3 a, const Cyl3& b) { return a += b; }
    friend constexpr Cyl3 operator-(Cyl3 a, const Cyl3& b) { return a -= b; }
    friend constexpr Cyl3 operator*(Cyl3 a, double k) { return a *= k; }
    friend constexpr Cyl3 operator*(double k, Cyl3 a) { return a *= k; }

    double norm() const { return std::sqrt(r * r + phi * phi + z * z); }
};

constexpr double dot(const Cyl3& a, const Cyl3& b) { return a.r * b.r + a.phi * b.phi + a.z * b.z; }

/// Right-handed: e_r x e_phi = e_z.
constexpr Cyl3 cross(const Cyl3& a, const Cyl3& b)
{
    return {a.phi * b.z - a.z * b.phi, a.z * b.r - a.r * b.z, a.r * b.phi - a.phi * b.r};
}

struct Cart3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Rotate a cylindrical-basis vector at azimuth `phi` into Cartesian components.
inline Cart3 to_cartesian(const Cyl3& v, double phi)
{
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {v.r * c - v.phi * s, v.r * s + v.phi * c, v.z};
}

} // namespace breathing
