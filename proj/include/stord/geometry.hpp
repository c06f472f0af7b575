#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace stord
{
//! Coordinates in up to three dimensions; unused trailing entries are zero.
using Point = std::array<double, 3>;

//---------------------------------------------------------------------------//
/*!
 * Observation window: the annulus guard_radius ≤ ‖x‖ ≤ radius in R^d.
 */
struct Window
{
    int dimension = 2;
    double radius = 40.0;
    double guard_radius = 0.0;

    //! Throws std::invalid_argument unless d ∈ {2,3} and 0 ≤ guard < R.
    void validate() const;

    //! d-dimensional volume of the annulus.
    double volume() const;

    bool contains_radius(double r) const
    {
        return r >= guard_radius && r <= radius;
    }

    bool operator==(Window const&) const = default;
};

inline double norm(Point const& p)
{
    return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

inline double norm_squared(Point const& p)
{
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
}

//! One realization of interferer locations.
struct PointPattern
{
    std::vector<Point> points;
    Window window;
    std::string process_label;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

}  // namespace stord
