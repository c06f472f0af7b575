#pragma once

#include <cmath>

#include <boost/random/normal_distribution.hpp>

#include "rng.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
/*!
 * sin(2πu) and cos(2πu) for u ∈ [0, 1).
 *
 * Reduces to the nearest quarter turn and evaluates Taylor polynomials on
 * [−π/4, π/4]; truncation error is below 5e-17 there.
 */
inline void sincos_turns(double u, double& sine, double& cosine) noexcept
{
    double const q = 4.0 * u;
    // q is nonnegative, so truncation rounds to the nearest quarter turn.
    int const j = static_cast<int>(q + 0.5);
    double const x = (q - static_cast<double>(j)) * 1.5707963267948966192;
    double const x2 = x * x;
    double const s = x
                     * (1.0
                        + x2
                              * (-1.0 / 6
                                 + x2
                                       * (1.0 / 120
                                          + x2
                                                * (-1.0 / 5040
                                                   + x2
                                                         * (1.0 / 362880
                                                            + x2
                                                                  * (-1.0 / 39916800
                                                                     + x2
                                                                           * (1.0 / 6227020800.0
                                                                              + x2 * (-1.0 / 1307674368000.0))))))));
    double const c = 1.0
                     + x2
                           * (-1.0 / 2
                              + x2
                                    * (1.0 / 24
                                       + x2
                                             * (-1.0 / 720
                                                + x2
                                                      * (1.0 / 40320
                                                         + x2
                                                               * (-1.0 / 3628800
                                                                  + x2
                                                                        * (1.0 / 479001600.0
                                                                           + x2 * (-1.0 / 87178291200.0)))))));
    // Quadrant fix-up without branches; a random quadrant defeats prediction.
    int const quadrant = j & 3;
    bool const swap = quadrant & 1;
    double const sine_sign = quadrant & 2 ? -1.0 : 1.0;
    double const cosine_sign = (quadrant + 1) & 2 ? -1.0 : 1.0;
    sine = sine_sign * (swap ? c : s);
    cosine = cosine_sign * (swap ? s : c);
}

//---------------------------------------------------------------------------//
/*!
 * Gamma(shape, scale) variate by Marsaglia–Tsang squeeze-rejection.
 *
 * Shapes below one use the boost Gamma(shape+1)·U^{1/shape}.
 */
inline double sample_gamma(double shape, double scale, Xoshiro256& rng)
{
    double boost_factor = 1.0;
    if (shape < 1.0)
    {
        boost_factor = std::pow(uniform_open01(rng), 1.0 / shape);
        shape += 1.0;
    }
    double const d = shape - 1.0 / 3.0;
    double const c = 1.0 / std::sqrt(9.0 * d);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (;;)
    {
        double z = 0;
        double v = 0;
        do
        {
            z = normal(rng);
            v = 1.0 + c * z;
        } while (v <= 0);
        v = v * v * v;
        double const u = uniform_open01(rng);
        double const z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2 || std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
        {
            return d * v * scale * boost_factor;
        }
    }
}

}  // namespace stord
