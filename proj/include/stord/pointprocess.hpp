#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace stord
{
//---------------------------------------------------------------------------//
// Process specifications
//---------------------------------------------------------------------------//

//! Stationary Poisson point process.
struct Poisson
{
    double intensity = 1.0;
    bool operator==(Poisson const&) const = default;
};

//! Daughter displacement kernel of a Neyman–Scott process.
struct Dispersion
{
    enum class Kind
    {
        gaussian,      //!< Thomas process, scale = σ
        uniform_disk,  //!< Matérn cluster process, scale = ρ
    };
    Kind kind = Kind::gaussian;
    double scale = 1.0;

    //! Parent window is extended by this many scale units.
    double extension_factor() const { return kind == Kind::gaussian ? 6.0 : 1.0; }

    bool operator==(Dispersion const&) const = default;
};

//! Poisson cluster process with Poisson(c) daughters per parent.
struct NeymanScott
{
    double parent_intensity = 0.1;
    double mean_daughters = 10.0;
    Dispersion dispersion;
    bool operator==(NeymanScott const&) const = default;
};

//! Finite mixture {(x_i, p_i)} for the random intensity.
struct DiscreteMixture
{
    std::vector<std::pair<double, double>> atoms;  //!< (intensity, weight)
    bool operator==(DiscreteMixture const&) const = default;
};

//! Gamma(shape k, scale θ) random intensity, mean kθ.
struct GammaMixture
{
    double shape = 1.0;
    double scale = 1.0;
    bool operator==(GammaMixture const&) const = default;
};

//! Poisson process whose intensity is drawn once per realization.
struct MixedPoisson
{
    std::variant<DiscreteMixture, GammaMixture> intensity_law;
    double intensity = 1.0;  //!< declared mean of intensity_law
    bool operator==(MixedPoisson const&) const = default;
};

//! Exactly N i.i.d. uniform points in B_0(r) (minus the guard ball).
struct Binomial
{
    std::int64_t count = 1;
    double radius = 1.0;
    bool operator==(Binomial const&) const = default;
};

using ProcessSpec = std::variant<Poisson, NeymanScott, MixedPoisson, Binomial>;

//! Throws std::invalid_argument when the spec violates its invariants.
void validate(ProcessSpec const& spec);

//! Short identifier used as PointPattern::process_label.
std::string process_label(ProcessSpec const& spec);

//! Mean number of points per unit volume inside the window.
double mean_intensity(ProcessSpec const& spec, Window const& window);

//! Mean of a mixture law.
double law_mean(MixedPoisson const& spec);

//---------------------------------------------------------------------------//
// Samplers
//---------------------------------------------------------------------------//

//! Uniform point on the window annulus by radial inversion.
Point sample_uniform_point(Window const& window, Xoshiro256& rng);

//! Uniform point on the annulus inner ≤ ‖x‖ ≤ outer.
Point sample_uniform_point(int dimension, double inner, double outer, Xoshiro256& rng);

PointPattern sample_ppp(double intensity, Window const& window, Xoshiro256& rng);
PointPattern sample_neyman_scott(NeymanScott const& spec,
                                 Window const& window,
                                 Xoshiro256& rng);
PointPattern sample_mixed_poisson(MixedPoisson const& spec,
                                  Window const& window,
                                  Xoshiro256& rng);
PointPattern sample_binomial(std::int64_t count,
                             double radius,
                             Window const& window,
                             Xoshiro256& rng);

//! Dispatch on the spec alternative.
PointPattern sample(ProcessSpec const& spec, Window const& window, Xoshiro256& rng);

//! Union of independent patterns on an identical window.
PointPattern superpose(std::span<PointPattern const> patterns);

//! CSV dump: comment line with label and seed, header x1..xd, one row per point.
void write_pattern_csv(std::ostream& os, PointPattern const& pattern, std::uint64_t seed);

}  // namespace stord
