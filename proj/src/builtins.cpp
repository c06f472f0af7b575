#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "stord/experiment.hpp"

namespace stord
{
namespace
{
// Intensities, cluster sizes and windows are chosen so every declared
// expectation is resolvable at n = 1e5 (see README, "Builtin experiments").
constexpr std::pair<char const*, char const*> builtins[] = {
    {"fig2_nakagami_pcp", R"(
name: fig2_nakagami_pcp
description: Thomas cluster interferers, Nakagami m=1 vs m=2, bounded path loss
seed: 20201
n_replicates: 100000
scenarios:
  - label: m1
    process: {type: thomas, parent_intensity: 0.1, mean_daughters: 2, sigma: 2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: nakagami, m: 1}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
  - label: m2
    process: {type: thomas, parent_intensity: 0.1, mean_daughters: 2, sigma: 2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: nakagami, m: 2}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: lt_curve, name: lt_interference, left: m1, right: m2, expect: LeftSmaller}
  - {kind: sir_cdf, name: sir, left: m2, right: m1, expect: LeftSmaller}
  - {kind: interference_cdf, name: interference, left: m1, right: m2, expect: Crossing}
)"},
    {"fig3_nakagami_ppp_singular", R"(
name: fig3_nakagami_ppp_singular
description: Poisson interferers, Nakagami m=1 vs m=2, singular path loss
seed: 20301
n_replicates: 100000
scenarios:
  - label: m1
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: nakagami, m: 1}
    pathloss: {a: 0, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
  - label: m2
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: nakagami, m: 2}
    pathloss: {a: 0, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: sir_cdf, name: sir, left: m2, right: m1, expect: LeftSmaller}
  - {kind: lt_curve, name: lt_interference, left: m1, right: m2, expect: LeftSmaller}
)"},
    {"fig4_pathloss_ppp", R"(
name: fig4_pathloss_ppp
description: Poisson interferers under delta=4, compensated delta=8 and plain delta=8 path loss
seed: 20401
n_replicates: 100000
scenarios:
  - label: g1
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
  - label: g2
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: auto(4), delta: 8}
    desired_fading: {type: rayleigh}
  - label: g3
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 8}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: sir_cdf, name: sir_g1_g2, left: g1, right: g2, expect: LeftSmaller}
  - {kind: sir_cdf, name: sir_g2_g3, left: g2, right: g3, expect: LeftSmaller}
  - {kind: lt_curve, name: lt_g2_g1, left: g2, right: g1, expect: LeftSmaller}
  - {kind: lt_curve, name: lt_g3_g2, left: g3, right: g2, expect: LeftSmaller}
  - {kind: mean_equal, name: mean_g1_g2, left: g1, right: g2}
)"},
    {"fig6_ppp_vs_pcp", R"(
name: fig6_ppp_vs_pcp
description: Thomas cluster vs Poisson interferers at equal intensity
seed: 20601
n_replicates: 100000
scenarios:
  - label: pcp
    process: {type: thomas, parent_intensity: 0.05, mean_daughters: 4, sigma: 1}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
  - label: ppp
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: lt_curve, name: lt_interference, left: pcp, right: ppp, expect: LeftSmaller}
  - {kind: sir_cdf, name: sir, left: ppp, right: pcp, expect: LeftSmaller}
  - {kind: mean_equal, name: mean_interference, left: pcp, right: ppp}
  - {kind: lf_probe, name: lf, left: pcp, right: ppp, expect: LeftSmaller}
)"},
    {"table1_capacity_pcp", R"(
name: table1_capacity_pcp
description: Ergodic capacity with Ricean desired link, Thomas cluster interferers
seed: 21101
n_replicates: 100000
scenarios:
  - label: k0
    process: {type: thomas, parent_intensity: 0.1, mean_daughters: 3, sigma: 2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: ricean, K: 0}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: ricean, K: 5}
  - label: k1
    process: {type: thomas, parent_intensity: 0.1, mean_daughters: 3, sigma: 2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: ricean, K: 1}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: ricean, K: 5}
comparisons:
  - {kind: capacity, name: capacity, left: k1, right: k0, expect: LeftSmaller, noise_levels: [0, 0.05, 0.1]}
)"},
    {"table2_capacity_ppp", R"(
name: table2_capacity_ppp
description: Ergodic capacity with Ricean desired link, Poisson interferers
seed: 21201
n_replicates: 100000
scenarios:
  - label: k0
    process: {type: ppp, intensity: 0.3}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: ricean, K: 0}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: ricean, K: 5}
  - label: k1
    process: {type: ppp, intensity: 0.3}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: ricean, K: 1}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: ricean, K: 5}
comparisons:
  - {kind: capacity, name: capacity, left: k1, right: k0, expect: LeftSmaller, noise_levels: [0, 0.05, 0.1]}
)"},
    {"thm6_mixed_poisson", R"(
name: thm6_mixed_poisson
description: Two-point mixed Poisson vs Poisson at equal mean intensity
seed: 20701
n_replicates: 100000
scenarios:
  - label: mpp
    process:
      type: mixed_poisson
      intensity: 0.2
      law: {type: discrete, atoms: [[0.1, 0.5], [0.3, 0.5]]}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
  - label: ppp
    process: {type: ppp, intensity: 0.2}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: lt_curve, name: lt_interference, left: mpp, right: ppp, expect: LeftSmaller}
  - {kind: sir_cdf, name: sir, left: ppp, right: mpp, expect: LeftSmaller}
)"},
    {"thm7_bpp_vs_ppp", R"(
name: thm7_bpp_vs_ppp
description: 100 uniform interferers in a disk of radius 10 vs Poisson with the same mean count
seed: 20801
n_replicates: 100000
scenarios:
  - label: bpp
    process: {type: binomial, count: 100, radius: 10}
    window: {dimension: 2, radius: 10}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 0.0001, delta: 4}
    desired_fading: {type: rayleigh}
  - label: ppp
    process: {type: ppp, intensity: 0.3183098861837907}
    window: {dimension: 2, radius: 10}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 0.0001, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: lt_curve, name: lt_interference, left: ppp, right: bpp, expect: LeftSmaller}
  - {kind: lf_probe, name: lf, left: ppp, right: bpp}
)"},
    {"oracle_eq15", R"(
name: oracle_eq15
description: Poisson interference under singular path loss against the closed-form transform
seed: 20001
n_replicates: 100000
scenarios:
  - label: ppp
    process: {type: ppp, intensity: 1}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 0, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: lt_oracle, name: lt_closed_form, left: ppp, s_values: [0.1, 1, 10], tolerance: 3, oracle: ppp_singular}
)"},
    {"oracle_campbell", R"(
name: oracle_campbell
description: Poisson interference mean against Campbell's theorem
seed: 20002
n_replicates: 100000
scenarios:
  - label: ppp
    process: {type: ppp, intensity: 1}
    window: {dimension: 2, radius: 40}
    interferer_fading: {type: rayleigh}
    pathloss: {a: 1, b: 1, delta: 4}
    desired_fading: {type: rayleigh}
comparisons:
  - {kind: mean_oracle, name: mean_campbell, left: ppp, tolerance: 0.01, oracle: campbell_infinite}
  - {kind: lt_oracle, name: lt_window, left: ppp, s_values: [0.1, 1, 10], tolerance: 3, oracle: ppp_window}
)"},
};

}  // namespace

std::vector<std::string> list_builtins()
{
    std::vector<std::string> names;
    for (auto const& [name, text] : builtins)
    {
        names.emplace_back(name);
    }
    return names;
}

bool is_builtin(std::string_view name)
{
    return std::any_of(std::begin(builtins), std::end(builtins), [&](auto const& b) { return name == b.first; });
}

ExperimentConfig builtin_config(std::string_view name)
{
    for (auto const& [key, text] : builtins)
    {
        if (name == key)
        {
            return parse_config(text, "builtin:" + std::string(key));
        }
    }
    throw std::invalid_argument("unknown builtin experiment '" + std::string(name) + "'");
}

}  // namespace stord
