#pragma once

#include "tvc/core/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace tvc::dgp {

/**
 * Null-hypothesis designs for y_i = beta_1(t_i) + beta_2(t_i) x_{2i} + e_i with beta = 0.
 *
 *  A: x2 i.i.d. Exp(1), e i.i.d. N(0,1), independent.
 *  B: x2 i.i.d. Exp(1), e_i = x2_i * zeta_i (endogenous, conditionally heteroscedastic).
 *  C: x2_i Student-t with 5 + 10 t_i degrees of freedom (unscaled),
 *     e_i = exp(-1/t_i) / (100 t_i^4) * zeta_i (time-varying variance).
 *  D: x2_i = eps_i * eps_{i-1}, e_i = 0.5 e_{i-1} + zeta_i (AR(1), 200 burn-in steps).
 */
enum class Scenario { A, B, C, D };

Scenario parse_scenario(std::string_view text);
char scenario_letter(Scenario s) noexcept;

inline constexpr std::size_t kMinSimulationSize = 20;
inline constexpr std::size_t kArBurnIn = 200;

/// Deterministic in (s, n, seed). Throws Error(BadSize) for n < 20.
TimeSeriesSample simulate_scenario(Scenario s, std::size_t n, std::uint64_t seed);

}  // namespace tvc::dgp
