#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace socatt {

using Rng = std::mt19937_64;

/// Derives an independent seed for one stochastic component of a run.
///
/// Every random stream in the pipeline is keyed by (global seed, component
/// name, index) so that adding draws to one component never perturbs another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view component,
                          std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed, std::string_view component,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(seed, component, index));
}

}  // namespace socatt
