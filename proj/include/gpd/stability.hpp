#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpd/homology.hpp"

namespace gpd {

struct StabilityTrial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool interleaving_ok = false;
  std::string interleaving_failure;
  std::optional<Rational> erosion_b;  // nullopt = infinite
  bool continuity_ok = false;
  bool semicontinuity_checked = false;
  bool semicontinuity_ok = false;

  bool passed() const noexcept {
    return interleaving_ok && continuity_ok && (!semicontinuity_checked || semicontinuity_ok);
  }
};

struct StabilityReport {
  Rational eps;
  /// A quarter of the smallest gap between critical values; nullopt when
  /// there are fewer than two.
  std::optional<Rational> rho;
  std::vector<StabilityTrial> trials;

  bool passed() const noexcept;
};

std::optional<Rational> injectivity_quarter(const std::vector<Rational>& critical);

/// Per-trial seed derived from the run seed and the trial index.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

/// For each trial: perturb the filtration by eps, verify the inclusion
/// interleaving, require Dist_E of the type B diagrams to be <= eps and,
/// when eps < rho, require ∇^eps(F_A) -> G_A.
StabilityReport run_stability(const FilteredComplex& complex, std::size_t degree, const Coefficients& coefficients,
                              const Rational& eps, std::size_t trials, std::uint64_t seed);

}  // namespace gpd
