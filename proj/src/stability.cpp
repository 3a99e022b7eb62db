#include "gpd/stability.hpp"

#include <random>

#include "gpd/errors.hpp"
#include "gpd/metrics.hpp"

namespace gpd {

bool StabilityReport::passed() const noexcept {
  for (const auto& t : trials)
    if (!t.passed()) return false;
  return true;
}

std::optional<Rational> injectivity_quarter(const std::vector<Rational>& critical) {
  std::optional<Rational> gap;
  for (std::size_t i = 1; i < critical.size(); ++i) {
    Rational d = critical[i] - critical[i - 1];
    if (!gap || d < *gap) gap = d;
  }
  if (gap) *gap /= 4;
  return gap;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

StabilityReport run_stability(const FilteredComplex& complex, std::size_t degree, const Coefficients& coefficients,
                              const Rational& eps, std::size_t trials, std::uint64_t seed) {
  if (eps < 0) throw ValidationError("stability: eps must be nonnegative");
  HomologyEngine engine(complex, degree, coefficients);
  const std::vector<Rational> f = complex.values();
  const ConstructibleModule module_f = engine.module(f);
  const DiagramGrid f_b = type_B_diagram(module_f);

  StabilityReport report;
  report.eps = eps;
  report.rho = injectivity_quarter(module_f.critical());
  const bool semicontinuity = !report.rho || eps < *report.rho;
  std::optional<DiagramGrid> eroded_f_a;
  if (semicontinuity) eroded_f_a = erode(type_A_diagram(module_f), eps);

  for (std::size_t t = 0; t < trials; ++t) {
    StabilityTrial trial;
    trial.index = t;
    trial.seed = trial_seed(seed, t);
    const std::vector<Rational> g = perturb(complex, eps, trial.seed).values();
    const ConstructibleModule module_g = engine.module(g);

    const InterleavingCheck check =
        check_interleaving(module_f, module_g, inclusion_interleaving(engine, f, g, eps, module_f, module_g));
    trial.interleaving_ok = check.ok;
    trial.interleaving_failure = check.failure;

    trial.erosion_b = erosion_distance(f_b, type_B_diagram(module_g)).distance;
    trial.continuity_ok = trial.erosion_b && *trial.erosion_b <= eps;

    if (semicontinuity) {
      trial.semicontinuity_checked = true;
      trial.semicontinuity_ok = diagram_leq(*eroded_f_a, type_A_diagram(module_g));
    }
    report.trials.push_back(std::move(trial));
  }
  return report;
}

}  // namespace gpd
