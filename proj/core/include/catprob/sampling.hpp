#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catprob/giry.hpp"
#include "catprob/kernel.hpp"
#include "catprob/lawcheck.hpp"

namespace catprob {

/// Deterministic random source for the law suites. Draws come from a fixed
/// mt19937_64 stream reduced by rejection sampling only, so a seed produces
/// the same instances on every platform (std::uniform_int_distribution has
/// no such guarantee).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Unbiased uniform draw from [0, bound).
  std::size_t below(std::size_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Random space with between min_atoms and max_atoms atoms and up to as many
/// extra points again, each atom nonempty.
FinSpace random_space(SampleRng& rng, std::size_t min_atoms, std::size_t max_atoms,
                      const std::string& name);

/// Exact probability weights with small integer numerators over their sum.
/// Zero entries are possible (and wanted, for null-set coverage).
std::vector<Rat> random_prob_weights(SampleRng& rng, std::size_t n);

RationalMeasure random_prob_measure(SampleRng& rng, const FinSpace& space);
RealObservable random_observable(SampleRng& rng, const FinSpace& space);
MeasurableMap random_map(SampleRng& rng, const FinSpace& dom, const FinSpace& cod,
                         const std::string& name);
StochKernel random_kernel(SampleRng& rng, const FinSpace& dom, const FinSpace& cod);
MixMeasure random_mix(SampleRng& rng, const FinSpace& space, std::size_t max_support);
MixMixMeasure random_mix2(SampleRng& rng, const FinSpace& space, std::size_t max_support);

struct StochLawReport {
  LawCheck assoc;
  LawCheck left_id;
  LawCheck right_id;

  bool all_ok() const { return assoc.ok() && left_id.ok() && right_id.ok(); }
};

/// Samples composable kernel triples on fresh random spaces (2 to 6 atoms
/// each) and checks composition associativity plus both identity laws,
/// exactly.
StochLawReport run_stoch_law_suite(std::uint64_t seed, std::size_t samples);

/// Samples second-level mixtures on fresh random spaces (1 to 5 atoms,
/// support sizes up to 4 per level) and aggregates the monad law checks.
MonadLawReport run_monad_law_suite(std::uint64_t seed, std::size_t samples);

}  // namespace catprob
