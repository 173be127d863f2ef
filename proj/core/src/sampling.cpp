#include "catprob/sampling.hpp"

#include <limits>

namespace catprob {

std::size_t SampleRng::below(std::size_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t b = bound;
  const std::uint64_t limit = (std::numeric_limits<std::uint64_t>::max() / b) * b;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return static_cast<std::size_t>(r % b);
}

FinSpace random_space(SampleRng& rng, std::size_t min_atoms, std::size_t max_atoms,
                      const std::string& name) {
  const std::size_t atoms = min_atoms + rng.below(max_atoms - min_atoms + 1);
  const std::size_t extra = rng.below(atoms + 1);
  const std::size_t n = atoms + extra;
  std::vector<Label> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
  std::vector<std::vector<Label>> blocks(atoms);
  for (std::size_t a = 0; a < atoms; ++a) blocks[a].push_back(points[a]);
  for (std::size_t i = atoms; i < n; ++i) blocks[rng.below(atoms)].push_back(points[i]);
  return FinSpace::make(name, std::move(points), std::move(blocks));
}

std::vector<Rat> random_prob_weights(SampleRng& rng, std::size_t n) {
  std::vector<std::size_t> numerators(n);
  std::size_t total = 0;
  while (total == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      numerators[i] = rng.below(9);
      total += numerators[i];
    }
  }
  std::vector<Rat> weights;
  weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights.emplace_back(static_cast<unsigned>(numerators[i]), static_cast<unsigned>(total));
  }
  return weights;
}

RationalMeasure random_prob_measure(SampleRng& rng, const FinSpace& space) {
  return RationalMeasure::make(space, random_prob_weights(rng, space.atom_count()),
                               MeasureKind::Probability);
}

RealObservable random_observable(SampleRng& rng, const FinSpace& space) {
  std::vector<Rat> values;
  values.reserve(space.atom_count());
  for (std::size_t a = 0; a < space.atom_count(); ++a) {
    const int numerator = static_cast<int>(rng.below(17)) - 8;
    const int denominator = static_cast<int>(rng.below(3)) + 1;
    values.emplace_back(numerator, denominator);
  }
  return RealObservable::make(space, std::move(values));
}

MeasurableMap random_map(SampleRng& rng, const FinSpace& dom, const FinSpace& cod,
                         const std::string& name) {
  std::map<Label, Label> assignment;
  for (std::size_t a = 0; a < dom.atom_count(); ++a) {
    const auto& target = cod.atoms()[rng.below(cod.atom_count())];
    for (std::size_t idx : dom.atoms()[a]) {
      assignment[dom.points()[idx]] = cod.points()[target[rng.below(target.size())]];
    }
  }
  return MeasurableMap::make(name, dom, cod, assignment);
}

StochKernel random_kernel(SampleRng& rng, const FinSpace& dom, const FinSpace& cod) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(dom.atom_count());
  for (std::size_t a = 0; a < dom.atom_count(); ++a) {
    rows.push_back(random_prob_weights(rng, cod.atom_count()));
  }
  return StochKernel::make(dom, cod, std::move(rows));
}

MixMeasure random_mix(SampleRng& rng, const FinSpace& space, std::size_t max_support) {
  const std::size_t k = 1 + rng.below(max_support);
  std::vector<RationalMeasure> support;
  support.reserve(k);
  for (std::size_t i = 0; i < k; ++i) support.push_back(random_prob_measure(rng, space));
  return MixMeasure::make(space, std::move(support), random_prob_weights(rng, k));
}

MixMixMeasure random_mix2(SampleRng& rng, const FinSpace& space, std::size_t max_support) {
  const std::size_t k = 1 + rng.below(max_support);
  std::vector<MixMeasure> support;
  support.reserve(k);
  for (std::size_t i = 0; i < k; ++i) support.push_back(random_mix(rng, space, max_support));
  return MixMixMeasure::make(space, std::move(support), random_prob_weights(rng, k));
}

StochLawReport run_stoch_law_suite(std::uint64_t seed, std::size_t samples) {
  StochLawReport report;
  SampleRng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const FinSpace x = random_space(rng, 2, 6, "X");
    const FinSpace y = random_space(rng, 2, 6, "Y");
    const FinSpace z = random_space(rng, 2, 6, "Z");
    const FinSpace w = random_space(rng, 2, 6, "W");
    const StochKernel t = random_kernel(rng, x, y);
    const StochKernel u = random_kernel(rng, y, z);
    const StochKernel v = random_kernel(rng, z, w);
    const std::string witness = "sample " + std::to_string(s);
    report.assoc.record(compose_kernels(v, compose_kernels(u, t)) ==
                            compose_kernels(compose_kernels(v, u), t),
                        witness);
    report.left_id.record(compose_kernels(StochKernel::identity(y), t) == t, witness);
    report.right_id.record(compose_kernels(t, StochKernel::identity(x)) == t, witness);
  }
  return report;
}

MonadLawReport run_monad_law_suite(std::uint64_t seed, std::size_t samples) {
  MonadLawReport total;
  SampleRng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const FinSpace space = random_space(rng, 1, 5, "S");
    const MixMixMeasure sample = random_mix2(rng, space, 4);
    const Label point = space.points()[rng.below(space.point_count())];
    const MonadLawReport one = check_monad_laws(space, {sample}, {point});
    total.left_unit.absorb(one.left_unit);
    total.right_unit.absorb(one.right_unit);
    total.assoc.absorb(one.assoc);
  }
  return total;
}

}  // namespace catprob
