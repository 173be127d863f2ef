#include "catprob/kernel.hpp"

#include "catprob/error.hpp"

namespace catprob {

StochKernel StochKernel::make(FinSpace dom, FinSpace cod,
                              std::vector<std::vector<Rat>> rows) {
  if (rows.size() != dom.atom_count()) {
    throw Error("ArityMismatch", "kernel from '" + dom.name() + "' needs " +
                                     std::to_string(dom.atom_count()) + " rows, got " +
                                     std::to_string(rows.size()));
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != cod.atom_count()) {
      throw Error("ArityMismatch", "row " + dom.atom_text(a) + " needs " +
                                       std::to_string(cod.atom_count()) + " entries, got " +
                                       std::to_string(rows[a].size()));
    }
    Rat total = 0;
    for (std::size_t b = 0; b < rows[a].size(); ++b) {
      if (rows[a][b] < 0) {
        throw Error("NegativeWeight", "negative entry " + format_rational(rows[a][b]) +
                                          " in row " + dom.atom_text(a));
      }
      total += rows[a][b];
    }
    if (total != 1) {
      throw Error("RowNotNormalized", "row " + dom.atom_text(a) + " sums to " +
                                          format_rational(total) + ", expected 1");
    }
  }
  return StochKernel(std::move(dom), std::move(cod), std::move(rows));
}

StochKernel StochKernel::deterministic(const MeasurableMap& f) {
  std::vector<std::vector<Rat>> rows(f.dom().atom_count(),
                                     std::vector<Rat>(f.cod().atom_count(), Rat(0)));
  for (std::size_t a = 0; a < f.dom().atom_count(); ++a) {
    rows[a][f.image_atom(a)] = 1;
  }
  return StochKernel(f.dom(), f.cod(), std::move(rows));
}

StochKernel StochKernel::identity(const FinSpace& space) {
  std::vector<std::vector<Rat>> rows(space.atom_count(),
                                     std::vector<Rat>(space.atom_count(), Rat(0)));
  for (std::size_t a = 0; a < space.atom_count(); ++a) rows[a][a] = 1;
  return StochKernel(space, space, std::move(rows));
}

RationalMeasure StochKernel::row_measure(std::size_t dom_atom) const {
  return RationalMeasure::make(cod_, rows_[dom_atom], MeasureKind::Probability);
}

StochKernel compose_kernels(const StochKernel& u, const StochKernel& t) {
  if (t.cod() != u.dom()) {
    throw Error("SpaceMismatch", "cannot compose: inner codomain and outer domain disagree");
  }
  const std::size_t n_a = t.dom().atom_count();
  const std::size_t n_b = t.cod().atom_count();
  const std::size_t n_c = u.cod().atom_count();
  std::vector<std::vector<Rat>> rows(n_a, std::vector<Rat>(n_c, Rat(0)));
  for (std::size_t a = 0; a < n_a; ++a) {
    for (std::size_t b = 0; b < n_b; ++b) {
      const Rat& step = t.entry(a, b);
      if (step == 0) continue;
      for (std::size_t c = 0; c < n_c; ++c) {
        rows[a][c] += step * u.entry(b, c);
      }
    }
  }
  return StochKernel::make(t.dom(), u.cod(), std::move(rows));
}

RationalMeasure kleisli_apply(const StochKernel& t, const RationalMeasure& m) {
  if (!m.is_probability()) {
    throw Error("NotProbability", "bind needs a probability measure");
  }
  if (m.space() != t.dom()) {
    throw Error("SpaceMismatch", "measure does not live on the kernel domain");
  }
  std::vector<Rat> out(t.cod().atom_count(), Rat(0));
  for (std::size_t a = 0; a < t.dom().atom_count(); ++a) {
    const Rat& w = m.weight(a);
    if (w == 0) continue;
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b] += w * t.entry(a, b);
    }
  }
  return RationalMeasure::make(t.cod(), std::move(out), MeasureKind::Probability);
}

}  // namespace catprob
