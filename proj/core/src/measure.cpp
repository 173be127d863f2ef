#include "catprob/measure.hpp"

#include <algorithm>

#include "catprob/error.hpp"

namespace catprob {

RealObservable RealObservable::make(FinSpace space, std::vector<Rat> atom_values) {
  if (atom_values.size() != space.atom_count()) {
    throw Error("ArityMismatch", "observable on '" + space.name() + "' needs " +
                                     std::to_string(space.atom_count()) + " values, got " +
                                     std::to_string(atom_values.size()));
  }
  return RealObservable(std::move(space), std::move(atom_values));
}

RationalMeasure RationalMeasure::make(FinSpace space, std::vector<Rat> atom_weights,
                                      MeasureKind kind) {
  if (atom_weights.size() != space.atom_count()) {
    throw Error("ArityMismatch", "measure on '" + space.name() + "' needs " +
                                     std::to_string(space.atom_count()) + " weights, got " +
                                     std::to_string(atom_weights.size()));
  }
  Rat total = 0;
  for (std::size_t a = 0; a < atom_weights.size(); ++a) {
    if (atom_weights[a] < 0) {
      throw Error("NegativeWeight", "negative weight " + format_rational(atom_weights[a]) +
                                        " on atom " + space.atom_text(a));
    }
    total += atom_weights[a];
  }
  if (kind == MeasureKind::Probability && total != 1) {
    throw Error("NotNormalized",
                "probability weights sum to " + format_rational(total) + ", expected 1");
  }
  return RationalMeasure(std::move(space), std::move(atom_weights), kind);
}

RationalMeasure RationalMeasure::dirac(const FinSpace& space, const Label& point) {
  std::vector<Rat> weights(space.atom_count(), Rat(0));
  weights[space.atom_of_point(space.point_index(point))] = 1;
  return RationalMeasure(space, std::move(weights), MeasureKind::Probability);
}

Rat RationalMeasure::mass(const MeasurableSet& set) const {
  if (set.space() != space_) {
    throw Error("SpaceMismatch", "set and measure live on different spaces");
  }
  Rat total = 0;
  for (std::size_t a : set.atom_indices()) total += weights_[a];
  return total;
}

Rat RationalMeasure::total_mass() const {
  Rat total = 0;
  for (const Rat& w : weights_) total += w;
  return total;
}

bool operator<(const RationalMeasure& a, const RationalMeasure& b) {
  if (a.weights_ != b.weights_) {
    return std::lexicographical_compare(a.weights_.begin(), a.weights_.end(),
                                        b.weights_.begin(), b.weights_.end());
  }
  return a.kind_ < b.kind_;
}

RationalMeasure pushforward(const RationalMeasure& m, const MeasurableMap& f) {
  if (m.space() != f.dom()) {
    throw Error("SpaceMismatch",
                "measure does not live on the domain of '" + f.name() + "'");
  }
  std::vector<Rat> out(f.cod().atom_count(), Rat(0));
  for (std::size_t a = 0; a < f.dom().atom_count(); ++a) {
    out[f.image_atom(a)] += m.weight(a);
  }
  return RationalMeasure::make(f.cod(), std::move(out), m.kind());
}

RationalMeasure normalize(const RationalMeasure& m) {
  const Rat total = m.total_mass();
  if (total == 0) {
    throw Error("ZeroTotalMass", "cannot normalize the zero measure");
  }
  std::vector<Rat> out;
  out.reserve(m.atom_weights().size());
  for (const Rat& w : m.atom_weights()) out.push_back(w / total);
  return RationalMeasure::make(m.space(), std::move(out), MeasureKind::Probability);
}

bool absolutely_continuous(const RationalMeasure& num, const RationalMeasure& den) {
  if (num.space() != den.space()) {
    throw Error("SpaceMismatch", "absolute continuity needs a common space");
  }
  for (std::size_t a = 0; a < num.space().atom_count(); ++a) {
    if (den.weight(a) == 0 && num.weight(a) != 0) return false;
  }
  return true;
}

Rat integrate(const RealObservable& obs, const RationalMeasure& m) {
  if (obs.space() != m.space()) {
    throw Error("SpaceMismatch", "observable and measure live on different spaces");
  }
  Rat total = 0;
  for (std::size_t a = 0; a < m.space().atom_count(); ++a) {
    total += obs.value(a) * m.weight(a);
  }
  return total;
}

std::optional<Rat> bounded_constant(const MeasurableMap& f, const RationalMeasure& p_dom,
                                    const RationalMeasure& p_cod) {
  if (p_dom.space() != f.dom()) {
    throw Error("SpaceMismatch", "dom measure does not live on the domain of '" + f.name() + "'");
  }
  if (p_cod.space() != f.cod()) {
    throw Error("SpaceMismatch", "cod measure does not live on the codomain of '" + f.name() + "'");
  }
  std::vector<Rat> preimage_mass(f.cod().atom_count(), Rat(0));
  for (std::size_t a = 0; a < f.dom().atom_count(); ++a) {
    preimage_mass[f.image_atom(a)] += p_dom.weight(a);
  }
  Rat best = 0;
  for (std::size_t b = 0; b < f.cod().atom_count(); ++b) {
    if (p_cod.weight(b) == 0) {
      if (preimage_mass[b] != 0) return std::nullopt;
      continue;
    }
    const Rat ratio = preimage_mass[b] / p_cod.weight(b);
    if (ratio > best) best = ratio;
  }
  return best;
}

}  // namespace catprob
