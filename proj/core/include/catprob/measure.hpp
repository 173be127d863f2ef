#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "catprob/finspace.hpp"
#include "catprob/rational.hpp"

namespace catprob {

enum class MeasureKind { Finite, Probability };

/// An atom-measurable rational-valued function (a simple function): one
/// value per atom, any sign.
class RealObservable {
 public:
  /// Throws ArityMismatch unless there is exactly one value per atom.
  static RealObservable make(FinSpace space, std::vector<Rat> atom_values);

  const FinSpace& space() const { return space_; }
  const std::vector<Rat>& atom_values() const { return values_; }
  const Rat& value(std::size_t atom_idx) const { return values_[atom_idx]; }

  friend bool operator==(const RealObservable& a, const RealObservable& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  RealObservable(FinSpace space, std::vector<Rat> values)
      : space_(std::move(space)), values_(std::move(values)) {}

  FinSpace space_;
  std::vector<Rat> values_;
};

/// A nonnegative rational measure on a FinSpace, one weight per atom in
/// canonical atom order. Probability kind pins the total mass to exactly 1;
/// Finite kind allows any nonnegative total (including zero).
class RationalMeasure {
 public:
  /// Throws ArityMismatch (wrong weight count), NegativeWeight, and for the
  /// probability kind NotNormalized when the weights do not sum to 1.
  static RationalMeasure make(FinSpace space, std::vector<Rat> atom_weights,
                              MeasureKind kind);

  /// Point mass at `point`: assigns 1 to the atom containing it.
  static RationalMeasure dirac(const FinSpace& space, const Label& point);

  const FinSpace& space() const { return space_; }
  MeasureKind kind() const { return kind_; }
  bool is_probability() const { return kind_ == MeasureKind::Probability; }
  const std::vector<Rat>& atom_weights() const { return weights_; }
  const Rat& weight(std::size_t atom_idx) const { return weights_[atom_idx]; }

  /// Mass of a measurable set. Throws SpaceMismatch if the set lives on a
  /// structurally different space.
  Rat mass(const MeasurableSet& set) const;
  Rat total_mass() const;

  friend bool operator==(const RationalMeasure& a, const RationalMeasure& b) {
    return a.space_ == b.space_ && a.kind_ == b.kind_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const RationalMeasure& a, const RationalMeasure& b) {
    return !(a == b);
  }

  /// Canonical ordering of measures that share a space (weights, then kind).
  /// Used to keep mixture supports sorted deterministically.
  friend bool operator<(const RationalMeasure& a, const RationalMeasure& b);

 private:
  RationalMeasure(FinSpace space, std::vector<Rat> weights, MeasureKind kind)
      : space_(std::move(space)), weights_(std::move(weights)), kind_(kind) {}

  FinSpace space_;
  std::vector<Rat> weights_;
  MeasureKind kind_;
};

/// Image measure m(f^{-1}(.)). Throws SpaceMismatch unless m lives on
/// f's domain. Preserves total mass and kind.
RationalMeasure pushforward(const RationalMeasure& m, const MeasurableMap& f);

/// Scales a finite measure to total mass 1. Throws ZeroTotalMass when there
/// is nothing to scale.
RationalMeasure normalize(const RationalMeasure& m);

/// num << den: every den-null atom is num-null.
bool absolutely_continuous(const RationalMeasure& num, const RationalMeasure& den);

/// Exact integral of a simple function: sum of value(A) * m(A) over atoms.
Rat integrate(const RealObservable& obs, const RationalMeasure& m);

/// Least M >= 0 with p_dom(f^{-1}(B)) <= M * p_cod(B) for every measurable
/// B, or nullopt when no such constant exists (some p_cod-null set receives
/// positive preimage mass). It suffices to scan atoms: a ratio of sums never
/// exceeds the largest summand-wise ratio.
std::optional<Rat> bounded_constant(const MeasurableMap& f, const RationalMeasure& p_dom,
                                    const RationalMeasure& p_cod);

}  // namespace catprob
