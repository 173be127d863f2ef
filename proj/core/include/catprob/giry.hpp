#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catprob/kernel.hpp"
#include "catprob/lawcheck.hpp"
#include "catprob/measure.hpp"

namespace catprob {

/// A finitely supported probability measure on P(X), the space of
/// probability measures on X: distinct support measures with positive
/// weights summing to exactly 1.
///
/// Canonicalized on construction: zero weights are dropped (they carry no
/// support), duplicate support points are merged, and the support is sorted,
/// so equality is plain field comparison.
class MixMeasure {
 public:
  /// Throws ArityMismatch (support/weight count differ), SpaceMismatch
  /// (support measure on the wrong base), NotProbability (support measure
  /// not a probability), NegativeWeight, and NotNormalized when the weights
  /// do not sum to 1.
  static MixMeasure make(FinSpace base, std::vector<RationalMeasure> support,
                         std::vector<Rat> weights);

  /// Point mass at one measure P, i.e. the unit of the monad at level P(X).
  static MixMeasure dirac(const RationalMeasure& point);

  const FinSpace& base() const { return base_; }
  const std::vector<RationalMeasure>& support() const { return support_; }
  const std::vector<Rat>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  friend bool operator==(const MixMeasure& a, const MixMeasure& b) {
    return a.base_ == b.base_ && a.support_ == b.support_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const MixMeasure& a, const MixMeasure& b) { return !(a == b); }
  friend bool operator<(const MixMeasure& a, const MixMeasure& b);

 private:
  MixMeasure(FinSpace base, std::vector<RationalMeasure> support, std::vector<Rat> weights)
      : base_(std::move(base)), support_(std::move(support)), weights_(std::move(weights)) {}

  FinSpace base_;
  std::vector<RationalMeasure> support_;
  std::vector<Rat> weights_;
};

/// A finitely supported probability measure on P(P(X)), represented over
/// mixtures. Same canonical form and error contract as MixMeasure.
class MixMixMeasure {
 public:
  static MixMixMeasure make(FinSpace base, std::vector<MixMeasure> support,
                            std::vector<Rat> weights);

  const FinSpace& base() const { return base_; }
  const std::vector<MixMeasure>& support() const { return support_; }
  const std::vector<Rat>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  friend bool operator==(const MixMixMeasure& a, const MixMixMeasure& b) {
    return a.base_ == b.base_ && a.support_ == b.support_ && a.weights_ == b.weights_;
  }

 private:
  MixMixMeasure(FinSpace base, std::vector<MixMeasure> support, std::vector<Rat> weights)
      : base_(std::move(base)), support_(std::move(support)), weights_(std::move(weights)) {}

  FinSpace base_;
  std::vector<MixMeasure> support_;
  std::vector<Rat> weights_;
};

/// Unit of the monad: the point mass at `point`.
RationalMeasure giry_unit(const FinSpace& space, const Label& point);

/// Functor action on arrows, one level up: pushes every support measure of
/// the mixture forward along f (collisions merge). Throws SpaceMismatch
/// unless the mixture lives over f's domain.
MixMeasure giry_map(const MeasurableMap& f, const MixMeasure& mix);

/// Multiplication (barycenter): E(mix)(A) = sum_i w_i P_i(A).
RationalMeasure giry_mult(const MixMeasure& mix);

/// Multiplication at level P(X): flattens a measure on P(P(X)) into a
/// measure on P(X) by distributing the outer weights.
MixMeasure mix_flatten(const MixMixMeasure& mm);

/// Functor image of the multiplication, P(E): collapses each inner mixture
/// to its barycenter, keeping the outer weights.
MixMeasure map_mult(const MixMixMeasure& mm);

/// Evaluation functional: xi(theta, P) = integral of theta against P. With
/// theta the indicator of a measurable set F this is exactly P(F).
Rat xi(const RealObservable& theta, const RationalMeasure& p);

/// Preimage of a subset B of {0,1} under x -> delta_x(F), the evaluation of
/// the unit on a fixed measurable set F. The four cases: {1} gives F, {0}
/// gives the complement, both give the whole space, neither the empty set.
/// Always measurable, which is why the unit is a measurable map.
MeasurableSet unit_preimage_case(const MeasurableSet& f_set, bool contains_zero,
                                 bool contains_one);

/// One-line description of a measure's weights, for law-failure witnesses.
std::string measure_text(const RationalMeasure& m);
std::string mix_text(const MixMeasure& mix);

struct MonadLawReport {
  LawCheck left_unit;
  LawCheck right_unit;
  LawCheck assoc;

  bool all_ok() const { return left_unit.ok() && right_unit.ok() && assoc.ok(); }
};

/// Checks the three monad laws with exact equality.
///   left unit:  E(dirac(P)) = P
///   right unit: E(P(delta)(P)) = P, with P(delta)(P) the mixture of point
///               masses sum_A P(A) * dirac(x_A) over the atoms charged by P
///   assoc:      E(flatten(pi'')) = E(P(E)(pi'')) for second-level samples
/// Unit laws run over every support measure of every sample plus the point
/// masses at `unit_points`; assoc runs over the samples themselves.
MonadLawReport check_monad_laws(const FinSpace& space,
                                const std::vector<MixMixMeasure>& samples,
                                const std::vector<Label>& unit_points);

/// Naturality of the unit in f: delta after f equals P(f) after delta,
/// checked at every point of f's domain.
LawCheck check_unit_naturality(const MeasurableMap& f);

/// Naturality of the multiplication in f: E after P(P(f)) equals P(f) after
/// E. P(P(f)) acts on a mixture by pushing each support measure forward, so
/// each sample mixture stands for the point mass at itself.
LawCheck check_mult_naturality(const MeasurableMap& f, const std::vector<MixMeasure>& mixes);

}  // namespace catprob
