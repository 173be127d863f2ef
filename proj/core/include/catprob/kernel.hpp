#pragma once

#include <cstddef>
#include <vector>

#include "catprob/measure.hpp"

namespace catprob {

/// A stochastic (Markov) kernel between finite measurable spaces: one
/// probability law on the codomain per domain atom. Concretely a
/// row-stochastic rational matrix indexed by atoms, so composition is
/// exact matrix multiplication.
class StochKernel {
 public:
  /// rows[a] holds the transition weights out of dom atom a, one per cod
  /// atom. Throws ArityMismatch on shape errors, NegativeWeight on negative
  /// entries, RowNotNormalized when a row does not sum to exactly 1.
  static StochKernel make(FinSpace dom, FinSpace cod, std::vector<std::vector<Rat>> rows);

  /// Deterministic kernel of a measurable map: row a is the point mass at
  /// the image atom of a.
  static StochKernel deterministic(const MeasurableMap& f);

  static StochKernel identity(const FinSpace& space);

  const FinSpace& dom() const { return dom_; }
  const FinSpace& cod() const { return cod_; }
  const std::vector<std::vector<Rat>>& rows() const { return rows_; }
  const Rat& entry(std::size_t dom_atom, std::size_t cod_atom) const {
    return rows_[dom_atom][cod_atom];
  }

  /// Row a as a probability measure on the codomain.
  RationalMeasure row_measure(std::size_t dom_atom) const;

  friend bool operator==(const StochKernel& a, const StochKernel& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const StochKernel& a, const StochKernel& b) { return !(a == b); }

 private:
  StochKernel(FinSpace dom, FinSpace cod, std::vector<std::vector<Rat>> rows)
      : dom_(std::move(dom)), cod_(std::move(cod)), rows_(std::move(rows)) {}

  FinSpace dom_;
  FinSpace cod_;
  std::vector<std::vector<Rat>> rows_;
};

/// Chapman-Kolmogorov composite (u after t): the matrix product, i.e.
/// (u.t)(a, C) = sum_b t(a, b) u(b, C). Throws SpaceMismatch unless
/// t.cod() == u.dom() structurally.
StochKernel compose_kernels(const StochKernel& u, const StochKernel& t);

/// Bind of a probability measure through a kernel:
/// (m >>= t)(B) = sum_a m(a) t(a, B). Throws NotProbability unless m is a
/// probability measure, SpaceMismatch unless it lives on t's domain.
RationalMeasure kleisli_apply(const StochKernel& t, const RationalMeasure& m);

}  // namespace catprob
