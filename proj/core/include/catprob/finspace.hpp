#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catprob/error.hpp"

namespace catprob {

using Label = std::string;

/// A finite measurable space: a finite point set together with the atom
/// partition that generates its sigma-algebra. Measurable sets are exactly
/// the unions of atoms.
///
/// Points and atoms are held in canonical order (points lexicographic, each
/// atom sorted, atoms ordered by smallest member), so structural comparison
/// is plain field comparison. The name is metadata and is ignored by
/// operator==.
class FinSpace {
 public:
  /// Validates and canonicalizes. Throws PartitionError when the point list
  /// is empty or has duplicates, or when the atoms fail to partition the
  /// point set; UnknownPoint when an atom mentions a label that is not a
  /// point.
  static FinSpace make(std::string name, std::vector<Label> points,
                       std::vector<std::vector<Label>> atoms);

  /// Same point set with the discrete sigma-algebra (singleton atoms).
  static FinSpace discrete(std::string name, std::vector<Label> points);

  const std::string& name() const { return name_; }
  const std::vector<Label>& points() const { return points_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t atom_count() const { return atoms_.size(); }

  /// Atom blocks as sorted point-index lists, in canonical order.
  const std::vector<std::vector<std::size_t>>& atoms() const { return atoms_; }

  /// Atom blocks as label lists (convenience for reporting and printing).
  std::vector<std::vector<Label>> atom_labels() const;

  /// Index of a point label. Throws UnknownPoint if absent.
  std::size_t point_index(const Label& point) const;
  bool has_point(const Label& point) const;

  /// Index of the atom containing the given point (by point index).
  std::size_t atom_of_point(std::size_t point_idx) const { return atom_of_[point_idx]; }

  /// Index of the atom whose member set equals `members` exactly, if any.
  /// There are no implicit unions: a near miss is nullopt.
  std::optional<std::size_t> atom_index(const std::vector<Label>& members) const;

  /// Text form of one atom, e.g. "{b,c}".
  std::string atom_text(std::size_t atom_idx) const;

  FinSpace renamed(std::string name) const;

  /// Structural equality: same points and same atom partition. Names are
  /// not compared.
  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.points_ == b.points_ && a.atoms_ == b.atoms_;
  }
  friend bool operator!=(const FinSpace& a, const FinSpace& b) { return !(a == b); }

 private:
  FinSpace() = default;

  std::string name_;
  std::vector<Label> points_;
  std::vector<std::vector<std::size_t>> atoms_;
  std::vector<std::size_t> atom_of_;
};

/// A measurable set of a FinSpace: a union of atoms, stored as a sorted list
/// of atom indices.
class MeasurableSet {
 public:
  static MeasurableSet from_atoms(const FinSpace& space, std::vector<std::size_t> atom_indices);

  /// Builds the set from explicit member points. Throws NotMeasurable if the
  /// members are not exactly a union of atoms, UnknownPoint on bad labels.
  static MeasurableSet from_points(const FinSpace& space, const std::vector<Label>& members);

  static MeasurableSet empty(const FinSpace& space);
  static MeasurableSet full(const FinSpace& space);

  const FinSpace& space() const { return space_; }
  const std::vector<std::size_t>& atom_indices() const { return atom_indices_; }
  std::vector<Label> members() const;
  bool contains_atom(std::size_t atom_idx) const;
  bool is_empty() const { return atom_indices_.empty(); }
  bool is_full() const { return atom_indices_.size() == space_.atom_count(); }

  MeasurableSet complement() const;

  std::string text() const;

  /// Structural equality of carrier space plus the same atoms.
  friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
    return a.space_ == b.space_ && a.atom_indices_ == b.atom_indices_;
  }
  friend bool operator!=(const MeasurableSet& a, const MeasurableSet& b) { return !(a == b); }

 private:
  MeasurableSet(FinSpace space, std::vector<std::size_t> atom_indices)
      : space_(std::move(space)), atom_indices_(std::move(atom_indices)) {}

  FinSpace space_;
  std::vector<std::size_t> atom_indices_;
};

/// A measurable function between finite measurable spaces, stored as a total
/// point map. Measurability here is equivalent to each domain atom landing
/// inside a single codomain atom, which `make` enforces.
class MeasurableMap {
 public:
  /// Throws ArityMismatch when the assignment is not total over dom's
  /// points, UnknownPoint on labels outside dom/cod, NotMeasurable (with the
  /// offending atom as witness) when some atom's image straddles codomain
  /// atoms.
  static MeasurableMap make(std::string name, FinSpace dom, FinSpace cod,
                            const std::map<Label, Label>& assignment);

  static MeasurableMap identity(const FinSpace& space);

  const std::string& name() const { return name_; }
  const FinSpace& dom() const { return dom_; }
  const FinSpace& cod() const { return cod_; }

  /// graph()[i] is the cod point index of dom point i.
  const std::vector<std::size_t>& graph() const { return graph_; }

  Label apply(const Label& point) const;
  std::size_t apply_index(std::size_t point_idx) const { return graph_[point_idx]; }

  /// The codomain atom that dom atom `dom_atom_idx` maps into.
  std::size_t image_atom(std::size_t dom_atom_idx) const { return atom_image_[dom_atom_idx]; }

  /// Preimage of a measurable set; always measurable.
  MeasurableSet preimage(const MeasurableSet& set) const;

  /// Equality is dom, cod and graph; the name is metadata.
  friend bool operator==(const MeasurableMap& a, const MeasurableMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.graph_ == b.graph_;
  }
  friend bool operator!=(const MeasurableMap& a, const MeasurableMap& b) { return !(a == b); }

 private:
  MeasurableMap(std::string name, FinSpace dom, FinSpace cod, std::vector<std::size_t> graph,
                std::vector<std::size_t> atom_image)
      : name_(std::move(name)),
        dom_(std::move(dom)),
        cod_(std::move(cod)),
        graph_(std::move(graph)),
        atom_image_(std::move(atom_image)) {}

  std::string name_;
  FinSpace dom_;
  FinSpace cod_;
  std::vector<std::size_t> graph_;
  std::vector<std::size_t> atom_image_;
};

/// g after f. Throws SpaceMismatch unless f.cod() == g.dom() structurally.
MeasurableMap compose_maps(const MeasurableMap& g, const MeasurableMap& f);

/// Coarsest partition of `points` whose sigma-algebra contains every
/// generator set: points are identified when no generator separates them.
/// Generators may be arbitrary subsets. Throws UnknownPoint on stray labels,
/// PartitionError on an empty or duplicated point list.
std::vector<std::vector<Label>> sigma_closure(const std::vector<Label>& points,
                                              const std::vector<std::vector<Label>>& generators);

/// True when every block of `coarse` is a union of blocks of `fine`, i.e.
/// the sigma-algebra generated by `coarse` is contained in the one generated
/// by `fine`. Both arguments must be partitions of the same point set;
/// throws PartitionError / MismatchedPoints otherwise.
bool is_sub_sigma_algebra(const std::vector<std::vector<Label>>& coarse,
                          const std::vector<std::vector<Label>>& fine);

/// Canonical label of a product point.
std::string pair_label(const Label& x, const Label& y);

/// Product space: points are pair labels "(x,y)", atoms are products of
/// atoms (the product sigma-algebra of two finite spaces).
FinSpace product_space(const FinSpace& x, const FinSpace& y);

MeasurableMap projection_first(const FinSpace& x, const FinSpace& y);
MeasurableMap projection_second(const FinSpace& x, const FinSpace& y);

/// The canonical mediating map z -> (f(z), g(z)). Throws SpaceMismatch
/// unless f and g share a domain and target x resp. y.
MeasurableMap pairing(const FinSpace& x, const FinSpace& y, const MeasurableMap& f,
                      const MeasurableMap& g);

/// Exhaustive universal-property audit for a cone (z, f, g) over x and y:
/// enumerates every function z -> x*y, counts the measurable ones and the
/// mediators (measurable h with p1.h = f and p2.h = g), and checks that the
/// unique mediator is the pairing.
struct UniversalReport {
  unsigned long long candidate_count = 0;
  unsigned long long measurable_count = 0;
  unsigned long long mediating_count = 0;
  bool witness_is_pairing = false;

  bool holds() const { return mediating_count == 1 && witness_is_pairing; }
};

/// Throws ExplosionGuard when |x*y|^|z| exceeds `cap` candidates.
UniversalReport check_product_universal(const FinSpace& z, const FinSpace& x, const FinSpace& y,
                                        const MeasurableMap& f, const MeasurableMap& g,
                                        unsigned long long cap = 1000000);

}  // namespace catprob
