#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catprob/measure.hpp"

namespace catprob {

using ObjId = std::string;
using ArrowId = std::string;

struct Arrow {
  ArrowId id;
  ObjId dom;
  ObjId cod;

  friend bool operator==(const Arrow& a, const Arrow& b) {
    return a.id == b.id && a.dom == b.dom && a.cod == b.cod;
  }
};

/// A finite category presented by explicit tables: objects, arrows with
/// endpoints, one identity arrow per object, and a composition table over
/// the composable pairs. Table keys are (outer, inner): comp[{g, f}] names
/// g after f.
///
/// The tables are plain data; validate_category audits them. Structural
/// holes (unknown names, missing identities, partial composition table)
/// throw MalformedTable there, while law failures (endpoints, identity,
/// associativity) come back as violations with witnesses.
struct FinCategory {
  std::string name;
  std::vector<ObjId> objects;
  std::vector<Arrow> arrows;
  std::map<ObjId, ArrowId> ids;
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> comp;

  bool has_object(const ObjId& obj) const;
  bool has_arrow(const ArrowId& id) const;

  /// Throws UnknownArrow.
  const Arrow& arrow(const ArrowId& id) const;

  /// Table lookup of g after f; nullopt when the pair has no entry.
  std::optional<ArrowId> composite(const ArrowId& g, const ArrowId& f) const;

  /// Composite g after f. Throws UnknownArrow on unknown ids, DomainMismatch
  /// when cod(f) != dom(g), MalformedTable when the entry is missing.
  ArrowId compose(const ArrowId& g, const ArrowId& f) const;

  /// Structural equality of all tables; the name is metadata.
  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects == b.objects && a.arrows == b.arrows && a.ids == b.ids &&
           a.comp == b.comp;
  }
  friend bool operator!=(const FinCategory& a, const FinCategory& b) { return !(a == b); }
};

struct Violation {
  std::string kind;
  std::string witness;
};

struct AuditReport {
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Audits the category laws: composition endpoints, identity laws and
/// associativity over every composable pair/triple. Structural defects
/// throw MalformedTable; law failures are reported.
AuditReport validate_category(const FinCategory& cat);

/// The category with the same objects, reversed arrows and transposed
/// composition table. Named "<name>_op". Involutive up to the name.
FinCategory opposite_category(const FinCategory& cat);

/// Two-sided inverse of an arrow, if one exists in the table.
/// Throws UnknownArrow when `id` is not an arrow.
std::optional<ArrowId> find_inverse(const FinCategory& cat, const ArrowId& id);

/// Objects with exactly one arrow to (resp. from) every object.
std::vector<ObjId> initial_objects(const FinCategory& cat);
std::vector<ObjId> terminal_objects(const FinCategory& cat);

/// The thin category of a preorder on `elements` (leq takes indices).
/// Arrows are named "leq(a,b)". Throws NotPreorder with a witness when leq
/// fails reflexivity or transitivity, MalformedTable on duplicate names.
FinCategory preorder_category(std::string name, const std::vector<std::string>& elements,
                              const std::function<bool(std::size_t, std::size_t)>& leq);

/// An object of the chi preorder: a sub-sigma-algebra of a finite ambient
/// space (given by its atom partition, necessarily a coarsening of the
/// ambient atoms) together with a probability measure on the ambient space.
class ChiObject {
 public:
  /// Throws NotProbability unless the measure is a probability measure,
  /// NotMeasurable when the blocks are not ambient-measurable, plus
  /// partition errors from the blocks themselves.
  static ChiObject make(std::vector<std::vector<Label>> sub_atoms, RationalMeasure measure);

  const std::vector<std::vector<Label>>& sub_atoms() const { return sub_atoms_; }
  const RationalMeasure& measure() const { return measure_; }
  const FinSpace& ambient() const { return measure_.space(); }

  friend bool operator==(const ChiObject& a, const ChiObject& b) {
    return a.sub_atoms_ == b.sub_atoms_ && a.measure_ == b.measure_;
  }

 private:
  ChiObject(std::vector<std::vector<Label>> sub_atoms, RationalMeasure measure)
      : sub_atoms_(std::move(sub_atoms)), measure_(std::move(measure)) {}

  std::vector<std::vector<Label>> sub_atoms_;
  RationalMeasure measure_;
};

/// The chi relation: v <= u when v's sigma-algebra is contained in u's and
/// u's measure is absolutely continuous with respect to v's. Throws
/// AmbientMismatch unless both objects share the ambient space.
bool chi_leq(const ChiObject& v, const ChiObject& u);

/// Thin category of the chi preorder over named objects on one ambient
/// space. Throws AmbientMismatch when the objects disagree on the ambient.
FinCategory chi_category(std::string name,
                         const std::vector<std::pair<std::string, ChiObject>>& objects);

/// Functor between table categories, also as tables.
struct FinFunctor {
  std::string name;
  FinCategory src;
  FinCategory dst;
  std::map<ObjId, ObjId> object_map;
  std::map<ArrowId, ArrowId> arrow_map;
};

/// Audits functoriality: endpoint preservation, identities, composites.
/// Structural holes in the maps (missing or unknown names) throw
/// MalformedMap.
AuditReport check_functor(const FinFunctor& fun);

/// Natural transformation between two parallel functors, as a component
/// table indexed by source objects.
struct NatTransformation {
  std::string name;
  FinFunctor from;
  FinFunctor to;
  std::map<ObjId, ArrowId> components;
};

/// Audits the naturality square for every source arrow. Throws
/// MalformedComponents when the component table is partial, mentions
/// unknown names, has mistyped components, or when the two functors are
/// not parallel.
AuditReport check_nat_trans(const NatTransformation& nat);

/// An object of the bounded-map category: a space with a distinguished
/// finite (or probability) measure.
struct ProbSpace {
  std::string name;
  FinSpace space;
  RationalMeasure measure;
};

/// A named candidate arrow between two ProbSpace objects.
struct CandidateArrow {
  std::string name;
  std::string dom_obj;
  std::string cod_obj;
  MeasurableMap map;
};

struct CpsArrowInfo {
  std::string dom_obj;
  std::string cod_obj;
  MeasurableMap map;
  Rat bound;
};

struct CpsFragment {
  FinCategory category;
  /// True when every supplied arrow admitted a bound and was kept.
  bool full = false;
  /// Supplied arrows rejected for having no bounding constant.
  std::vector<std::string> rejected;
  std::map<ArrowId, CpsArrowInfo> info;
};

/// Builds the full subcategory of measure-bounded maps generated by the
/// supplied arrows: keeps each candidate whose bounding constant exists,
/// adds identities, and closes under composition (composites are bounded
/// whenever the factors are; their product bounds them). Composite arrows
/// are named "g_o_f". Distinct objects may share a space, so arrows are
/// keyed by (dom object, cod object, graph).
///
/// Throws MalformedTable on duplicate object names, ResolveError on unknown
/// object references, SpaceMismatch when an arrow's map does not match its
/// endpoints' spaces.
CpsFragment cps_fragment(std::string name, const std::vector<ProbSpace>& objects,
                         const std::vector<CandidateArrow>& arrows);

}  // namespace catprob
