#pragma once

#include <map>
#include <string>
#include <vector>

#include "catprob/fincat.hpp"
#include "catprob/giry.hpp"
#include "catprob/kernel.hpp"
#include "catprob/measure.hpp"

namespace catprob {

struct DeclRef {
  std::string kind;
  std::string name;
};

/// Every declaration of one source file, loaded and structurally validated:
/// names resolve, partitions partition, weights normalize, maps are total
/// and measurable, tables are complete. Equational laws (associativity,
/// functoriality, naturality) are deliberately not load concerns; the check
/// commands audit them, so a lawless but well-formed table still loads and
/// can be reported on.
struct Workspace {
  std::map<std::string, FinSpace> spaces;
  std::map<std::string, RationalMeasure> measures;
  std::map<std::string, MeasurableMap> maps;
  std::map<std::string, StochKernel> kernels;
  std::map<std::string, RealObservable> observables;
  std::map<std::string, MixMeasure> mixes;
  std::map<std::string, MixMixMeasure> mix2s;
  std::map<std::string, ChiObject> chis;
  std::map<std::string, FinCategory> categories;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, NatTransformation> nattranses;

  /// Declarations in source order.
  std::vector<DeclRef> order;

  /// Lookups throwing ResolveError on unknown names.
  const FinSpace& space(const std::string& name) const;
  const RationalMeasure& measure(const std::string& name) const;
  const MeasurableMap& map(const std::string& name) const;
  const StochKernel& kernel(const std::string& name) const;
  const RealObservable& observable(const std::string& name) const;
  const MixMeasure& mix(const std::string& name) const;
  const MixMixMeasure& mix2(const std::string& name) const;
  const ChiObject& chi(const std::string& name) const;
  const FinCategory& category(const std::string& name) const;
  const FinFunctor& functor(const std::string& name) const;
  const NatTransformation& nattrans(const std::string& name) const;
};

/// Parses declaration source. Syntax errors throw ParseError with a
/// "line:col:" prefix, unknown names ResolveError, and everything else is
/// delegated to the library constructors (PartitionError, NotMeasurable,
/// RowNotNormalized, MalformedTable, ...).
Workspace parse_workspace(const std::string& source);

/// Declaration printers; output re-parses to an equal object. The printed
/// name is a parameter so command results can print as "result".
std::string print_space(const FinSpace& space, const std::string& name);
std::string print_measure(const RationalMeasure& m, const std::string& name);
std::string print_observable(const RealObservable& obs, const std::string& name);
std::string print_map(const MeasurableMap& f, const std::string& name);
std::string print_kernel(const StochKernel& k, const std::string& name);
std::string print_category(const FinCategory& cat, const std::string& name);

}  // namespace catprob
