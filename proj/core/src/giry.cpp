#include "catprob/giry.hpp"

#include <algorithm>

#include "catprob/error.hpp"

namespace catprob {
namespace {

// Shared canonicalization for both mixture levels: drop zero weights, sort
// the support, merge duplicates, then insist the total is exactly 1.
template <typename Point>
void canonicalize_mixture(std::vector<Point>& support, std::vector<Rat>& weights) {
  if (support.size() != weights.size()) {
    throw Error("ArityMismatch", "mixture has " + std::to_string(support.size()) +
                                     " support points but " + std::to_string(weights.size()) +
                                     " weights");
  }
  std::vector<std::size_t> order;
  Rat total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) {
      throw Error("NegativeWeight",
                  "negative mixture weight " + format_rational(weights[i]));
    }
    if (weights[i] == 0) continue;
    order.push_back(i);
    total += weights[i];
  }
  if (total != 1) {
    throw Error("NotNormalized",
                "mixture weights sum to " + format_rational(total) + ", expected 1");
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (support[a] < support[b]) return true;
    if (support[b] < support[a]) return false;
    return a < b;
  });

  std::vector<Point> merged_support;
  std::vector<Rat> merged_weights;
  for (std::size_t i : order) {
    if (!merged_support.empty() && merged_support.back() == support[i]) {
      merged_weights.back() += weights[i];
    } else {
      merged_support.push_back(support[i]);
      merged_weights.push_back(weights[i]);
    }
  }
  support = std::move(merged_support);
  weights = std::move(merged_weights);
}

}  // namespace

MixMeasure MixMeasure::make(FinSpace base, std::vector<RationalMeasure> support,
                            std::vector<Rat> weights) {
  for (const auto& p : support) {
    if (p.space() != base) {
      throw Error("SpaceMismatch", "mixture support measure does not live on '" +
                                       base.name() + "'");
    }
    if (!p.is_probability()) {
      throw Error("NotProbability", "mixture support must consist of probability measures");
    }
  }
  canonicalize_mixture(support, weights);
  return MixMeasure(std::move(base), std::move(support), std::move(weights));
}

MixMeasure MixMeasure::dirac(const RationalMeasure& point) {
  return make(point.space(), {point}, {Rat(1)});
}

bool operator<(const MixMeasure& a, const MixMeasure& b) {
  const std::size_t n = std::min(a.support_.size(), b.support_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.support_[i] < b.support_[i]) return true;
    if (b.support_[i] < a.support_[i]) return false;
  }
  if (a.support_.size() != b.support_.size()) {
    return a.support_.size() < b.support_.size();
  }
  return std::lexicographical_compare(a.weights_.begin(), a.weights_.end(),
                                      b.weights_.begin(), b.weights_.end());
}

MixMixMeasure MixMixMeasure::make(FinSpace base, std::vector<MixMeasure> support,
                                  std::vector<Rat> weights) {
  for (const auto& mix : support) {
    if (mix.base() != base) {
      throw Error("SpaceMismatch", "second-level support mixture does not live over '" +
                                       base.name() + "'");
    }
  }
  canonicalize_mixture(support, weights);
  return MixMixMeasure(std::move(base), std::move(support), std::move(weights));
}

RationalMeasure giry_unit(const FinSpace& space, const Label& point) {
  return RationalMeasure::dirac(space, point);
}

MixMeasure giry_map(const MeasurableMap& f, const MixMeasure& mix) {
  if (mix.base() != f.dom()) {
    throw Error("SpaceMismatch",
                "mixture does not live over the domain of '" + f.name() + "'");
  }
  std::vector<RationalMeasure> support;
  support.reserve(mix.size());
  for (const auto& p : mix.support()) support.push_back(pushforward(p, f));
  return MixMeasure::make(f.cod(), std::move(support), mix.weights());
}

RationalMeasure giry_mult(const MixMeasure& mix) {
  std::vector<Rat> out(mix.base().atom_count(), Rat(0));
  for (std::size_t i = 0; i < mix.size(); ++i) {
    const Rat& w = mix.weights()[i];
    for (std::size_t a = 0; a < out.size(); ++a) {
      out[a] += w * mix.support()[i].weight(a);
    }
  }
  return RationalMeasure::make(mix.base(), std::move(out), MeasureKind::Probability);
}

MixMeasure mix_flatten(const MixMixMeasure& mm) {
  std::vector<RationalMeasure> support;
  std::vector<Rat> weights;
  for (std::size_t i = 0; i < mm.size(); ++i) {
    const MixMeasure& inner = mm.support()[i];
    for (std::size_t j = 0; j < inner.size(); ++j) {
      support.push_back(inner.support()[j]);
      weights.push_back(mm.weights()[i] * inner.weights()[j]);
    }
  }
  return MixMeasure::make(mm.base(), std::move(support), std::move(weights));
}

MixMeasure map_mult(const MixMixMeasure& mm) {
  std::vector<RationalMeasure> support;
  support.reserve(mm.size());
  for (const auto& inner : mm.support()) support.push_back(giry_mult(inner));
  return MixMeasure::make(mm.base(), std::move(support), mm.weights());
}

Rat xi(const RealObservable& theta, const RationalMeasure& p) { return integrate(theta, p); }

MeasurableSet unit_preimage_case(const MeasurableSet& f_set, bool contains_zero,
                                 bool contains_one) {
  if (contains_zero && contains_one) return MeasurableSet::full(f_set.space());
  if (contains_one) return f_set;
  if (contains_zero) return f_set.complement();
  return MeasurableSet::empty(f_set.space());
}

std::string measure_text(const RationalMeasure& m) {
  std::string out = "(";
  for (std::size_t a = 0; a < m.atom_weights().size(); ++a) {
    if (a) out += ',';
    out += format_rational(m.weight(a));
  }
  out += ')';
  return out;
}

std::string mix_text(const MixMeasure& mix) {
  std::string out;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (i) out += " + ";
    out += format_rational(mix.weights()[i]);
    out += '*';
    out += measure_text(mix.support()[i]);
  }
  return out;
}

MonadLawReport check_monad_laws(const FinSpace& space,
                                const std::vector<MixMixMeasure>& samples,
                                const std::vector<Label>& unit_points) {
  MonadLawReport report;

  std::vector<RationalMeasure> level1;
  const auto add_level1 = [&](const RationalMeasure& p) {
    for (const auto& q : level1) {
      if (q == p) return;
    }
    level1.push_back(p);
  };
  for (const auto& mm : samples) {
    if (mm.base() != space) {
      throw Error("SpaceMismatch", "law sample does not live over '" + space.name() + "'");
    }
    for (const auto& mix : mm.support()) {
      for (const auto& p : mix.support()) add_level1(p);
    }
  }
  for (const auto& x : unit_points) add_level1(giry_unit(space, x));

  for (const auto& p : level1) {
    report.left_unit.record(giry_mult(MixMeasure::dirac(p)) == p,
                            "P = " + measure_text(p));

    std::vector<RationalMeasure> support;
    std::vector<Rat> weights;
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      if (p.weight(a) == 0) continue;
      support.push_back(giry_unit(space, space.points()[space.atoms()[a].front()]));
      weights.push_back(p.weight(a));
    }
    const MixMeasure decomposed = MixMeasure::make(space, std::move(support), std::move(weights));
    report.right_unit.record(giry_mult(decomposed) == p, "P = " + measure_text(p));
  }

  for (const auto& mm : samples) {
    const bool holds = giry_mult(mix_flatten(mm)) == giry_mult(map_mult(mm));
    std::string witness;
    for (std::size_t i = 0; i < mm.size(); ++i) {
      if (i) witness += " + ";
      witness += format_rational(mm.weights()[i]);
      witness += "*[";
      witness += mix_text(mm.support()[i]);
      witness += ']';
    }
    report.assoc.record(holds, witness);
  }
  return report;
}

LawCheck check_unit_naturality(const MeasurableMap& f) {
  LawCheck check;
  for (const auto& x : f.dom().points()) {
    const bool holds = pushforward(RationalMeasure::dirac(f.dom(), x), f) ==
                       RationalMeasure::dirac(f.cod(), f.apply(x));
    check.record(holds, "x = " + x);
  }
  return check;
}

LawCheck check_mult_naturality(const MeasurableMap& f, const std::vector<MixMeasure>& mixes) {
  LawCheck check;
  for (const auto& mix : mixes) {
    if (mix.base() != f.dom()) {
      throw Error("SpaceMismatch",
                  "mixture does not live over the domain of '" + f.name() + "'");
    }
    const bool holds = giry_mult(giry_map(f, mix)) == pushforward(giry_mult(mix), f);
    check.record(holds, mix_text(mix));
  }
  return check;
}

}  // namespace catprob
