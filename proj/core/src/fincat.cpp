#include "catprob/fincat.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "catprob/error.hpp"

namespace catprob {
namespace {

// Arrows grouped by domain object, as indices into cat.arrows. Makes the
// pair/triple sweeps proportional to the composable chains instead of n^2.
std::map<ObjId, std::vector<std::size_t>> arrows_by_dom(const FinCategory& cat) {
  std::map<ObjId, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < cat.arrows.size(); ++i) {
    out[cat.arrows[i].dom].push_back(i);
  }
  return out;
}

std::string arrow_sig(const Arrow& a) { return a.id + " : " + a.dom + " -> " + a.cod; }

}  // namespace

bool FinCategory::has_object(const ObjId& obj) const {
  return std::find(objects.begin(), objects.end(), obj) != objects.end();
}

bool FinCategory::has_arrow(const ArrowId& id) const {
  for (const auto& a : arrows) {
    if (a.id == id) return true;
  }
  return false;
}

const Arrow& FinCategory::arrow(const ArrowId& id) const {
  for (const auto& a : arrows) {
    if (a.id == id) return a;
  }
  throw Error("UnknownArrow", "no arrow named '" + id + "' in category '" + name + "'");
}

std::optional<ArrowId> FinCategory::composite(const ArrowId& g, const ArrowId& f) const {
  auto it = comp.find({g, f});
  if (it == comp.end()) return std::nullopt;
  return it->second;
}

ArrowId FinCategory::compose(const ArrowId& g, const ArrowId& f) const {
  const Arrow& ga = arrow(g);
  const Arrow& fa = arrow(f);
  if (fa.cod != ga.dom) {
    throw Error("DomainMismatch",
                "'" + g + "' after '" + f + "' is not composable in '" + name + "'");
  }
  auto it = comp.find({g, f});
  if (it == comp.end()) {
    throw Error("MalformedTable", "category '" + name + "' has no entry for '" + g +
                                      "' after '" + f + "'");
  }
  return it->second;
}

AuditReport validate_category(const FinCategory& cat) {
  // Structural audit first; a hole here makes the tables meaningless.
  {
    std::set<ObjId> seen;
    for (const auto& o : cat.objects) {
      if (!seen.insert(o).second) {
        throw Error("MalformedTable", "duplicate object '" + o + "' in '" + cat.name + "'");
      }
    }
  }
  std::map<ArrowId, const Arrow*> by_id;
  for (const auto& a : cat.arrows) {
    if (!by_id.emplace(a.id, &a).second) {
      throw Error("MalformedTable", "duplicate arrow '" + a.id + "' in '" + cat.name + "'");
    }
    if (!cat.has_object(a.dom)) {
      throw Error("MalformedTable", "arrow '" + a.id + "' has unknown domain '" + a.dom + "'");
    }
    if (!cat.has_object(a.cod)) {
      throw Error("MalformedTable", "arrow '" + a.id + "' has unknown codomain '" + a.cod + "'");
    }
  }
  for (const auto& o : cat.objects) {
    auto it = cat.ids.find(o);
    if (it == cat.ids.end()) {
      throw Error("MalformedTable", "no identity assigned to object '" + o + "'");
    }
    auto jt = by_id.find(it->second);
    if (jt == by_id.end()) {
      throw Error("MalformedTable",
                  "identity of '" + o + "' names unknown arrow '" + it->second + "'");
    }
    if (jt->second->dom != o || jt->second->cod != o) {
      throw Error("MalformedTable", "identity of '" + o + "' is not an endo-arrow on it");
    }
  }
  for (const auto& [o, a] : cat.ids) {
    if (!cat.has_object(o)) {
      throw Error("MalformedTable", "identity assigned to unknown object '" + o + "'");
    }
  }
  const auto by_dom = arrows_by_dom(cat);
  static const std::vector<std::size_t> kNone;
  const auto from = [&](const ObjId& o) -> const std::vector<std::size_t>& {
    auto it = by_dom.find(o);
    return it == by_dom.end() ? kNone : it->second;
  };
  for (const auto& f : cat.arrows) {
    for (std::size_t gi : from(f.cod)) {
      const Arrow& g = cat.arrows[gi];
      if (!cat.comp.count({g.id, f.id})) {
        throw Error("MalformedTable",
                    "missing composite '" + g.id + "' after '" + f.id + "'");
      }
    }
  }
  for (const auto& [key, val] : cat.comp) {
    auto git = by_id.find(key.first);
    auto fit = by_id.find(key.second);
    if (git == by_id.end() || fit == by_id.end()) {
      throw Error("MalformedTable", "composition entry mentions unknown arrow '" +
                                        (git == by_id.end() ? key.first : key.second) + "'");
    }
    if (fit->second->cod != git->second->dom) {
      throw Error("MalformedTable", "composition entry for non-composable pair '" +
                                        key.first + "' after '" + key.second + "'");
    }
    if (!by_id.count(val)) {
      throw Error("MalformedTable", "composite '" + key.first + "' after '" + key.second +
                                        "' names unknown arrow '" + val + "'");
    }
  }

  // Law audit: everything below is reported, not thrown.
  AuditReport report;
  for (const auto& [key, val] : cat.comp) {
    const Arrow& g = *by_id.at(key.first);
    const Arrow& f = *by_id.at(key.second);
    const Arrow& gf = *by_id.at(val);
    ++report.checked;
    if (gf.dom != f.dom || gf.cod != g.cod) {
      report.violations.push_back(
          {"endpoint", "'" + g.id + "' after '" + f.id + "' is " + arrow_sig(gf) +
                           ", expected " + f.dom + " -> " + g.cod});
    }
  }
  for (const auto& f : cat.arrows) {
    const ArrowId& id_dom = cat.ids.at(f.dom);
    const ArrowId& id_cod = cat.ids.at(f.cod);
    ++report.checked;
    if (auto r = cat.composite(f.id, id_dom); !r || *r != f.id) {
      report.violations.push_back(
          {"identity", "'" + f.id + "' after '" + id_dom + "' is '" + (r ? *r : "?") +
                           "', expected '" + f.id + "'"});
    }
    ++report.checked;
    if (auto l = cat.composite(id_cod, f.id); !l || *l != f.id) {
      report.violations.push_back(
          {"identity", "'" + id_cod + "' after '" + f.id + "' is '" + (l ? *l : "?") +
                           "', expected '" + f.id + "'"});
    }
  }
  for (const auto& f : cat.arrows) {
    for (std::size_t gi : from(f.cod)) {
      const Arrow& g = cat.arrows[gi];
      const ArrowId gf = cat.comp.at({g.id, f.id});
      for (std::size_t hi : from(g.cod)) {
        const Arrow& h = cat.arrows[hi];
        const ArrowId hg = cat.comp.at({h.id, g.id});
        ++report.checked;
        const auto lhs = cat.composite(h.id, gf);
        const auto rhs = cat.composite(hg, f.id);
        if (!lhs || !rhs || *lhs != *rhs) {
          report.violations.push_back(
              {"associativity", "at ('" + h.id + "', '" + g.id + "', '" + f.id +
                                    "'): h.(g.f) = '" + (lhs ? *lhs : "?") +
                                    "', (h.g).f = '" + (rhs ? *rhs : "?") + "'"});
        }
      }
    }
  }
  return report;
}

FinCategory opposite_category(const FinCategory& cat) {
  FinCategory op;
  op.name = cat.name + "_op";
  op.objects = cat.objects;
  op.arrows.reserve(cat.arrows.size());
  for (const auto& a : cat.arrows) op.arrows.push_back({a.id, a.cod, a.dom});
  op.ids = cat.ids;
  for (const auto& [key, val] : cat.comp) {
    op.comp[{key.second, key.first}] = val;
  }
  return op;
}

std::optional<ArrowId> find_inverse(const FinCategory& cat, const ArrowId& id) {
  const Arrow& f = cat.arrow(id);
  const ArrowId& id_dom = cat.ids.at(f.dom);
  const ArrowId& id_cod = cat.ids.at(f.cod);
  for (const auto& g : cat.arrows) {
    if (g.dom != f.cod || g.cod != f.dom) continue;
    const auto gf = cat.composite(g.id, f.id);
    const auto fg = cat.composite(f.id, g.id);
    if (gf && *gf == id_dom && fg && *fg == id_cod) return g.id;
  }
  return std::nullopt;
}

namespace {

std::map<std::pair<ObjId, ObjId>, std::size_t> hom_counts(const FinCategory& cat) {
  std::map<std::pair<ObjId, ObjId>, std::size_t> counts;
  for (const auto& a : cat.arrows) ++counts[{a.dom, a.cod}];
  return counts;
}

}  // namespace

std::vector<ObjId> initial_objects(const FinCategory& cat) {
  const auto counts = hom_counts(cat);
  std::vector<ObjId> out;
  for (const auto& i : cat.objects) {
    bool initial = true;
    for (const auto& a : cat.objects) {
      auto it = counts.find({i, a});
      if (it == counts.end() || it->second != 1) {
        initial = false;
        break;
      }
    }
    if (initial) out.push_back(i);
  }
  return out;
}

std::vector<ObjId> terminal_objects(const FinCategory& cat) {
  const auto counts = hom_counts(cat);
  std::vector<ObjId> out;
  for (const auto& t : cat.objects) {
    bool terminal = true;
    for (const auto& a : cat.objects) {
      auto it = counts.find({a, t});
      if (it == counts.end() || it->second != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) out.push_back(t);
  }
  return out;
}

FinCategory preorder_category(std::string name, const std::vector<std::string>& elements,
                              const std::function<bool(std::size_t, std::size_t)>& leq) {
  {
    std::set<std::string> seen;
    for (const auto& e : elements) {
      if (!seen.insert(e).second) {
        throw Error("MalformedTable", "duplicate object '" + e + "'");
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = leq(i, j) ? 1 : 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) {
      throw Error("NotPreorder", "relation is not reflexive at '" + elements[i] + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (rel[j][k] && !rel[i][k]) {
          throw Error("NotPreorder", "relation is not transitive at ('" + elements[i] +
                                         "', '" + elements[j] + "', '" + elements[k] + "')");
        }
      }
    }
  }

  const auto arrow_name = [&](std::size_t i, std::size_t j) {
    return "leq(" + elements[i] + "," + elements[j] + ")";
  };
  FinCategory cat;
  cat.name = std::move(name);
  cat.objects = elements;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[i][j]) cat.arrows.push_back({arrow_name(i, j), elements[i], elements[j]});
    }
  }
  for (std::size_t i = 0; i < n; ++i) cat.ids[elements[i]] = arrow_name(i, i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!rel[j][k]) continue;
        // (j<=k) after (i<=j) lands on the unique arrow i<=k
        cat.comp[{arrow_name(j, k), arrow_name(i, j)}] = arrow_name(i, k);
      }
    }
  }
  return cat;
}

ChiObject ChiObject::make(std::vector<std::vector<Label>> sub_atoms, RationalMeasure measure) {
  if (!measure.is_probability()) {
    throw Error("NotProbability", "chi objects carry a probability measure");
  }
  if (!is_sub_sigma_algebra(sub_atoms, measure.space().atom_labels())) {
    throw Error("NotMeasurable",
                "sub-atoms are not measurable in '" + measure.space().name() + "'");
  }
  for (auto& block : sub_atoms) std::sort(block.begin(), block.end());
  std::sort(sub_atoms.begin(), sub_atoms.end());
  return ChiObject(std::move(sub_atoms), std::move(measure));
}

bool chi_leq(const ChiObject& v, const ChiObject& u) {
  if (v.ambient() != u.ambient()) {
    throw Error("AmbientMismatch", "chi objects live on different ambient spaces");
  }
  return is_sub_sigma_algebra(v.sub_atoms(), u.sub_atoms()) &&
         absolutely_continuous(u.measure(), v.measure());
}

FinCategory chi_category(std::string name,
                         const std::vector<std::pair<std::string, ChiObject>>& objects) {
  for (std::size_t i = 1; i < objects.size(); ++i) {
    if (objects[i].second.ambient() != objects[0].second.ambient()) {
      throw Error("AmbientMismatch", "chi object '" + objects[i].first +
                                         "' lives on a different ambient space");
    }
  }
  std::vector<std::string> names;
  names.reserve(objects.size());
  for (const auto& [n, obj] : objects) names.push_back(n);
  return preorder_category(std::move(name), names, [&](std::size_t i, std::size_t j) {
    return chi_leq(objects[i].second, objects[j].second);
  });
}

namespace {

const ObjId& functor_object_image(const FinFunctor& fun, const ObjId& o) {
  auto it = fun.object_map.find(o);
  if (it == fun.object_map.end()) {
    throw Error("MalformedMap", "functor '" + fun.name + "' has no image for object '" + o + "'");
  }
  return it->second;
}

const ArrowId& functor_arrow_image(const FinFunctor& fun, const ArrowId& f) {
  auto it = fun.arrow_map.find(f);
  if (it == fun.arrow_map.end()) {
    throw Error("MalformedMap", "functor '" + fun.name + "' has no image for arrow '" + f + "'");
  }
  return it->second;
}

}  // namespace

AuditReport check_functor(const FinFunctor& fun) {
  for (const auto& o : fun.src.objects) {
    if (!fun.dst.has_object(functor_object_image(fun, o))) {
      throw Error("MalformedMap", "functor '" + fun.name + "' sends object '" + o +
                                      "' to unknown '" + fun.object_map.at(o) + "'");
    }
  }
  for (const auto& [o, img] : fun.object_map) {
    if (!fun.src.has_object(o)) {
      throw Error("MalformedMap",
                  "functor '" + fun.name + "' maps unknown object '" + o + "'");
    }
  }
  for (const auto& f : fun.src.arrows) {
    if (!fun.dst.has_arrow(functor_arrow_image(fun, f.id))) {
      throw Error("MalformedMap", "functor '" + fun.name + "' sends arrow '" + f.id +
                                      "' to unknown '" + fun.arrow_map.at(f.id) + "'");
    }
  }
  for (const auto& [f, img] : fun.arrow_map) {
    if (!fun.src.has_arrow(f)) {
      throw Error("MalformedMap", "functor '" + fun.name + "' maps unknown arrow '" + f + "'");
    }
  }

  AuditReport report;
  for (const auto& f : fun.src.arrows) {
    const Arrow& img = fun.dst.arrow(fun.arrow_map.at(f.id));
    ++report.checked;
    if (img.dom != fun.object_map.at(f.dom) || img.cod != fun.object_map.at(f.cod)) {
      report.violations.push_back(
          {"endpoint", "image of '" + f.id + "' is " + arrow_sig(img) + ", expected " +
                           fun.object_map.at(f.dom) + " -> " + fun.object_map.at(f.cod)});
    }
  }
  for (const auto& o : fun.src.objects) {
    ++report.checked;
    const ArrowId& lhs = fun.arrow_map.at(fun.src.ids.at(o));
    const ArrowId& rhs = fun.dst.ids.at(fun.object_map.at(o));
    if (lhs != rhs) {
      report.violations.push_back(
          {"identity", "image of identity at '" + o + "' is '" + lhs + "', expected '" +
                           rhs + "'"});
    }
  }
  const auto by_dom = arrows_by_dom(fun.src);
  for (const auto& f : fun.src.arrows) {
    auto it = by_dom.find(f.cod);
    if (it == by_dom.end()) continue;
    for (std::size_t gi : it->second) {
      const Arrow& g = fun.src.arrows[gi];
      ++report.checked;
      const ArrowId& lhs = fun.arrow_map.at(fun.src.compose(g.id, f.id));
      const auto rhs =
          fun.dst.composite(fun.arrow_map.at(g.id), fun.arrow_map.at(f.id));
      if (!rhs) {
        report.violations.push_back(
            {"composition", "images of '" + g.id + "' and '" + f.id +
                                "' do not compose in '" + fun.dst.name + "'"});
      } else if (*rhs != lhs) {
        report.violations.push_back(
            {"composition", "F('" + g.id + "' after '" + f.id + "') = '" + lhs +
                                "' but F(g) after F(f) = '" + *rhs + "'"});
      }
    }
  }
  return report;
}

AuditReport check_nat_trans(const NatTransformation& nat) {
  if (nat.from.src != nat.to.src || nat.from.dst != nat.to.dst) {
    throw Error("MalformedComponents",
                "'" + nat.name + "' connects functors that are not parallel");
  }
  const FinCategory& src = nat.from.src;
  const FinCategory& dst = nat.from.dst;
  for (const auto& o : src.objects) {
    auto it = nat.components.find(o);
    if (it == nat.components.end()) {
      throw Error("MalformedComponents",
                  "'" + nat.name + "' has no component at object '" + o + "'");
    }
    if (!dst.has_arrow(it->second)) {
      throw Error("MalformedComponents", "component at '" + o + "' names unknown arrow '" +
                                             it->second + "'");
    }
    const Arrow& comp = dst.arrow(it->second);
    const ObjId& want_dom = functor_object_image(nat.from, o);
    const ObjId& want_cod = functor_object_image(nat.to, o);
    if (comp.dom != want_dom || comp.cod != want_cod) {
      throw Error("MalformedComponents", "component at '" + o + "' is " + arrow_sig(comp) +
                                             ", expected " + want_dom + " -> " + want_cod);
    }
  }
  for (const auto& [o, a] : nat.components) {
    if (!src.has_object(o)) {
      throw Error("MalformedComponents",
                  "'" + nat.name + "' has a component at unknown object '" + o + "'");
    }
  }

  AuditReport report;
  for (const auto& f : src.arrows) {
    ++report.checked;
    const auto lhs =
        dst.composite(nat.components.at(f.cod), functor_arrow_image(nat.from, f.id));
    const auto rhs =
        dst.composite(functor_arrow_image(nat.to, f.id), nat.components.at(f.dom));
    if (!lhs || !rhs || *lhs != *rhs) {
      report.violations.push_back(
          {"naturality", "at '" + f.id + "': component after F(f) = '" +
                             (lhs ? *lhs : "?") + "', G(f) after component = '" +
                             (rhs ? *rhs : "?") + "'"});
    }
  }
  return report;
}

CpsFragment cps_fragment(std::string name, const std::vector<ProbSpace>& objects,
                         const std::vector<CandidateArrow>& arrows) {
  std::map<std::string, std::size_t> obj_index;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!obj_index.emplace(objects[i].name, i).second) {
      throw Error("MalformedTable", "duplicate object '" + objects[i].name + "'");
    }
    if (objects[i].measure.space() != objects[i].space) {
      throw Error("SpaceMismatch",
                  "object '" + objects[i].name + "': measure lives on a different space");
    }
  }

  struct Entry {
    ArrowId id;
    std::size_t dom;
    std::size_t cod;
    MeasurableMap map;
    Rat bound;
  };
  std::vector<Entry> kept;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t>
      by_shape;
  std::set<std::string> used_names;
  const auto unique_name = [&](std::string base) {
    if (used_names.insert(base).second) return base;
    for (int k = 2;; ++k) {
      std::string candidate = base + "_" + std::to_string(k);
      if (used_names.insert(candidate).second) return candidate;
    }
  };
  const auto add = [&](std::string base_name, std::size_t dom, std::size_t cod,
                       const MeasurableMap& map, Rat bound) {
    auto shape = std::make_tuple(dom, cod, map.graph());
    if (by_shape.count(shape)) return;
    Entry e{unique_name(std::move(base_name)), dom, cod, map, std::move(bound)};
    by_shape.emplace(std::move(shape), kept.size());
    kept.push_back(std::move(e));
  };

  std::vector<ArrowId> identity_of(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const MeasurableMap id = MeasurableMap::identity(objects[i].space);
    const auto bound = bounded_constant(id, objects[i].measure, objects[i].measure);
    add("id_" + objects[i].name, i, i, id, *bound);
    identity_of[i] = kept.back().id;
  }

  CpsFragment out;
  for (const auto& cand : arrows) {
    auto di = obj_index.find(cand.dom_obj);
    if (di == obj_index.end()) {
      throw Error("ResolveError", "unknown object '" + cand.dom_obj + "'");
    }
    auto ci = obj_index.find(cand.cod_obj);
    if (ci == obj_index.end()) {
      throw Error("ResolveError", "unknown object '" + cand.cod_obj + "'");
    }
    const ProbSpace& dob = objects[di->second];
    const ProbSpace& cob = objects[ci->second];
    if (cand.map.dom() != dob.space || cand.map.cod() != cob.space) {
      throw Error("SpaceMismatch",
                  "arrow '" + cand.name + "' does not match its endpoint spaces");
    }
    const auto bound = bounded_constant(cand.map, dob.measure, cob.measure);
    if (!bound) {
      out.rejected.push_back(cand.name);
      continue;
    }
    add(cand.name, di->second, ci->second, cand.map, *bound);
  }
  out.full = out.rejected.empty();

  // Close under composition; composites of bounded maps stay bounded.
  std::size_t before;
  do {
    before = kept.size();
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (kept[i].cod != kept[j].dom) continue;
        const MeasurableMap composed = compose_maps(kept[j].map, kept[i].map);
        if (by_shape.count({kept[i].dom, kept[j].cod, composed.graph()})) continue;
        const auto bound = bounded_constant(composed, objects[kept[i].dom].measure,
                                            objects[kept[j].cod].measure);
        if (!bound) {
          throw Error("InvariantError",
                      "composite of bounded maps has no bounding constant");
        }
        add(kept[j].id + "_o_" + kept[i].id, kept[i].dom, kept[j].cod, composed, *bound);
      }
    }
  } while (kept.size() != before);

  FinCategory& cat = out.category;
  cat.name = std::move(name);
  for (const auto& o : objects) cat.objects.push_back(o.name);
  for (const auto& e : kept) {
    cat.arrows.push_back({e.id, objects[e.dom].name, objects[e.cod].name});
    out.info.emplace(e.id,
                     CpsArrowInfo{objects[e.dom].name, objects[e.cod].name, e.map, e.bound});
  }
  for (std::size_t i = 0; i < objects.size(); ++i) cat.ids[objects[i].name] = identity_of[i];
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (kept[i].cod != kept[j].dom) continue;
      const MeasurableMap composed = compose_maps(kept[j].map, kept[i].map);
      const std::size_t target =
          by_shape.at({kept[i].dom, kept[j].cod, composed.graph()});
      cat.comp[{kept[j].id, kept[i].id}] = kept[target].id;
    }
  }
  return out;
}

}  // namespace catprob
