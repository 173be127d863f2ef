#include "catprob/finspace.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace catprob {
namespace {

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

std::size_t sorted_index(const std::vector<Label>& sorted, const Label& value,
                         const std::string& context) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) {
    throw Error("UnknownPoint", "point '" + value + "' is not in " + context);
  }
  return static_cast<std::size_t>(it - sorted.begin());
}

std::string join_labels(const std::vector<Label>& labels) {
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  out += '}';
  return out;
}

bool is_measurable_graph(const FinSpace& dom, const FinSpace& cod,
                         const std::vector<std::size_t>& graph) {
  for (const auto& block : dom.atoms()) {
    const std::size_t target = cod.atom_of_point(graph[block.front()]);
    for (std::size_t idx : block) {
      if (cod.atom_of_point(graph[idx]) != target) return false;
    }
  }
  return true;
}

}  // namespace

FinSpace FinSpace::make(std::string name, std::vector<Label> points,
                        std::vector<std::vector<Label>> atoms) {
  if (points.empty()) {
    throw Error("PartitionError", "space '" + name + "' has no points");
  }
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] == points[i - 1]) {
      throw Error("PartitionError",
                  "duplicate point '" + points[i] + "' in space '" + name + "'");
    }
  }

  std::vector<std::vector<std::size_t>> blocks;
  blocks.reserve(atoms.size());
  for (const auto& atom : atoms) {
    if (atom.empty()) {
      throw Error("PartitionError", "empty atom in space '" + name + "'");
    }
    std::vector<std::size_t> block;
    block.reserve(atom.size());
    for (const auto& p : atom) block.push_back(sorted_index(points, p, "space '" + name + "'"));
    std::sort(block.begin(), block.end());
    for (std::size_t i = 1; i < block.size(); ++i) {
      if (block[i] == block[i - 1]) {
        throw Error("PartitionError", "point '" + points[block[i]] +
                                          "' repeated within an atom of '" + name + "'");
      }
    }
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end());

  std::vector<std::size_t> atom_of(points.size(), kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t idx : blocks[b]) {
      if (atom_of[idx] != kUnset) {
        throw Error("PartitionError", "point '" + points[idx] +
                                          "' lies in two atoms of '" + name + "'");
      }
      atom_of[idx] = b;
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (atom_of[i] == kUnset) {
      throw Error("PartitionError", "point '" + points[i] +
                                        "' is not covered by the atoms of '" + name + "'");
    }
  }

  FinSpace s;
  s.name_ = std::move(name);
  s.points_ = std::move(points);
  s.atoms_ = std::move(blocks);
  s.atom_of_ = std::move(atom_of);
  return s;
}

FinSpace FinSpace::discrete(std::string name, std::vector<Label> points) {
  std::vector<std::vector<Label>> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p});
  return make(std::move(name), std::move(points), std::move(atoms));
}

std::vector<std::vector<Label>> FinSpace::atom_labels() const {
  std::vector<std::vector<Label>> out;
  out.reserve(atoms_.size());
  for (const auto& block : atoms_) {
    std::vector<Label> labels;
    labels.reserve(block.size());
    for (std::size_t idx : block) labels.push_back(points_[idx]);
    out.push_back(std::move(labels));
  }
  return out;
}

std::size_t FinSpace::point_index(const Label& point) const {
  return sorted_index(points_, point, "space '" + name_ + "'");
}

bool FinSpace::has_point(const Label& point) const {
  return std::binary_search(points_.begin(), points_.end(), point);
}

std::optional<std::size_t> FinSpace::atom_index(const std::vector<Label>& members) const {
  std::vector<std::size_t> block;
  block.reserve(members.size());
  for (const auto& p : members) block.push_back(point_index(p));
  std::sort(block.begin(), block.end());
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if (atoms_[a] == block) return a;
  }
  return std::nullopt;
}

std::string FinSpace::atom_text(std::size_t atom_idx) const {
  std::vector<Label> labels;
  for (std::size_t idx : atoms_[atom_idx]) labels.push_back(points_[idx]);
  return join_labels(labels);
}

FinSpace FinSpace::renamed(std::string name) const {
  FinSpace copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

MeasurableSet MeasurableSet::from_atoms(const FinSpace& space,
                                        std::vector<std::size_t> atom_indices) {
  std::sort(atom_indices.begin(), atom_indices.end());
  atom_indices.erase(std::unique(atom_indices.begin(), atom_indices.end()),
                     atom_indices.end());
  for (std::size_t a : atom_indices) {
    if (a >= space.atom_count()) {
      throw Error("PartitionError", "atom index out of range in space '" + space.name() + "'");
    }
  }
  return MeasurableSet(space, std::move(atom_indices));
}

MeasurableSet MeasurableSet::from_points(const FinSpace& space,
                                         const std::vector<Label>& members) {
  std::vector<bool> chosen(space.point_count(), false);
  for (const auto& p : members) chosen[space.point_index(p)] = true;
  std::vector<std::size_t> atom_indices;
  for (std::size_t a = 0; a < space.atom_count(); ++a) {
    const auto& block = space.atoms()[a];
    std::size_t hit = 0;
    for (std::size_t idx : block) hit += chosen[idx] ? 1 : 0;
    if (hit == 0) continue;
    if (hit != block.size()) {
      throw Error("NotMeasurable", "set is not a union of atoms in '" + space.name() +
                                       "': it splits atom " + space.atom_text(a));
    }
    atom_indices.push_back(a);
  }
  return MeasurableSet(space, std::move(atom_indices));
}

MeasurableSet MeasurableSet::empty(const FinSpace& space) { return MeasurableSet(space, {}); }

MeasurableSet MeasurableSet::full(const FinSpace& space) {
  std::vector<std::size_t> all(space.atom_count());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
  return MeasurableSet(space, std::move(all));
}

std::vector<Label> MeasurableSet::members() const {
  std::vector<Label> out;
  for (std::size_t a : atom_indices_) {
    for (std::size_t idx : space_.atoms()[a]) out.push_back(space_.points()[idx]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool MeasurableSet::contains_atom(std::size_t atom_idx) const {
  return std::binary_search(atom_indices_.begin(), atom_indices_.end(), atom_idx);
}

MeasurableSet MeasurableSet::complement() const {
  std::vector<std::size_t> rest;
  for (std::size_t a = 0; a < space_.atom_count(); ++a) {
    if (!contains_atom(a)) rest.push_back(a);
  }
  return MeasurableSet(space_, std::move(rest));
}

std::string MeasurableSet::text() const { return join_labels(members()); }

MeasurableMap MeasurableMap::make(std::string name, FinSpace dom, FinSpace cod,
                                  const std::map<Label, Label>& assignment) {
  std::vector<std::size_t> graph(dom.point_count(), kUnset);
  for (const auto& [from, to] : assignment) {
    graph[dom.point_index(from)] = cod.point_index(to);
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (graph[i] == kUnset) {
      throw Error("ArityMismatch",
                  "map '" + name + "' has no image for point '" + dom.points()[i] + "'");
    }
  }

  std::vector<std::size_t> atom_image(dom.atom_count());
  for (std::size_t a = 0; a < dom.atom_count(); ++a) {
    const auto& block = dom.atoms()[a];
    const std::size_t target = cod.atom_of_point(graph[block.front()]);
    for (std::size_t idx : block) {
      if (cod.atom_of_point(graph[idx]) != target) {
        throw Error("NotMeasurable", "map '" + name + "' splits atom " + dom.atom_text(a) +
                                         " across atoms of '" + cod.name() + "'");
      }
    }
    atom_image[a] = target;
  }
  return MeasurableMap(std::move(name), std::move(dom), std::move(cod), std::move(graph),
                       std::move(atom_image));
}

MeasurableMap MeasurableMap::identity(const FinSpace& space) {
  std::map<Label, Label> assignment;
  for (const auto& p : space.points()) assignment[p] = p;
  return make("id_" + space.name(), space, space, assignment);
}

Label MeasurableMap::apply(const Label& point) const {
  return cod_.points()[graph_[dom_.point_index(point)]];
}

MeasurableSet MeasurableMap::preimage(const MeasurableSet& set) const {
  if (set.space() != cod_) {
    throw Error("SpaceMismatch",
                "preimage through '" + name_ + "' of a set on the wrong space");
  }
  std::vector<std::size_t> hit;
  for (std::size_t a = 0; a < dom_.atom_count(); ++a) {
    if (set.contains_atom(atom_image_[a])) hit.push_back(a);
  }
  return MeasurableSet::from_atoms(dom_, std::move(hit));
}

MeasurableMap compose_maps(const MeasurableMap& g, const MeasurableMap& f) {
  if (f.cod() != g.dom()) {
    throw Error("SpaceMismatch", "cannot compose '" + g.name() + "' after '" + f.name() +
                                     "': codomain/domain disagree");
  }
  std::map<Label, Label> assignment;
  for (std::size_t i = 0; i < f.dom().point_count(); ++i) {
    assignment[f.dom().points()[i]] =
        g.cod().points()[g.graph()[f.graph()[i]]];
  }
  return MeasurableMap::make(g.name() + "_o_" + f.name(), f.dom(), g.cod(), assignment);
}

std::vector<std::vector<Label>> sigma_closure(
    const std::vector<Label>& points, const std::vector<std::vector<Label>>& generators) {
  if (points.empty()) throw Error("PartitionError", "cannot close over an empty point set");
  std::vector<Label> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw Error("PartitionError", "duplicate point '" + sorted[i] + "'");
    }
  }

  // Two points belong to the same closure atom exactly when no generator
  // separates them, so the membership signature identifies the atom.
  std::vector<std::vector<char>> signature(sorted.size(),
                                           std::vector<char>(generators.size(), 0));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (const auto& p : generators[g]) {
      signature[sorted_index(sorted, p, "the closure point set")][g] = 1;
    }
  }

  std::map<std::vector<char>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < sorted.size(); ++i) groups[signature[i]].push_back(i);

  std::vector<std::vector<std::size_t>> blocks;
  blocks.reserve(groups.size());
  for (auto& [sig, block] : groups) blocks.push_back(std::move(block));
  std::sort(blocks.begin(), blocks.end());

  std::vector<std::vector<Label>> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    std::vector<Label> labels;
    labels.reserve(block.size());
    for (std::size_t idx : block) labels.push_back(sorted[idx]);
    out.push_back(std::move(labels));
  }
  return out;
}

bool is_sub_sigma_algebra(const std::vector<std::vector<Label>>& coarse,
                          const std::vector<std::vector<Label>>& fine) {
  const auto flatten = [](const std::vector<std::vector<Label>>& blocks) {
    std::vector<Label> all;
    for (const auto& block : blocks) {
      if (block.empty()) throw Error("PartitionError", "empty block in partition");
      all.insert(all.end(), block.begin(), block.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i] == all[i - 1]) {
        throw Error("PartitionError", "point '" + all[i] + "' appears twice in partition");
      }
    }
    if (all.empty()) throw Error("PartitionError", "empty partition");
    return all;
  };
  const std::vector<Label> coarse_points = flatten(coarse);
  const std::vector<Label> fine_points = flatten(fine);
  if (coarse_points != fine_points) {
    throw Error("MismatchedPoints", "partitions cover different point sets");
  }

  std::map<Label, std::size_t> coarse_of;
  for (std::size_t b = 0; b < coarse.size(); ++b) {
    for (const auto& p : coarse[b]) coarse_of[p] = b;
  }
  for (const auto& block : fine) {
    const std::size_t target = coarse_of[block.front()];
    for (const auto& p : block) {
      if (coarse_of[p] != target) return false;
    }
  }
  return true;
}

std::string pair_label(const Label& x, const Label& y) { return "(" + x + "," + y + ")"; }

FinSpace product_space(const FinSpace& x, const FinSpace& y) {
  std::vector<Label> points;
  points.reserve(x.point_count() * y.point_count());
  for (const auto& a : x.points()) {
    for (const auto& b : y.points()) points.push_back(pair_label(a, b));
  }
  std::vector<std::vector<Label>> atoms;
  atoms.reserve(x.atom_count() * y.atom_count());
  for (const auto& block_x : x.atoms()) {
    for (const auto& block_y : y.atoms()) {
      std::vector<Label> atom;
      atom.reserve(block_x.size() * block_y.size());
      for (std::size_t i : block_x) {
        for (std::size_t j : block_y) {
          atom.push_back(pair_label(x.points()[i], y.points()[j]));
        }
      }
      atoms.push_back(std::move(atom));
    }
  }
  return FinSpace::make(x.name() + "_x_" + y.name(), std::move(points), std::move(atoms));
}

MeasurableMap projection_first(const FinSpace& x, const FinSpace& y) {
  const FinSpace prod = product_space(x, y);
  std::map<Label, Label> assignment;
  for (const auto& a : x.points()) {
    for (const auto& b : y.points()) assignment[pair_label(a, b)] = a;
  }
  return MeasurableMap::make("p1", prod, x, assignment);
}

MeasurableMap projection_second(const FinSpace& x, const FinSpace& y) {
  const FinSpace prod = product_space(x, y);
  std::map<Label, Label> assignment;
  for (const auto& a : x.points()) {
    for (const auto& b : y.points()) assignment[pair_label(a, b)] = b;
  }
  return MeasurableMap::make("p2", prod, y, assignment);
}

MeasurableMap pairing(const FinSpace& x, const FinSpace& y, const MeasurableMap& f,
                      const MeasurableMap& g) {
  if (f.dom() != g.dom()) {
    throw Error("SpaceMismatch", "pairing needs a common domain for '" + f.name() +
                                     "' and '" + g.name() + "'");
  }
  if (f.cod() != x || g.cod() != y) {
    throw Error("SpaceMismatch", "pairing components must target the product factors");
  }
  const FinSpace prod = product_space(x, y);
  std::map<Label, Label> assignment;
  for (std::size_t i = 0; i < f.dom().point_count(); ++i) {
    const Label& z = f.dom().points()[i];
    assignment[z] = pair_label(x.points()[f.graph()[i]], y.points()[g.graph()[i]]);
  }
  return MeasurableMap::make("pairing", f.dom(), prod, assignment);
}

UniversalReport check_product_universal(const FinSpace& z, const FinSpace& x,
                                        const FinSpace& y, const MeasurableMap& f,
                                        const MeasurableMap& g, unsigned long long cap) {
  if (f.dom() != z || g.dom() != z) {
    throw Error("SpaceMismatch", "cone legs must share the apex domain");
  }
  if (f.cod() != x || g.cod() != y) {
    throw Error("SpaceMismatch", "cone legs must target the product factors");
  }
  const FinSpace prod = product_space(x, y);
  const MeasurableMap p1 = projection_first(x, y);
  const MeasurableMap p2 = projection_second(x, y);
  const MeasurableMap canonical = pairing(x, y, f, g);

  const std::size_t n = prod.point_count();
  const std::size_t k = z.point_count();
  unsigned long long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > cap / n) {
      throw Error("ExplosionGuard", "candidate map count exceeds cap " + std::to_string(cap));
    }
    total *= n;
  }

  UniversalReport report;
  report.candidate_count = total;
  std::vector<std::size_t> h(k, 0);
  std::vector<std::size_t> first_witness;
  while (true) {
    if (is_measurable_graph(z, prod, h)) {
      ++report.measurable_count;
      bool mediates = true;
      for (std::size_t i = 0; i < k && mediates; ++i) {
        mediates = p1.graph()[h[i]] == f.graph()[i] && p2.graph()[h[i]] == g.graph()[i];
      }
      if (mediates) {
        if (report.mediating_count == 0) first_witness = h;
        ++report.mediating_count;
      }
    }
    // odometer over all functions z -> x*y
    std::size_t pos = 0;
    while (pos < k && ++h[pos] == n) {
      h[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  report.witness_is_pairing =
      report.mediating_count > 0 && first_witness == canonical.graph();
  return report;
}

}  // namespace catprob
