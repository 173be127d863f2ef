#pragma once

// Brute-force reference implementations the library results are checked
// against. Everything here recomputes from definitions, independently of
// the code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <catprob/error.hpp>
#include <catprob/finspace.hpp>
#include <catprob/measure.hpp>
#include <catprob/rational.hpp>

namespace testsupport {

using catprob::Label;
using catprob::Rat;

// Closes the generating family under complement and pairwise union until it
// stabilizes, then reads the atom of each point off as the intersection of
// all family members containing it.
inline std::vector<std::vector<Label>> oracle_sigma_closure(
    std::vector<Label> points, const std::vector<std::vector<Label>>& generators) {
  std::sort(points.begin(), points.end());
  using Set = std::set<Label>;
  std::set<Set> family;
  family.insert(Set(points.begin(), points.end()));
  family.insert(Set{});
  for (const auto& g : generators) family.insert(Set(g.begin(), g.end()));
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Set> snapshot(family.begin(), family.end());
    for (const auto& s : snapshot) {
      Set comp;
      for (const auto& p : points)
        if (!s.count(p)) comp.insert(p);
      if (family.insert(comp).second) grew = true;
      for (const auto& t : snapshot) {
        Set u = s;
        u.insert(t.begin(), t.end());
        if (family.insert(u).second) grew = true;
      }
    }
  }
  std::vector<std::vector<Label>> atoms;
  std::set<Set> seen;
  for (const auto& p : points) {
    Set inter(points.begin(), points.end());
    for (const auto& s : family) {
      if (!s.count(p)) continue;
      Set keep;
      for (const auto& q : inter)
        if (s.count(q)) keep.insert(q);
      inter = std::move(keep);
    }
    if (seen.insert(inter).second) atoms.emplace_back(inter.begin(), inter.end());
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

// A point function is measurable iff the preimage of every measurable set of
// the codomain is measurable, enumerated over all 2^atoms codomain sets.
inline bool oracle_is_measurable(const catprob::FinSpace& dom, const catprob::FinSpace& cod,
                                 const std::vector<std::size_t>& graph) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cod.atom_count()); ++mask) {
    for (const auto& atom : dom.atoms()) {
      bool some = false;
      bool all = true;
      for (const auto idx : atom) {
        const std::size_t target = cod.atom_of_point(graph[idx]);
        if (mask & (std::uint64_t{1} << target)) {
          some = true;
        } else {
          all = false;
        }
      }
      if (some && !all) return false;
    }
  }
  return true;
}

// Minimal M with p_dom(f^{-1}(A)) <= M * p_cod(A), scanned over all
// 2^atoms measurable sets A of the codomain; absent when some p_cod-null
// set carries positive preimage mass.
inline std::optional<Rat> oracle_bounded_constant(const catprob::MeasurableMap& f,
                                                  const catprob::RationalMeasure& p_dom,
                                                  const catprob::RationalMeasure& p_cod) {
  const std::size_t n = f.cod().atom_count();
  Rat best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Rat cod_mass = 0;
    Rat dom_mass = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (mask & (std::uint64_t{1} << a)) cod_mass += p_cod.weight(a);
    for (std::size_t a = 0; a < f.dom().atom_count(); ++a)
      if (mask & (std::uint64_t{1} << f.image_atom(a))) dom_mass += p_dom.weight(a);
    if (cod_mass == 0) {
      if (dom_mass != 0) return std::nullopt;
    } else {
      Rat ratio = dom_mass / cod_mass;
      if (ratio > best) best = std::move(ratio);
    }
  }
  return best;
}

namespace detail {
inline void partitions_rec(std::size_t i, std::size_t n, std::vector<std::size_t>& assign,
                           std::size_t used,
                           std::vector<std::vector<std::vector<std::size_t>>>& out) {
  if (i == n) {
    std::vector<std::vector<std::size_t>> blocks(used);
    for (std::size_t k = 0; k < n; ++k) blocks[assign[k]].push_back(k);
    out.push_back(std::move(blocks));
    return;
  }
  for (std::size_t b = 0; b <= used; ++b) {
    assign[i] = b;
    partitions_rec(i + 1, n, assign, std::max(used, b + 1), out);
  }
}
}  // namespace detail

// All set partitions of {0,...,n-1}, each as a list of index blocks.
inline std::vector<std::vector<std::vector<std::size_t>>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::size_t> assign(n, 0);
  detail::partitions_rec(0, n, assign, 0, out);
  return out;
}

// All ways to write `total` as an ordered sum of n nonnegative integers.
inline std::vector<std::vector<unsigned>> compositions(unsigned total, std::size_t n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current(n, 0);
  const auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == n) {
      current[i] = remaining;
      out.push_back(current);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      current[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  if (n > 0) rec(rec, 0, total);
  return out;
}

inline catprob::FinSpace space_from_partition(
    std::string name, const std::vector<Label>& points,
    const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<std::vector<Label>> atoms;
  atoms.reserve(blocks.size());
  for (const auto& block : blocks) {
    std::vector<Label> labels;
    labels.reserve(block.size());
    for (const auto idx : block) labels.push_back(points[idx]);
    atoms.push_back(std::move(labels));
  }
  return catprob::FinSpace::make(std::move(name), points, atoms);
}

// Runs fn and reports the code of the Error it throws, "" if none.
template <typename Fn>
inline std::string error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const catprob::Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace testsupport
