#pragma once

#include <tambara/coeff.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// Finite group as a full multiplication table on {0..order-1}.  Small orders
// only (the engine targets |G| <= 12); everything downstream scans tables.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mult;  // order*order
  std::vector<int> inv;
  int identity = 0;
  std::string name;

  int mul(int a, int b) const { return mult[a * order + b]; }
  int invert(int a) const { return inv[a]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv[g]); }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Subgroup as a strictly increasing list of element indices.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
  }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
  bool operator<(const Subgroup& o) const {
    if (elements.size() != o.elements.size()) return elements.size() < o.elements.size();
    return elements < o.elements;
  }
};

namespace detail {

inline void check_group_axioms(const FiniteGroup& g) {
  const int n = g.order;
  if (n <= 0 || static_cast<int>(g.mult.size()) != n * n)
    throw ValidationError("group: bad table shape");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v = g.mul(a, b);
      if (v < 0 || v >= n)
        throw ValidationError("group: entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  // two-sided identity
  int e = -1;
  for (int c = 0; c < n; ++c) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (g.mul(c, a) != a || g.mul(a, c) != a) { ok = false; break; }
    if (ok) { e = c; break; }
  }
  if (e < 0) throw ValidationError("group: identity axiom fails (no two-sided identity element)");
  // inverses
  for (int a = 0; a < n; ++a) {
    bool ok = false;
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == e && g.mul(b, a) == e) { ok = true; break; }
    if (!ok)
      throw ValidationError("group: inverse axiom fails, witness element " + std::to_string(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw ValidationError("group: associativity fails, witness triple (" + std::to_string(a) +
                                "," + std::to_string(b) + "," + std::to_string(c) + ")");
}

inline GroupPtr finish_group(FiniteGroup g) {
  check_group_axioms(g);
  const int n = g.order;
  for (int c = 0; c < n; ++c) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (g.mul(c, a) != a) { ok = false; break; }
    if (ok) { g.identity = c; break; }
  }
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) g.inv[a] = b;
  return std::make_shared<const FiniteGroup>(std::move(g));
}

// Permutations composed as (p*q)(x) = p(q(x)).
inline GroupPtr group_from_perms(std::vector<std::vector<int>> perms, std::string name) {
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  FiniteGroup g;
  g.order = static_cast<int>(perms.size());
  g.name = std::move(name);
  g.mult.assign(g.order * g.order, 0);
  const int deg = static_cast<int>(perms.front().size());
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      std::vector<int> comp(deg);
      for (int x = 0; x < deg; ++x) comp[x] = perms[a][perms[b][x]];
      g.mult[a * g.order + b] = index.at(comp);
    }
  return finish_group(std::move(g));
}

}  // namespace detail

inline GroupPtr cyclic_group(int n) {
  if (n < 1) throw PreconditionError("cyclic: order must be positive");
  FiniteGroup g;
  g.order = n;
  g.name = "cyclic:" + std::to_string(n);
  g.mult.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mult[a * n + b] = (a + b) % n;
  return detail::finish_group(std::move(g));
}

inline GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 5) throw PreconditionError("symmetric: supported degrees 1..5");
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  return detail::group_from_perms(std::move(perms), "symmetric:" + std::to_string(n));
}

// Symmetries of the regular n-gon, order 2n.
inline GroupPtr dihedral_group(int n) {
  if (n < 1) throw PreconditionError("dihedral: n must be positive");
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rot(n), ref(n);
    for (int x = 0; x < n; ++x) {
      rot[x] = (x + i) % n;
      ref[x] = ((i - x) % n + n) % n;
    }
    perms.push_back(rot);
    perms.push_back(ref);
  }
  return detail::group_from_perms(std::move(perms), "dihedral:" + std::to_string(n));
}

inline GroupPtr group_from_table(int order, std::vector<int> mult) {
  FiniteGroup g;
  g.order = order;
  g.mult = std::move(mult);
  g.name = "table:" + std::to_string(order);
  return detail::finish_group(std::move(g));
}

// Parses the text format: cyclic:N, symmetric:N, dihedral:N, or
// "table: r00 r01 ... " (N*N entries; N inferred from the count).
inline GroupPtr make_group(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ValidationError("group spec: expected '<family>:<args>'");
  std::string family = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (family == "cyclic" || family == "symmetric" || family == "dihedral") {
    int n = 0;
    try {
      n = std::stoi(rest);
    } catch (...) {
      throw ValidationError("group spec: bad numeric argument '" + rest + "'");
    }
    if (family == "cyclic") return cyclic_group(n);
    if (family == "symmetric") return symmetric_group(n);
    return dihedral_group(n);
  }
  if (family == "table") {
    std::istringstream is(rest);
    std::vector<int> entries;
    int v;
    while (is >> v) entries.push_back(v);
    int n = 1;
    while (n * n < static_cast<int>(entries.size())) ++n;
    if (n * n != static_cast<int>(entries.size()))
      throw ValidationError("group spec: table entry count is not a perfect square");
    return group_from_table(n, std::move(entries));
  }
  throw ValidationError("group spec: unknown family '" + family + "'");
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup{{g.identity}}; }

inline Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup s;
  s.elements.resize(g.order);
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

inline Subgroup closure_subgroup(const FiniteGroup& g, std::vector<int> gens) {
  std::set<int> s{g.identity};
  for (int x : gens) s.insert(x);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur) {
      if (!s.count(g.invert(a))) { s.insert(g.invert(a)); changed = true; }
      for (int b : cur) {
        int c = g.mul(a, b);
        if (!s.count(c)) { s.insert(c); changed = true; }
      }
    }
  }
  return Subgroup{std::vector<int>(s.begin(), s.end())};
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (!h.contains(g.identity)) return false;
  for (int a : h.elements) {
    if (!h.contains(g.invert(a))) return false;
    for (int b : h.elements)
      if (!h.contains(g.mul(a, b))) return false;
  }
  return g.order % h.order() == 0;
}

inline bool subgroup_leq(const Subgroup& k, const Subgroup& h) {
  return std::includes(h.elements.begin(), h.elements.end(), k.elements.begin(), k.elements.end());
}

inline Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, int x) {
  Subgroup r;
  r.elements.reserve(h.elements.size());
  for (int a : h.elements) r.elements.push_back(g.conj(x, a));
  std::sort(r.elements.begin(), r.elements.end());
  return r;
}

inline Subgroup intersect_subgroups(const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                        b.elements.end(), std::back_inserter(r.elements));
  return r;
}

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  Subgroup r;
  for (int x = 0; x < g.order; ++x)
    if (conjugate_subgroup(g, h, x) == h) r.elements.push_back(x);
  return r;
}

inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  std::vector<Subgroup> frontier;
  Subgroup triv = trivial_subgroup(g);
  found.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    Subgroup h = frontier.back();
    frontier.pop_back();
    for (int x = 0; x < g.order; ++x) {
      if (h.contains(x)) continue;
      std::vector<int> gens = h.elements;
      gens.push_back(x);
      Subgroup k = closure_subgroup(g, gens);
      if (found.insert(k).second) frontier.push_back(k);
    }
  }
  return {found.begin(), found.end()};
}

// Conjugacy classes of subgroups: class representative is the subgroup with
// lexicographically least element tuple among its conjugates; classes sorted
// by (order, tuple).  This ordering fixes the Witt coordinate order.
struct SubgroupSystem {
  GroupPtr group;
  std::vector<Subgroup> reps;
  std::vector<int> weyl_order;                // |N_G(H_i)/H_i|
  std::map<std::vector<int>, int> class_index;  // every subgroup's element tuple -> class

  int size() const { return static_cast<int>(reps.size()); }

  int class_of(const Subgroup& h) const {
    auto it = class_index.find(h.elements);
    if (it == class_index.end()) throw PreconditionError("subgroup system: not a subgroup of G");
    return it->second;
  }
};

inline SubgroupSystem subgroup_system(const GroupPtr& g) {
  SubgroupSystem sys;
  sys.group = g;
  std::set<Subgroup> remaining;
  for (auto& h : all_subgroups(*g)) remaining.insert(h);
  std::vector<std::pair<Subgroup, std::vector<Subgroup>>> classes;
  while (!remaining.empty()) {
    Subgroup h = *remaining.begin();
    std::set<Subgroup> orbit;
    for (int x = 0; x < g->order; ++x) orbit.insert(conjugate_subgroup(*g, h, x));
    Subgroup rep = *std::min_element(orbit.begin(), orbit.end(), [](const Subgroup& a, const Subgroup& b) {
      return a.elements < b.elements;
    });
    for (auto& k : orbit) remaining.erase(k);
    classes.emplace_back(rep, std::vector<Subgroup>(orbit.begin(), orbit.end()));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.first.order() != b.first.order()) return a.first.order() < b.first.order();
    return a.first.elements < b.first.elements;
  });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    sys.reps.push_back(classes[i].first);
    sys.weyl_order.push_back(normalizer(*g, classes[i].first).order() / classes[i].first.order());
    for (auto& member : classes[i].second) sys.class_index[member.elements] = static_cast<int>(i);
  }
  return sys;
}

// Double cosets HtK inside L, with K,H <= L.  Cosets are listed with their
// least element as representative; stabilizers[i] = H ∩ t K t^{-1}.  The
// inverse sets K t^{-1} H are the orbits of the (k,h).l = k l h^{-1} action.
struct DoubleCosetDecomposition {
  std::vector<int> reps;
  std::vector<Subgroup> stabilizers;
  std::vector<std::vector<int>> cosets;
};

inline DoubleCosetDecomposition double_cosets(const FiniteGroup& g, const Subgroup& l,
                                              const Subgroup& k, const Subgroup& h) {
  if (!subgroup_leq(k, l) || !subgroup_leq(h, l))
    throw PreconditionError("double_cosets: K and H must be contained in L");
  DoubleCosetDecomposition dc;
  std::set<int> remaining(l.elements.begin(), l.elements.end());
  while (!remaining.empty()) {
    int t = *remaining.begin();
    std::set<int> coset;
    for (int a : h.elements)
      for (int b : k.elements) coset.insert(g.mul(g.mul(a, t), b));
    for (int x : coset) remaining.erase(x);
    dc.reps.push_back(t);
    dc.cosets.emplace_back(coset.begin(), coset.end());
    Subgroup conj_k = conjugate_subgroup(g, k, t);
    dc.stabilizers.push_back(intersect_subgroups(h, conj_k));
  }
  return dc;
}

// The subgroup H as a group in its own right, with the element translation
// back into G (used by change-of-groups).
struct SubgroupGroup {
  GroupPtr group;             // abstract copy of H
  std::vector<int> to_parent;  // H-element index -> G-element index
  std::map<int, int> from_parent;
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  SubgroupGroup out;
  out.to_parent = h.elements;
  for (std::size_t i = 0; i < h.elements.size(); ++i)
    out.from_parent[h.elements[i]] = static_cast<int>(i);
  FiniteGroup sub;
  sub.order = h.order();
  sub.name = "subgroup";
  sub.mult.assign(sub.order * sub.order, 0);
  for (int a = 0; a < sub.order; ++a)
    for (int b = 0; b < sub.order; ++b)
      sub.mult[a * sub.order + b] = out.from_parent.at(g.mul(h.elements[a], h.elements[b]));
  out.group = detail::finish_group(std::move(sub));
  return out;
}

}  // namespace tambara
