#pragma once

#include <tambara/group.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tambara {

// Finite G-set as an explicit action table.  Points are 0..size-1; no
// symmetry compression, correctness over scale.
struct GSet {
  GroupPtr group;
  int size = 0;
  std::vector<int> act_table;  // |G| * size

  int act(int g, int x) const { return act_table[g * size + x]; }

  bool operator==(const GSet& o) const {
    return group == o.group && size == o.size && act_table == o.act_table;
  }
};

struct GMap {
  GSet dom;
  GSet cod;
  std::vector<int> table;

  int operator()(int x) const { return table[x]; }
};

inline void validate_gset(const GSet& x) {
  const auto& g = *x.group;
  for (int p = 0; p < x.size; ++p)
    if (x.act(g.identity, p) != p) throw ValidationError("gset: identity does not act trivially");
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      for (int p = 0; p < x.size; ++p)
        if (x.act(a, x.act(b, p)) != x.act(g.mul(a, b), p))
          throw ValidationError("gset: action is not associative");
}

inline void validate_gmap(const GMap& f) {
  if (f.dom.group != f.cod.group) throw PreconditionError("gmap: groups differ");
  if (static_cast<int>(f.table.size()) != f.dom.size) throw ValidationError("gmap: bad table size");
  const auto& g = *f.dom.group;
  for (int a = 0; a < g.order; ++a)
    for (int p = 0; p < f.dom.size; ++p)
      if (f.table[f.dom.act(a, p)] != f.cod.act(a, f.table[p]))
        throw ValidationError("gmap: not equivariant");
}

inline GSet empty_gset(const GroupPtr& g) { return GSet{g, 0, {}}; }

inline GSet point_gset(const GroupPtr& g) {
  GSet x{g, 1, std::vector<int>(g->order, 0)};
  return x;
}

// Left coset space G/H; cosets ordered by their least element.
inline GSet orbit_gset(const GroupPtr& g, const Subgroup& h) {
  std::vector<std::vector<int>> cosets;
  std::vector<int> coset_of(g->order, -1);
  for (int a = 0; a < g->order; ++a) {
    if (coset_of[a] >= 0) continue;
    std::set<int> c;
    for (int b : h.elements) c.insert(g->mul(a, b));
    for (int x : c) coset_of[x] = static_cast<int>(cosets.size());
    cosets.emplace_back(c.begin(), c.end());
  }
  GSet x{g, static_cast<int>(cosets.size()), {}};
  x.act_table.assign(g->order * x.size, 0);
  for (int a = 0; a < g->order; ++a)
    for (int c = 0; c < x.size; ++c) x.act_table[a * x.size + c] = coset_of[g->mul(a, cosets[c].front())];
  return x;
}

// Coset projection G/K -> G/H for K <= H.
inline GMap orbit_projection(const GroupPtr& g, const Subgroup& k, const Subgroup& h) {
  if (!subgroup_leq(k, h)) throw PreconditionError("orbit projection: K must be contained in H");
  GSet gk = orbit_gset(g, k), gh = orbit_gset(g, h);
  // coset gK |-> gH; identify via least elements
  std::vector<std::vector<int>> k_cosets(gk.size), h_cosets(gh.size);
  std::vector<int> k_of(g->order, -1), h_of(g->order, -1);
  auto fill = [&](const Subgroup& s, std::vector<int>& of) {
    std::vector<std::vector<int>> cs;
    for (int a = 0; a < g->order; ++a) {
      if (of[a] >= 0) continue;
      std::set<int> c;
      for (int b : s.elements) c.insert(g->mul(a, b));
      for (int x : c) of[x] = static_cast<int>(cs.size());
      cs.emplace_back(c.begin(), c.end());
    }
    return cs;
  };
  k_cosets = fill(k, k_of);
  h_cosets = fill(h, h_of);
  GMap f{gk, gh, std::vector<int>(gk.size)};
  for (int c = 0; c < gk.size; ++c) f.table[c] = h_of[k_cosets[c].front()];
  return f;
}

inline GMap identity_map(const GSet& x) {
  GMap f{x, x, std::vector<int>(x.size)};
  std::iota(f.table.begin(), f.table.end(), 0);
  return f;
}

inline GMap compose(const GMap& g2, const GMap& g1) {
  if (g1.cod.size != g2.dom.size || !(g1.cod == g2.dom))
    throw PreconditionError("compose: codomain/domain mismatch");
  GMap f{g1.dom, g2.cod, std::vector<int>(g1.dom.size)};
  for (int p = 0; p < g1.dom.size; ++p) f.table[p] = g2.table[g1.table[p]];
  return f;
}

inline GMap terminal_map(const GSet& x) {
  GMap f{x, point_gset(x.group), std::vector<int>(x.size, 0)};
  return f;
}

inline std::vector<int> fixed_points(const GSet& x, const Subgroup& h) {
  std::vector<int> fps;
  for (int p = 0; p < x.size; ++p) {
    bool fixed = true;
    for (int a : h.elements)
      if (x.act(a, p) != p) { fixed = false; break; }
    if (fixed) fps.push_back(p);
  }
  return fps;
}

struct CoproductResult {
  GSet set;
  GMap inl, inr;
};

inline CoproductResult coproduct(const GSet& x, const GSet& y) {
  if (x.group != y.group) throw PreconditionError("coproduct: groups differ");
  const auto& g = *x.group;
  GSet z{x.group, x.size + y.size, {}};
  z.act_table.assign(g.order * z.size, 0);
  for (int a = 0; a < g.order; ++a) {
    for (int p = 0; p < x.size; ++p) z.act_table[a * z.size + p] = x.act(a, p);
    for (int p = 0; p < y.size; ++p) z.act_table[a * z.size + x.size + p] = x.size + y.act(a, p);
  }
  CoproductResult r{z, GMap{x, z, {}}, GMap{y, z, {}}};
  r.inl.table.resize(x.size);
  std::iota(r.inl.table.begin(), r.inl.table.end(), 0);
  r.inr.table.resize(y.size);
  std::iota(r.inr.table.begin(), r.inr.table.end(), x.size);
  return r;
}

struct ProductResult {
  GSet set;
  GMap proj1, proj2;
};

inline ProductResult product(const GSet& x, const GSet& y) {
  if (x.group != y.group) throw PreconditionError("product: groups differ");
  const auto& g = *x.group;
  GSet z{x.group, x.size * y.size, {}};
  z.act_table.assign(g.order * z.size, 0);
  auto ix = [&](int p, int q) { return p * y.size + q; };
  for (int a = 0; a < g.order; ++a)
    for (int p = 0; p < x.size; ++p)
      for (int q = 0; q < y.size; ++q)
        z.act_table[a * z.size + ix(p, q)] = ix(x.act(a, p), y.act(a, q));
  ProductResult r{z, GMap{z, x, {}}, GMap{z, y, {}}};
  r.proj1.table.resize(z.size);
  r.proj2.table.resize(z.size);
  for (int p = 0; p < x.size; ++p)
    for (int q = 0; q < y.size; ++q) {
      r.proj1.table[ix(p, q)] = p;
      r.proj2.table[ix(p, q)] = q;
    }
  return r;
}

struct PullbackResult {
  GSet set;
  GMap to_dom_f;  // projection onto dom(f)
  GMap to_dom_g;  // projection onto dom(g)
  std::vector<std::pair<int, int>> points;
};

// {(a,b) | f(a) = g(b)} with the diagonal action.
inline PullbackResult pullback(const GMap& f, const GMap& g) {
  if (!(f.cod == g.cod)) throw PreconditionError("pullback: maps must share a codomain");
  const auto& grp = *f.dom.group;
  PullbackResult r;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < f.dom.size; ++a)
    for (int b = 0; b < g.dom.size; ++b)
      if (f.table[a] == g.table[b]) {
        index[{a, b}] = static_cast<int>(r.points.size());
        r.points.emplace_back(a, b);
      }
  GSet z{f.dom.group, static_cast<int>(r.points.size()), {}};
  z.act_table.assign(grp.order * z.size, 0);
  for (int c = 0; c < grp.order; ++c)
    for (int i = 0; i < z.size; ++i)
      z.act_table[c * z.size + i] =
          index.at({f.dom.act(c, r.points[i].first), g.dom.act(c, r.points[i].second)});
  r.set = z;
  r.to_dom_f = GMap{z, f.dom, {}};
  r.to_dom_g = GMap{z, g.dom, {}};
  r.to_dom_f.table.resize(z.size);
  r.to_dom_g.table.resize(z.size);
  for (int i = 0; i < z.size; ++i) {
    r.to_dom_f.table[i] = r.points[i].first;
    r.to_dom_g.table[i] = r.points[i].second;
  }
  return r;
}

inline std::vector<std::vector<int>> orbits_of(const GSet& x) {
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(x.size, 0);
  for (int p = 0; p < x.size; ++p) {
    if (seen[p]) continue;
    std::set<int> orb;
    for (int a = 0; a < x.group->order; ++a) orb.insert(x.act(a, p));
    for (int q : orb) seen[q] = 1;
    orbits.emplace_back(orb.begin(), orb.end());
  }
  return orbits;
}

inline Subgroup point_stabilizer(const GSet& x, int p) {
  Subgroup s;
  for (int a = 0; a < x.group->order; ++a)
    if (x.act(a, p) == p) s.elements.push_back(a);
  return s;
}

// Orbits tagged by the conjugacy class of their stabilizers; representative
// point is the least point of the orbit.
struct OrbitTag {
  int class_index;
  int representative;
};

inline std::vector<OrbitTag> orbit_decomposition(const GSet& x, const SubgroupSystem& sys) {
  std::vector<OrbitTag> tags;
  for (auto& orb : orbits_of(x))
    tags.push_back({sys.class_of(point_stabilizer(x, orb.front())), orb.front()});
  std::sort(tags.begin(), tags.end(), [](const OrbitTag& a, const OrbitTag& b) {
    if (a.class_index != b.class_index) return a.class_index < b.class_index;
    return a.representative < b.representative;
  });
  return tags;
}

// Complete, duplicate-free enumeration of equivariant maps U -> X.  Per-orbit
// candidates are the stabilizer-fixed points of X (a map G/H -> X is a point
// of X^H).
inline std::vector<GMap> enumerate_gmaps(const GSet& u, const GSet& x,
                                         std::uint64_t cap = kDefaultCap) {
  auto orbits = orbits_of(u);
  std::vector<std::vector<int>> candidates;  // per orbit: allowed image of base point
  std::uint64_t total = 1;
  for (auto& orb : orbits) {
    Subgroup h = point_stabilizer(u, orb.front());
    candidates.push_back(fixed_points(x, h));
    total *= candidates.back().size();
    if (total > cap) throw SizeCapError("enumerate_gmaps: candidate count exceeds cap");
    if (total == 0) break;
  }
  std::vector<GMap> out;
  if (total == 0) return out;
  std::vector<std::size_t> pick(orbits.size(), 0);
  const auto& g = *u.group;
  while (true) {
    GMap f{u, x, std::vector<int>(u.size, -1)};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      int base = orbits[i].front(), img = candidates[i][pick[i]];
      for (int a = 0; a < g.order; ++a) f.table[u.act(a, base)] = x.act(a, img);
    }
    out.push_back(std::move(f));
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == candidates[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  return out;
}

// Equivariant sections of f (maps s: cod -> dom with f∘s = id).
inline std::vector<GMap> sections(const GMap& f, std::uint64_t cap = kDefaultCap) {
  const GSet& x = f.dom;
  const GSet& y = f.cod;
  auto orbits = orbits_of(y);
  std::vector<std::vector<int>> candidates;
  std::uint64_t total = 1;
  for (auto& orb : orbits) {
    int base = orb.front();
    Subgroup h = point_stabilizer(y, base);
    std::vector<int> cands;
    for (int p : fixed_points(x, h))
      if (f.table[p] == base) cands.push_back(p);
    candidates.push_back(std::move(cands));
    total *= candidates.back().size();
    if (total > cap) throw SizeCapError("sections: candidate count exceeds cap");
    if (total == 0) break;
  }
  std::vector<GMap> out;
  if (total == 0) return out;
  std::vector<std::size_t> pick(orbits.size(), 0);
  const auto& g = *y.group;
  while (true) {
    GMap s{y, x, std::vector<int>(y.size, -1)};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      int base = orbits[i].front(), img = candidates[i][pick[i]];
      for (int a = 0; a < g.order; ++a) s.table[y.act(a, base)] = x.act(a, img);
    }
    out.push_back(std::move(s));
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == candidates[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  return out;
}

// Canonical over-form: for a map k: X -> Z, each orbit of X contributes the
// pair (stabilizer class i, least point of the N_G(H_i)-orbit of the image in
// Z^{H_i}).  Equal multisets of pairs <=> isomorphic over Z.
using OverClass = std::pair<int, int>;

inline OverClass orbit_over_class(const GMap& k, int base_point, const SubgroupSystem& sys) {
  const auto& g = *k.dom.group;
  Subgroup s = point_stabilizer(k.dom, base_point);
  int cls = sys.class_of(s);
  const Subgroup& rep = sys.reps[cls];
  int best = -1;
  for (int c = 0; c < g.order; ++c) {
    if (!(conjugate_subgroup(g, s, c) == rep)) continue;
    int img = k.cod.act(c, k.table[base_point]);
    if (best < 0 || img < best) best = img;
  }
  return {cls, best};
}

inline std::vector<OverClass> over_canonical_form(const GMap& k, const SubgroupSystem& sys) {
  std::vector<OverClass> form;
  for (auto& orb : orbits_of(k.dom)) form.push_back(orbit_over_class(k, orb.front(), sys));
  std::sort(form.begin(), form.end());
  return form;
}

inline std::optional<GMap> gsets_isomorphic(const GSet& x, const GSet& y) {
  if (x.group != y.group || x.size != y.size) return std::nullopt;
  GMap px = terminal_map(x), py = terminal_map(y);
  auto sys = subgroup_system(x.group);
  // over the point, "over-iso" is plain iso
  auto fx = over_canonical_form(px, sys);
  auto fy = over_canonical_form(py, sys);
  if (fx != fy) return std::nullopt;
  // build witness orbit by orbit
  const auto& g = *x.group;
  auto xorbs = orbits_of(x);
  auto yorbs = orbits_of(y);
  std::vector<char> used(yorbs.size(), 0);
  GMap iso{x, y, std::vector<int>(x.size, -1)};
  for (auto& xo : xorbs) {
    Subgroup h = point_stabilizer(x, xo.front());
    bool matched = false;
    for (std::size_t j = 0; j < yorbs.size() && !matched; ++j) {
      if (used[j]) continue;
      for (int q : yorbs[j]) {
        if (!(point_stabilizer(y, q) == h)) continue;
        for (int a = 0; a < g.order; ++a) iso.table[x.act(a, xo.front())] = y.act(a, q);
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return iso;
}

// Equivariant bijection phi with q∘phi = p, if one exists.
inline std::optional<GMap> gsets_over_isomorphic(const GMap& p, const GMap& q) {
  if (!(p.cod == q.cod) || p.dom.size != q.dom.size) return std::nullopt;
  auto sys = subgroup_system(p.dom.group);
  if (over_canonical_form(p, sys) != over_canonical_form(q, sys)) return std::nullopt;
  const auto& g = *p.dom.group;
  auto xorbs = orbits_of(p.dom);
  auto yorbs = orbits_of(q.dom);
  std::vector<char> used(yorbs.size(), 0);
  GMap iso{p.dom, q.dom, std::vector<int>(p.dom.size, -1)};
  for (auto& xo : xorbs) {
    int base = xo.front();
    Subgroup h = point_stabilizer(p.dom, base);
    bool matched = false;
    for (std::size_t j = 0; j < yorbs.size() && !matched; ++j) {
      if (used[j]) continue;
      for (int cand : yorbs[j]) {
        if (q.table[cand] != p.table[base]) continue;
        if (!(point_stabilizer(q.dom, cand) == h)) continue;
        for (int a = 0; a < g.order; ++a) iso.table[p.dom.act(a, base)] = q.dom.act(a, cand);
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return iso;
}

// Builds a G-set from a list of subgroup classes (orbit types).
inline GSet gset_from_orbit_classes(const SubgroupSystem& sys, const std::vector<int>& classes) {
  GSet acc = empty_gset(sys.group);
  for (int c : classes) {
    if (c < 0 || c >= sys.size()) throw PreconditionError("gset: bad orbit class index");
    acc = coproduct(acc, orbit_gset(sys.group, sys.reps[c])).set;
  }
  return acc;
}

// Text format: "orbits:i1,i2,..." (class indices) or
// "points:N action: a00 a01 ..." (row per group element).
inline GSet parse_gset_spec(const GroupPtr& g, const std::string& spec) {
  auto sys = subgroup_system(g);
  if (spec.rfind("orbits:", 0) == 0) {
    std::vector<int> classes;
    std::string rest = spec.substr(7);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) classes.push_back(std::stoi(tok));
    return gset_from_orbit_classes(sys, classes);
  }
  if (spec.rfind("points:", 0) == 0) {
    auto apos = spec.find("action:");
    if (apos == std::string::npos) throw ValidationError("gset spec: missing 'action:'");
    int n = std::stoi(spec.substr(7, apos - 7));
    std::istringstream is(spec.substr(apos + 7));
    GSet x{g, n, {}};
    x.act_table.reserve(g->order * n);
    int v;
    while (is >> v) x.act_table.push_back(v);
    if (static_cast<int>(x.act_table.size()) != g->order * n)
      throw ValidationError("gset spec: action table must have |G|*N entries");
    validate_gset(x);
    return x;
  }
  throw ValidationError("gset spec: expected 'orbits:...' or 'points:N action: ...'");
}

}  // namespace tambara
