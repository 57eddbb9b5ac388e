#pragma once

#include <tambara/span.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tambara {

// Bispan X <- A -> B -> Y; isomorphism classes are the morphisms of the
// Tambara category.
struct Bispan {
  GMap p;  // A -> X
  GMap q;  // A -> B
  GMap r;  // B -> Y

  const GSet& source() const { return p.cod; }
  const GSet& target() const { return r.cod; }
  const GSet& carrier_a() const { return p.dom; }
  const GSet& carrier_b() const { return r.dom; }
};

inline Bispan identity_bispan(const GSet& x) {
  return Bispan{identity_map(x), identity_map(x), identity_map(x)};
}

inline Bispan gen_T(const GMap& f) { return Bispan{identity_map(f.dom), identity_map(f.dom), f}; }
inline Bispan gen_N(const GMap& f) { return Bispan{identity_map(f.dom), f, identity_map(f.cod)}; }
inline Bispan gen_R(const GMap& f) { return Bispan{f, identity_map(f.dom), identity_map(f.dom)}; }

namespace detail {

// Points given by (anchor, table) pairs, where the table lists images over a
// fixed fiber ordering.  Used for section carriers in distributors and
// composites; the G-action is conjugation on the table.
struct SectionPoints {
  std::vector<std::pair<int, std::vector<int>>> points;
  std::map<std::pair<int, std::vector<int>>, int> index;

  int add(std::pair<int, std::vector<int>> p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(points.size());
    index[p] = id;
    points.push_back(std::move(p));
    return id;
  }
};

inline std::vector<int> sorted_fiber(const GMap& f, int y) {
  std::vector<int> fib;
  for (int x = 0; x < f.dom.size; ++x)
    if (f.table[x] == y) fib.push_back(x);
  return fib;
}

// Cartesian enumeration of tables with per-slot candidate lists.
inline void enumerate_tables(const std::vector<std::vector<int>>& candidates, std::uint64_t cap,
                             const std::function<void(const std::vector<int>&)>& emit) {
  std::uint64_t total = 1;
  for (const auto& c : candidates) {
    total *= c.size();
    if (total > cap) throw SizeCapError("section enumeration exceeds cap");
    if (total == 0) return;
  }
  std::vector<std::size_t> pick(candidates.size(), 0);
  std::vector<int> row(candidates.size());
  while (true) {
    for (std::size_t i = 0; i < candidates.size(); ++i) row[i] = candidates[i][pick[i]];
    emit(row);
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == candidates[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
}

}  // namespace detail

// The distributor Δ(f,g) for X -f-> Y -g-> Z:
//   B = {(z,s) | s: g^{-1}{z} -> X, f∘s = 1},  A = Y x_Z B,
// with G acting on sections by conjugation.
inline Bispan distributor(const GMap& f, const GMap& g, std::uint64_t cap = kDefaultCap) {
  if (!(f.cod == g.dom)) throw PreconditionError("distributor: maps are not composable");
  const GSet& X = f.dom;
  const GSet& Y = g.dom;
  const GSet& Z = g.cod;
  const auto& grp = *X.group;

  detail::SectionPoints bpts;
  for (int z = 0; z < Z.size; ++z) {
    auto fib = detail::sorted_fiber(g, z);
    std::vector<std::vector<int>> cands;
    for (int y : fib) cands.push_back(detail::sorted_fiber(f, y));
    detail::enumerate_tables(cands, cap, [&](const std::vector<int>& s) { bpts.add({z, s}); });
  }
  GSet B{X.group, static_cast<int>(bpts.points.size()), {}};
  B.act_table.assign(grp.order * B.size, 0);
  for (int c = 0; c < grp.order; ++c)
    for (int i = 0; i < B.size; ++i) {
      const auto& [z, s] = bpts.points[i];
      int gz = Z.act(c, z);
      auto fib_z = detail::sorted_fiber(g, z);
      auto fib_gz = detail::sorted_fiber(g, gz);
      std::vector<int> gs(fib_gz.size());
      int cinv = grp.invert(c);
      for (std::size_t j = 0; j < fib_gz.size(); ++j) {
        int pre = Y.act(cinv, fib_gz[j]);
        auto pos = std::lower_bound(fib_z.begin(), fib_z.end(), pre) - fib_z.begin();
        gs[j] = X.act(c, s[pos]);
      }
      B.act_table[c * B.size + i] = bpts.index.at({gz, gs});
    }

  // A = Y x_Z B: pairs (y, section over the fiber of g(y))
  std::vector<std::pair<int, int>> apts;  // (y, b-index with z = g(y))
  std::map<std::pair<int, int>, int> aidx;
  for (int y = 0; y < Y.size; ++y)
    for (int i = 0; i < B.size; ++i)
      if (bpts.points[i].first == g.table[y]) {
        aidx[{y, i}] = static_cast<int>(apts.size());
        apts.emplace_back(y, i);
      }
  GSet A{X.group, static_cast<int>(apts.size()), {}};
  A.act_table.assign(grp.order * A.size, 0);
  for (int c = 0; c < grp.order; ++c)
    for (std::size_t i = 0; i < apts.size(); ++i)
      A.act_table[c * A.size + i] =
          aidx.at({Y.act(c, apts[i].first), B.act(c, apts[i].second)});

  GMap p{A, X, std::vector<int>(A.size)};
  GMap q{A, B, std::vector<int>(A.size)};
  GMap r{B, Z, std::vector<int>(B.size)};
  for (std::size_t i = 0; i < apts.size(); ++i) {
    auto [y, bi] = apts[i];
    const auto& [z, s] = bpts.points[bi];
    auto fib = detail::sorted_fiber(g, z);
    auto pos = std::lower_bound(fib.begin(), fib.end(), y) - fib.begin();
    p.table[i] = s[pos];
    q.table[i] = bi;
  }
  for (int i = 0; i < B.size; ++i) r.table[i] = bpts.points[i].first;
  return Bispan{std::move(p), std::move(q), std::move(r)};
}

// Binary composition per the explicit carrier construction:
//   B = {(b1,s) | s: q1^{-1}{b1} -> B0, r0∘s = p1},
//   A = {(a0,a1,s) | same s over the fiber of q1(a1), a0 in q0^{-1}{s(a1)}}.
inline Bispan compose_bispans(const Bispan& w1, const Bispan& w0, std::uint64_t cap = kDefaultCap) {
  if (!(w0.target() == w1.source())) throw PreconditionError("compose_bispans: endpoint mismatch");
  const auto& grp = *w0.source().group;
  const GSet& B0 = w0.carrier_b();
  const GSet& A1 = w1.carrier_a();
  const GSet& B1 = w1.carrier_b();

  detail::SectionPoints bpts;
  for (int b1 = 0; b1 < B1.size; ++b1) {
    auto fib = detail::sorted_fiber(w1.q, b1);
    std::vector<std::vector<int>> cands;
    for (int a1 : fib) cands.push_back(detail::sorted_fiber(w0.r, w1.p.table[a1]));
    detail::enumerate_tables(cands, cap, [&](const std::vector<int>& s) { bpts.add({b1, s}); });
  }
  GSet B{w0.source().group, static_cast<int>(bpts.points.size()), {}};
  B.act_table.assign(grp.order * B.size, 0);
  for (int c = 0; c < grp.order; ++c)
    for (int i = 0; i < B.size; ++i) {
      const auto& [b1, s] = bpts.points[i];
      int gb1 = B1.act(c, b1);
      auto fib_b = detail::sorted_fiber(w1.q, b1);
      auto fib_gb = detail::sorted_fiber(w1.q, gb1);
      std::vector<int> gs(fib_gb.size());
      int cinv = grp.invert(c);
      for (std::size_t j = 0; j < fib_gb.size(); ++j) {
        int pre = A1.act(cinv, fib_gb[j]);
        auto pos = std::lower_bound(fib_b.begin(), fib_b.end(), pre) - fib_b.begin();
        gs[j] = B0.act(c, s[pos]);
      }
      B.act_table[c * B.size + i] = bpts.index.at({gb1, gs});
    }

  std::vector<std::array<int, 3>> apts;  // (a0, a1, b-index)
  std::map<std::array<int, 3>, int> aidx;
  for (int i = 0; i < B.size; ++i) {
    const auto& [b1, s] = bpts.points[i];
    auto fib = detail::sorted_fiber(w1.q, b1);
    for (std::size_t j = 0; j < fib.size(); ++j) {
      int a1 = fib[j];
      for (int a0 = 0; a0 < w0.carrier_a().size; ++a0)
        if (w0.q.table[a0] == s[j]) {
          std::array<int, 3> key{a0, a1, i};
          aidx[key] = static_cast<int>(apts.size());
          apts.push_back(key);
        }
    }
  }
  GSet A{w0.source().group, static_cast<int>(apts.size()), {}};
  A.act_table.assign(grp.order * A.size, 0);
  for (int c = 0; c < grp.order; ++c)
    for (std::size_t i = 0; i < apts.size(); ++i) {
      auto [a0, a1, bi] = apts[i];
      std::array<int, 3> img{w0.carrier_a().act(c, a0), A1.act(c, a1), B.act(c, bi)};
      A.act_table[c * A.size + i] = aidx.at(img);
    }

  GMap p{A, w0.source(), std::vector<int>(A.size)};
  GMap q{A, B, std::vector<int>(A.size)};
  GMap r{B, w1.target(), std::vector<int>(B.size)};
  for (std::size_t i = 0; i < apts.size(); ++i) {
    p.table[i] = w0.p.table[apts[i][0]];
    q.table[i] = apts[i][2];
  }
  for (int i = 0; i < B.size; ++i) r.table[i] = w1.r.table[bpts.points[i].first];
  return Bispan{std::move(p), std::move(q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Term systems: single-step n-fold composition.
// ---------------------------------------------------------------------------

// A term system for bispans w_0..w_{m-1} is the choice of a top point
// b_{m-1} in B_{m-1} together with maps s_i: S_i -> B_{i-1} (i = m-1..1),
// where S_{m-1} = q_{m-1}^{-1}{b_{m-1}} and each lower S_i is the pullback
// {(a_i, w) | q_i(a_i) = s_{i+1}(w)}.  Each s_i is constrained pointwise by
// r_{i-1}(s_i(a_i, w)) = p_i(a_i).  Threads are the elements of S_0.
struct TermSystem {
  int top;                                   // b_{m-1}
  std::vector<std::vector<std::vector<int>>> levels;   // levels[i] = sorted S_i tuples (a_i..a_{m-1})
  std::vector<std::vector<int>> maps;        // maps[i][j] = s_{i+1} image of levels[i+1]? see layout

  // Layout: levels[i] holds S_{i} for i = 0..m-1 (S_m is the singleton and is
  // implicit); maps[i] holds the table of s_{i+1}: S_{i+1} -> B_i for
  // i = 0..m-2, indexed by position in levels[i+1]; the value of s_m is `top`.
  bool operator==(const TermSystem& o) const {
    return top == o.top && levels == o.levels && maps == o.maps;
  }
  bool operator<(const TermSystem& o) const {
    return std::tie(top, levels, maps) < std::tie(o.top, o.levels, o.maps);
  }
};

namespace detail {

inline std::vector<std::vector<int>> level_from_choice(const Bispan& w, int level_index,
                                                       const std::vector<std::vector<int>>& next_level,
                                                       const std::vector<int>& s_table) {
  // S_i = {(a_i, w) | w in S_{i+1}, q_i(a_i) = s_{i+1}(w)}
  std::vector<std::vector<int>> cur;
  (void)level_index;
  for (std::size_t j = 0; j < next_level.size(); ++j)
    for (int a = 0; a < w.carrier_a().size; ++a)
      if (w.q.table[a] == s_table[j]) {
        std::vector<int> tuple;
        tuple.push_back(a);
        tuple.insert(tuple.end(), next_level[j].begin(), next_level[j].end());
        cur.push_back(std::move(tuple));
      }
  std::sort(cur.begin(), cur.end());
  return cur;
}

inline void enumerate_term_systems_from(const std::vector<Bispan>& chain, int i,
                                        TermSystem partial, std::uint64_t cap,
                                        std::vector<TermSystem>& out) {
  // partial carries levels[i..m-1] and maps[i..m-2]; recursion fills i-1.
  if (i == 0) {
    out.push_back(std::move(partial));
    return;
  }
  // choose s_i : S_i -> B_{i-1} subject to r_{i-1}(s_i(v)) = p_i(v.a)
  const Bispan& below = chain[i - 1];
  const Bispan& here = chain[i];
  const auto& level = partial.levels[i];
  std::vector<std::vector<int>> cands;
  for (const auto& v : level) cands.push_back(sorted_fiber(below.r, here.p.table[v[0]]));
  enumerate_tables(cands, cap, [&](const std::vector<int>& table) {
    TermSystem next = partial;
    next.maps[i - 1] = table;
    next.levels[i - 1] = level_from_choice(below, i - 1, level, table);
    enumerate_term_systems_from(chain, i - 1, std::move(next), cap, out);
  });
}

}  // namespace detail

inline std::vector<TermSystem> enumerate_term_systems(const std::vector<Bispan>& chain,
                                                      std::uint64_t cap = kDefaultCap) {
  if (chain.empty()) throw PreconditionError("term systems: empty chain");
  const int m = static_cast<int>(chain.size());
  std::vector<TermSystem> out;
  for (int b = 0; b < chain[m - 1].carrier_b().size; ++b) {
    TermSystem ts;
    ts.top = b;
    ts.levels.assign(m, {});
    ts.maps.assign(std::max(0, m - 1), {});
    // S_{m-1} = q^{-1}{b}
    for (int a = 0; a < chain[m - 1].carrier_a().size; ++a)
      if (chain[m - 1].q.table[a] == b) ts.levels[m - 1].push_back({a});
    detail::enumerate_term_systems_from(chain, m - 1, std::move(ts), cap, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// G-action on a whole term system (conjugation on every table).
inline TermSystem act_term_system(const std::vector<Bispan>& chain, int g, const TermSystem& ts) {
  const int m = static_cast<int>(chain.size());
  const auto& grp = *chain[0].source().group;
  TermSystem r;
  r.top = chain[m - 1].carrier_b().act(g, ts.top);
  r.levels.assign(m, {});
  r.maps.assign(std::max(0, m - 1), {});
  // transported levels: tuples act componentwise; keep sorted
  std::vector<std::vector<std::size_t>> perm(m);  // position in ts.levels[i] -> position in r.levels[i]
  for (int i = m - 1; i >= 0; --i) {
    std::vector<std::pair<std::vector<int>, std::size_t>> moved;
    for (std::size_t j = 0; j < ts.levels[i].size(); ++j) {
      std::vector<int> t = ts.levels[i][j];
      for (int c = i; c < m; ++c) t[c - i] = chain[c].carrier_a().act(g, t[c - i]);
      moved.emplace_back(std::move(t), j);
    }
    std::sort(moved.begin(), moved.end());
    perm[i].assign(moved.size(), 0);
    for (std::size_t pos = 0; pos < moved.size(); ++pos) {
      r.levels[i].push_back(moved[pos].first);
      perm[i][moved[pos].second] = pos;
    }
  }
  (void)grp;
  for (int i = 0; i + 1 < m; ++i) {
    r.maps[i].assign(ts.maps[i].size(), -1);
    for (std::size_t j = 0; j < ts.maps[i].size(); ++j)
      r.maps[i][perm[i + 1][j]] = chain[i].carrier_b().act(g, ts.maps[i][j]);
  }
  return r;
}

}  // namespace detail

// Carrier-level n-fold composite: B = all term systems, A = term systems with
// a chosen thread; p, q, r as in the construction.
inline Bispan nfold_compose(const std::vector<Bispan>& chain, std::uint64_t cap = kDefaultCap) {
  if (chain.empty()) throw PreconditionError("nfold_compose: empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!(chain[i].target() == chain[i + 1].source()))
      throw PreconditionError("nfold_compose: chain is not composable");
  const int m = static_cast<int>(chain.size());
  const auto& grp = *chain[0].source().group;

  auto systems = enumerate_term_systems(chain, cap);
  std::map<TermSystem, int> bidx;
  for (std::size_t i = 0; i < systems.size(); ++i) bidx[systems[i]] = static_cast<int>(i);

  GSet B{chain[0].source().group, static_cast<int>(systems.size()), {}};
  B.act_table.assign(grp.order * B.size, 0);
  for (int g = 0; g < grp.order; ++g)
    for (int i = 0; i < B.size; ++i)
      B.act_table[g * B.size + i] = bidx.at(detail::act_term_system(chain, g, systems[i]));

  std::vector<std::pair<int, std::vector<int>>> apts;  // (term system index, thread tuple)
  std::map<std::pair<int, std::vector<int>>, int> aidx;
  for (int i = 0; i < B.size; ++i)
    for (const auto& thread : systems[i].levels[0]) {
      aidx[{i, thread}] = static_cast<int>(apts.size());
      apts.emplace_back(i, thread);
    }
  GSet A{chain[0].source().group, static_cast<int>(apts.size()), {}};
  A.act_table.assign(grp.order * A.size, 0);
  for (int g = 0; g < grp.order; ++g)
    for (std::size_t i = 0; i < apts.size(); ++i) {
      auto [ti, thread] = apts[i];
      std::vector<int> moved = thread;
      for (int c = 0; c < m; ++c) moved[c] = chain[c].carrier_a().act(g, moved[c]);
      A.act_table[g * A.size + i] = aidx.at({B.act(g, ti), moved});
    }

  GMap p{A, chain[0].source(), std::vector<int>(A.size)};
  GMap q{A, B, std::vector<int>(A.size)};
  GMap r{B, chain[m - 1].target(), std::vector<int>(B.size)};
  for (std::size_t i = 0; i < apts.size(); ++i) {
    p.table[i] = chain[0].p.table[apts[i].second[0]];
    q.table[i] = apts[i].first;
  }
  for (int i = 0; i < B.size; ++i)
    r.table[i] = chain[m - 1].r.table[systems[i].top];
  return Bispan{std::move(p), std::move(q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Isomorphism of bispans
// ---------------------------------------------------------------------------

namespace detail {

// All equivariant bijections phi: dom(p) -> dom(q) with q∘phi = p.
inline void enumerate_over_isos(const GMap& p, const GMap& q, std::vector<GMap>& out,
                                std::uint64_t cap = kDefaultCap) {
  if (p.dom.size != q.dom.size) return;
  const auto& g = *p.dom.group;
  auto xorbs = orbits_of(p.dom);
  auto yorbs = orbits_of(q.dom);
  if (xorbs.size() != yorbs.size()) return;
  std::vector<char> used(yorbs.size(), 0);
  GMap iso{p.dom, q.dom, std::vector<int>(p.dom.size, -1)};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() > cap) throw SizeCapError("over-iso enumeration exceeds cap");
    if (i == xorbs.size()) {
      out.push_back(iso);
      return;
    }
    int base = xorbs[i].front();
    Subgroup h = point_stabilizer(p.dom, base);
    for (std::size_t j = 0; j < yorbs.size(); ++j) {
      if (used[j] || yorbs[j].size() != xorbs[i].size()) continue;
      for (int cand : yorbs[j]) {
        if (q.table[cand] != p.table[base]) continue;
        if (!(point_stabilizer(q.dom, cand) == h)) continue;
        for (int a = 0; a < g.order; ++a) iso.table[p.dom.act(a, base)] = q.dom.act(a, cand);
        used[j] = 1;
        rec(i + 1);
        used[j] = 0;
      }
    }
  };
  rec(0);
}

}  // namespace detail

namespace detail {

// Restriction of a bispan to one orbit of its B carrier (A restricts to the
// preimage fiber).  Keeps the original point indices for witness assembly.
struct BispanPiece {
  Bispan piece;
  std::vector<int> a_points;  // piece A index -> original A index
  std::vector<int> b_points;  // piece B index -> original B index
};

inline std::vector<BispanPiece> split_by_b_orbits(const Bispan& w) {
  std::vector<BispanPiece> out;
  const auto& g = *w.source().group;
  for (auto& orb : orbits_of(w.carrier_b())) {
    BispanPiece pc;
    pc.b_points = orb;
    std::map<int, int> bidx;
    for (std::size_t i = 0; i < orb.size(); ++i) bidx[orb[i]] = static_cast<int>(i);
    for (int a = 0; a < w.carrier_a().size; ++a)
      if (bidx.count(w.q.table[a])) pc.a_points.push_back(a);
    std::map<int, int> aidx;
    for (std::size_t i = 0; i < pc.a_points.size(); ++i) aidx[pc.a_points[i]] = static_cast<int>(i);
    GSet bs{w.source().group, static_cast<int>(orb.size()), {}};
    bs.act_table.assign(g.order * bs.size, 0);
    for (int c = 0; c < g.order; ++c)
      for (std::size_t i = 0; i < orb.size(); ++i)
        bs.act_table[c * bs.size + i] = bidx.at(w.carrier_b().act(c, orb[i]));
    GSet as{w.source().group, static_cast<int>(pc.a_points.size()), {}};
    as.act_table.assign(g.order * as.size, 0);
    for (int c = 0; c < g.order; ++c)
      for (std::size_t i = 0; i < pc.a_points.size(); ++i)
        as.act_table[c * as.size + i] = aidx.at(w.carrier_a().act(c, pc.a_points[i]));
    GMap p{as, w.source(), {}}, q{as, bs, {}}, r{bs, w.target(), {}};
    for (int a : pc.a_points) {
      p.table.push_back(w.p.table[a]);
      q.table.push_back(bidx.at(w.q.table[a]));
    }
    for (int b : pc.b_points) r.table.push_back(w.r.table[b]);
    pc.piece = Bispan{std::move(p), std::move(q), std::move(r)};
    out.push_back(std::move(pc));
  }
  return out;
}

// Isomorphism of single-B-orbit pieces: at most |B| candidate betas, then the
// alpha side is an over-isomorphism test.
inline std::optional<std::pair<GMap, GMap>> piece_isomorphic(const Bispan& w, const Bispan& w2) {
  if (w.carrier_a().size != w2.carrier_a().size || w.carrier_b().size != w2.carrier_b().size)
    return std::nullopt;
  std::vector<GMap> betas;
  enumerate_over_isos(w.r, w2.r, betas);
  for (const auto& beta : betas) {
    auto pr = product(w.source(), w2.carrier_b());
    GMap ea{w.carrier_a(), pr.set, std::vector<int>(w.carrier_a().size)};
    for (int a = 0; a < w.carrier_a().size; ++a)
      ea.table[a] = w.p.table[a] * w2.carrier_b().size + beta.table[w.q.table[a]];
    GMap eb{w2.carrier_a(), pr.set, std::vector<int>(w2.carrier_a().size)};
    for (int a = 0; a < w2.carrier_a().size; ++a)
      eb.table[a] = w2.p.table[a] * w2.carrier_b().size + w2.q.table[a];
    if (auto alpha = gsets_over_isomorphic(ea, eb)) return std::make_pair(*alpha, beta);
  }
  return std::nullopt;
}

}  // namespace detail

// Equivariant pair (alpha: A -> A', beta: B -> B') making the four-row
// diagram commute, or nullopt.  The condition decouples over the orbits of
// the B carriers, so pieces are matched pairwise.
inline std::optional<std::pair<GMap, GMap>> bispans_isomorphic(const Bispan& w, const Bispan& w2) {
  if (!(w.source() == w2.source()) || !(w.target() == w2.target())) return std::nullopt;
  if (w.carrier_a().size != w2.carrier_a().size || w.carrier_b().size != w2.carrier_b().size)
    return std::nullopt;
  auto left = detail::split_by_b_orbits(w);
  auto right = detail::split_by_b_orbits(w2);
  if (left.size() != right.size()) return std::nullopt;
  GMap alpha{w.carrier_a(), w2.carrier_a(), std::vector<int>(w.carrier_a().size, -1)};
  GMap beta{w.carrier_b(), w2.carrier_b(), std::vector<int>(w.carrier_b().size, -1)};
  std::vector<char> used(right.size(), 0);
  for (const auto& lp : left) {
    bool matched = false;
    for (std::size_t j = 0; j < right.size() && !matched; ++j) {
      if (used[j]) continue;
      auto sub = detail::piece_isomorphic(lp.piece, right[j].piece);
      if (!sub) continue;
      used[j] = 1;
      matched = true;
      for (std::size_t i = 0; i < lp.a_points.size(); ++i)
        alpha.table[lp.a_points[i]] = right[j].a_points[sub->first.table[i]];
      for (std::size_t i = 0; i < lp.b_points.size(); ++i)
        beta.table[lp.b_points[i]] = right[j].b_points[sub->second.table[i]];
    }
    if (!matched) return std::nullopt;
  }
  return std::make_pair(alpha, beta);
}

namespace detail {

// canonical model of a single orbit over Y given its over-class
inline GMap canonical_orbit_over(const SubgroupSystem& sys, const GSet& y, OverClass oc) {
  GSet orb = orbit_gset(sys.group, sys.reps[oc.first]);
  std::vector<int> leasts;
  std::vector<int> coset_of(sys.group->order, -1);
  for (int a = 0; a < sys.group->order; ++a) {
    if (coset_of[a] >= 0) continue;
    std::set<int> c;
    for (int b : sys.reps[oc.first].elements) c.insert(sys.group->mul(a, b));
    for (int x : c) coset_of[x] = static_cast<int>(leasts.size());
    leasts.push_back(*c.begin());
  }
  GMap r{orb, y, std::vector<int>(orb.size)};
  for (int c = 0; c < orb.size; ++c) r.table[c] = y.act(leasts[c], oc.second);
  return r;
}

}  // namespace detail

// Canonical key, complete for isomorphism: each B-orbit piece is relabeled by
// every over-iso onto its canonical orbit model and contributes the least
// signature of its A part over X x B; the key is the sorted list of piece
// keys.  Equal keys <=> isomorphic bispans.
inline std::string bispan_canonical_key(const Bispan& w, const SubgroupSystem& sys,
                                        std::uint64_t cap = kDefaultCap) {
  std::vector<std::string> piece_keys;
  for (const auto& pc : detail::split_by_b_orbits(w)) {
    OverClass oc = orbit_over_class(pc.piece.r, 0, sys);
    GMap rcan = detail::canonical_orbit_over(sys, w.target(), oc);
    std::vector<GMap> betas;
    detail::enumerate_over_isos(pc.piece.r, rcan, betas, cap);
    std::string best;
    for (const auto& beta : betas) {
      auto pr = product(w.source(), rcan.dom);
      GMap ea{pc.piece.carrier_a(), pr.set, std::vector<int>(pc.piece.carrier_a().size)};
      for (int a = 0; a < pc.piece.carrier_a().size; ++a)
        ea.table[a] = pc.piece.p.table[a] * rcan.dom.size + beta.table[pc.piece.q.table[a]];
      std::ostringstream os;
      for (auto& [cls, pt] : over_canonical_form(ea, sys)) os << "(" << cls << ":" << pt << ")";
      std::string sig = os.str();
      if (best.empty() || sig < best) best = sig;
    }
    std::ostringstream key;
    key << "{" << oc.first << ":" << oc.second << "|" << best << "}";
    piece_keys.push_back(key.str());
  }
  std::sort(piece_keys.begin(), piece_keys.end());
  std::ostringstream os;
  os << "[" << w.source().size << ">" << w.target().size << "]";
  for (auto& k : piece_keys) os << k;
  return os.str();
}

// ---------------------------------------------------------------------------
// TNR words
// ---------------------------------------------------------------------------

enum class Gen { T, N, R };

struct TNRWord {
  // Listed in composition order: word[0] ∘ word[1] ∘ ... ∘ word.back().
  std::vector<std::pair<Gen, GMap>> gens;
};

inline const GSet& gen_source(const std::pair<Gen, GMap>& g) {
  return g.first == Gen::R ? g.second.cod : g.second.dom;
}

inline const GSet& gen_target(const std::pair<Gen, GMap>& g) {
  return g.first == Gen::R ? g.second.dom : g.second.cod;
}

inline Bispan gen_bispan(const std::pair<Gen, GMap>& g) {
  switch (g.first) {
    case Gen::T: return gen_T(g.second);
    case Gen::N: return gen_N(g.second);
    default: return gen_R(g.second);
  }
}

// Interprets a word as a bispan by folding with binary composition; the empty
// word is not allowed (no ambient object).
inline Bispan word_to_bispan(const TNRWord& w, std::uint64_t cap = kDefaultCap) {
  if (w.gens.empty()) throw PreconditionError("word_to_bispan: empty word");
  for (std::size_t i = 0; i + 1 < w.gens.size(); ++i)
    if (!(gen_source(w.gens[i]) == gen_target(w.gens[i + 1])))
      throw PreconditionError("word_to_bispan: word is not composable");
  Bispan acc = gen_bispan(w.gens.back());
  for (std::size_t i = w.gens.size() - 1; i-- > 0;)
    acc = compose_bispans(gen_bispan(w.gens[i]), acc, cap);
  return acc;
}

// ---------------------------------------------------------------------------
// Evaluation on carriers
// ---------------------------------------------------------------------------

template <typename Carrier, typename Value>
Value eval_bispan(const Bispan& w, const Carrier& s, const Value& a) {
  return s.transfer(w.r, s.norm(w.q, s.restrict(w.p, a)));
}

template <typename Carrier, typename Value>
Value eval_word(const TNRWord& w, const Carrier& s, const Value& a) {
  Value acc = a;
  for (std::size_t i = w.gens.size(); i-- > 0;) {
    const auto& [g, f] = w.gens[i];
    switch (g) {
      case Gen::T: acc = s.transfer(f, acc); break;
      case Gen::N: acc = s.norm(f, acc); break;
      case Gen::R: acc = s.restrict(f, acc); break;
    }
  }
  return acc;
}

}  // namespace tambara
