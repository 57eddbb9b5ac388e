#pragma once

#include <tambara/change_groups.hpp>
#include <tambara/completion.hpp>
#include <tambara/completion_tambara.hpp>
#include <tambara/monoid_burnside.hpp>
#include <tambara/pair_c2.hpp>
#include <tambara/qfunctor.hpp>
#include <tambara/witt.hpp>

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tambara::verify {

struct Report {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or summary
  double seconds = 0.0;
};

namespace detail {

// All C2-sets with free_count free orbits and fixed_count fixed points,
// total size <= max_size (including the empty set).
inline std::vector<GSet> c2_gsets_up_to(const GroupPtr& c2, int max_size) {
  std::vector<GSet> out;
  for (int free = 0; 2 * free <= max_size; ++free)
    for (int fixed = 0; 2 * free + fixed <= max_size; ++fixed) {
      GSet x{c2, 2 * free + fixed, {}};
      x.act_table.assign(2 * x.size, 0);
      for (int p = 0; p < x.size; ++p) {
        x.act_table[p] = p;
        x.act_table[x.size + p] = p < 2 * free ? (p ^ 1) : p;
      }
      out.push_back(std::move(x));
    }
  return out;
}

// complement of the image of f as an embedded sub-G-set of cod(f)
inline std::pair<GSet, GMap> image_complement(const GMap& f) {
  std::vector<char> hit(f.cod.size, 0);
  for (int v : f.table) hit[v] = 1;
  std::vector<int> pts;
  for (int p = 0; p < f.cod.size; ++p)
    if (!hit[p]) pts.push_back(p);
  GSet comp{f.cod.group, static_cast<int>(pts.size()), {}};
  comp.act_table.assign(f.cod.group->order * comp.size, 0);
  std::map<int, int> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = static_cast<int>(i);
  for (int g = 0; g < f.cod.group->order; ++g)
    for (std::size_t i = 0; i < pts.size(); ++i)
      comp.act_table[g * comp.size + i] = idx.at(f.cod.act(g, pts[i]));
  GMap inc{comp, f.cod, pts};
  return {comp, inc};
}

// N_f(0) = (0,1) under the image/complement splitting of cod(f)
template <typename S>
bool norm_of_zero_holds(const S& s, const GMap& f) {
  auto [comp, inc] = image_complement(f);
  auto expected = s.transfer(inc, s.one(comp));
  return s.equal(f.cod, s.norm(f, s.zero(f.dom)), expected);
}

template <typename S>
bool frobenius_holds(const S& s, const GMap& f, const typename S::value_type& a,
                     const typename S::value_type& b) {
  auto lhs = s.transfer(f, s.mul(f.dom, a, s.restrict(f, b)));
  auto rhs = s.mul(f.cod, s.transfer(f, a), b);
  return s.equal(f.cod, lhs, rhs);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

inline Report make_report(const std::string& name, bool pass, const std::string& detail,
                          const Timer& t) {
  return Report{name, pass, detail, t.elapsed()};
}

// Random equivariant map via the enumeration (nullopt when none exists).
inline std::optional<GMap> random_gmap(const GSet& x, const GSet& y, std::mt19937_64& rng) {
  auto maps = enumerate_gmaps(x, y);
  if (maps.empty()) return std::nullopt;
  return maps[rng() % maps.size()];
}

inline Bispan random_bispan(const GSet& x, const GSet& y, const std::vector<GSet>& pool,
                            std::mt19937_64& rng) {
  for (int tries = 0; tries < 200; ++tries) {
    const GSet& a = pool[rng() % pool.size()];
    const GSet& b = pool[rng() % pool.size()];
    auto p = random_gmap(a, x, rng);
    auto q = random_gmap(a, b, rng);
    auto r = random_gmap(b, y, rng);
    if (p && q && r) return Bispan{*p, *q, *r};
  }
  // fall back to the identity bispan shape through x
  GMap idx = identity_map(x);
  auto r = random_gmap(x, y, rng);
  if (!r) throw PreconditionError("random_bispan: no equivariant map to the target");
  return Bispan{idx, idx, *r};
}

}  // namespace detail

// --- criterion 1 -----------------------------------------------------------
inline Report burnside_c2(std::uint64_t, std::uint64_t) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  BurnsideCarrier a(c2);
  GSet pt = point_gset(c2);
  GSet g{c2, 2, {0, 1, 1, 0}};
  GMap eps = terminal_map(g);
  auto one_g = a.one(g);
  auto tt = a.transfer(eps, one_g);
  bool ok = a.equal(pt, a.mul(pt, tt, tt), a.add(pt, tt, tt));
  std::string detail = "t^2 = 2t";
  BurnsideElement two = a.add(g, one_g, one_g);
  if (ok && !a.equal(g, a.restrict(eps, tt), two)) {
    ok = false;
    detail = "res(t) != 2";
  }
  if (ok && !a.equal(pt, a.transfer(eps, one_g), tt)) {
    ok = false;
    detail = "trc(1) != t";
  }
  return detail::make_report("burnside-c2", ok, detail, t);
}

// --- criterion 2 -----------------------------------------------------------
inline Report distributor_example(std::uint64_t, std::uint64_t cap) {
  detail::Timer t;
  auto c1 = make_group("cyclic:1");
  GSet three{c1, 3, {0, 1, 2}}, two{c1, 2, {0, 1}}, one{c1, 1, {0}}, four{c1, 4, {0, 1, 2, 3}};
  GMap f{three, two, {0, 1, 1}};
  GMap g{two, one, {0, 0}};
  Bispan d = distributor(f, g, cap);
  Bispan explicit_w{GMap{four, three, {0, 1, 0, 2}}, GMap{four, two, {0, 0, 1, 1}},
                    GMap{two, one, {0, 0}}};
  bool ok = d.carrier_a().size == 4 && d.carrier_b().size == 2;
  std::string detail = "carrier sizes";
  if (ok && !bispans_isomorphic(d, explicit_w)) {
    ok = false;
    detail = "not isomorphic to the explicit 3<-4->2->1 bispan";
  }
  if (ok) {
    auto s = constant_int_carrier(c1);
    for (long long a0 = -2; a0 <= 2 && ok; ++a0)
      for (long long a1 = -2; a1 <= 2 && ok; ++a1)
        for (long long a2 = -2; a2 <= 2 && ok; ++a2) {
          std::vector<Int> val{Int(a0), Int(a1), Int(a2)};
          auto got = eval_bispan(d, s, val);
          if (got[0] != Int(a0) * (Int(a1) + Int(a2))) {
            ok = false;
            detail = "evaluation != a0(a1+a2)";
          }
        }
  }
  return detail::make_report("distributor", ok, detail, t);
}

// --- criterion 3 -----------------------------------------------------------
inline Report presentation_relations(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  auto pool = detail::c2_gsets_up_to(c2, 4);
  BurnsideCarrier burn(c2, cap);
  auto ints = constant_int_carrier(c2);
  long long cases = 0;
  std::string witness;

  // samples are fixed per test set (zero/one plus two pseudorandom values)
  std::vector<std::vector<BurnsideElement>> burn_samples;
  std::vector<std::vector<std::vector<Int>>> int_samples;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto bs = burn.samples(pool[i], 2, seed + i);
    bs.push_back(burn.one(pool[i]));
    burn_samples.push_back(std::move(bs));
    auto is = ints.samples(pool[i], 2, seed + i);
    is.push_back(ints.one(pool[i]));
    int_samples.push_back(std::move(is));
  }
  auto samples_for = [&](const GSet& x, auto& s) -> const auto& {
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pool[i] == x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, BurnsideCarrier>)
          return burn_samples[i];
        else
          return int_samples[i];
      }
    throw PreconditionError("presentation: set not in pool");
  };

  auto run_pair = [&](const GMap& f, const GMap& g, auto& s) -> bool {
    const GSet& x = f.dom;
    Bispan d = distributor(f, g, cap);
    GMap gf = compose(g, f);
    for (const auto& a : samples_for(x, s)) {
      auto lhs = s.norm(g, s.transfer(f, a));
      auto rhs = eval_bispan(d, s, a);
      if (!s.equal(g.cod, lhs, rhs)) {
        witness = "N_g T_f != T_r N_q R_p";
        return false;
      }
      auto n1 = s.norm(gf, a);
      auto n2 = s.norm(g, s.norm(f, a));
      if (!s.equal(g.cod, n1, n2)) {
        witness = "N_{gf} != N_g N_f";
        return false;
      }
    }
    return true;
  };

  auto run_square = [&](const GMap& h, const GMap& k, auto& s) -> bool {
    // pullback square W -> X -> Z, W -> Y -> Z; interchange laws
    auto pb = pullback(h, k);
    const GMap& ft = pb.to_dom_f;  // W -> X
    const GMap& gt = pb.to_dom_g;  // W -> Y
    for (const auto& a : samples_for(h.dom, s)) {
      auto l1 = s.transfer(gt, s.restrict(ft, a));
      auto r1 = s.restrict(k, s.transfer(h, a));
      if (!s.equal(k.dom, l1, r1)) {
        witness = "T R != R T around a cartesian square";
        return false;
      }
      auto l2 = s.norm(gt, s.restrict(ft, a));
      auto r2 = s.restrict(k, s.norm(h, a));
      if (!s.equal(k.dom, l2, r2)) {
        witness = "N R != R N around a cartesian square";
        return false;
      }
    }
    return true;
  };

  bool ok = true;
  for (const auto& x : pool)
    for (const auto& y : pool) {
      auto fs = enumerate_gmaps(x, y, cap);
      for (const auto& f : fs) {
        for (const auto& z : pool) {
          for (const auto& g : enumerate_gmaps(y, z, cap)) {
            ++cases;
            if (!run_pair(f, g, burn) || !run_pair(f, g, ints)) { ok = false; }
            if (!ok) break;
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (!ok) break;
      // interchange: squares over z with legs from x and y
      for (const auto& z : pool) {
        if (z.size == 0 || z.size > 2) continue;
        for (const auto& h : enumerate_gmaps(x, z, cap))
          for (const auto& k : enumerate_gmaps(y, z, cap)) {
            ++cases;
            if (!run_square(h, k, burn) || !run_square(h, k, ints)) ok = false;
            if (!ok) break;
          }
        if (!ok) break;
      }
      if (!ok) break;
    }
  std::ostringstream os;
  os << cases << " cases";
  if (!ok) os << "; failed: " << witness;
  return detail::make_report("presentation", ok && cases >= 500, os.str(), t);
}

// --- criterion 4 -----------------------------------------------------------
inline Report term_systems(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  auto pool = detail::c2_gsets_up_to(c2, 3);
  std::vector<GSet> nonempty;
  for (auto& x : pool)
    if (x.size > 0) nonempty.push_back(x);
  std::mt19937_64 rng(seed);
  auto ints = constant_int_carrier(c2);
  bool ok = true;
  std::string witness;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    std::vector<GSet> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(nonempty[rng() % nonempty.size()]);
    std::vector<Bispan> chain;
    for (int i = 0; i < 3; ++i) chain.push_back(detail::random_bispan(xs[i], xs[i + 1], nonempty, rng));
    // w01 ~ w0 and w02 ~ w1 . w0
    Bispan w01 = nfold_compose({chain[0]}, cap);
    if (!bispans_isomorphic(w01, chain[0])) {
      ok = false;
      witness = "w01 != w0";
      break;
    }
    Bispan w02 = nfold_compose({chain[0], chain[1]}, cap);
    Bispan bin = compose_bispans(chain[1], chain[0], cap);
    if (!bispans_isomorphic(w02, bin)) {
      ok = false;
      witness = "w02 != w1∘w0";
      break;
    }
    // w_km ∘ w_nk ~ w_nm for 0 <= n < k < m <= 3
    for (int n = 0; n <= 3 && ok; ++n)
      for (int k = n + 1; k <= 3 && ok; ++k)
        for (int m = k + 1; m <= 3 && ok; ++m) {
          std::vector<Bispan> lo(chain.begin() + n, chain.begin() + k);
          std::vector<Bispan> hi(chain.begin() + k, chain.begin() + m);
          std::vector<Bispan> all(chain.begin() + n, chain.begin() + m);
          Bispan glued = compose_bispans(nfold_compose(hi, cap), nfold_compose(lo, cap), cap);
          Bispan direct = nfold_compose(all, cap);
          if (!bispans_isomorphic(glued, direct)) {
            ok = false;
            witness = "w_km∘w_nk != w_nm";
          }
        }
    if (!ok) break;
    // evaluation agreement on the integer carrier
    Bispan w03 = nfold_compose(chain, cap);
    for (const auto& a : ints.samples(chain[0].source(), 2, seed + trial)) {
      auto stepwise = eval_bispan(chain[2], ints, eval_bispan(chain[1], ints, eval_bispan(chain[0], ints, a)));
      auto direct = eval_bispan(w03, ints, a);
      if (!ints.equal(chain[2].target(), stepwise, direct)) {
        ok = false;
        witness = "evaluation disagrees with the single-step composite";
      }
    }
  }
  return detail::make_report("term-systems", ok, ok ? "50 random chains" : witness, t);
}

// --- criterion 5 -----------------------------------------------------------
namespace detail {

// F(E(P)) = P on samples, through the canonical identifications EP(G) = A,
// EP(1) = B.
template <PairModel P>
bool fe_round_trip(const P& p, const GroupPtr& c2, std::uint64_t seed, std::string& witness) {
  EPCarrier<P> ep(p, c2);
  FunctorPair<EPCarrier<P>> fep(ep, c2);
  auto lift_a = [&](const typename P::a_type& a) {
    typename EPCarrier<P>::Value v;
    v.u = {a, p.conj(a)};
    return v;
  };
  auto lift_b = [&](const typename P::b_type& b) {
    typename EPCarrier<P>::Value v;
    v.u = {p.res(b)};
    v.v = {b};
    return v;
  };
  auto as = p.samples_a(6, seed);
  auto bs = p.samples_b(6, seed);
  for (const auto& a0 : as)
    for (const auto& a1 : as) {
      if (!fep.a_eq(lift_a(p.a_add(a0, a1)), fep.a_add(lift_a(a0), lift_a(a1)))) {
        witness = "FE add on A";
        return false;
      }
      if (!fep.a_eq(lift_a(p.a_mul(a0, a1)), fep.a_mul(lift_a(a0), lift_a(a1)))) {
        witness = "FE mul on A";
        return false;
      }
    }
  for (const auto& a : as) {
    if (!fep.b_eq(lift_b(p.trc(a)), fep.trc(lift_a(a)))) {
      witness = "FE trc";
      return false;
    }
    if (!fep.b_eq(lift_b(p.nrm(a)), fep.nrm(lift_a(a)))) {
      witness = "FE nrm";
      return false;
    }
    if (!fep.a_eq(lift_a(p.conj(a)), fep.conj(lift_a(a)))) {
      witness = "FE conj";
      return false;
    }
  }
  for (const auto& b : bs)
    if (!fep.a_eq(lift_a(p.res(b)), fep.res(lift_b(b)))) {
      witness = "FE res";
      return false;
    }
  return true;
}

}  // namespace detail

inline Report c2_pairs(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  std::string witness;
  bool ok = true;

  // axioms for eg-TP, including the nrm formula
  EgTpPair tp;
  if (auto bad = check_pair_axioms(tp, tp.samples_a(8, seed), tp.samples_b(8, seed))) {
    ok = false;
    witness = "eg-TP axiom: " + *bad;
  }
  if (ok) {
    for (const auto& a : tp.samples_a(10, seed + 5)) {
      EgTpPair::BElt expect{a.i * a.i, a.i * a.j, static_cast<int>(a.j % 2 != 0)};
      if (!tp.b_eq(tp.nrm(a), expect)) {
        ok = false;
        witness = "nrm(i+ja) != i^2+ij.beta+j^2.gamma";
        break;
      }
    }
  }

  if (ok && !detail::fe_round_trip(tp, c2, seed, witness)) ok = false;

  // Burnside pair round trip
  BurnsideCarrier burn(c2, cap);
  FunctorPair<BurnsideCarrier> fburn(burn, c2);
  if (ok && !detail::fe_round_trip(fburn, c2, seed + 1, witness)) ok = false;

  // alpha: M -> EFM is an isomorphism of carriers for the Burnside model
  if (ok) {
    EPCarrier<FunctorPair<BurnsideCarrier>> efm(fburn, c2);
    GSet free_g = fburn.free_orbit();
    GSet pt = fburn.point();
    auto alpha = [&](const GSet& x, const BurnsideElement& m) {
      typename EPCarrier<FunctorPair<BurnsideCarrier>>::Value v;
      for (int pnt = 0; pnt < x.size; ++pnt) {
        GMap xhat{free_g, x, {pnt, x.act(1, pnt)}};
        v.u.push_back(burn.restrict(xhat, m));
      }
      for (int pnt : efm.fixed(x)) {
        GMap xbre{pt, x, {pnt}};
        v.v.push_back(burn.restrict(xbre, m));
      }
      return v;
    };
    for (const auto& x : detail::c2_gsets_up_to(c2, 6)) {
      if (!ok) break;
      // alpha is a semiring map commuting with the structure maps
      auto ms = burn.samples(x, 3, seed + x.size);
      ms.push_back(burn.one(x));
      for (const auto& m0 : ms) {
        for (const auto& m1 : ms) {
          if (!efm.equal(x, alpha(x, burn.add(x, m0, m1)), efm.add(x, alpha(x, m0), alpha(x, m1))) ||
              !efm.equal(x, alpha(x, burn.mul(x, m0, m1)), efm.mul(x, alpha(x, m0), alpha(x, m1)))) {
            ok = false;
            witness = "alpha is not a semiring map";
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
      for (const auto& y : detail::c2_gsets_up_to(c2, 6)) {
        auto maps = enumerate_gmaps(x, y, cap);
        for (std::size_t mi = 0; mi < maps.size(); mi += (maps.size() > 6 ? maps.size() / 6 : 1)) {
          const GMap& f = maps[mi];
          for (const auto& m : ms) {
            if (!efm.equal(y, alpha(y, burn.transfer(f, m)), efm.transfer(f, alpha(x, m))) ||
                !efm.equal(y, alpha(y, burn.norm(f, m)), efm.norm(f, alpha(x, m)))) {
              ok = false;
              witness = "alpha does not commute with T/N";
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (!ok) break;
      // injectivity on a window plus surjectivity onto the coordinate window
      std::vector<BurnsideElement> window;
      auto basis = burn.basis_classes(x);
      std::function<void(std::size_t, BurnsideElement)> gen = [&](std::size_t i, BurnsideElement cur) {
        if (cur.total_orbits() > 2) return;
        if (i == basis.size()) {
          window.push_back(cur);
          return;
        }
        for (int mult = 0; mult <= 2; ++mult) {
          BurnsideElement next = cur;
          if (mult) next.add_orbit(basis[i], mult);
          if (next.total_orbits() <= 2) gen(i + 1, next);
        }
      };
      gen(0, {});
      for (std::size_t i = 0; i < window.size() && ok; ++i)
        for (std::size_t j = i + 1; j < window.size() && ok; ++j)
          if (efm.equal(x, alpha(x, window[i]), alpha(x, window[j]))) {
            ok = false;
            witness = "alpha is not injective";
          }
    }
  }
  return detail::make_report("c2-pairs", ok, ok ? "FE = 1, EF = 1, axioms pass" : witness, t);
}

// --- criterion 6 -----------------------------------------------------------
inline Report witt_burnside(std::uint64_t, std::uint64_t cap) {
  detail::Timer t;
  auto s3 = make_group("symmetric:3");
  WittContext ctx(s3);
  BurnsideCarrier burn(s3, cap);
  BurnsidePlus plus(burn);
  GSet pt = point_gset(s3);
  bool ok = true;
  std::string witness;
  const int r = ctx.size();
  auto delta = [&](int i) {
    WittVector<Int> v;
    v.coeffs.assign(r, Int(0));
    v.coeffs[i] = 1;
    return v;
  };
  std::vector<BurnsidePlusValue> tau_basis;
  for (int i = 0; i < r; ++i) tau_basis.push_back(tau(ctx, burn, delta(i)));
  for (int i = 0; i < r && ok; ++i)
    for (int j = 0; j < r && ok; ++j) {
      auto z = witt_mul(ctx, delta(i), delta(j));
      auto tz = tau(ctx, burn, z);
      // oracle 1: double cosets — tau(z) must equal the orbit decomposition
      // of G/H_i x G/H_j (the Burnside basis product)
      auto orbit_prod = burnside_basis_product(ctx.sys, i, j);
      BurnsideElement expect;
      for (int k = 0; k < r; ++k)
        if (orbit_prod[k]) expect.add_orbit({k, 0}, orbit_prod[k]);
      if (!plus.equal(pt, tz, BurnsidePlusValue{expect, {}})) {
        ok = false;
        witness = "tau(witt_mul) disagrees with the double-coset/orbit oracle";
      }
      // oracle 2: marks multiply componentwise
      if (ok) {
        auto gz = ghost(ctx, z);
        for (int k = 0; k < r && ok; ++k)
          if (gz[k] != ctx.marks[i][k] * ctx.marks[j][k]) {
            ok = false;
            witness = "ghost of product disagrees with the marks oracle";
          }
      }
      // transport through tau, additively and multiplicatively
      if (ok) {
        auto lhs = plus.mul(pt, tau_basis[i], tau_basis[j]);
        if (!plus.equal(pt, lhs, tz)) {
          ok = false;
          witness = "tau does not transport the product";
        }
      }
      if (ok) {
        auto s = witt_add(ctx, delta(i), delta(j));
        auto lhs = plus.add(pt, tau_basis[i], tau_basis[j]);
        if (!plus.equal(pt, lhs, tau(ctx, burn, s))) {
          ok = false;
          witness = "tau does not transport the sum";
        }
      }
    }
  // the two pinned examples: [G/C2]^2 = [G/C2] + [G/1] (also as Witt
  // coordinates), [G/C3]^2 = 2[G/C3] in the Burnside model
  if (ok) {
    auto z = witt_mul(ctx, delta(1), delta(1));
    if (!(z.coeffs[0] == 1 && z.coeffs[1] == 1 && z.coeffs[2] == 0 && z.coeffs[3] == 0)) {
      ok = false;
      witness = "witt_mul(dC2,dC2) != dC2 + d1";
    }
    BurnsideElement two_c3;
    two_c3.add_orbit({2, 0}, 2);
    auto w = witt_mul(ctx, delta(2), delta(2));
    if (ok && !plus.equal(pt, tau(ctx, burn, w), BurnsidePlusValue{two_c3, {}})) {
      ok = false;
      witness = "[G/C3]^2 != 2[G/C3]";
    }
  }
  return detail::make_report("witt-burnside", ok, ok ? "basis products agree with both oracles" : witness, t);
}

// --- criterion 7 -----------------------------------------------------------
namespace detail {

// classical 2-typical Witt vectors of length n: ghost w_i = sum_{j<=i} 2^j
// x_j^{2^(i-j)}; coordinates are mapped onto subgroup classes in reverse
// order (x_0 at the class of G).
inline std::vector<Polynomial<Int>> classical_two_typical(int n, bool multiply) {
  using P = Polynomial<Int>;
  const int r = n;
  auto ghost_of = [&](const std::vector<P>& coords) {
    std::vector<P> w(r);
    for (int i = 0; i < r; ++i) {
      P acc;
      for (int j = 0; j <= i; ++j) {
        P term = ring_pow(coords[j], 1ull << (i - j));
        for (int c = 0; c < (1 << j); ++c) acc = acc + term;
      }
      w[i] = acc;
    }
    return w;
  };
  // classical coordinate j lives at variable index (r-1-j) to match the
  // subgroup-class order; ys are offset by r.
  std::vector<P> xs(r), ys(r);
  for (int j = 0; j < r; ++j) {
    xs[j] = P::variable(static_cast<unsigned>(r - 1 - j));
    ys[j] = P::variable(static_cast<unsigned>(2 * r - 1 - j));
  }
  auto wx = ghost_of(xs), wy = ghost_of(ys);
  std::vector<P> target(r);
  for (int i = 0; i < r; ++i) target[i] = multiply ? wx[i] * wy[i] : wx[i] + wy[i];
  // triangular solve: z_i = (target_i - sum_{j<i} 2^j z_j^{2^(i-j)}) / 2^i
  std::vector<P> z(r);
  for (int i = 0; i < r; ++i) {
    P rest;
    for (int j = 0; j < i; ++j) {
      P term = ring_pow(z[j], 1ull << (i - j));
      for (int c = 0; c < (1 << j); ++c) rest = rest + term;
    }
    auto q = (target[i] - rest).divide_exact(Int(1) << i);
    if (!q) throw std::logic_error("classical Witt solve: non-integral");
    z[i] = *q;
  }
  return z;
}

}  // namespace detail

inline Report witt_classical(std::uint64_t, std::uint64_t) {
  detail::Timer t;
  bool ok = true;
  std::string witness;
  for (int n : {2, 3}) {
    auto g = cyclic_group(1 << (n - 1));
    WittContext ctx(g);
    if (ctx.size() != n) {
      ok = false;
      witness = "cyclic 2-group has unexpected class count";
      break;
    }
    const auto& up = witt_universal(ctx);
    auto classical_sum = detail::classical_two_typical(n, false);
    auto classical_prod = detail::classical_two_typical(n, true);
    for (int i = 0; i < n; ++i) {
      // classical index i sits at class r-1-i
      if (up.sum[n - 1 - i] != classical_sum[i]) {
        ok = false;
        witness = "sum polynomial mismatch for C" + std::to_string(1 << (n - 1));
      }
      if (up.prod[n - 1 - i] != classical_prod[i]) {
        ok = false;
        witness = "product polynomial mismatch for C" + std::to_string(1 << (n - 1));
      }
    }
    if (!ok) break;
  }
  return detail::make_report("witt-classical", ok, ok ? "C2 and C4 match 2-typical Witt vectors" : witness, t);
}

// --- criterion 8 -----------------------------------------------------------
inline Report witt_integrality(std::uint64_t, std::uint64_t) {
  detail::Timer t;
  bool ok = true;
  std::string witness;
  for (const std::string& spec :
       {std::string("cyclic:2"), std::string("cyclic:3"), std::string("cyclic:4"),
        std::string("cyclic:6"), std::string("symmetric:3"), std::string("dihedral:4")}) {
    try {
      WittContext ctx(make_group(spec));
      const auto& up = witt_universal(ctx);
      for (const auto& p : up.sum)
        if (!p.all_coefficients_integral()) throw std::logic_error("non-integral sum coefficient");
      for (const auto& p : up.prod)
        if (!p.all_coefficients_integral()) throw std::logic_error("non-integral product coefficient");
    } catch (const std::logic_error& e) {
      ok = false;
      witness = spec + ": " + e.what();
      break;
    }
  }
  return detail::make_report("witt-integrality", ok, ok ? "C2 C3 C4 C6 S3 D4 universal polynomials are integral" : witness, t);
}

// --- criterion 9 -----------------------------------------------------------
inline Report ghost_homomorphism(std::uint64_t seed, std::uint64_t) {
  detail::Timer t;
  bool ok = true;
  std::string witness;
  std::mt19937_64 rng(seed);
  for (const std::string& spec :
       {std::string("cyclic:2"), std::string("cyclic:3"), std::string("cyclic:4"),
        std::string("cyclic:6"), std::string("symmetric:3"), std::string("dihedral:4")}) {
    WittContext ctx(make_group(spec));
    const int r = ctx.size();
    for (int trial = 0; trial < 200 && ok; ++trial) {
      WittVector<Int> x, y;
      for (int i = 0; i < r; ++i) {
        x.coeffs.push_back(Int(static_cast<long long>(rng() % 21) - 10));
        y.coeffs.push_back(Int(static_cast<long long>(rng() % 21) - 10));
      }
      auto gs = ghost(ctx, witt_add(ctx, x, y));
      auto gp = ghost(ctx, witt_mul(ctx, x, y));
      auto gx = ghost(ctx, x), gy = ghost(ctx, y);
      for (int j = 0; j < r; ++j) {
        if (gs[j] != gx[j] + gy[j]) {
          ok = false;
          witness = spec + ": ghost(x+y) != ghost(x)+ghost(y)";
        }
        if (gp[j] != gx[j] * gy[j]) {
          ok = false;
          witness = spec + ": ghost(xy) != ghost(x)ghost(y)";
        }
      }
    }
    if (!ok) break;
  }
  return detail::make_report("ghost-hom", ok, ok ? "200 random vectors per group" : witness, t);
}

// --- criterion 10 ----------------------------------------------------------
inline Report completion_suite(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  BurnsideCarrier burn(c2, cap);
  BurnsidePlus plus(burn);
  bool ok = true;
  std::string witness;

  // N_eps(-1) = t - 1
  {
    GSet g{c2, 2, {0, 1, 1, 0}};
    GSet pt = point_gset(c2);
    GMap eps = terminal_map(g);
    BurnsidePlusValue minus_one{burn.zero(g), burn.one(g)};
    auto lhs = plus.norm(eps, minus_one);
    BurnsidePlusValue expect{burn.transfer(eps, burn.one(g)), burn.one(pt)};
    if (!plus.equal(pt, lhs, expect)) {
      ok = false;
      witness = "N_eps(-1) != t - 1";
    }
  }

  for (const auto& x : detail::c2_gsets_up_to(c2, 3)) {
    if (!ok) break;
    for (const auto& y : detail::c2_gsets_up_to(c2, 3)) {
      if (!ok) break;
      for (const auto& f : enumerate_gmaps(x, y, cap)) {
        FiberCube fc = fiber_cube(f);
        auto e = conv_one(burn, fc);
        if (!burn.equal(fc.v, chi(burn, fc, burn.zero(x)), e)) {
          ok = false;
          witness = "chi(0) != e";
          break;
        }
        auto samples = burn.samples(x, 2, seed + x.size + 7 * y.size);
        samples.push_back(burn.one(x));
        for (const auto& a : samples) {
          if (!burn.equal(y, burn.restrict(fc.j, chi(burn, fc, a)), burn.norm(f, a))) {
            ok = false;
            witness = "R_j chi != N_f";
            break;
          }
          for (const auto& b : samples) {
            auto lhs = chi(burn, fc, burn.add(x, a, b));
            auto rhs = conv_mul(burn, fc, chi(burn, fc, a), chi(burn, fc, b));
            if (!burn.equal(fc.v, lhs, rhs)) {
              ok = false;
              witness = "chi(a+b) != chi(a) v chi(b)";
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
    }
  }
  return detail::make_report("completion", ok, ok ? "chi laws and N_eps(-1) = t-1" : witness, t);
}

// --- criterion 11 ----------------------------------------------------------
inline Report norm_frobenius(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  auto pool = detail::c2_gsets_up_to(c2, 4);
  BurnsideCarrier burn(c2, cap);
  auto ints = constant_int_carrier(c2);
  EgTpPair tp;
  EPCarrier<EgTpPair> ep(tp, c2);
  BurnsidePlus plus(burn);
  bool ok = true;
  std::string witness;
  long long cases = 0;

  auto run = [&](auto& s, const char* model) {
    for (const auto& x : pool) {
      for (const auto& y : pool) {
        for (const auto& f : enumerate_gmaps(x, y, cap)) {
          ++cases;
          if (!detail::norm_of_zero_holds(s, f)) {
            ok = false;
            witness = std::string(model) + ": N_f(0) != (0,1)";
            return;
          }
          auto as = s.samples(x, 2, seed + cases);
          auto bs = s.samples(y, 2, seed + cases + 1);
          for (const auto& a : as)
            for (const auto& b : bs)
              if (!detail::frobenius_holds(s, f, a, b)) {
                ok = false;
                witness = std::string(model) + ": Frobenius fails";
                return;
              }
        }
      }
    }
  };
  run(burn, "burnside");
  if (ok) run(ints, "fixed-point Z");
  if (ok) run(ep, "EP(eg-TP)");
  if (ok) run(plus, "burnside+");
  std::ostringstream os;
  os << cases << " maps across four models";
  return detail::make_report("norm-frobenius", ok, ok ? os.str() : witness, t);
}

// --- criterion 12 ----------------------------------------------------------
inline Report q_functor_suite(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto s3 = make_group("symmetric:3");
  BurnsideCarrier burn(s3, cap);
  const auto& sys = burn.system();
  bool ok = true;
  std::string witness;
  std::mt19937_64 rng(seed);
  for (int cls = 0; cls < sys.size() && ok; ++cls) {
    GSet u = orbit_gset(s3, sys.reps[cls]);
    // basis classes over U that survive q: exactly the identity class
    int survivors = 0;
    for (const auto& oc : burn.basis_classes(u)) {
      GSet w = orbit_gset(s3, sys.reps[oc.first]);
      if (w.size == u.size) ++survivors;
    }
    if (survivors != 1) {
      ok = false;
      witness = "q(A)(G/H_" + std::to_string(cls) + ") has " + std::to_string(survivors) +
                " surviving basis classes";
      break;
    }
    // alpha' equals the section count of a realized model
    for (int trial = 0; trial < 6 && ok; ++trial) {
      auto e = burn.samples(u, 1, seed + 100 * cls + trial)[0];
      Int expected = burnside_section_count(burn, u, e);
      GMap k = burn.realize(u, e);
      Int actual = static_cast<long long>(sections(k, cap).size());
      if (expected != actual) {
        ok = false;
        witness = "alpha' != |Sec| on a random element";
      }
    }
    (void)rng;
  }
  return detail::make_report("q-functor", ok, ok ? "q(A)(U) = N via |Sec| on all S3 orbits" : witness, t);
}

// --- criterion 13 ----------------------------------------------------------
namespace detail {

// Enumerates the addition tables of all commutative monoids on {0..n-1} with
// identity 0, by backtracking over the upper triangle with incremental
// associativity pruning.
inline void enumerate_comm_monoids(int n, const std::function<void(const FinCommMonoid&)>& emit) {
  FinCommMonoid m;
  m.size = n;
  m.zero = 0;
  m.add_table.assign(n * n, -1);
  auto get = [&](int a, int b) { return m.add_table[a * n + b]; };
  auto set = [&](int a, int b, int v) {
    m.add_table[a * n + b] = v;
    m.add_table[b * n + a] = v;
  };
  for (int a = 0; a < n; ++a) set(0, a, a);
  // slots: pairs (a,b) with 1 <= a <= b
  std::vector<std::pair<int, int>> slots;
  for (int a = 1; a < n; ++a)
    for (int b = a; b < n; ++b) slots.emplace_back(a, b);
  std::function<bool()> assoc_ok = [&]() {
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b)
        for (int c = 1; c < n; ++c) {
          int ab = get(a, b), bc = get(b, c);
          if (ab < 0 || bc < 0) continue;
          int l = get(ab, c), r = get(a, bc);
          if (l >= 0 && r >= 0 && l != r) return false;
        }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      emit(m);
      return;
    }
    auto [a, b] = slots[i];
    for (int v = 0; v < n; ++v) {
      set(a, b, v);
      if (assoc_ok()) rec(i + 1);
    }
    m.add_table[a * n + b] = -1;
    m.add_table[b * n + a] = -1;
  };
  rec(0);
}

// Brute-force least congruence: intersect all congruences containing the
// pairs (enumerated via set partitions).
inline int brute_force_quotient_size(const FinCommMonoid& m,
                                     const std::vector<std::pair<int, int>>& pairs) {
  const int n = m.size;
  std::vector<std::vector<int>> partitions;  // class_of vectors
  std::vector<int> cls(n, 0);
  std::function<void(int, int)> gen = [&](int i, int maxc) {
    if (i == n) {
      partitions.push_back(cls);
      return;
    }
    for (int c = 0; c <= maxc; ++c) {
      cls[i] = c;
      gen(i + 1, std::max(maxc, c + 1));
    }
  };
  gen(0, 0);
  std::vector<int> best;
  int best_classes = -1;
  for (const auto& p : partitions) {
    bool contains = true;
    for (auto& [a, b] : pairs)
      if (p[a] != p[b]) { contains = false; break; }
    if (!contains) continue;
    bool congruence = true;
    for (int a = 0; a < n && congruence; ++a)
      for (int b = 0; b < n && congruence; ++b)
        if (p[a] == p[b])
          for (int c = 0; c < n; ++c)
            if (p[m.add(a, c)] != p[m.add(b, c)]) { congruence = false; break; }
    if (!congruence) continue;
    int classes = *std::max_element(p.begin(), p.end()) + 1;
    if (classes > best_classes) {
      best_classes = classes;
      best = p;
    }
  }
  return best_classes;  // the least congruence has the most classes
}

}  // namespace detail

inline Report congruence_suite(std::uint64_t seed, std::uint64_t) {
  detail::Timer t;
  bool ok = true;
  std::string witness;
  long long monoids = 0, checks = 0;
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 5 && ok; ++n) {
    detail::enumerate_comm_monoids(n, [&](const FinCommMonoid& m) {
      if (!ok) return;
      ++monoids;
      // deterministic subsample of monoids at the larger sizes
      if (n == 5 && monoids % 7 != 0) return;
      std::vector<std::vector<std::pair<int, int>>> pair_sets;
      pair_sets.push_back({});
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pair_sets.push_back({{a, b}});
      for (int trial = 0; trial < 4; ++trial)
        pair_sets.push_back({{static_cast<int>(rng() % n), static_cast<int>(rng() % n)},
                             {static_cast<int>(rng() % n), static_cast<int>(rng() % n)}});
      for (const auto& pairs : pair_sets) {
        ++checks;
        Congruence got = congruence_closure(m, pairs);
        int expect = detail::brute_force_quotient_size(m, pairs);
        if (got.class_count != expect) {
          ok = false;
          witness = "closure size " + std::to_string(got.class_count) + " != brute force " +
                    std::to_string(expect) + " on a monoid of size " + std::to_string(n);
          return;
        }
      }
    });
  }
  // the N/U_a-style collapse: saturating N at 10 with 3 ~ 0 collapses fully
  if (ok) {
    const int cap10 = 11;
    FinCommMonoid sat;
    sat.size = cap10;
    sat.zero = 0;
    sat.add_table.assign(cap10 * cap10, 0);
    for (int a = 0; a < cap10; ++a)
      for (int b = 0; b < cap10; ++b) sat.add_table[a * cap10 + b] = std::min(a + b, 10);
    Congruence c = congruence_closure(sat, {{3, 0}});
    if (c.class_count != 1) {
      ok = false;
      witness = "saturating N with 3~0 did not collapse to the zero semigroup";
    }
  }
  std::ostringstream os;
  os << monoids << " monoids, " << checks << " generating sets";
  return detail::make_report("congruence", ok, ok ? os.str() : witness, t);
}

// --- criterion 14 ----------------------------------------------------------
inline Report norm_degree(std::uint64_t seed, std::uint64_t cap) {
  detail::Timer t;
  auto c2 = make_group("cyclic:2");
  BurnsideCarrier burn(c2, cap);
  BurnsidePlus plus(burn);
  GSet g{c2, 2, {0, 1, 1, 0}};
  GSet pt = point_gset(c2);
  GMap eps = terminal_map(g);
  OverClass free_class = orbit_over_class(identity_map(g), 0, burn.system());

  auto embed = [&](const Int& n) {
    BurnsideElement pos, neg;
    if (n > 0) pos.add_orbit(free_class, static_cast<long long>(n));
    if (n < 0) neg.add_orbit(free_class, static_cast<long long>(-n));
    return BurnsidePlusValue{pos, neg};
  };
  auto f = [&](const Int& n) { return plus.norm(eps, embed(n)); };

  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::vector<Int>, Int>> trials;
  for (int i = 0; i < 100; ++i) {
    std::vector<Int> incs;
    for (int k = 0; k < 3; ++k) incs.push_back(Int(static_cast<long long>(rng() % 9) - 4));
    trials.emplace_back(incs, Int(static_cast<long long>(rng() % 9) - 4));
  }
  auto witness_idx = polynomial_degree_at_most<Int, BurnsidePlusValue>(
      f, 2, trials, [](const Int& a, const Int& b) { return a + b; },
      [&](const BurnsidePlusValue& a, const BurnsidePlusValue& b) { return plus.add(pt, a, b); },
      [&](const BurnsidePlusValue& a) { return plus.neg(a); },
      [&](const BurnsidePlusValue& a, const BurnsidePlusValue& b) { return plus.equal(pt, a, b); },
      plus.zero(pt));
  bool ok = !witness_idx.has_value();
  // the norm is not of degree <= 1: delta[1]delta[1] N at 0 is nonzero
  if (ok) {
    auto d2 = delta_iterated<Int, BurnsidePlusValue>(
        f, {Int(1), Int(1)}, Int(0), [](const Int& a, const Int& b) { return a + b; },
        [&](const BurnsidePlusValue& a, const BurnsidePlusValue& b) { return plus.add(pt, a, b); },
        [&](const BurnsidePlusValue& a) { return plus.neg(a); }, plus.zero(pt));
    if (plus.equal(pt, d2, plus.zero(pt))) {
      ok = false;
    }
  }
  return detail::make_report("norm-degree", ok,
                             ok ? "delta^3 N_eps = 0 on 100 samples, delta^2 != 0" : "degree bound fails", t);
}

// ---------------------------------------------------------------------------

inline const std::vector<std::pair<std::string, Report (*)(std::uint64_t, std::uint64_t)>>& suites() {
  static const std::vector<std::pair<std::string, Report (*)(std::uint64_t, std::uint64_t)>> table = {
      {"burnside-c2", &burnside_c2},
      {"distributor", &distributor_example},
      {"presentation", &presentation_relations},
      {"term-systems", &term_systems},
      {"c2-pairs", &c2_pairs},
      {"witt-burnside", &witt_burnside},
      {"witt-classical", &witt_classical},
      {"witt-integrality", &witt_integrality},
      {"ghost-hom", &ghost_homomorphism},
      {"completion", &completion_suite},
      {"norm-frobenius", &norm_frobenius},
      {"q-functor", &q_functor_suite},
      {"congruence", &congruence_suite},
      {"norm-degree", &norm_degree},
  };
  return table;
}

inline Report run_suite(const std::string& name, std::uint64_t seed, std::uint64_t cap) {
  for (const auto& [n, fn] : suites())
    if (n == name) return fn(seed, cap);
  throw PreconditionError("verify: unknown suite '" + name + "'");
}

}  // namespace tambara::verify
