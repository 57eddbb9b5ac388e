#include <tambara/change_groups.hpp>
#include <tambara/completion_tambara.hpp>
#include <tambara/monoid_burnside.hpp>
#include <tambara/pair_c2.hpp>
#include <tambara/qfunctor.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace tambara;

namespace {

GroupPtr c2() {
  static GroupPtr g = make_group("cyclic:2");
  return g;
}

GSet free_c2() { return GSet{c2(), 2, {0, 1, 1, 0}}; }

FinCommMonoid cyclic_monoid(int n) {
  FinCommMonoid m;
  m.size = n;
  m.zero = 0;
  m.add_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.add_table[a * n + b] = (a + b) % n;
  return m;
}

FinCommSemiring zmod_ring(int n) {
  FinCommSemiring s;
  s.size = n;
  s.zero = 0;
  s.one = 1 % n;
  s.add_table.assign(n * n, 0);
  s.mul_table.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.add_table[a * n + b] = (a + b) % n;
      s.mul_table[a * n + b] = (a * b) % n;
    }
  return s;
}

}  // namespace

TEST_CASE("fixed-point carrier basics") {
  auto g = c2();
  GSet G = free_c2();
  GSet pt = point_gset(g);
  GMap eps = terminal_map(G);
  auto ints = constant_int_carrier(g);

  // trivial action: values on any orbit are a copy of the coefficients
  for (long long n = -3; n <= 3; ++n) {
    std::vector<Int> v(G.size, Int(n));
    auto nrm = ints.norm(eps, v);
    CHECK(nrm[0] == Int(n) * Int(n));
    auto trc = ints.transfer(eps, v);
    CHECK(trc[0] == 2 * Int(n));
  }

  // cR(G/H) = R^H for a finite semiring with a nontrivial action: take Z/3
  // with the inversion action of C2
  FinCommSemiring z3 = zmod_ring(3);
  TableScalar scalar{g, &z3, {0, 1, 2, 0, 2, 1}};
  FixedPointCarrier<TableScalar> cz3(scalar);
  CHECK(cz3.enumerate(G).size() == 3);       // Map_G(G, R) = R
  CHECK(cz3.enumerate(pt).size() == 1);      // R^{C2} = {0}
  for (const auto& v : cz3.enumerate(G)) CHECK(cz3.is_equivariant(G, v));
}

TEST_CASE("burnside carrier pinned values") {
  auto g = c2();
  BurnsideCarrier a(g);
  GSet G = free_c2();
  GSet pt = point_gset(g);
  GMap eps = terminal_map(G);

  auto t = a.transfer(eps, a.one(G));
  CHECK(a.equal(pt, a.mul(pt, t, t), a.add(pt, t, t)));

  // N_eps(n[G->G]) = n[pt] + (n^2-n)/2 [G/1]
  for (long long n = 0; n <= 4; ++n) {
    BurnsideElement e;
    if (n) e.add_orbit({0, 0}, n);
    BurnsideElement expect;
    if (n) expect.add_orbit({1, 0}, n);
    if ((n * n - n) / 2) expect.add_orbit({0, 0}, (n * n - n) / 2);
    CHECK(a.norm(eps, e) == expect);
  }
}

TEST_CASE("A[M] for the one-point monoid is the Burnside functor") {
  auto g = c2();
  FinCommMonoid one = cyclic_monoid(1);
  CoconstantMackey dm(g, one);
  AMCarrier<CoconstantMackey> am(g, dm);
  BurnsideCarrier burn(g);
  auto sys = burn.system();

  // the translation [U, u, *] -> canonical form of u
  auto to_burnside = [&](const AMCarrier<CoconstantMackey>::Value& v) {
    return burn.canonicalize(v.u);
  };
  std::vector<GSet> sets;
  for (int free = 0; 2 * free <= 4; ++free)
    for (int fixed = 0; 2 * free + fixed <= 4; ++fixed) {
      GSet x{g, 2 * free + fixed, {}};
      x.act_table.assign(2 * x.size, 0);
      for (int p = 0; p < x.size; ++p) {
        x.act_table[p] = p;
        x.act_table[x.size + p] = p < 2 * free ? (p ^ 1) : p;
      }
      sets.push_back(std::move(x));
    }
  std::mt19937_64 rng(7);
  for (const auto& x : sets) {
    auto vals = am.samples(x, 4, rng());
    vals.push_back(am.one(x));
    vals.push_back(am.zero(x));
    for (const auto& v : vals)
      for (const auto& w : vals) {
        CHECK(am.equal(x, v, w) == (to_burnside(v) == to_burnside(w)));
        CHECK(to_burnside(am.add(x, v, w)) == burn.add(x, to_burnside(v), to_burnside(w)));
        CHECK(to_burnside(am.mul(x, v, w)) == burn.mul(x, to_burnside(v), to_burnside(w)));
      }
    for (const auto& y : sets) {
      auto maps = enumerate_gmaps(x, y);
      if (maps.empty()) continue;
      const GMap& f = maps[rng() % maps.size()];
      for (const auto& v : vals) {
        CHECK(to_burnside(am.transfer(f, v)) == burn.transfer(f, to_burnside(v)));
        CHECK(to_burnside(am.norm(f, v)) == burn.norm(f, to_burnside(v)));
      }
      for (const auto& w : am.samples(y, 2, rng()))
        CHECK(to_burnside(am.restrict(f, w)) == burn.restrict(f, to_burnside(w)));
    }
  }
  (void)sys;
}

TEST_CASE("A[M] unit and triangular identity") {
  auto g = c2();
  FinCommMonoid z2 = cyclic_monoid(2);
  CoconstantMackey dm(g, z2);
  AMCarrier<CoconstantMackey> am(g, dm);
  GSet x = free_c2();

  // eta(m) = [X, 1, m]
  CoconstantMackey::value_type m{1};
  auto v = am.eta(x, m);
  CHECK(v.u_set.size == x.size);
  CHECK(v.m == m);

  // epsilon(A[eta](a)) = T_f[W, 1, m] = a
  std::mt19937_64 rng(23);
  for (const auto& a : am.samples(x, 6, rng())) {
    auto lifted = am.eta(a.u_set, a.m);
    auto back = am.transfer(a.u, lifted);
    CHECK(am.equal(x, back, a));
  }
}

TEST_CASE("C2 pair extraction from the Burnside model") {
  auto g = c2();
  BurnsideCarrier burn(g);
  FunctorPair<BurnsideCarrier> f(burn, g);
  GSet G = free_c2();
  GSet pt = point_gset(g);

  // res(t) = 2, trc(1) = t, nrm(n) = n + (n^2-n)/2 t
  auto t = f.trc(f.a_one());
  auto res_t = f.res(t);
  CHECK(burn.equal(G, res_t, burn.add(G, burn.one(G), burn.one(G))));
  for (long long n = 0; n <= 4; ++n) {
    BurnsideElement e;
    if (n) e.add_orbit({0, 0}, n);
    BurnsideElement expect;
    if (n) expect.add_orbit({1, 0}, n);
    if ((n * n - n) / 2) expect.add_orbit({0, 0}, (n * n - n) / 2);
    CHECK(burn.equal(pt, f.nrm(e), expect));
  }
}

TEST_CASE("EP carrier values and validity") {
  auto g = c2();
  EgTpPair p;
  EPCarrier<EgTpPair> ep(p, g);
  GSet G = free_c2();
  GSet pt = point_gset(g);
  auto cp = coproduct(G, pt);

  // EP(G) = A (free), EP(1) = B (fixed): sample validity and the defining
  // compatibility
  for (const auto& v : ep.samples(cp.set, 8, 5)) CHECK(ep.is_valid(cp.set, v));
  CHECK(ep.fixed(G).empty());
  CHECK(ep.fixed(pt).size() == 1);

  // eg-TP axioms on a sample set
  CHECK_FALSE(check_pair_axioms(p, p.samples_a(8, 2), p.samples_b(8, 2)).has_value());

  // structure maps preserve validity
  std::mt19937_64 rng(31);
  for (const auto& f : enumerate_gmaps(cp.set, cp.set)) {
    for (const auto& v : ep.samples(cp.set, 3, rng())) {
      CHECK(ep.is_valid(cp.set, ep.transfer(f, v)));
      CHECK(ep.is_valid(cp.set, ep.norm(f, v)));
      CHECK(ep.is_valid(cp.set, ep.restrict(f, v)));
    }
  }
}

TEST_CASE("q functor") {
  auto g = c2();
  auto sys = subgroup_system(g);

  // q(cR)(G/1) = R: no proper transfers land in the free orbit
  FinCommMonoid z3 = cyclic_monoid(3);
  FixedPointMackey cm(g, z3);
  GSet freeorb = free_c2();
  auto q = q_functor(cm, sys, freeorb);
  CHECK(q.quotient_monoid.size == 3);

  // q(Burnside over S3)(pt): [G/C2] -> 0, [pt] -> 1 via the section count
  auto s3 = make_group("symmetric:3");
  BurnsideCarrier burn(s3);
  GSet pt3 = point_gset(s3);
  BurnsideElement gc2;
  gc2.add_orbit({1, 0}, 1);
  CHECK(burnside_section_count(burn, pt3, gc2) == 0);
  CHECK(burnside_section_count(burn, pt3, burn.one(pt3)) == 1);

  // and the generic machinery agrees on a finite model: q(cM)(pt) for C2
  // divides out the transfers from the free orbit
  GSet pt = point_gset(g);
  auto qpt = q_functor(cm, sys, pt);
  // transfers from G/1 generate 2M = {0, 2, 4} mod 3 = all of M, so the
  // quotient collapses to the trivial monoid
  CHECK(qpt.quotient_monoid.size == 1);
}

TEST_CASE("change of groups") {
  auto g = c2();
  auto sys = subgroup_system(g);
  SubgroupGroup triv = subgroup_as_group(*g, trivial_subgroup(*g));

  // ind of the identity bispan on the H-point is the identity bispan on G/H
  GSet hpt = point_gset(triv.group);
  Bispan id_h = identity_bispan(hpt);
  Bispan ind_id = induce_bispan(g, triv, id_h);
  GSet gh = orbit_gset(g, trivial_subgroup(*g));
  CHECK(bispans_isomorphic(ind_id, identity_bispan(gh)).has_value());

  // the adjunction map is injective and hits every iso class (H = 1, C2)
  GSet x = coproduct(free_c2(), point_gset(g)).set;  // a 3-point C2-set
  GSet y = point_gset(triv.group);                   // H-set
  InducedGSet ind_y = induce_gset(g, triv, y);

  // enumerate small H-bispans res(x) <- A0 -> B0 -> y up to iso
  GSet rx = restrict_gset(triv, x);
  auto one = triv.group;
  auto triv_sys = subgroup_system(one);
  std::vector<Bispan> h_bispans;
  std::vector<GSet> h_pool;
  for (int n = 1; n <= 3; ++n) {
    GSet s{one, n, {}};
    s.act_table.resize(n);
    std::iota(s.act_table.begin(), s.act_table.end(), 0);
    h_pool.push_back(std::move(s));
  }
  for (const auto& a : h_pool)
    for (const auto& b : h_pool)
      for (const auto& p : enumerate_gmaps(a, rx))
        for (const auto& q : enumerate_gmaps(a, b))
          for (const auto& r : enumerate_gmaps(b, y)) h_bispans.push_back(Bispan{p, q, r});
  // dedupe by canonical key
  std::map<std::string, Bispan> h_classes;
  for (const auto& w : h_bispans) h_classes.emplace(bispan_canonical_key(w, triv_sys), w);

  std::set<std::string> g_keys;
  for (const auto& [key, w] : h_classes) {
    Bispan adj = adjoint_bispan(g, triv, x, w);
    validate_gmap(adj.p);
    validate_gmap(adj.q);
    validate_gmap(adj.r);
    CHECK(g_keys.insert(bispan_canonical_key(adj, sys)).second);  // injective
  }
  // surjective on iso classes: every G-bispan x <- A -> B -> ind(y) with
  // carriers <= 4 appears
  std::vector<GSet> g_pool;
  for (int free = 0; 2 * free <= 4; ++free)
    for (int fixed = 0; 2 * free + fixed <= 4; ++fixed) {
      if (free == 0 && fixed == 0) continue;
      GSet s{g, 2 * free + fixed, {}};
      s.act_table.assign(2 * s.size, 0);
      for (int p = 0; p < s.size; ++p) {
        s.act_table[p] = p;
        s.act_table[s.size + p] = p < 2 * free ? (p ^ 1) : p;
      }
      g_pool.push_back(std::move(s));
    }
  for (const auto& a : g_pool)
    for (const auto& b : g_pool)
      for (const auto& p : enumerate_gmaps(a, x))
        for (const auto& q : enumerate_gmaps(a, b))
          for (const auto& r : enumerate_gmaps(b, ind_y.set)) {
            Bispan w{p, q, r};
            CHECK(g_keys.count(bispan_canonical_key(w, sys)) == 1);
          }

  // coind(cR over 1)(G/H) = Map(res(G/H), R)
  FinCommSemiring z3 = zmod_ring(3);
  TableScalar scalar{one, &z3, {}};
  FixedPointCarrier<TableScalar> cr(scalar);
  CoinducedCarrier<FixedPointCarrier<TableScalar>> coind(cr, triv);
  GSet gh2 = orbit_gset(g, trivial_subgroup(*g));
  CHECK(cr.enumerate(restrict_gset(triv, gh2)).size() == 9);  // |R|^{|G/H|}
}

TEST_CASE("completed norms are independent of the representative") {
  auto g = c2();
  BurnsideCarrier burn(g);
  CompletionCarrier<BurnsideCarrier> plus(burn);
  using BurnsidePlusValue = CompletionCarrier<BurnsideCarrier>::Value;
  GSet G = free_c2();
  GSet pt = point_gset(g);
  GMap eps = terminal_map(G);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto v = plus.samples(G, 1, rng())[0];
    auto c = burn.samples(G, 1, rng())[0];
    BurnsidePlusValue shifted{burn.add(G, v.pos, c), burn.add(G, v.neg, c)};
    CHECK(plus.equal(G, v, shifted));
    CHECK(plus.equal(pt, plus.norm(eps, v), plus.norm(eps, shifted)));
  }
}
