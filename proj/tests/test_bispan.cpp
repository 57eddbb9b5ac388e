#include <tambara/bispan.hpp>
#include <tambara/burnside.hpp>
#include <tambara/pair_c2.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace tambara;

namespace {

GroupPtr c2() {
  static GroupPtr g = make_group("cyclic:2");
  return g;
}

std::vector<GSet> pool_c2(int max_size) {
  std::vector<GSet> out;
  for (int free = 0; 2 * free <= max_size; ++free)
    for (int fixed = 0; 2 * free + fixed <= max_size; ++fixed) {
      if (free == 0 && fixed == 0) continue;
      GSet x{c2(), 2 * free + fixed, {}};
      x.act_table.assign(2 * x.size, 0);
      for (int p = 0; p < x.size; ++p) {
        x.act_table[p] = p;
        x.act_table[x.size + p] = p < 2 * free ? (p ^ 1) : p;
      }
      out.push_back(std::move(x));
    }
  return out;
}

Bispan random_bispan(const GSet& x, const GSet& y, const std::vector<GSet>& pool,
                     std::mt19937_64& rng) {
  for (;;) {
    const GSet& a = pool[rng() % pool.size()];
    const GSet& b = pool[rng() % pool.size()];
    auto ps = enumerate_gmaps(a, x);
    auto qs = enumerate_gmaps(a, b);
    auto rs = enumerate_gmaps(b, y);
    if (ps.empty() || qs.empty() || rs.empty()) continue;
    return Bispan{ps[rng() % ps.size()], qs[rng() % qs.size()], rs[rng() % rs.size()]};
  }
}

}  // namespace

TEST_CASE("distributor degenerate cases") {
  auto g = c2();
  auto pool = pool_c2(3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    auto fs = enumerate_gmaps(x, y);
    if (fs.empty()) continue;
    const GMap& f = fs[rng() % fs.size()];
    // f = id: distributor(id, g) ≅ N_g;  g = id: distributor(f, id) ≅ T_f
    CHECK(bispans_isomorphic(distributor(identity_map(x), f), gen_N(f)).has_value());
    CHECK(bispans_isomorphic(distributor(f, identity_map(y)), gen_T(f)).has_value());
  }
}

TEST_CASE("composition units and the distributor law") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    Bispan w = random_bispan(x, y, pool, rng);
    CHECK(bispans_isomorphic(compose_bispans(identity_bispan(y), w), w).has_value());
    CHECK(bispans_isomorphic(compose_bispans(w, identity_bispan(x)), w).has_value());
    auto fs = enumerate_gmaps(x, y);
    if (!fs.empty()) {
      const GSet& z = pool[rng() % pool.size()];
      auto gs = enumerate_gmaps(y, z);
      if (!gs.empty()) {
        const GMap& f = fs[rng() % fs.size()];
        const GMap& g = gs[rng() % gs.size()];
        CHECK(bispans_isomorphic(compose_bispans(gen_N(g), gen_T(f)), distributor(f, g)).has_value());
      }
    }
  }
}

TEST_CASE("norm of a fold over C2 splits into three orbit pieces") {
  auto g = c2();
  GSet G2{g, 2, {0, 1, 1, 0}};
  GSet GG{g, 4, {0, 1, 2, 3, 1, 0, 3, 2}};
  GSet pt = point_gset(g);
  GMap fold{GG, G2, {0, 1, 0, 1}};
  GMap eps = terminal_map(G2);
  Bispan nt = compose_bispans(gen_N(eps), gen_T(fold));
  CHECK(nt.carrier_a().size == 8);
  CHECK(nt.carrier_b().size == 4);
  std::multiset<std::size_t> orbit_sizes;
  for (auto& o : orbits_of(nt.carrier_b())) orbit_sizes.insert(o.size());
  CHECK(orbit_sizes == std::multiset<std::size_t>{1, 1, 2});
  // the three terms act as nrm(a0), nrm(a1), trc(a0 conj(a1)) on any pair
  EgTpPair tp;
  EPCarrier<EgTpPair> ep(tp, g);
  for (const auto& v : ep.samples(GG, 4, 17)) {
    auto direct = ep.norm(eps, ep.transfer(fold, v));
    auto viabispan = eval_bispan(nt, ep, v);
    CHECK(ep.equal(pt, direct, viabispan));
  }
}

TEST_CASE("n-fold composition via term systems") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GSet> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(pool[rng() % pool.size()]);
    std::vector<Bispan> chain;
    for (int i = 0; i < 3; ++i) chain.push_back(random_bispan(xs[i], xs[i + 1], pool, rng));
    CHECK(bispans_isomorphic(nfold_compose({chain[0]}), chain[0]).has_value());
    CHECK(bispans_isomorphic(nfold_compose({chain[0], chain[1]}),
                             compose_bispans(chain[1], chain[0]))
              .has_value());
    Bispan left = compose_bispans(chain[2], compose_bispans(chain[1], chain[0]));
    Bispan right = compose_bispans(compose_bispans(chain[2], chain[1]), chain[0]);
    Bispan direct = nfold_compose(chain);
    CHECK(bispans_isomorphic(direct, left).has_value());
    CHECK(bispans_isomorphic(direct, right).has_value());
  }
}

TEST_CASE("enlarged composition diagram: the two rhombi are cartesian") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 8) {
    const GSet& x0 = pool[rng() % pool.size()];
    const GSet& x1 = pool[rng() % pool.size()];
    const GSet& x2 = pool[rng() % pool.size()];
    Bispan w0 = random_bispan(x0, x1, pool, rng);
    Bispan w1 = random_bispan(x1, x2, pool, rng);
    Bispan c = compose_bispans(w1, w0);
    ++done;

    // rebuild the enlarged diagram from scratch: B-points are (b1, s),
    // W-points are (a1, s) and A-points are (a0, a1, s), with s a section of
    // r0 over the relevant q1-fiber.
    std::vector<std::pair<int, std::vector<int>>> bpts;
    std::map<std::pair<int, std::vector<int>>, int> bidx;
    for (int b1 = 0; b1 < w1.carrier_b().size; ++b1) {
      auto fib = detail::sorted_fiber(w1.q, b1);
      std::vector<std::vector<int>> cands;
      for (int a1 : fib) cands.push_back(detail::sorted_fiber(w0.r, w1.p.table[a1]));
      detail::enumerate_tables(cands, kDefaultCap, [&](const std::vector<int>& s) {
        bidx[{b1, s}] = static_cast<int>(bpts.size());
        bpts.emplace_back(b1, s);
      });
    }
    std::vector<std::pair<int, int>> wpts;  // (a1, b-index)
    std::map<std::pair<int, int>, int> widx;
    for (std::size_t b = 0; b < bpts.size(); ++b)
      for (int a1 : detail::sorted_fiber(w1.q, bpts[b].first)) {
        widx[{a1, static_cast<int>(b)}] = static_cast<int>(wpts.size());
        wpts.emplace_back(a1, static_cast<int>(b));
      }
    auto section_at = [&](int bi, int a1) {
      auto fib = detail::sorted_fiber(w1.q, bpts[bi].first);
      auto pos = std::lower_bound(fib.begin(), fib.end(), a1) - fib.begin();
      return bpts[bi].second[pos];
    };
    std::vector<std::array<int, 2>> apts;  // (a0, w-index)
    for (std::size_t w = 0; w < wpts.size(); ++w)
      for (int a0 : detail::sorted_fiber(w0.q, section_at(wpts[w].second, wpts[w].first)))
        apts.push_back({a0, static_cast<int>(w)});

    REQUIRE(static_cast<int>(apts.size()) == c.carrier_a().size);
    REQUIRE(static_cast<int>(bpts.size()) == c.carrier_b().size);

    // plain-set maps for the two rhombi (cartesian in sets plus
    // equivariance is cartesian in G-sets; the actions are conjugation on s
    // in each carrier)
    auto triv = [&](int n) {
      auto one = make_group("cyclic:1");
      GSet s{one, n, {}};
      s.act_table.resize(n);
      std::iota(s.act_table.begin(), s.act_table.end(), 0);
      return s;
    };
    GSet A = triv(static_cast<int>(apts.size())), W = triv(static_cast<int>(wpts.size()));
    GSet B = triv(static_cast<int>(bpts.size()));
    GSet A0 = triv(w0.carrier_a().size), B0 = triv(w0.carrier_b().size);
    GSet A1 = triv(w1.carrier_a().size), B1 = triv(w1.carrier_b().size);
    GMap a_to_a0{A, A0, {}}, a_to_w{A, W, {}}, w_to_b0{W, B0, {}}, a0_to_b0{A0, B0, w0.q.table};
    for (auto& [a0, w] : apts) {
      a_to_a0.table.push_back(a0);
      a_to_w.table.push_back(w);
    }
    for (auto& [a1, b] : wpts) w_to_b0.table.push_back(section_at(b, a1));
    CHECK(oracles::is_cartesian(a_to_a0, a_to_w, a0_to_b0, w_to_b0));

    GMap w_to_a1{W, A1, {}}, w_to_b{W, B, {}}, a1_to_b1{A1, B1, w1.q.table}, b_to_b1{B, B1, {}};
    for (auto& [a1, b] : wpts) {
      w_to_a1.table.push_back(a1);
      w_to_b.table.push_back(b);
    }
    for (auto& [b1, s] : bpts) b_to_b1.table.push_back(b1);
    CHECK(oracles::is_cartesian(w_to_a1, w_to_b, a1_to_b1, b_to_b1));
  }
}

TEST_CASE("words: interpretation and pinned identities") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(21);
  auto g = c2();

  // [T_r, N_q, R_p] of a bispan recovers the bispan
  for (int trial = 0; trial < 10; ++trial) {
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    Bispan w = random_bispan(x, y, pool, rng);
    TNRWord word;
    word.gens = {{Gen::T, w.r}, {Gen::N, w.q}, {Gen::R, w.p}};
    CHECK(bispans_isomorphic(word_to_bispan(word), w).has_value());
  }

  // [N_g, N_f] ≅ N_{gf}
  for (int trial = 0; trial < 10; ++trial) {
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    const GSet& z = pool[rng() % pool.size()];
    auto fs = enumerate_gmaps(x, y);
    auto gs = enumerate_gmaps(y, z);
    if (fs.empty() || gs.empty()) continue;
    const GMap& f = fs[rng() % fs.size()];
    const GMap& gm = gs[rng() % gs.size()];
    TNRWord word;
    word.gens = {{Gen::N, gm}, {Gen::N, f}};
    CHECK(bispans_isomorphic(word_to_bispan(word), gen_N(compose(gm, f))).has_value());
  }

  // [N_g, R_f] across a cartesian square ≅ [R_k, N_h]
  {
    GSet x{g, 2, {0, 1, 1, 0}};
    GSet z = point_gset(g);
    GMap h = terminal_map(x);
    GMap k = terminal_map(x);
    auto pb = pullback(h, k);
    TNRWord left, right;
    left.gens = {{Gen::N, pb.to_dom_g}, {Gen::R, pb.to_dom_f}};
    right.gens = {{Gen::R, k}, {Gen::N, h}};
    CHECK(bispans_isomorphic(word_to_bispan(left), word_to_bispan(right)).has_value());
  }

  // non-composable word errors
  {
    GSet x = pool[0];
    GSet y = pool[1];
    TNRWord bad;
    GMap f = enumerate_gmaps(x, x)[0];
    bad.gens = {{Gen::T, f}, {Gen::T, enumerate_gmaps(y, y)[0]}};
    if (!(x == y)) CHECK_THROWS_AS(word_to_bispan(bad), PreconditionError);
  }
}

TEST_CASE("word evaluation is sound for every carrier") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(33);
  auto g = c2();
  BurnsideCarrier burn(g);
  auto ints = constant_int_carrier(g);
  for (int trial = 0; trial < 12; ++trial) {
    // random composable word of length <= 3
    int len = 1 + static_cast<int>(rng() % 3);
    TNRWord word;
    GSet cur = pool[rng() % pool.size()];
    for (int i = 0; i < len; ++i) {
      const GSet& nxt = pool[rng() % pool.size()];
      int tag = static_cast<int>(rng() % 3);
      if (tag == 2) {
        auto fs = enumerate_gmaps(nxt, cur);  // R goes backwards
        if (fs.empty()) { --i; continue; }
        word.gens.insert(word.gens.begin(), {Gen::R, fs[rng() % fs.size()]});
      } else {
        auto fs = enumerate_gmaps(cur, nxt);
        if (fs.empty()) { --i; continue; }
        word.gens.insert(word.gens.begin(), {tag == 0 ? Gen::T : Gen::N, fs[rng() % fs.size()]});
      }
      cur = nxt;
    }
    Bispan w = word_to_bispan(word);
    const GSet& src = gen_source(word.gens.back());
    for (const auto& a : burn.samples(src, 2, 500 + trial))
      CHECK(burn.equal(w.target(), eval_word(word, burn, a), eval_bispan(w, burn, a)));
    for (const auto& a : ints.samples(src, 2, 700 + trial))
      CHECK(ints.equal(w.target(), eval_word(word, ints, a), eval_bispan(w, ints, a)));
  }
}

TEST_CASE("bispan isomorphism and canonical keys") {
  auto pool = pool_c2(3);
  auto g = c2();
  auto sys = subgroup_system(g);
  std::mt19937_64 rng(41);

  // T_f vs N_f differ for non-bijective f
  GSet x{g, 2, {0, 1, 1, 0}};
  GMap eps = terminal_map(x);
  CHECK_FALSE(bispans_isomorphic(gen_T(eps), gen_N(eps)).has_value());

  for (int trial = 0; trial < 12; ++trial) {
    const GSet& s = pool[rng() % pool.size()];
    const GSet& t = pool[rng() % pool.size()];
    Bispan w1 = random_bispan(s, t, pool, rng);
    Bispan w2 = random_bispan(s, t, pool, rng);
    CHECK(bispans_isomorphic(w1, w1).has_value());
    bool iso = bispans_isomorphic(w1, w2).has_value();
    bool keys = bispan_canonical_key(w1, sys) == bispan_canonical_key(w2, sys);
    CHECK(iso == keys);
  }
}

TEST_CASE("structural identities for composite norms") {
  auto pool = pool_c2(3);
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    const GSet& w = pool[rng() % pool.size()];
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    const GSet& z = pool[rng() % pool.size()];
    auto fs = enumerate_gmaps(w, x);
    auto gs = enumerate_gmaps(x, y);
    auto hs = enumerate_gmaps(y, z);
    if (fs.empty() || gs.empty() || hs.empty()) continue;
    const GMap& f = fs[rng() % fs.size()];
    const GMap& g = gs[rng() % gs.size()];
    const GMap& h = hs[rng() % hs.size()];
    // N.N.T: N_h ∘ Δ(f,g) ≅ Δ(f, hg)
    CHECK(bispans_isomorphic(compose_bispans(gen_N(h), distributor(f, g)),
                             distributor(f, compose(h, g)))
              .has_value());
    // N.T.T: Δ(g,h) ∘ T_f ≅ Δ(gf, h)
    CHECK(bispans_isomorphic(compose_bispans(distributor(g, h), gen_T(f)),
                             distributor(compose(g, f), h))
              .has_value());
  }
  // N.R.T: restriction of a distributor along a pullback
  auto c = c2();
  GSet gset{c, 2, {0, 1, 1, 0}};
  GSet pt = point_gset(c);
  GMap k = terminal_map(gset);  // Ỹ = G -> Y = pt
  for (int trial = 0; trial < 6; ++trial) {
    const GSet& wset = pool[rng() % pool.size()];
    const GSet& xset = pool[rng() % pool.size()];
    auto fs = enumerate_gmaps(wset, xset);
    if (fs.empty()) continue;
    const GMap& f = fs[rng() % fs.size()];
    GMap g = terminal_map(xset);  // X -> pt
    // pull everything back along k
    auto pbx = pullback(g, k);
    GMap gt = pbx.to_dom_g;  // X~ -> G
    auto pbw = pullback(f, pbx.to_dom_f);
    GMap ft{pbw.set, pbx.set, {}};
    ft.table = pbw.to_dom_g.table;
    GMap j{pbw.set, wset, pbw.to_dom_f.table};  // W~ -> W
    Bispan lhs = compose_bispans(gen_R(k), distributor(f, g));
    Bispan rhs = compose_bispans(distributor(ft, gt), gen_R(j));
    CHECK(bispans_isomorphic(lhs, rhs).has_value());
  }
}
