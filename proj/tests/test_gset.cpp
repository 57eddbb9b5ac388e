#include <tambara/gset.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace tambara;

namespace {

GroupPtr s3() {
  static GroupPtr g = make_group("symmetric:3");
  return g;
}

}  // namespace

TEST_CASE("orbits and projections") {
  auto g = s3();
  auto sys = subgroup_system(g);
  CHECK(orbit_gset(g, trivial_subgroup(*g)).size == 6);
  CHECK(orbit_gset(g, sys.reps[1]).size == 3);

  GMap proj = orbit_projection(g, trivial_subgroup(*g), sys.reps[1]);
  validate_gmap(proj);
  std::map<int, int> fiber_sizes;
  for (int v : proj.table) ++fiber_sizes[v];
  for (auto& [y, n] : fiber_sizes) CHECK(n == 2);

  CHECK_THROWS_AS(orbit_projection(g, sys.reps[1], sys.reps[2]), PreconditionError);
}

TEST_CASE("fixed points, products, pullbacks") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet x = orbit_gset(g, sys.reps[1]);
  CHECK(fixed_points(x, sys.reps[1]).size() == 1);
  CHECK(fixed_points(x, trivial_subgroup(*g)).size() == static_cast<std::size_t>(x.size));

  auto pb = pullback(terminal_map(x), terminal_map(x));
  REQUIRE(pb.set.size == 9);
  auto tags = orbit_decomposition(pb.set, sys);
  REQUIRE(tags.size() == 2);
  CHECK(tags[0].class_index == 0);  // free orbit
  CHECK(tags[1].class_index == 1);  // a G/C2 orbit

  // orbit decomposition agrees with a direct stabilizer scan
  auto brute = oracles::orbits_brute(pb.set);
  CHECK(brute.size() == tags.size());

  GMap bad{x, point_gset(g), std::vector<int>(x.size, 0)};
  GMap other{orbit_gset(g, sys.reps[2]), x, {}};
  CHECK_THROWS_AS(pullback(bad, GMap{x, orbit_gset(g, sys.reps[2]), {}}), PreconditionError);
}

TEST_CASE("orbit decomposition pins") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet self = orbit_gset(g, trivial_subgroup(*g));
  auto tags = orbit_decomposition(self, sys);
  REQUIRE(tags.size() == 1);
  CHECK(tags[0].class_index == 0);

  auto cp = coproduct(orbit_gset(g, sys.reps[1]), point_gset(g));
  auto tags2 = orbit_decomposition(cp.set, sys);
  REQUIRE(tags2.size() == 2);
  CHECK(tags2[0].class_index == 1);
  CHECK(tags2[1].class_index == 3);
}

TEST_CASE("burnside mark consistency for sums and products") {
  auto g = s3();
  auto sys = subgroup_system(g);
  std::vector<GSet> sets = {point_gset(g), orbit_gset(g, sys.reps[1]), orbit_gset(g, sys.reps[2])};
  sets.push_back(coproduct(sets[0], sets[1]).set);
  for (const auto& x : sets)
    for (const auto& y : sets) {
      auto cp = coproduct(x, y).set;
      auto pr = product(x, y).set;
      for (int i = 0; i < sys.size(); ++i) {
        auto fx = fixed_points(x, sys.reps[i]).size();
        auto fy = fixed_points(y, sys.reps[i]).size();
        CHECK(fixed_points(cp, sys.reps[i]).size() == fx + fy);
        CHECK(fixed_points(pr, sys.reps[i]).size() == fx * fy);
      }
    }
}

TEST_CASE("equivariant map enumeration") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet free = orbit_gset(g, trivial_subgroup(*g));
  CHECK(enumerate_gmaps(free, free).size() == 6);  // Map_G(G,G) = G

  // |Map_G(G/H, X)| = |X^H|
  for (int i = 0; i < sys.size(); ++i) {
    GSet orbit = orbit_gset(g, sys.reps[i]);
    for (int j = 0; j < sys.size(); ++j) {
      GSet x = orbit_gset(g, sys.reps[j]);
      CHECK(enumerate_gmaps(orbit, x).size() == fixed_points(x, sys.reps[i]).size());
    }
  }
}

TEST_CASE("section enumeration") {
  auto g = s3();
  auto sys = subgroup_system(g);

  // fold map X ⊔ X -> X has 2^{orbits} sections
  GSet x = coproduct(orbit_gset(g, sys.reps[1]), point_gset(g)).set;
  auto cp = coproduct(x, x);
  GMap fold{cp.set, x, {}};
  fold.table.resize(2 * x.size);
  for (int p = 0; p < x.size; ++p) fold.table[p] = fold.table[x.size + p] = p;
  CHECK(sections(fold).size() == 4);

  // no section of the free orbit over G/C2
  GMap proj = orbit_projection(g, trivial_subgroup(*g), sys.reps[1]);
  CHECK(sections(proj).empty());

  // sections exist only when some orbit maps isomorphically
  for (int i = 0; i < sys.size(); ++i)
    for (int j = 0; j < sys.size(); ++j) {
      GSet u = orbit_gset(g, sys.reps[i]);
      GSet v = orbit_gset(g, sys.reps[j]);
      for (const auto& f : enumerate_gmaps(u, v)) {
        bool has_section = !sections(f).empty();
        CHECK(has_section == (u.size == v.size));
      }
    }
}

TEST_CASE("section cap aborts") {
  auto c2 = make_group("cyclic:2");
  // 12 fixed points over one: 12 candidate images per... build a fold-like map
  GSet big{c2, 12, {}};
  big.act_table.assign(24, 0);
  for (int p = 0; p < 12; ++p) big.act_table[p] = big.act_table[12 + p] = p;
  GSet base = point_gset(c2);
  GMap collapse{big, base, std::vector<int>(12, 0)};
  CHECK_THROWS_AS(sections(collapse, 5), SizeCapError);
}

TEST_CASE("isomorphism tests and canonical over-forms") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet x = orbit_gset(g, sys.reps[1]);
  GSet y = orbit_gset(g, sys.reps[2]);

  CHECK(gsets_isomorphic(x, x).has_value());
  CHECK_FALSE(gsets_isomorphic(x, y).has_value());

  // two 9-point pullback squares with swapped legs are isomorphic over the base
  auto pb1 = pullback(terminal_map(x), terminal_map(x));
  GMap p1 = compose(terminal_map(x), pb1.to_dom_f);
  GMap p2 = compose(terminal_map(x), pb1.to_dom_g);
  auto iso = gsets_over_isomorphic(p1, p2);
  REQUIRE(iso.has_value());
  validate_gmap(*iso);
  for (int a = 0; a < pb1.set.size; ++a) CHECK(p2.table[iso->table[a]] == p1.table[a]);

  // canonical over-form equality agrees with the brute-force search
  std::vector<GMap> overs;
  for (int i = 0; i < sys.size(); ++i) {
    GSet orbit = orbit_gset(g, sys.reps[i]);
    for (const auto& f : enumerate_gmaps(orbit, x)) overs.push_back(f);
    for (const auto& f : enumerate_gmaps(orbit, y)) overs.push_back(f);
  }
  for (const auto& a : overs)
    for (const auto& b : overs) {
      if (!(a.cod == b.cod) || a.dom.size != b.dom.size || a.dom.size > 6) continue;
      bool canon = over_canonical_form(a, sys) == over_canonical_form(b, sys);
      CHECK(canon == oracles::over_isomorphic_brute(a, b));
    }
}

TEST_CASE("gset text format") {
  auto g = s3();
  GSet x = parse_gset_spec(g, "orbits:1,3");
  CHECK(x.size == 4);
  GSet y = parse_gset_spec(g, "points:1 action: 0 0 0 0 0 0");
  CHECK(y.size == 1);
  CHECK_THROWS_AS(parse_gset_spec(g, "points:2 action: 0 1"), ValidationError);
  CHECK_THROWS_AS(parse_gset_spec(g, "orbits:9"), PreconditionError);
}
