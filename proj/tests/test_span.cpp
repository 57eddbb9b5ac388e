#include <tambara/burnside.hpp>
#include <tambara/span.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace tambara;

namespace {

GroupPtr s3() {
  static GroupPtr g = make_group("symmetric:3");
  return g;
}

std::vector<GSet> small_c2_sets(const GroupPtr& c2, int max_size) {
  std::vector<GSet> out;
  for (int free = 0; 2 * free <= max_size; ++free)
    for (int fixed = 0; 2 * free + fixed <= max_size; ++fixed) {
      if (free == 0 && fixed == 0) continue;
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

}  // namespace

TEST_CASE("span functoriality identities") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet a = orbit_gset(g, trivial_subgroup(*g));
  GSet b = orbit_gset(g, sys.reps[1]);
  GSet c = point_gset(g);
  for (const auto& f : enumerate_gmaps(a, b))
    for (const auto& h : enumerate_gmaps(b, c)) {
      CHECK(spans_isomorphic(compose_spans(span_T(h), span_T(f)), span_T(compose(h, f))).has_value());
      CHECK(spans_isomorphic(compose_spans(span_R(f), span_R(h)), span_R(compose(h, f))).has_value());
    }
  // bijections: T_f ≅ R_{f^{-1}}
  for (const auto& f : enumerate_gmaps(a, a)) {
    GMap finv{a, a, std::vector<int>(a.size)};
    for (int p = 0; p < a.size; ++p) finv.table[f.table[p]] = p;
    CHECK(spans_isomorphic(span_T(f), span_R(finv)).has_value());
  }
}

TEST_CASE("R_f T_f apex size is the sum of squared fibers") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GMap f = orbit_projection(g, trivial_subgroup(*g), sys.reps[1]);
  Span comp = compose_spans(span_R(f), span_T(f));
  CHECK(comp.apex().size == 12);
}

TEST_CASE("identity span is a unit") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet x = orbit_gset(g, sys.reps[1]);
  GSet y = orbit_gset(g, sys.reps[2]);
  for (const auto& f : enumerate_gmaps(x, y)) {
    Span w = span_T(f);
    CHECK(spans_isomorphic(compose_spans(identity_span(y), w), w).has_value());
    CHECK(spans_isomorphic(compose_spans(w, identity_span(x)), w).has_value());
  }
}

TEST_CASE("T R interchange around cartesian squares") {
  auto g = s3();
  auto sys = subgroup_system(g);
  GSet x = orbit_gset(g, sys.reps[1]);
  GSet z = point_gset(g);
  GMap h = terminal_map(x);
  GMap k = terminal_map(x);
  auto pb = pullback(h, k);
  // T_g R_f = R_k T_h for the square
  Span lhs = compose_spans(span_T(pb.to_dom_g), span_R(pb.to_dom_f));
  Span rhs = compose_spans(span_R(k), span_T(h));
  CHECK(spans_isomorphic(lhs, rhs).has_value());
}

TEST_CASE("canonical keys decide span isomorphism") {
  auto c2 = make_group("cyclic:2");
  auto sys = subgroup_system(c2);
  auto pool = small_c2_sets(c2, 3);
  std::mt19937_64 rng(7);
  std::vector<Span> spans;
  for (int trial = 0; trial < 40; ++trial) {
    const GSet& apex = pool[rng() % pool.size()];
    const GSet& x = pool[rng() % pool.size()];
    const GSet& y = pool[rng() % pool.size()];
    auto ls = enumerate_gmaps(apex, x);
    auto rs = enumerate_gmaps(apex, y);
    if (ls.empty() || rs.empty()) continue;
    spans.push_back(Span{ls[rng() % ls.size()], rs[rng() % rs.size()]});
  }
  for (const auto& a : spans)
    for (const auto& b : spans) {
      if (!(a.source() == b.source()) || !(a.target() == b.target())) continue;
      if (a.apex().size > 6 || b.apex().size > 6 || a.apex().size != b.apex().size) continue;
      bool keys = span_canonical_key(a, sys) == span_canonical_key(b, sys);
      bool found = spans_isomorphic(a, b).has_value();
      CHECK(keys == found);
      CHECK(found == oracles::spans_isomorphic_brute(a, b));
    }
}

TEST_CASE("span composition is associative up to isomorphism") {
  auto c2 = make_group("cyclic:2");
  auto pool = small_c2_sets(c2, 3);
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 60) {
    const GSet& x0 = pool[rng() % pool.size()];
    const GSet& x1 = pool[rng() % pool.size()];
    const GSet& x2 = pool[rng() % pool.size()];
    const GSet& x3 = pool[rng() % pool.size()];
    auto mk = [&](const GSet& s, const GSet& d) -> std::optional<Span> {
      const GSet& apex = pool[rng() % pool.size()];
      auto ls = enumerate_gmaps(apex, s);
      auto rs = enumerate_gmaps(apex, d);
      if (ls.empty() || rs.empty()) return std::nullopt;
      return Span{ls[rng() % ls.size()], rs[rng() % rs.size()]};
    };
    auto w0 = mk(x0, x1), w1 = mk(x1, x2), w2 = mk(x2, x3);
    if (!w0 || !w1 || !w2) continue;
    ++checked;
    Span left = compose_spans(*w2, compose_spans(*w1, *w0));
    Span right = compose_spans(compose_spans(*w2, *w1), *w0);
    CHECK(spans_isomorphic(left, right).has_value());
  }
}

TEST_CASE("double coset rewrite matches the pullback composite") {
  auto g = s3();
  auto sys = subgroup_system(g);
  Subgroup full = full_subgroup(*g);

  auto rewrite_matches = [&](const Subgroup& l, const Subgroup& h, const Subgroup& k) {
    SpanSum sum = double_coset_rewrite(g, l, h, k);
    // the pullback composite R^K_L ∘ T^H_L
    GMap th = orbit_projection(g, h, l);
    GMap tk = orbit_projection(g, k, l);
    Span composite = compose_spans(span_R(tk), span_T(th));
    SpanSum orbitwise = span_orbit_terms(composite);
    return span_sums_equal(sum, orbitwise, sys);
  };

  SECTION("pinned examples") {
    auto sum = double_coset_rewrite(g, full, sys.reps[1], sys.reps[1]);
    REQUIRE(sum.terms.size() == 2);
    std::multiset<int> middles;
    for (auto& term : sum.terms) middles.insert(term.apex().size);
    CHECK(middles == std::multiset<int>{3, 6});  // G/C2 and G/1

    auto single = double_coset_rewrite(g, full, full, full);
    REQUIRE(single.terms.size() == 1);
    CHECK(spans_isomorphic(single.terms[0], identity_span(orbit_gset(g, full))).has_value());

    auto mixed = double_coset_rewrite(g, full, sys.reps[2], sys.reps[1]);
    REQUIRE(mixed.terms.size() == 1);
    CHECK(mixed.terms[0].apex().size == 6);
  }

  SECTION("exhaustive over small groups") {
    for (const char* spec : {"cyclic:4", "cyclic:6", "symmetric:3", "dihedral:4"}) {
      auto grp = make_group(spec);
      auto subs = all_subgroups(*grp);
      for (const auto& l : subs)
        for (const auto& h : subs) {
          if (!subgroup_leq(h, l)) continue;
          for (const auto& k : subs) {
            if (!subgroup_leq(k, l)) continue;
            auto sysg = subgroup_system(grp);
            SpanSum sum = double_coset_rewrite(grp, l, h, k);
            GMap th = orbit_projection(grp, h, l);
            GMap tk = orbit_projection(grp, k, l);
            SpanSum orbitwise = span_orbit_terms(compose_spans(span_R(tk), span_T(th)));
            CHECK(span_sums_equal(sum, orbitwise, sysg));
          }
        }
    }
  }
}

TEST_CASE("span evaluation on the Burnside carrier") {
  auto c2 = make_group("cyclic:2");
  BurnsideCarrier a(c2);
  GSet g2{c2, 2, {0, 1, 1, 0}};
  GSet pt = point_gset(c2);
  GMap eps = terminal_map(g2);

  // identity span acts as the identity
  auto e = a.samples(pt, 3, 99);
  for (const auto& v : e)
    CHECK(a.equal(pt, eval_span(identity_span(pt), a, v), v));

  // R_eps T_eps doubles on A(G) = N
  Span rt = compose_spans(span_R(eps), span_T(eps));
  for (int n = 0; n <= 4; ++n) {
    BurnsideElement v;
    if (n) v.add_orbit({0, 0}, n);
    auto out = eval_span(rt, a, v);
    CHECK(a.equal(g2, out, a.add(g2, v, v)));
  }

  // double-coset rewrite evaluates like the composite on Burnside over S3
  auto g = s3();
  auto sys = subgroup_system(g);
  BurnsideCarrier a3(g);
  Subgroup full = full_subgroup(*g);
  for (int hi = 0; hi < sys.size(); ++hi)
    for (int ki = 0; ki < sys.size(); ++ki) {
      SpanSum sum = double_coset_rewrite(g, full, sys.reps[hi], sys.reps[ki]);
      GMap th = orbit_projection(g, sys.reps[hi], full);
      GMap tk = orbit_projection(g, sys.reps[ki], full);
      Span composite = compose_spans(span_R(tk), span_T(th));
      GSet gh = orbit_gset(g, sys.reps[hi]);
      GSet gk = orbit_gset(g, sys.reps[ki]);
      for (const auto& v : a3.samples(gh, 2, 1000 + 10 * hi + ki)) {
        auto direct = eval_span(composite, a3, v);
        auto summed = a3.zero(gk);
        for (const auto& term : sum.terms) summed = a3.add(gk, summed, eval_span(term, a3, v));
        CHECK(a3.equal(gk, direct, summed));
      }
    }
}
