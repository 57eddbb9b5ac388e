#pragma once

#include <tambara/gset.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// Span X <- A -> Y of finite G-sets.  Isomorphism classes are the morphisms
// of the Mackey category.
struct Span {
  GMap left;   // A -> X
  GMap right;  // A -> Y

  const GSet& apex() const { return left.dom; }
  const GSet& source() const { return left.cod; }
  const GSet& target() const { return right.cod; }
};

inline Span identity_span(const GSet& x) { return Span{identity_map(x), identity_map(x)}; }

inline Span span_T(const GMap& f) { return Span{identity_map(f.dom), f}; }

inline Span span_R(const GMap& f) { return Span{f, identity_map(f.dom)}; }

// Composition by pullback of the inner legs.
inline Span compose_spans(const Span& w1, const Span& w0) {
  if (!(w0.target() == w1.source())) throw PreconditionError("compose_spans: endpoint mismatch");
  auto pb = pullback(w0.right, w1.left);
  return Span{compose(w0.left, pb.to_dom_f), compose(w1.right, pb.to_dom_g)};
}

// A span is a G-set over X x Y; its canonical over-form is a complete
// isomorphism invariant.
inline std::vector<OverClass> span_signature(const Span& w, const SubgroupSystem& sys) {
  auto pr = product(w.source(), w.target());
  GMap both{w.apex(), pr.set, std::vector<int>(w.apex().size)};
  for (int a = 0; a < w.apex().size; ++a)
    both.table[a] = w.left.table[a] * w.target().size + w.right.table[a];
  return over_canonical_form(both, sys);
}

inline std::string span_canonical_key(const Span& w, const SubgroupSystem& sys) {
  std::ostringstream os;
  os << "[" << w.source().size << ">" << w.target().size << "]";
  for (auto& [cls, pt] : span_signature(w, sys)) os << "(" << cls << ":" << pt << ")";
  return os.str();
}

inline std::optional<GMap> spans_isomorphic(const Span& w, const Span& w2) {
  if (!(w.source() == w2.source()) || !(w.target() == w2.target())) return std::nullopt;
  auto pr = product(w.source(), w.target());
  auto embed = [&](const Span& s) {
    GMap m{s.apex(), pr.set, std::vector<int>(s.apex().size)};
    for (int a = 0; a < s.apex().size; ++a)
      m.table[a] = s.left.table[a] * s.target().size + s.right.table[a];
    return m;
  };
  return gsets_over_isomorphic(embed(w), embed(w2));
}

// Formal sum of spans with common endpoints; equality is multiset equality of
// canonical keys (pi_0 of the span groupoid, not collapsed further).
struct SpanSum {
  std::vector<Span> terms;

  std::vector<std::string> canonical_keys(const SubgroupSystem& sys) const {
    std::vector<std::string> keys;
    for (auto& t : terms) keys.push_back(span_canonical_key(t, sys));
    std::sort(keys.begin(), keys.end());
    return keys;
  }
};

inline bool span_sums_equal(const SpanSum& a, const SpanSum& b, const SubgroupSystem& sys) {
  return a.canonical_keys(sys) == b.canonical_keys(sys);
}

// Splits a span into its orbit summands (one term per apex orbit).
inline SpanSum span_orbit_terms(const Span& w) {
  SpanSum sum;
  for (auto& orb : orbits_of(w.apex())) {
    const auto& g = *w.apex().group;
    GSet sub{w.apex().group, static_cast<int>(orb.size()), {}};
    std::map<int, int> idx;
    for (std::size_t i = 0; i < orb.size(); ++i) idx[orb[i]] = static_cast<int>(i);
    sub.act_table.assign(g.order * sub.size, 0);
    for (int c = 0; c < g.order; ++c)
      for (std::size_t i = 0; i < orb.size(); ++i)
        sub.act_table[c * sub.size + i] = idx.at(w.apex().act(c, orb[i]));
    GMap l{sub, w.source(), {}}, r{sub, w.target(), {}};
    for (int p : orb) {
      l.table.push_back(w.left.table[p]);
      r.table.push_back(w.right.table[p]);
    }
    sum.terms.push_back(Span{std::move(l), std::move(r)});
  }
  return sum;
}

// The double coset formula R^K_L T^H_L = sum over double cosets of
// T∘C∘R, realized as one span term G/H <- G/M_t -> G/K per coset.
inline SpanSum double_coset_rewrite(const GroupPtr& g, const Subgroup& l, const Subgroup& h,
                                    const Subgroup& k) {
  if (!subgroup_leq(h, l) || !subgroup_leq(k, l))
    throw PreconditionError("double_coset_rewrite: H and K must be contained in L");
  auto dc = double_cosets(*g, l, k, h);
  SpanSum sum;
  GSet gh = orbit_gset(g, h), gk = orbit_gset(g, k);
  for (std::size_t i = 0; i < dc.reps.size(); ++i) {
    int t = dc.reps[i];
    const Subgroup& m = dc.stabilizers[i];  // H ∩ tKt^{-1}
    GMap to_h = orbit_projection(g, m, h);
    // right leg x M_t |-> x t K
    GSet gm = to_h.dom;
    // coset representative of each point of G/M_t: scan elements
    std::vector<int> m_rep(gm.size, -1);
    {
      GSet fresh = orbit_gset(g, m);
      // points of orbit_gset are cosets ordered by least element; recover reps
      std::vector<int> coset_of(g->order, -1);
      std::vector<int> least;
      for (int a = 0; a < g->order; ++a) {
        if (coset_of[a] >= 0) continue;
        std::set<int> c;
        for (int b : m.elements) c.insert(g->mul(a, b));
        int id = static_cast<int>(least.size());
        for (int x : c) coset_of[x] = id;
        least.push_back(*c.begin());
      }
      for (int p = 0; p < gm.size; ++p) m_rep[p] = least[p];
    }
    std::vector<int> k_coset_of(g->order, -1);
    {
      int id = 0;
      for (int a = 0; a < g->order; ++a) {
        if (k_coset_of[a] >= 0) continue;
        for (int b : k.elements) k_coset_of[g->mul(a, b)] = id;
        ++id;
      }
    }
    GMap to_k{gm, gk, std::vector<int>(gm.size)};
    for (int p = 0; p < gm.size; ++p) to_k.table[p] = k_coset_of[g->mul(m_rep[p], t)];
    validate_gmap(to_k);
    sum.terms.push_back(Span{to_h, to_k});
  }
  return sum;
}

// Evaluates a span on a Mackey-style carrier: T_q(R_p(a)).
template <typename Carrier, typename Value>
Value eval_span(const Span& w, const Carrier& m, const Value& a) {
  return m.transfer(w.right, m.restrict(w.left, a));
}

}  // namespace tambara
