#pragma once

#include <tambara/bispan.hpp>

#include <utility>
#include <vector>

namespace tambara {

// res: forget a G-set to an H-set along a subgroup embedding.
inline GSet restrict_gset(const SubgroupGroup& h, const GSet& x) {
  GSet r{h.group, x.size, {}};
  r.act_table.assign(h.group->order * x.size, 0);
  for (int a = 0; a < h.group->order; ++a)
    for (int p = 0; p < x.size; ++p) r.act_table[a * x.size + p] = x.act(h.to_parent[a], p);
  return r;
}

inline GMap restrict_gmap(const SubgroupGroup& h, const GMap& f) {
  return GMap{restrict_gset(h, f.dom), restrict_gset(h, f.cod), f.table};
}

inline Bispan restrict_bispan(const SubgroupGroup& h, const Bispan& w) {
  return Bispan{restrict_gmap(h, w.p), restrict_gmap(h, w.q), restrict_gmap(h, w.r)};
}

// ind(Y) = G x_H Y, realized on coset-representative pairs (c, y).
struct InducedGSet {
  GSet set;
  std::vector<int> coset_reps;  // least element of each coset tH
  // point layout: (coset c, y) -> c * |Y| + y
};

inline InducedGSet induce_gset(const GroupPtr& g, const SubgroupGroup& h, const GSet& y) {
  InducedGSet out;
  Subgroup hsub{h.to_parent};
  std::vector<int> coset_of(g->order, -1);
  for (int a = 0; a < g->order; ++a) {
    if (coset_of[a] >= 0) continue;
    std::set<int> c;
    for (int b : hsub.elements) c.insert(g->mul(a, b));
    int id = static_cast<int>(out.coset_reps.size());
    for (int x : c) coset_of[x] = id;
    out.coset_reps.push_back(*c.begin());
  }
  const int nc = static_cast<int>(out.coset_reps.size());
  out.set = GSet{g, nc * y.size, {}};
  out.set.act_table.assign(g->order * out.set.size, 0);
  for (int a = 0; a < g->order; ++a)
    for (int c = 0; c < nc; ++c) {
      int moved = g->mul(a, out.coset_reps[c]);
      int c2 = coset_of[moved];
      int hh = h.from_parent.at(g->mul(g->invert(out.coset_reps[c2]), moved));
      for (int p = 0; p < y.size; ++p)
        out.set.act_table[a * out.set.size + c * y.size + p] = c2 * y.size + y.act(hh, p);
    }
  return out;
}

inline GMap induce_gmap(const GroupPtr& g, const SubgroupGroup& h, const GMap& f) {
  InducedGSet d = induce_gset(g, h, f.dom);
  InducedGSet c = induce_gset(g, h, f.cod);
  GMap out{d.set, c.set, std::vector<int>(d.set.size)};
  for (std::size_t cs = 0; cs < d.coset_reps.size(); ++cs)
    for (int p = 0; p < f.dom.size; ++p)
      out.table[cs * f.dom.size + p] = static_cast<int>(cs) * f.cod.size + f.table[p];
  return out;
}

inline Bispan induce_bispan(const GroupPtr& g, const SubgroupGroup& h, const Bispan& w) {
  return Bispan{induce_gmap(g, h, w.p), induce_gmap(g, h, w.q), induce_gmap(g, h, w.r)};
}

// The adjunction bCU_H(res X, Y) = bCU_G(X, ind Y): an H-bispan from res(X)
// to Y maps to the G-bispan (X <- ind A -> ind B -> ind Y) whose left leg is
// the unique equivariant extension f(c, a) = rep_c . f0(a).
inline Bispan adjoint_bispan(const GroupPtr& g, const SubgroupGroup& h, const GSet& x,
                             const Bispan& p0) {
  InducedGSet ia = induce_gset(g, h, p0.p.dom);
  GMap left{ia.set, x, std::vector<int>(ia.set.size)};
  for (std::size_t c = 0; c < ia.coset_reps.size(); ++c)
    for (int a = 0; a < p0.p.dom.size; ++a)
      left.table[c * p0.p.dom.size + a] = x.act(ia.coset_reps[c], p0.p.table[a]);
  return Bispan{left, induce_gmap(g, h, p0.q), induce_gmap(g, h, p0.r)};
}

// coind(S) = S ∘ res: a Tambara model over G evaluated through restriction
// to H.
template <typename S>
class CoinducedCarrier {
 public:
  using value_type = typename S::value_type;

  CoinducedCarrier(const S& base, SubgroupGroup h) : s_(&base), h_(std::move(h)) {}

  value_type restrict(const GMap& f, const value_type& a) const {
    return s_->restrict(restrict_gmap(h_, f), a);
  }
  value_type transfer(const GMap& f, const value_type& a) const {
    return s_->transfer(restrict_gmap(h_, f), a);
  }
  value_type norm(const GMap& f, const value_type& a) const {
    return s_->norm(restrict_gmap(h_, f), a);
  }
  value_type zero(const GSet& x) const { return s_->zero(restrict_gset(h_, x)); }
  value_type one(const GSet& x) const { return s_->one(restrict_gset(h_, x)); }
  value_type add(const GSet& x, const value_type& a, const value_type& b) const {
    return s_->add(restrict_gset(h_, x), a, b);
  }
  value_type mul(const GSet& x, const value_type& a, const value_type& b) const {
    return s_->mul(restrict_gset(h_, x), a, b);
  }
  bool equal(const GSet& x, const value_type& a, const value_type& b) const {
    return s_->equal(restrict_gset(h_, x), a, b);
  }
  std::vector<value_type> samples(const GSet& x, int count, std::uint64_t seed) const {
    return s_->samples(restrict_gset(h_, x), count, seed);
  }

 private:
  const S* s_;
  SubgroupGroup h_;
};

}  // namespace tambara
