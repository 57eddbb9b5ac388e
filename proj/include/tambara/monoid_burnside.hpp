#pragma once

#include <tambara/burnside.hpp>
#include <tambara/monoid_semiring.hpp>

#include <random>
#include <vector>

namespace tambara {

// Finite-valued Mackey carriers: everything the A[M] construction needs.
template <typename M>
concept FiniteMackeyModel = requires(const M& m, const GMap& f, const GSet& x,
                                     const typename M::value_type& a) {
  typename M::value_type;
  { m.restrict(f, a) } -> std::same_as<typename M::value_type>;
  { m.transfer(f, a) } -> std::same_as<typename M::value_type>;
  { m.add(x, a, a) } -> std::same_as<typename M::value_type>;
  { m.zero(x) } -> std::same_as<typename M::value_type>;
  { m.equal(x, a, a) } -> std::convertible_to<bool>;
  { m.enumerate(x) } -> std::same_as<std::vector<typename M::value_type>>;
};

// cM: the fixed-point Mackey functor of a finite commutative monoid with an
// optional action by monoid automorphisms.  Values are equivariant maps
// X -> M stored pointwise.
class FixedPointMackey {
 public:
  using value_type = std::vector<int>;

  FixedPointMackey(GroupPtr g, const FinCommMonoid& m, std::vector<int> action = {})
      : group_(std::move(g)), m_(&m), action_(std::move(action)) {}

  int act_m(int g, int a) const { return action_.empty() ? a : action_[g * m_->size + a]; }

  value_type restrict(const GMap& f, const value_type& a) const {
    value_type b(f.dom.size, m_->zero);
    for (int x = 0; x < f.dom.size; ++x) b[x] = a[f.table[x]];
    return b;
  }

  value_type transfer(const GMap& f, const value_type& a) const {
    value_type b(f.cod.size, m_->zero);
    for (int x = 0; x < f.dom.size; ++x) b[f.table[x]] = m_->add(b[f.table[x]], a[x]);
    return b;
  }

  value_type add(const GSet&, const value_type& a, const value_type& b) const {
    value_type c(a.size(), m_->zero);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = m_->add(a[i], b[i]);
    return c;
  }

  value_type zero(const GSet& x) const { return value_type(x.size, m_->zero); }

  bool equal(const GSet&, const value_type& a, const value_type& b) const { return a == b; }

  value_type glue(const GSet&, const GSet&, const value_type& a, const value_type& b) const {
    value_type c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
  }

  std::vector<value_type> enumerate(const GSet& x, std::uint64_t cap = kDefaultCap) const {
    auto orbits = orbits_of(x);
    std::vector<std::vector<int>> cands;
    std::uint64_t total = 1;
    for (auto& orb : orbits) {
      Subgroup h = point_stabilizer(x, orb.front());
      std::vector<int> fixed;
      for (int v = 0; v < m_->size; ++v) {
        bool ok = true;
        for (int s : h.elements)
          if (act_m(s, v) != v) { ok = false; break; }
        if (ok) fixed.push_back(v);
      }
      total *= fixed.size();
      if (total > cap) throw SizeCapError("cM enumeration exceeds cap");
      cands.push_back(std::move(fixed));
    }
    std::vector<value_type> out;
    if (total == 0) return out;
    std::vector<std::size_t> pick(orbits.size(), 0);
    while (true) {
      value_type v(x.size, m_->zero);
      for (std::size_t i = 0; i < orbits.size(); ++i)
        for (int g = 0; g < x.group->order; ++g)
          v[x.act(g, orbits[i].front())] = act_m(g, cands[i][pick[i]]);
      out.push_back(std::move(v));
      std::size_t j = 0;
      while (j < pick.size() && ++pick[j] == cands[j].size()) pick[j++] = 0;
      if (j == pick.size()) break;
    }
    return out;
  }

 private:
  GroupPtr group_;
  const FinCommMonoid* m_;
  std::vector<int> action_;
};

// dM: the coconstant Mackey functor of a finite commutative monoid with
// trivial action.  dM(X) = Map(X,M)_G = Map(X/G, M); restriction along f
// multiplies by the fiber count |orbit|/|f(orbit)| and transfer sums the
// orbits of each fiber.
class CoconstantMackey {
 public:
  using value_type = std::vector<int>;  // indexed by orbits_of(X) order

  CoconstantMackey(GroupPtr g, const FinCommMonoid& m) : group_(std::move(g)), m_(&m) {}

  const FinCommMonoid& monoid() const { return *m_; }

  value_type restrict(const GMap& f, const value_type& a) const {
    auto dorbs = orbits_of(f.dom);
    auto corbs = orbit_index(f.cod);
    value_type b;
    b.reserve(dorbs.size());
    for (auto& o : dorbs) {
      int target = corbs[f.table[o.front()]];
      long long scale = static_cast<long long>(o.size()) / orbit_size(f.cod, f.table[o.front()]);
      int v = m_->zero;
      for (long long i = 0; i < scale; ++i) v = m_->add(v, a[target]);
      b.push_back(v);
    }
    return b;
  }

  value_type transfer(const GMap& f, const value_type& a) const {
    auto dorbs = orbits_of(f.dom);
    auto corbs = orbit_index(f.cod);
    value_type b(orbits_of(f.cod).size(), m_->zero);
    for (std::size_t i = 0; i < dorbs.size(); ++i) {
      int target = corbs[f.table[dorbs[i].front()]];
      b[target] = m_->add(b[target], a[i]);
    }
    return b;
  }

  value_type add(const GSet&, const value_type& a, const value_type& b) const {
    value_type c(a.size(), m_->zero);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = m_->add(a[i], b[i]);
    return c;
  }

  value_type zero(const GSet& x) const { return value_type(orbits_of(x).size(), m_->zero); }

  bool equal(const GSet&, const value_type& a, const value_type& b) const { return a == b; }

  value_type glue(const GSet&, const GSet&, const value_type& a, const value_type& b) const {
    value_type c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
  }

  std::vector<value_type> enumerate(const GSet& x, std::uint64_t cap = kDefaultCap) const {
    std::size_t n = orbits_of(x).size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= m_->size;
      if (total > cap) throw SizeCapError("dM enumeration exceeds cap");
    }
    std::vector<value_type> out;
    value_type v(n, 0);
    while (true) {
      out.push_back(v);
      std::size_t j = 0;
      while (j < n && ++v[j] == m_->size) v[j++] = 0;
      if (j == n) break;
    }
    return out;
  }

 private:
  static std::vector<int> orbit_index(const GSet& x) {
    std::vector<int> idx(x.size, -1);
    auto orbs = orbits_of(x);
    for (std::size_t i = 0; i < orbs.size(); ++i)
      for (int p : orbs[i]) idx[p] = static_cast<int>(i);
    return idx;
  }

  static long long orbit_size(const GSet& x, int p) {
    std::set<int> orb;
    for (int g = 0; g < x.group->order; ++g) orb.insert(x.act(g, p));
    return static_cast<long long>(orb.size());
  }

  GroupPtr group_;
  const FinCommMonoid* m_;
};

// A[M]: the free Tambara functor on a Mackey functor M.  Values on X are
// isomorphism classes of triples [U, u: U -> X, m in M(U)]; transfers
// post-compose, restrictions pull back, norms route the carrier through the
// distributor and push m by T_q R_p.
template <FiniteMackeyModel M>
class AMCarrier {
 public:
  struct Value {
    GSet u_set;
    GMap u;
    typename M::value_type m;
  };
  using value_type = Value;

  AMCarrier(GroupPtr g, const M& m, std::uint64_t cap = kDefaultCap)
      : group_(std::move(g)), m_(&m), cap_(cap) {}

  const M& mackey() const { return *m_; }

  Value eta(const GSet& x, const typename M::value_type& m) const {
    return Value{x, identity_map(x), m};
  }

  Value zero(const GSet& x) const {
    GSet e = empty_gset(group_);
    return Value{e, GMap{e, x, {}}, m_->zero(e)};
  }

  Value one(const GSet& x) const { return Value{x, identity_map(x), m_->zero(x)}; }

  Value add(const GSet& x, const Value& a, const Value& b) const {
    auto cp = coproduct(a.u_set, b.u_set);
    GMap u{cp.set, x, {}};
    u.table = a.u.table;
    u.table.insert(u.table.end(), b.u.table.begin(), b.u.table.end());
    return Value{cp.set, u, m_->glue(a.u_set, b.u_set, a.m, b.m)};
  }

  Value mul(const GSet& x, const Value& a, const Value& b) const {
    // multiply via the fold map: N_s of the glued value over X ⊔ X
    auto cp = coproduct(x, x);
    GMap au{a.u_set, cp.set, a.u.table};
    GMap bu{b.u_set, cp.set, {}};
    for (int v : b.u.table) bu.table.push_back(x.size + v);
    auto gl = coproduct(a.u_set, b.u_set);
    GMap u{gl.set, cp.set, {}};
    u.table = au.table;
    u.table.insert(u.table.end(), bu.table.begin(), bu.table.end());
    Value glued{gl.set, u, m_->glue(a.u_set, b.u_set, a.m, b.m)};
    GMap fold{cp.set, x, {}};
    fold.table.resize(2 * x.size);
    for (int p = 0; p < x.size; ++p) fold.table[p] = fold.table[x.size + p] = p;
    return norm(fold, glued);
  }

  Value transfer(const GMap& g, const Value& a) const {
    return Value{a.u_set, compose(g, a.u), a.m};
  }

  Value restrict(const GMap& f, const Value& a) const {
    auto pb = pullback(f, a.u);
    GMap ut{pb.set, f.dom, pb.to_dom_f.table};
    return Value{pb.set, ut, m_->restrict(pb.to_dom_g, a.m)};
  }

  Value norm(const GMap& g, const Value& a) const {
    Bispan d = distributor(a.u, g, cap_);
    return Value{d.carrier_b(), d.r, m_->transfer(d.q, m_->restrict(d.p, a.m))};
  }

  bool equal(const GSet&, const Value& a, const Value& b) const {
    if (a.u_set.size != b.u_set.size) return false;
    std::vector<GMap> isos;
    detail::enumerate_over_isos(a.u, b.u, isos, cap_);
    for (const auto& phi : isos)
      if (m_->equal(b.u_set, m_->transfer(phi, a.m), b.m)) return true;
    return false;
  }

  std::vector<Value> samples(const GSet& x, int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
    auto sys = subgroup_system(group_);
    std::vector<Value> out;
    for (int c = 0; c < count; ++c) {
      Value v = zero(x);
      int pieces = static_cast<int>(rng() % 3);
      for (int i = 0; i < pieces; ++i) {
        int cls = static_cast<int>(rng() % sys.size());
        GSet orb = orbit_gset(group_, sys.reps[cls]);
        auto maps = enumerate_gmaps(orb, x, cap_);
        if (maps.empty()) continue;
        const GMap& u = maps[rng() % maps.size()];
        auto ms = m_->enumerate(orb, cap_);
        v = add(x, v, Value{orb, u, ms[rng() % ms.size()]});
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  GroupPtr group_;
  const M* m_;
  std::uint64_t cap_;
};

}  // namespace tambara
