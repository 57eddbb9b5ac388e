#pragma once

#include <tambara/mackey.hpp>

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// Element of the Burnside semigroup A(X): a canonical multiset of orbit
// classes over X.  Each orbit (W -> X) is recorded by its stabilizer class i
// and the least N_G(H_i)-translate of the image of a conjugated base point in
// X^{H_i}; this makes equality a plain comparison.
struct BurnsideElement {
  std::vector<std::pair<OverClass, long long>> orbits;  // sorted, multiplicities > 0

  bool operator==(const BurnsideElement& o) const { return orbits == o.orbits; }
  bool operator!=(const BurnsideElement& o) const { return !(*this == o); }
  bool operator<(const BurnsideElement& o) const { return orbits < o.orbits; }

  bool empty() const { return orbits.empty(); }

  long long total_orbits() const {
    long long n = 0;
    for (auto& [c, m] : orbits) n += m;
    return n;
  }

  void add_orbit(OverClass c, long long mult) {
    if (mult == 0) return;
    for (auto& [oc, m] : orbits)
      if (oc == c) {
        m += mult;
        return;
      }
    orbits.emplace_back(c, mult);
    std::sort(orbits.begin(), orbits.end());
  }

  std::string str() const {
    if (orbits.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [c, m] : orbits) {
      if (!first) os << " + ";
      first = false;
      if (m != 1) os << m << "*";
      os << "[" << c.first << "@" << c.second << "]";
    }
    return os.str();
  }
};

// The Burnside Tambara functor: T = post-compose, R = pullback, N = the
// fiberwise-section construction, all followed by canonicalization.
class BurnsideCarrier {
 public:
  using value_type = BurnsideElement;

  explicit BurnsideCarrier(GroupPtr g, std::uint64_t cap = kDefaultCap)
      : group_(std::move(g)), sys_(subgroup_system(group_)), cap_(cap) {}

  const GroupPtr& group() const { return group_; }
  const SubgroupSystem& system() const { return sys_; }

  BurnsideElement canonicalize(const GMap& k) const {
    BurnsideElement e;
    for (auto& orb : orbits_of(k.dom)) e.add_orbit(orbit_over_class(k, orb.front(), sys_), 1);
    return e;
  }

  // Concrete model (Q -> X) of a canonical element.
  GMap realize(const GSet& x, const BurnsideElement& e) const {
    GSet q = empty_gset(group_);
    std::vector<int> table;
    for (auto& [oc, mult] : e.orbits) {
      auto& [cls, img] = oc;
      if (mult < 0) throw PreconditionError("burnside: negative multiplicity in realize");
      GSet orb = orbit_gset(group_, sys_.reps[cls]);
      std::vector<int> least = coset_leasts(sys_.reps[cls]);
      for (long long c = 0; c < mult; ++c) {
        if (static_cast<std::uint64_t>(q.size) + orb.size > cap_)
          throw SizeCapError("burnside: realized carrier exceeds cap");
        int off = q.size;
        q = coproduct(q, orb).set;
        table.resize(q.size);
        for (int p = 0; p < orb.size; ++p) table[off + p] = x.act(least[p], img);
      }
    }
    return GMap{q, x, table};
  }

  value_type zero(const GSet&) const { return {}; }

  value_type one(const GSet& x) const { return canonicalize(identity_map(x)); }

  value_type add(const GSet&, const value_type& a, const value_type& b) const {
    value_type c = a;
    for (auto& [oc, m] : b.orbits) c.add_orbit(oc, m);
    return c;
  }

  // Multiplication, restriction and transfer work one orbit (pair) at a
  // time, so multiplicities never get materialized.
  value_type mul(const GSet& x, const value_type& a, const value_type& b) const {
    value_type out;
    for (auto& [oa, ma] : a.orbits)
      for (auto& [ob, mb] : b.orbits) {
        GMap ka = realize_orbit(x, oa);
        GMap kb = realize_orbit(x, ob);
        auto pb = pullback(ka, kb);
        GMap k{pb.set, x, std::vector<int>(pb.set.size)};
        for (int p = 0; p < pb.set.size; ++p) k.table[p] = ka.table[pb.to_dom_f.table[p]];
        for (auto& [oc, mc] : canonicalize(k).orbits) out.add_orbit(oc, mc * ma * mb);
      }
    return out;
  }

  bool equal(const GSet&, const value_type& a, const value_type& b) const { return a == b; }

  value_type restrict(const GMap& f, const value_type& a) const {
    value_type out;
    for (auto& [oa, ma] : a.orbits) {
      GMap k = realize_orbit(f.cod, oa);
      auto pb = pullback(f, k);
      GMap e{pb.set, f.dom, std::vector<int>(pb.set.size)};
      for (int p = 0; p < pb.set.size; ++p) e.table[p] = pb.to_dom_f.table[p];
      for (auto& [oc, mc] : canonicalize(e).orbits) out.add_orbit(oc, mc * ma);
    }
    return out;
  }

  value_type transfer(const GMap& f, const value_type& a) const {
    value_type out;
    for (auto& [oa, ma] : a.orbits) {
      GMap k = realize_orbit(f.dom, oa);
      out.add_orbit(orbit_over_class(compose(f, k), 0, sys_), ma);
    }
    return out;
  }

  value_type norm(const GMap& f, const value_type& a) const {
    GMap k = realize(f.dom, a);
    const GSet& y = f.cod;
    const auto& grp = *group_;
    detail::SectionPoints pts;
    for (int yy = 0; yy < y.size; ++yy) {
      auto fib = detail::sorted_fiber(f, yy);
      std::vector<std::vector<int>> cands;
      for (int x : fib) cands.push_back(detail::sorted_fiber(k, x));
      detail::enumerate_tables(cands, cap_, [&](const std::vector<int>& s) { pts.add({yy, s}); });
    }
    GSet s{group_, static_cast<int>(pts.points.size()), {}};
    s.act_table.assign(grp.order * s.size, 0);
    for (int c = 0; c < grp.order; ++c)
      for (int i = 0; i < s.size; ++i) {
        const auto& [yy, sec] = pts.points[i];
        int gy = y.act(c, yy);
        auto fib = detail::sorted_fiber(f, yy);
        auto gfib = detail::sorted_fiber(f, gy);
        std::vector<int> gsec(gfib.size());
        int cinv = grp.invert(c);
        for (std::size_t j = 0; j < gfib.size(); ++j) {
          int pre = f.dom.act(cinv, gfib[j]);
          auto pos = std::lower_bound(fib.begin(), fib.end(), pre) - fib.begin();
          gsec[j] = k.dom.act(c, sec[pos]);
        }
        s.act_table[c * s.size + i] = pts.index.at({gy, gsec});
      }
    GMap m{s, y, std::vector<int>(s.size)};
    for (int i = 0; i < s.size; ++i) m.table[i] = pts.points[i].first;
    return canonicalize(m);
  }

  // Fixed-point counts (marks): row of |Q^{H_j}| over subgroup classes.
  std::vector<Int> marks(const GSet& x, const value_type& a) const {
    std::vector<Int> row(sys_.size(), 0);
    for (auto& [oc, mult] : a.orbits) {
      GSet orb = orbit_gset(group_, sys_.reps[oc.first]);
      for (int j = 0; j < sys_.size(); ++j)
        row[j] += Int(mult) * static_cast<int>(fixed_points(orb, sys_.reps[j]).size());
    }
    (void)x;
    return row;
  }

  std::vector<value_type> samples(const GSet& x, int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    // basis of available orbit classes over x
    std::vector<OverClass> basis = basis_classes(x);
    std::vector<value_type> out;
    for (int c = 0; c < count; ++c) {
      value_type v;
      if (!basis.empty())
        for (int k = 0; k < 3; ++k) {
          const auto& oc = basis[rng() % basis.size()];
          long long mult = static_cast<long long>(rng() % 3);
          if (mult) v.add_orbit(oc, mult);
        }
      out.push_back(std::move(v));
    }
    return out;
  }

  // Cancels the common part of a formal difference (used to keep completion
  // representatives small; valid because A(X) is cancellative).
  static void cancel(value_type& pos, value_type& neg) {
    for (auto& [oc, m] : pos.orbits)
      for (auto& [oc2, m2] : neg.orbits)
        if (oc == oc2) {
          long long common = std::min(m, m2);
          m -= common;
          m2 -= common;
        }
    auto strip = [](value_type& v) {
      v.orbits.erase(std::remove_if(v.orbits.begin(), v.orbits.end(),
                                    [](const auto& p) { return p.second == 0; }),
                     v.orbits.end());
    };
    strip(pos);
    strip(neg);
  }

  std::vector<OverClass> basis_classes(const GSet& x) const {
    std::vector<OverClass> basis;
    for (int cls = 0; cls < sys_.size(); ++cls) {
      GSet orb = orbit_gset(group_, sys_.reps[cls]);
      for (const auto& f : enumerate_gmaps(orb, x, cap_)) {
        OverClass oc = orbit_over_class(f, 0, sys_);
        if (std::find(basis.begin(), basis.end(), oc) == basis.end()) basis.push_back(oc);
      }
    }
    std::sort(basis.begin(), basis.end());
    return basis;
  }

 private:
  // single orbit of class oc.first with base image oc.second, over x
  GMap realize_orbit(const GSet& x, OverClass oc) const {
    GSet orb = orbit_gset(group_, sys_.reps[oc.first]);
    std::vector<int> least = coset_leasts(sys_.reps[oc.first]);
    GMap k{orb, x, std::vector<int>(orb.size)};
    for (int p = 0; p < orb.size; ++p) k.table[p] = x.act(least[p], oc.second);
    return k;
  }

  std::vector<int> coset_leasts(const Subgroup& h) const {
    std::vector<int> least;
    std::vector<int> seen(group_->order, 0);
    for (int a = 0; a < group_->order; ++a) {
      if (seen[a]) continue;
      std::set<int> c;
      for (int b : h.elements) c.insert(group_->mul(a, b));
      for (int x : c) seen[x] = 1;
      least.push_back(*c.begin());
    }
    return least;
  }

  GroupPtr group_;
  SubgroupSystem sys_;
  std::uint64_t cap_;
};

// Table of marks: marks[i][j] = |(G/H_i)^{H_j}|.
inline std::vector<std::vector<Int>> table_of_marks(const SubgroupSystem& sys) {
  std::vector<std::vector<Int>> m(sys.size(), std::vector<Int>(sys.size(), 0));
  for (int i = 0; i < sys.size(); ++i) {
    GSet orb = orbit_gset(sys.group, sys.reps[i]);
    for (int j = 0; j < sys.size(); ++j)
      m[i][j] = static_cast<int>(fixed_points(orb, sys.reps[j]).size());
  }
  return m;
}

// Multiplication of basis orbits at the point: the orbit decomposition of
// G/H_i x G/H_j as a vector of class multiplicities.
inline std::vector<long long> burnside_basis_product(const SubgroupSystem& sys, int i, int j) {
  GSet a = orbit_gset(sys.group, sys.reps[i]);
  GSet b = orbit_gset(sys.group, sys.reps[j]);
  auto pr = product(a, b);
  std::vector<long long> out(sys.size(), 0);
  for (auto& tag : orbit_decomposition(pr.set, sys)) ++out[tag.class_index];
  return out;
}

}  // namespace tambara
