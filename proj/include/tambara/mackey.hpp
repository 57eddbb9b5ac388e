#pragma once

#include <tambara/bispan.hpp>
#include <tambara/coeff.hpp>
#include <tambara/semiring.hpp>

#include <concepts>
#include <random>
#include <vector>

namespace tambara {

// A Mackey model exposes restriction/transfer plus the additive semigroup on
// each value set; a Tambara model adds norms and the multiplicative structure.
// Value sets may be infinite; only the operations are total.
template <typename C>
concept MackeyModel = requires(const C& c, const GMap& f, const GSet& x,
                               const typename C::value_type& a) {
  typename C::value_type;
  { c.restrict(f, a) } -> std::same_as<typename C::value_type>;
  { c.transfer(f, a) } -> std::same_as<typename C::value_type>;
  { c.add(x, a, a) } -> std::same_as<typename C::value_type>;
  { c.zero(x) } -> std::same_as<typename C::value_type>;
  { c.equal(x, a, a) } -> std::convertible_to<bool>;
};

template <typename C>
concept TambaraModelC = MackeyModel<C> && requires(const C& c, const GMap& f, const GSet& x,
                                                   const typename C::value_type& a) {
  { c.norm(f, a) } -> std::same_as<typename C::value_type>;
  { c.mul(x, a, a) } -> std::same_as<typename C::value_type>;
  { c.one(x) } -> std::same_as<typename C::value_type>;
};

// Scalar models plug the coefficient arithmetic (and the G-action on it)
// into the fixed-point carrier.
struct IntScalar {
  using value_type = Int;
  GroupPtr group;  // trivial action

  Int zero() const { return 0; }
  Int one() const { return 1; }
  Int add(const Int& a, const Int& b) const { return a + b; }
  Int mul(const Int& a, const Int& b) const { return a * b; }
  bool eq(const Int& a, const Int& b) const { return a == b; }
  Int act(int, const Int& a) const { return a; }
  bool enumerable() const { return false; }
  std::vector<Int> all() const { return {}; }
};

// Finite semiring scalar, optionally with a G-action by semiring maps.
struct TableScalar {
  using value_type = int;
  GroupPtr group;
  const FinCommSemiring* ring = nullptr;
  std::vector<int> action;  // |G| * size, empty = trivial

  int zero() const { return ring->zero; }
  int one() const { return ring->one; }
  int add(int a, int b) const { return ring->add(a, b); }
  int mul(int a, int b) const { return ring->mul(a, b); }
  bool eq(int a, int b) const { return a == b; }
  int act(int g, int a) const { return action.empty() ? a : action[g * ring->size + a]; }
  bool enumerable() const { return true; }
  std::vector<int> all() const {
    std::vector<int> v(ring->size);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }
};

// cR: the fixed-point Tambara functor of a G-semiring R.  Values on X are the
// equivariant maps X -> R, stored pointwise; the bispan action is
// f_w(s)(y) = sum over r(b)=y of prod over q(a)=b of s(p(a)).
template <typename Scalar>
class FixedPointCarrier {
 public:
  using scalar_type = typename Scalar::value_type;
  using value_type = std::vector<scalar_type>;

  explicit FixedPointCarrier(Scalar s) : scalar_(std::move(s)) {}

  const Scalar& scalar() const { return scalar_; }

  value_type restrict(const GMap& f, const value_type& a) const {
    value_type b(f.dom.size, scalar_.zero());
    for (int x = 0; x < f.dom.size; ++x) b[x] = a[f.table[x]];
    return b;
  }

  value_type transfer(const GMap& f, const value_type& a) const {
    value_type b(f.cod.size, scalar_.zero());
    for (int x = 0; x < f.dom.size; ++x) b[f.table[x]] = scalar_.add(b[f.table[x]], a[x]);
    return b;
  }

  value_type norm(const GMap& f, const value_type& a) const {
    value_type b(f.cod.size, scalar_.one());
    for (int x = 0; x < f.dom.size; ++x) b[f.table[x]] = scalar_.mul(b[f.table[x]], a[x]);
    return b;
  }

  value_type zero(const GSet& x) const { return value_type(x.size, scalar_.zero()); }
  value_type one(const GSet& x) const { return value_type(x.size, scalar_.one()); }

  value_type add(const GSet&, const value_type& a, const value_type& b) const {
    value_type c(a.size(), scalar_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = scalar_.add(a[i], b[i]);
    return c;
  }

  value_type mul(const GSet&, const value_type& a, const value_type& b) const {
    value_type c(a.size(), scalar_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = scalar_.mul(a[i], b[i]);
    return c;
  }

  bool equal(const GSet&, const value_type& a, const value_type& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!scalar_.eq(a[i], b[i])) return false;
    return true;
  }

  bool is_equivariant(const GSet& x, const value_type& a) const {
    for (int g = 0; g < x.group->order; ++g)
      for (int p = 0; p < x.size; ++p)
        if (!scalar_.eq(a[x.act(g, p)], scalar_.act(g, a[p]))) return false;
    return true;
  }

  // All equivariant values (finite scalars only).
  std::vector<value_type> enumerate(const GSet& x, std::uint64_t cap = kDefaultCap) const {
    if (!scalar_.enumerable()) throw UnsupportedCarrierError("carrier values are not enumerable");
    auto orbits = orbits_of(x);
    std::vector<std::vector<scalar_type>> cands;
    std::uint64_t total = 1;
    for (auto& orb : orbits) {
      Subgroup h = point_stabilizer(x, orb.front());
      std::vector<scalar_type> fixed;
      for (auto& v : scalar_.all()) {
        bool ok = true;
        for (int s : h.elements)
          if (!scalar_.eq(scalar_.act(s, v), v)) { ok = false; break; }
        if (ok) fixed.push_back(v);
      }
      total *= fixed.size();
      if (total > cap) throw SizeCapError("carrier enumeration exceeds cap");
      cands.push_back(std::move(fixed));
    }
    std::vector<value_type> out;
    if (total == 0) return out;
    std::vector<std::size_t> pick(orbits.size(), 0);
    while (true) {
      value_type v(x.size, scalar_.zero());
      for (std::size_t i = 0; i < orbits.size(); ++i) {
        int base = orbits[i].front();
        for (int g = 0; g < x.group->order; ++g)
          v[x.act(g, base)] = scalar_.act(g, cands[i][pick[i]]);
      }
      out.push_back(std::move(v));
      std::size_t j = 0;
      while (j < pick.size() && ++pick[j] == cands[j].size()) pick[j++] = 0;
      if (j == pick.size()) break;
    }
    return out;
  }

  std::vector<value_type> samples(const GSet& x, int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<value_type> out;
    auto orbits = orbits_of(x);
    for (int c = 0; c < count; ++c) {
      value_type v(x.size, scalar_.zero());
      for (auto& orb : orbits) {
        Subgroup h = point_stabilizer(x, orb.front());
        scalar_type s = random_scalar(rng);
        for (int tries = 0; tries < 64 && !stabilizer_fixed(h, s); ++tries) s = random_scalar(rng);
        for (int g = 0; g < x.group->order; ++g)
          v[x.act(g, orb.front())] = scalar_.act(g, s);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  bool stabilizer_fixed(const Subgroup& h, const scalar_type& s) const {
    for (int g : h.elements)
      if (!scalar_.eq(scalar_.act(g, s), s)) return false;
    return true;
  }

  scalar_type random_scalar(std::mt19937_64& rng) const {
    if constexpr (std::is_same_v<scalar_type, Int>) {
      return Int(static_cast<long long>(rng() % 7) - 2);
    } else {
      auto all = scalar_.all();
      return all[rng() % all.size()];
    }
  }

  Scalar scalar_;
};

using IntFixedPointCarrier = FixedPointCarrier<IntScalar>;

inline IntFixedPointCarrier constant_int_carrier(const GroupPtr& g) {
  return IntFixedPointCarrier(IntScalar{g});
}

}  // namespace tambara
