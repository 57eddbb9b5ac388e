#pragma once

#include <tambara/mackey.hpp>

#include <array>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// A Tambara pair (A, B, involution, res, trc, nrm) presents a Tambara functor
// for the group of order two.
template <typename P>
concept PairModel = requires(const P& p, const typename P::a_type& a, const typename P::b_type& b) {
  typename P::a_type;
  typename P::b_type;
  { p.a_zero() } -> std::same_as<typename P::a_type>;
  { p.a_one() } -> std::same_as<typename P::a_type>;
  { p.a_add(a, a) } -> std::same_as<typename P::a_type>;
  { p.a_mul(a, a) } -> std::same_as<typename P::a_type>;
  { p.a_eq(a, a) } -> std::convertible_to<bool>;
  { p.conj(a) } -> std::same_as<typename P::a_type>;
  { p.b_zero() } -> std::same_as<typename P::b_type>;
  { p.b_one() } -> std::same_as<typename P::b_type>;
  { p.b_add(b, b) } -> std::same_as<typename P::b_type>;
  { p.b_mul(b, b) } -> std::same_as<typename P::b_type>;
  { p.b_eq(b, b) } -> std::convertible_to<bool>;
  { p.res(b) } -> std::same_as<typename P::a_type>;
  { p.trc(a) } -> std::same_as<typename P::b_type>;
  { p.nrm(a) } -> std::same_as<typename P::b_type>;
};

// The pair with A = B = Z, trivial involution, trc(k) = 2k, nrm(k) = k^2
// (the fixed-point functor of the integers).
struct TrivIntPair {
  using a_type = Int;
  using b_type = Int;

  Int a_zero() const { return 0; }
  Int a_one() const { return 1; }
  Int a_add(const Int& x, const Int& y) const { return x + y; }
  Int a_mul(const Int& x, const Int& y) const { return x * y; }
  bool a_eq(const Int& x, const Int& y) const { return x == y; }
  Int conj(const Int& x) const { return x; }
  Int b_zero() const { return 0; }
  Int b_one() const { return 1; }
  Int b_add(const Int& x, const Int& y) const { return x + y; }
  Int b_mul(const Int& x, const Int& y) const { return x * y; }
  bool b_eq(const Int& x, const Int& y) const { return x == y; }
  Int res(const Int& b) const { return b; }
  Int trc(const Int& a) const { return 2 * a; }
  Int nrm(const Int& a) const { return a * a; }

  std::vector<Int> samples_a(int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<Int> out;
    for (int i = 0; i < count; ++i) out.push_back(Int(static_cast<long long>(rng() % 9) - 4));
    return out;
  }
  std::vector<Int> samples_b(int count, std::uint64_t seed) const { return samples_a(count, seed + 1); }
};

// A = Z[alpha]/alpha^2, B = Z + Z.beta + (Z/2).gamma with beta^2 = beta.gamma =
// gamma^2 = 2.gamma = 0; nrm(i + j.alpha) = i^2 + ij.beta + j^2.gamma.
struct EgTpPair {
  struct AElt {
    Int i, j;  // i + j*alpha
    bool operator==(const AElt& o) const { return i == o.i && j == o.j; }
  };
  struct BElt {
    Int i, j;  // i + j*beta + k*gamma
    int k;     // mod 2
    bool operator==(const BElt& o) const { return i == o.i && j == o.j && k == o.k; }
  };
  using a_type = AElt;
  using b_type = BElt;

  AElt a_zero() const { return {0, 0}; }
  AElt a_one() const { return {1, 0}; }
  AElt a_add(const AElt& x, const AElt& y) const { return {x.i + y.i, x.j + y.j}; }
  AElt a_mul(const AElt& x, const AElt& y) const { return {x.i * y.i, x.i * y.j + x.j * y.i}; }
  bool a_eq(const AElt& x, const AElt& y) const { return x == y; }
  AElt conj(const AElt& x) const { return x; }

  BElt b_zero() const { return {0, 0, 0}; }
  BElt b_one() const { return {1, 0, 0}; }
  BElt b_add(const BElt& x, const BElt& y) const { return {x.i + y.i, x.j + y.j, (x.k + y.k) & 1}; }
  BElt b_mul(const BElt& x, const BElt& y) const {
    Int gamma = x.i * y.k + y.i * x.k;
    return {x.i * y.i, x.i * y.j + x.j * y.i, static_cast<int>(gamma % 2 != 0)};
  }
  bool b_eq(const BElt& x, const BElt& y) const { return x == y; }

  AElt res(const BElt& b) const { return {b.i, 2 * b.j}; }
  BElt trc(const AElt& a) const { return {2 * a.i, a.j, 0}; }
  BElt nrm(const AElt& a) const { return {a.i * a.i, a.i * a.j, static_cast<int>(a.j % 2 != 0)}; }

  std::vector<AElt> samples_a(int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<AElt> out;
    for (int i = 0; i < count; ++i)
      out.push_back({Int(static_cast<long long>(rng() % 7) - 3), Int(static_cast<long long>(rng() % 7) - 3)});
    return out;
  }
  std::vector<BElt> samples_b(int count, std::uint64_t seed) const {
    std::mt19937_64 rng(seed + 1);
    std::vector<BElt> out;
    for (int i = 0; i < count; ++i)
      out.push_back({Int(static_cast<long long>(rng() % 7) - 3), Int(static_cast<long long>(rng() % 7) - 3),
                     static_cast<int>(rng() % 2)});
    return out;
  }
};

// Checks the Tambara pair axioms on sampled elements; returns the first
// failing axiom label or nullopt.
template <PairModel P>
std::optional<std::string> check_pair_axioms(const P& p, const std::vector<typename P::a_type>& as,
                                             const std::vector<typename P::b_type>& bs) {
  using A = typename P::a_type;
  auto zero = p.a_zero();
  if (!p.b_eq(p.trc(zero), p.b_zero())) return "trc(0)=0";
  if (!p.b_eq(p.nrm(p.a_one()), p.b_one())) return "nrm(1)=1";
  if (!p.b_eq(p.nrm(zero), p.b_zero())) return "nrm(0)=0";
  for (const A& a0 : as) {
    if (!p.b_eq(p.trc(p.conj(a0)), p.trc(a0))) return "trc(conj a)=trc(a)";
    if (!p.b_eq(p.nrm(p.conj(a0)), p.nrm(a0))) return "nrm(conj a)=nrm(a)";
    if (!p.a_eq(p.res(p.trc(a0)), p.a_add(a0, p.conj(a0)))) return "res(trc a)=a+conj(a)";
    if (!p.a_eq(p.res(p.nrm(a0)), p.a_mul(a0, p.conj(a0)))) return "res(nrm a)=a*conj(a)";
    for (const A& a1 : as) {
      if (!p.b_eq(p.trc(p.a_add(a0, a1)), p.b_add(p.trc(a0), p.trc(a1)))) return "trc additive";
      if (!p.b_eq(p.nrm(p.a_mul(a0, a1)), p.b_mul(p.nrm(a0), p.nrm(a1)))) return "nrm multiplicative";
      auto lhs = p.nrm(p.a_add(a0, a1));
      auto rhs = p.b_add(p.b_add(p.nrm(a0), p.nrm(a1)), p.trc(p.a_mul(a0, p.conj(a1))));
      if (!p.b_eq(lhs, rhs)) return "nrm(a0+a1)=nrm a0+nrm a1+trc(a0 conj a1)";
    }
    for (const auto& b : bs) {
      if (!p.b_eq(p.trc(p.a_mul(a0, p.res(b))), p.b_mul(p.trc(a0), b))) return "trc(a res b)=trc(a) b";
      if (!p.a_eq(p.conj(p.res(b)), p.res(b))) return "res lands in fixed points";
    }
  }
  return std::nullopt;
}

// F: extracts the Tambara pair of a Tambara model over C2 (A = S(G),
// B = S(1), involution T_chi, res/trc/nrm along G -> 1).
template <typename S>
class FunctorPair {
 public:
  using a_type = typename S::value_type;
  using b_type = typename S::value_type;

  FunctorPair(const S& carrier, GroupPtr c2) : s_(&carrier), group_(std::move(c2)) {
    if (group_->order != 2) throw PreconditionError("FunctorPair: group must have order two");
    free_g_ = GSet{group_, 2, {0, 1, 1, 0}};
    pt_ = point_gset(group_);
    chi_ = GMap{free_g_, free_g_, {1, 0}};
    eps_ = terminal_map(free_g_);
  }

  const GSet& free_orbit() const { return free_g_; }
  const GSet& point() const { return pt_; }

  a_type a_zero() const { return s_->zero(free_g_); }
  a_type a_one() const { return s_->one(free_g_); }
  a_type a_add(const a_type& x, const a_type& y) const { return s_->add(free_g_, x, y); }
  a_type a_mul(const a_type& x, const a_type& y) const { return s_->mul(free_g_, x, y); }
  bool a_eq(const a_type& x, const a_type& y) const { return s_->equal(free_g_, x, y); }
  a_type conj(const a_type& x) const { return s_->transfer(chi_, x); }
  b_type b_zero() const { return s_->zero(pt_); }
  b_type b_one() const { return s_->one(pt_); }
  b_type b_add(const b_type& x, const b_type& y) const { return s_->add(pt_, x, y); }
  b_type b_mul(const b_type& x, const b_type& y) const { return s_->mul(pt_, x, y); }
  bool b_eq(const b_type& x, const b_type& y) const { return s_->equal(pt_, x, y); }
  a_type res(const b_type& b) const { return s_->restrict(eps_, b); }
  b_type trc(const a_type& a) const { return s_->transfer(eps_, a); }
  b_type nrm(const a_type& a) const { return s_->norm(eps_, a); }

  std::vector<a_type> samples_a(int count, std::uint64_t seed) const {
    return s_->samples(free_g_, count, seed);
  }
  std::vector<b_type> samples_b(int count, std::uint64_t seed) const {
    return s_->samples(pt_, count, seed + 1);
  }

 private:
  const S* s_;
  GroupPtr group_;
  GSet free_g_, pt_;
  GMap chi_, eps_;
};

// E: rebuilds a Tambara model over C2 from a pair.  EP(X) is the set of
// compatible pairs (u: X -> A equivariant, v: X^G -> B with res(v) = u on
// fixed points); transfers and norms split the preimage of Y^G into fixed
// points plus chosen free half-orbits.
template <PairModel P>
class EPCarrier {
 public:
  struct Value {
    std::vector<typename P::a_type> u;  // indexed by points of X
    std::vector<typename P::b_type> v;  // indexed by position in fixed(X)
  };
  using value_type = Value;

  EPCarrier(P pair, GroupPtr c2) : p_(std::move(pair)), group_(std::move(c2)) {
    if (group_->order != 2) throw PreconditionError("EPCarrier: group must have order two");
  }

  const P& pair() const { return p_; }

  std::vector<int> fixed(const GSet& x) const { return fixed_points(x, full_subgroup(*group_)); }

  bool is_valid(const GSet& x, const Value& a) const {
    auto fx = fixed(x);
    if (a.u.size() != static_cast<std::size_t>(x.size) || a.v.size() != fx.size()) return false;
    for (int pnt = 0; pnt < x.size; ++pnt)
      if (!p_.a_eq(a.u[x.act(1, pnt)], p_.conj(a.u[pnt]))) return false;
    for (std::size_t i = 0; i < fx.size(); ++i)
      if (!p_.a_eq(a.u[fx[i]], p_.res(a.v[i]))) return false;
    return true;
  }

  value_type zero(const GSet& x) const {
    return Value{std::vector<typename P::a_type>(x.size, p_.a_zero()),
                 std::vector<typename P::b_type>(fixed(x).size(), p_.b_zero())};
  }

  value_type one(const GSet& x) const {
    return Value{std::vector<typename P::a_type>(x.size, p_.a_one()),
                 std::vector<typename P::b_type>(fixed(x).size(), p_.b_one())};
  }

  value_type add(const GSet&, const Value& a, const Value& b) const {
    Value c = a;
    for (std::size_t i = 0; i < c.u.size(); ++i) c.u[i] = p_.a_add(a.u[i], b.u[i]);
    for (std::size_t i = 0; i < c.v.size(); ++i) c.v[i] = p_.b_add(a.v[i], b.v[i]);
    return c;
  }

  value_type mul(const GSet&, const Value& a, const Value& b) const {
    Value c = a;
    for (std::size_t i = 0; i < c.u.size(); ++i) c.u[i] = p_.a_mul(a.u[i], b.u[i]);
    for (std::size_t i = 0; i < c.v.size(); ++i) c.v[i] = p_.b_mul(a.v[i], b.v[i]);
    return c;
  }

  bool equal(const GSet&, const Value& a, const Value& b) const {
    if (a.u.size() != b.u.size() || a.v.size() != b.v.size()) return false;
    for (std::size_t i = 0; i < a.u.size(); ++i)
      if (!p_.a_eq(a.u[i], b.u[i])) return false;
    for (std::size_t i = 0; i < a.v.size(); ++i)
      if (!p_.b_eq(a.v[i], b.v[i])) return false;
    return true;
  }

  value_type restrict(const GMap& f, const Value& a) const {
    auto fx = fixed(f.dom);
    auto fy = fixed(f.cod);
    Value b;
    b.u.reserve(f.dom.size);
    for (int x = 0; x < f.dom.size; ++x) b.u.push_back(a.u[f.table[x]]);
    for (int x : fx) b.v.push_back(a.v[fixed_pos(fy, f.table[x])]);
    return b;
  }

  value_type transfer(const GMap& f, const Value& a) const {
    auto fy = fixed(f.cod);
    Value b{std::vector<typename P::a_type>(f.cod.size, p_.a_zero()),
            std::vector<typename P::b_type>(fy.size(), p_.b_zero())};
    for (int x = 0; x < f.dom.size; ++x) b.u[f.table[x]] = p_.a_add(b.u[f.table[x]], a.u[x]);
    auto fx = fixed(f.dom);
    for (std::size_t i = 0; i < fy.size(); ++i) {
      int y = fy[i];
      for (std::size_t j = 0; j < fx.size(); ++j)
        if (f.table[fx[j]] == y) b.v[i] = p_.b_add(b.v[i], a.v[j]);
      for (int x1 : free_half(f, y)) b.v[i] = p_.b_add(b.v[i], p_.trc(a.u[x1]));
    }
    return b;
  }

  value_type norm(const GMap& f, const Value& a) const {
    auto fy = fixed(f.cod);
    Value b{std::vector<typename P::a_type>(f.cod.size, p_.a_one()),
            std::vector<typename P::b_type>(fy.size(), p_.b_one())};
    for (int x = 0; x < f.dom.size; ++x) b.u[f.table[x]] = p_.a_mul(b.u[f.table[x]], a.u[x]);
    auto fx = fixed(f.dom);
    for (std::size_t i = 0; i < fy.size(); ++i) {
      int y = fy[i];
      for (std::size_t j = 0; j < fx.size(); ++j)
        if (f.table[fx[j]] == y) b.v[i] = p_.b_mul(b.v[i], a.v[j]);
      for (int x1 : free_half(f, y)) b.v[i] = p_.b_mul(b.v[i], p_.nrm(a.u[x1]));
    }
    return b;
  }

  std::vector<value_type> samples(const GSet& x, int count, std::uint64_t seed) const {
    auto fx = fixed(x);
    auto orbits = orbits_of(x);
    std::vector<value_type> out;
    for (int c = 0; c < count; ++c) {
      auto as = p_.samples_a(static_cast<int>(orbits.size()), seed + 101 * c);
      auto bs = p_.samples_b(static_cast<int>(fx.size()), seed + 101 * c + 50);
      Value val{std::vector<typename P::a_type>(x.size, p_.a_zero()),
                std::vector<typename P::b_type>(fx.size(), p_.b_zero())};
      for (std::size_t i = 0; i < orbits.size(); ++i) {
        int base = orbits[i].front();
        val.u[base] = as[i];
        val.u[x.act(1, base)] = p_.conj(as[i]);
      }
      for (std::size_t i = 0; i < fx.size(); ++i) {
        val.v[i] = bs[i];
        val.u[fx[i]] = p_.res(bs[i]);
      }
      out.push_back(std::move(val));
    }
    return out;
  }

 private:
  static std::size_t fixed_pos(const std::vector<int>& fixed, int pt) {
    auto it = std::lower_bound(fixed.begin(), fixed.end(), pt);
    if (it == fixed.end() || *it != pt) throw PreconditionError("EP: image of a fixed point is not fixed");
    return static_cast<std::size_t>(it - fixed.begin());
  }

  // One representative per free orbit inside f^{-1}(y) for a fixed y (the
  // least point of each).
  std::vector<int> free_half(const GMap& f, int y) const {
    std::vector<int> reps;
    for (int x = 0; x < f.dom.size; ++x) {
      if (f.table[x] != y) continue;
      int ox = f.dom.act(1, x);
      if (ox == x) continue;         // fixed point
      if (ox < x) continue;          // other half already listed
      reps.push_back(x);
    }
    return reps;
  }

  P p_;
  GroupPtr group_;
};

}  // namespace tambara
