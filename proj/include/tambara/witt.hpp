#pragma once

#include <tambara/burnside.hpp>
#include <tambara/completion_tambara.hpp>
#include <tambara/monoid_burnside.hpp>
#include <tambara/polynomial.hpp>

#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// A Witt vector assigns one coefficient to each subgroup conjugacy class,
// in SubgroupSystem order.  Ghost vectors share the shape.
template <typename R>
struct WittVector {
  std::vector<R> coeffs;
};

struct WittContext {
  SubgroupSystem sys;
  std::vector<std::vector<Int>> marks;     // marks[i][j] = |(G/H_i)^{H_j}|
  std::vector<std::vector<int>> exponent;  // |H_i| / |H_j| where marks nonzero

  explicit WittContext(const GroupPtr& g) : sys(subgroup_system(g)) {
    marks = table_of_marks(sys);
    const int r = sys.size();
    exponent.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (marks[i][j] != 0) exponent[i][j] = sys.reps[i].order() / sys.reps[j].order();
  }

  int size() const { return sys.size(); }
};

// Ghost component j: sum over classes i (with H_j subconjugate to H_i) of
// |(G/H_i)^{H_j}| . a_i^{|H_i|/|H_j|}.
template <typename R>
std::vector<R> ghost(const WittContext& ctx, const WittVector<R>& a) {
  const int r = ctx.size();
  if (static_cast<int>(a.coeffs.size()) != r) throw PreconditionError("ghost: wrong vector length");
  std::vector<R> out;
  out.reserve(r);
  for (int j = 0; j < r; ++j) {
    R acc{0};
    for (int i = 0; i < r; ++i) {
      if (ctx.marks[i][j] == 0) continue;
      R term = ring_pow(a.coeffs[i], static_cast<std::uint64_t>(ctx.exponent[i][j]));
      R scaled{0};
      for (Int c = 0; c < ctx.marks[i][j]; ++c) scaled = scaled + term;
      acc = acc + scaled;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// Triangular solve for the unique preimage of a ghost vector, descending from
// the largest subgroup class.  The diagonal divisor is the Weyl order
// |(G/H_j)^{H_j}|; a non-integral step signals an implementation bug and
// throws.
template <typename R>
WittVector<R> ghost_solve(const WittContext& ctx, const std::vector<R>& w) {
  const int r = ctx.size();
  if (static_cast<int>(w.size()) != r) throw PreconditionError("ghost_solve: wrong vector length");
  WittVector<R> a;
  a.coeffs.assign(r, R{0});
  for (int j = r - 1; j >= 0; --j) {
    R rest{0};
    for (int i = 0; i < r; ++i) {
      if (i == j || ctx.marks[i][j] == 0) continue;
      R term = ring_pow(a.coeffs[i], static_cast<std::uint64_t>(ctx.exponent[i][j]));
      for (Int c = 0; c < ctx.marks[i][j]; ++c) rest = rest + term;
    }
    R num = w[j] - rest;
    auto q = try_divide(num, ctx.marks[j][j]);
    if (!q)
      throw std::logic_error("ghost_solve: non-integral coordinate at class " + std::to_string(j) +
                             " (Dress-Siebeneicher integrality violated)");
    a.coeffs[j] = *q;
  }
  return a;
}

template <typename R>
WittVector<R> witt_add(const WittContext& ctx, const WittVector<R>& x, const WittVector<R>& y) {
  auto gx = ghost(ctx, x), gy = ghost(ctx, y);
  for (int j = 0; j < ctx.size(); ++j) gx[j] = gx[j] + gy[j];
  return ghost_solve(ctx, gx);
}

template <typename R>
WittVector<R> witt_mul(const WittContext& ctx, const WittVector<R>& x, const WittVector<R>& y) {
  auto gx = ghost(ctx, x), gy = ghost(ctx, y);
  for (int j = 0; j < ctx.size(); ++j) gx[j] = gx[j] * gy[j];
  return ghost_solve(ctx, gx);
}

// Universal sum/product polynomials over Z[x_1..x_r, y_1..y_r]; variable i is
// x_{i+1} and variable r+i is y_{i+1}, indexed by class order.  Computed once
// per group and cached.
struct WittUniversalPolynomials {
  int classes = 0;
  std::vector<Polynomial<Int>> sum;
  std::vector<Polynomial<Int>> prod;
};

inline WittUniversalPolynomials witt_universal_uncached(const WittContext& ctx) {
  const int r = ctx.size();
  WittVector<Polynomial<Int>> xs, ys;
  for (int i = 0; i < r; ++i) {
    xs.coeffs.push_back(Polynomial<Int>::variable(i));
    ys.coeffs.push_back(Polynomial<Int>::variable(r + i));
  }
  WittUniversalPolynomials out;
  out.classes = r;
  out.sum = witt_add(ctx, xs, ys).coeffs;
  out.prod = witt_mul(ctx, xs, ys).coeffs;
  return out;
}

inline const WittUniversalPolynomials& witt_universal(const WittContext& ctx) {
  static std::mutex mu;
  static std::map<std::string, WittUniversalPolynomials> cache;
  std::ostringstream key;
  key << ctx.sys.group->name << "/" << ctx.sys.group->order << ":";
  for (int v : ctx.sys.group->mult) key << v << ",";
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key.str());
  if (it == cache.end()) it = cache.emplace(key.str(), witt_universal_uncached(ctx)).first;
  return it->second;
}

// Specializes the universal polynomials in any commutative ring; Embed maps
// integer coefficients into R.
template <typename R, typename Embed>
WittVector<R> witt_specialize(const WittUniversalPolynomials& up, bool multiply,
                              const WittVector<R>& x, const WittVector<R>& y, Embed embed) {
  const int r = up.classes;
  std::vector<R> values;
  values.reserve(2 * r);
  for (const R& v : x.coeffs) values.push_back(v);
  for (const R& v : y.coeffs) values.push_back(v);
  WittVector<R> out;
  const auto& polys = multiply ? up.prod : up.sum;
  for (const auto& p : polys) out.coeffs.push_back(p.template evaluate<R>(values, embed));
  return out;
}

// ---------------------------------------------------------------------------
// tau / phi: the Burnside-model parametrization
// ---------------------------------------------------------------------------

using BurnsidePlus = CompletionCarrier<BurnsideCarrier>;
using BurnsidePlusValue = BurnsidePlus::Value;

// tau(a) = sum over classes of T_{G/H_i -> pt} N_{G -> G/H_i}(a_i), computed
// in the completed Burnside model (integer coefficients).
inline BurnsidePlusValue tau(const WittContext& ctx, const BurnsideCarrier& burnside,
                             const WittVector<Int>& a) {
  BurnsidePlus plus(burnside);
  const GroupPtr& g = ctx.sys.group;
  GSet pt = point_gset(g);
  GSet free_orbit = orbit_gset(g, trivial_subgroup(*g));
  BurnsidePlusValue acc = plus.zero(pt);
  for (int i = 0; i < ctx.size(); ++i) {
    const Int& n = a.coeffs[i];
    BurnsideElement pos, neg;
    OverClass free_class = orbit_over_class(identity_map(free_orbit), 0, ctx.sys);
    if (n > 0) pos.add_orbit(free_class, static_cast<long long>(n));
    if (n < 0) neg.add_orbit(free_class, static_cast<long long>(-n));
    BurnsidePlusValue val{pos, neg};
    GMap p = orbit_projection(g, trivial_subgroup(*g), ctx.sys.reps[i]);
    GMap q = terminal_map(p.cod);
    acc = plus.add(pt, acc, plus.transfer(q, plus.norm(p, val)));
  }
  return acc;
}

// phi: the marks homomorphism on the completed Burnside value at the point.
inline std::vector<Int> phi(const WittContext& ctx, const BurnsideCarrier& burnside,
                            const BurnsidePlusValue& b) {
  GSet pt = point_gset(ctx.sys.group);
  auto pos = burnside.marks(pt, b.pos);
  auto neg = burnside.marks(pt, b.neg);
  for (int j = 0; j < ctx.size(); ++j) pos[j] -= neg[j];
  return pos;
}

// ---------------------------------------------------------------------------
// Elliott's bracket-power variant over monoid semirings
// ---------------------------------------------------------------------------

inline MonoidSemiringElement scale(const MonoidSemiringElement& a, const Int& c) {
  MonoidSemiringElement r;
  r.monoid = a.monoid;
  for (const auto& [e, v] : a.coeffs) r.add_term(e, v * c);
  return r;
}

// gamma' : same shape as the ghost map with <k>-powers in place of powers.
inline std::vector<MonoidSemiringElement> ghost_bracket(const WittContext& ctx,
                                                        const WittVector<MonoidSemiringElement>& a) {
  const int r = ctx.size();
  if (static_cast<int>(a.coeffs.size()) != r)
    throw PreconditionError("ghost_bracket: wrong vector length");
  std::vector<MonoidSemiringElement> out;
  for (int j = 0; j < r; ++j) {
    MonoidSemiringElement acc;
    acc.monoid = a.coeffs.empty() ? nullptr : a.coeffs[0].monoid;
    for (int i = 0; i < r; ++i) {
      if (ctx.marks[i][j] == 0) continue;
      acc = acc + scale(bracket_power(a.coeffs[i], static_cast<std::uint64_t>(ctx.exponent[i][j])),
                        ctx.marks[i][j]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// tau' on the monoid-Burnside model A[dM]: additive, with
// nu'(sum n_j [m_j]) = sum n_j [U, 1, m_j].
inline AMCarrier<CoconstantMackey>::Value tau_prime(const WittContext& ctx,
                                                    const AMCarrier<CoconstantMackey>& am,
                                                    const WittVector<MonoidSemiringElement>& a) {
  const GroupPtr& g = ctx.sys.group;
  GSet pt = point_gset(g);
  auto acc = am.zero(pt);
  for (int i = 0; i < ctx.size(); ++i) {
    GSet u = orbit_gset(g, ctx.sys.reps[i]);
    GMap x_i = terminal_map(u);
    auto nu = am.zero(u);
    for (const auto& [elem, mult] : a.coeffs[i].coeffs) {
      if (mult < 0) throw PreconditionError("tau': negative coefficients have no carrier model");
      for (Int c = 0; c < mult; ++c)
        nu = am.add(u, nu, am.eta(u, CoconstantMackey::value_type{elem}));
    }
    acc = am.add(pt, acc, am.transfer(x_i, nu));
  }
  return acc;
}

// The coordinates of a monoid-Burnside value at the point: each orbit of the
// carrier contributes its dM-label to its stabilizer class.  This is the
// inverse of tau'.
inline std::vector<MonoidSemiringElement> monoid_burnside_coordinates(
    const WittContext& ctx, const FinCommMonoid& monoid,
    const AMCarrier<CoconstantMackey>::Value& v) {
  std::vector<MonoidSemiringElement> out(ctx.size(), MonoidSemiringElement(monoid));
  auto orbs = orbits_of(v.u_set);
  for (std::size_t o = 0; o < orbs.size(); ++o) {
    int cls = ctx.sys.class_of(point_stabilizer(v.u_set, orbs[o].front()));
    out[cls].add_term(v.m.at(o), 1);
  }
  return out;
}

// beta': the section-counting morphism.  For each class, restrict to the
// orbit and sum R_w(m) over the equivariant sections w of the carrier.  The
// composite beta' ∘ tau' is the bracket-power ghost.
inline std::vector<MonoidSemiringElement> beta_prime(const WittContext& ctx,
                                                     const AMCarrier<CoconstantMackey>& am,
                                                     const FinCommMonoid& monoid,
                                                     const AMCarrier<CoconstantMackey>::Value& v,
                                                     std::uint64_t cap = kDefaultCap) {
  const GroupPtr& g = ctx.sys.group;
  std::vector<MonoidSemiringElement> out;
  for (int i = 0; i < ctx.size(); ++i) {
    GSet u = orbit_gset(g, ctx.sys.reps[i]);
    GMap x_i = terminal_map(u);
    auto rv = am.restrict(x_i, v);  // [W -> U, m]
    MonoidSemiringElement acc(monoid);
    for (const auto& w : sections(rv.u, cap)) {
      auto restricted = am.mackey().restrict(w, rv.m);  // value on the single orbit U
      acc.add_term(restricted.at(0), 1);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace tambara
