#pragma once

#include <tambara/mackey.hpp>

#include <map>
#include <utility>
#include <vector>

namespace tambara {

// Subset-of-fiber carriers for a map f: X -> Y:
//   V(f)  = {(y, C) | C <= f^{-1}{y}}          (graded by |C|)
//   U(f)  = {(x, C) | x in C <= f^{-1}{f(x)}}
//   V2(f) = {(y, C1, C2) | disjoint}
// together with the structure maps used by the convolution product and chi.
struct FiberCube {
  GSet v;       // V(f)
  GMap j;       // Y -> V(f), y |-> (y, full fiber)
  GMap k;       // Y -> V(f), y |-> (y, empty)
  GSet u;       // U(f)
  GMap r;       // U(f) -> X
  GMap t;       // U(f) -> V(f)
  GSet v2;      // V^2(f)
  GMap p1, p2, p12;  // V^2 -> V
  int max_fiber = 0;
  std::vector<int> degree;  // |C| per V-point
};

namespace detail {

struct MaskPoints {
  std::vector<std::pair<int, unsigned>> pts;  // (anchor, bitmask over sorted fiber)
  std::map<std::pair<int, unsigned>, int> index;

  int add(std::pair<int, unsigned> p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(pts.size());
    index[p] = id;
    pts.push_back(p);
    return id;
  }
};

// transports mask over fiber(y) to mask over fiber(g.y)
inline unsigned act_mask(const GMap& f, int g, int y, unsigned mask) {
  auto fib = sorted_fiber(f, y);
  auto gfib = sorted_fiber(f, f.cod.act(g, y));
  unsigned out = 0;
  int ginv = f.dom.group->invert(g);
  for (std::size_t j = 0; j < gfib.size(); ++j) {
    int pre = f.dom.act(ginv, gfib[j]);
    auto pos = std::lower_bound(fib.begin(), fib.end(), pre) - fib.begin();
    if (mask & (1u << pos)) out |= (1u << j);
  }
  return out;
}

}  // namespace detail

inline FiberCube fiber_cube(const GMap& f) {
  const GSet& x = f.dom;
  const GSet& y = f.cod;
  const auto& grp = *x.group;
  FiberCube fc;

  std::vector<std::vector<int>> fibers(y.size);
  for (int yy = 0; yy < y.size; ++yy) {
    fibers[yy] = detail::sorted_fiber(f, yy);
    fc.max_fiber = std::max(fc.max_fiber, static_cast<int>(fibers[yy].size()));
  }
  if (fc.max_fiber > 20) throw SizeCapError("fiber cube: fiber too large");

  detail::MaskPoints vp;
  for (int yy = 0; yy < y.size; ++yy)
    for (unsigned m = 0; m < (1u << fibers[yy].size()); ++m) vp.add({yy, m});
  fc.v = GSet{x.group, static_cast<int>(vp.pts.size()), {}};
  fc.v.act_table.assign(grp.order * fc.v.size, 0);
  for (int g = 0; g < grp.order; ++g)
    for (int i = 0; i < fc.v.size; ++i) {
      auto [yy, m] = vp.pts[i];
      fc.v.act_table[g * fc.v.size + i] = vp.index.at({y.act(g, yy), detail::act_mask(f, g, yy, m)});
    }
  fc.degree.resize(fc.v.size);
  for (int i = 0; i < fc.v.size; ++i) fc.degree[i] = __builtin_popcount(vp.pts[i].second);

  fc.j = GMap{y, fc.v, std::vector<int>(y.size)};
  fc.k = GMap{y, fc.v, std::vector<int>(y.size)};
  for (int yy = 0; yy < y.size; ++yy) {
    fc.j.table[yy] = vp.index.at({yy, (1u << fibers[yy].size()) - 1});
    fc.k.table[yy] = vp.index.at({yy, 0u});
  }

  detail::MaskPoints up;
  for (int xx = 0; xx < x.size; ++xx) {
    int yy = f.table[xx];
    auto pos = std::lower_bound(fibers[yy].begin(), fibers[yy].end(), xx) - fibers[yy].begin();
    for (unsigned m = 0; m < (1u << fibers[yy].size()); ++m)
      if (m & (1u << pos)) up.add({xx, m});
  }
  fc.u = GSet{x.group, static_cast<int>(up.pts.size()), {}};
  fc.u.act_table.assign(grp.order * fc.u.size, 0);
  for (int g = 0; g < grp.order; ++g)
    for (int i = 0; i < fc.u.size; ++i) {
      auto [xx, m] = up.pts[i];
      fc.u.act_table[g * fc.u.size + i] =
          up.index.at({x.act(g, xx), detail::act_mask(f, g, f.table[xx], m)});
    }
  fc.r = GMap{fc.u, x, std::vector<int>(fc.u.size)};
  fc.t = GMap{fc.u, fc.v, std::vector<int>(fc.u.size)};
  for (int i = 0; i < fc.u.size; ++i) {
    auto [xx, m] = up.pts[i];
    fc.r.table[i] = xx;
    fc.t.table[i] = vp.index.at({f.table[xx], m});
  }

  // V^2: pairs of disjoint masks
  std::vector<std::array<int, 3>> v2pts;  // (y, m1, m2) with masks stored as int
  std::map<std::array<int, 3>, int> v2idx;
  for (int yy = 0; yy < y.size; ++yy) {
    unsigned full = (1u << fibers[yy].size());
    for (unsigned m1 = 0; m1 < full; ++m1)
      for (unsigned m2 = 0; m2 < full; ++m2)
        if ((m1 & m2) == 0) {
          std::array<int, 3> key{yy, static_cast<int>(m1), static_cast<int>(m2)};
          v2idx[key] = static_cast<int>(v2pts.size());
          v2pts.push_back(key);
        }
  }
  fc.v2 = GSet{x.group, static_cast<int>(v2pts.size()), {}};
  fc.v2.act_table.assign(grp.order * fc.v2.size, 0);
  for (int g = 0; g < grp.order; ++g)
    for (std::size_t i = 0; i < v2pts.size(); ++i) {
      auto [yy, m1, m2] = v2pts[i];
      int gy = y.act(g, yy);
      std::array<int, 3> img{gy, static_cast<int>(detail::act_mask(f, g, yy, static_cast<unsigned>(m1))),
                             static_cast<int>(detail::act_mask(f, g, yy, static_cast<unsigned>(m2)))};
      fc.v2.act_table[g * fc.v2.size + i] = v2idx.at(img);
    }
  fc.p1 = GMap{fc.v2, fc.v, std::vector<int>(fc.v2.size)};
  fc.p2 = GMap{fc.v2, fc.v, std::vector<int>(fc.v2.size)};
  fc.p12 = GMap{fc.v2, fc.v, std::vector<int>(fc.v2.size)};
  for (std::size_t i = 0; i < v2pts.size(); ++i) {
    auto [yy, m1, m2] = v2pts[i];
    fc.p1.table[i] = vp.index.at({yy, static_cast<unsigned>(m1)});
    fc.p2.table[i] = vp.index.at({yy, static_cast<unsigned>(m2)});
    fc.p12.table[i] = vp.index.at({yy, static_cast<unsigned>(m1 | m2)});
  }
  return fc;
}

// chi = N_t R_r : S(X) -> S(V(f)).
template <typename S>
typename S::value_type chi(const S& s, const FiberCube& fc, const typename S::value_type& a) {
  return s.norm(fc.t, s.restrict(fc.r, a));
}

// Convolution product a1 v a2 = T_p12(R_p1(a1) R_p2(a2)) on S(V(f)), with
// unit e = T_k(1).
template <typename S>
typename S::value_type conv_mul(const S& s, const FiberCube& fc, const typename S::value_type& a,
                                const typename S::value_type& b) {
  return s.transfer(fc.p12, s.mul(fc.v2, s.restrict(fc.p1, a), s.restrict(fc.p2, b)));
}

template <typename S>
typename S::value_type conv_one(const S& s, const FiberCube& fc) {
  return s.transfer(fc.k, s.one(fc.k.dom));
}

// The additive completion of a Tambara model: values are formal differences
// of S-values.  Green operations act componentwise; the norm is Tambara's
// chi/convolution extension, with the convolution inverse given by the
// nilpotence geometric series.
template <typename S>
class CompletionCarrier {
 public:
  struct Value {
    typename S::value_type pos, neg;
  };
  using value_type = Value;

  // `cancellative` selects the equality rule: drop the existential x (valid
  // e.g. for Burnside values) rather than scanning the carrier.
  explicit CompletionCarrier(const S& base, bool cancellative = true)
      : s_(&base), cancellative_(cancellative) {
    if (!cancellative_)
      throw UnsupportedCarrierError("completion carrier: only cancellative bases are supported");
  }

  const S& base() const { return *s_; }

  Value embed(typename S::value_type a, const GSet& x) const { return {std::move(a), s_->zero(x)}; }
  Value zero(const GSet& x) const { return {s_->zero(x), s_->zero(x)}; }
  Value one(const GSet& x) const { return {s_->one(x), s_->zero(x)}; }
  Value neg(const Value& a) const { return {a.neg, a.pos}; }

  // shrink the representative when the base supports cancellation
  Value simplify(Value a) const {
    if constexpr (requires(typename S::value_type& v) { S::cancel(v, v); }) S::cancel(a.pos, a.neg);
    return a;
  }

  Value add(const GSet& x, const Value& a, const Value& b) const {
    return simplify({s_->add(x, a.pos, b.pos), s_->add(x, a.neg, b.neg)});
  }

  Value mul(const GSet& x, const Value& a, const Value& b) const {
    return simplify({s_->add(x, s_->mul(x, a.pos, b.pos), s_->mul(x, a.neg, b.neg)),
                     s_->add(x, s_->mul(x, a.pos, b.neg), s_->mul(x, a.neg, b.pos))});
  }

  bool equal(const GSet& x, const Value& a, const Value& b) const {
    return s_->equal(x, s_->add(x, a.pos, b.neg), s_->add(x, a.neg, b.pos));
  }

  Value restrict(const GMap& f, const Value& a) const {
    return simplify({s_->restrict(f, a.pos), s_->restrict(f, a.neg)});
  }

  Value transfer(const GMap& f, const Value& a) const {
    return simplify({s_->transfer(f, a.pos), s_->transfer(f, a.neg)});
  }

  // N_f(a+ - a-) = R_j( chi(a+) v inverse(chi(a-)) ) computed in S^+(V(f)).
  Value norm(const GMap& f, const Value& a) const {
    FiberCube fc = fiber_cube(f);
    Value cp = embed(chi(*s_, fc, a.pos), fc.v);
    Value e{conv_one(*s_, fc), s_->zero(fc.v)};
    Value cm = embed(chi(*s_, fc, a.neg), fc.v);
    if (equal(fc.v, cm, e)) return restrict(fc.j, cp);
    Value inv = conv_inverse(fc, cm, e);
    return simplify(restrict(fc.j, cmul(fc, cp, inv)));
  }

  std::vector<Value> samples(const GSet& x, int count, std::uint64_t seed) const {
    auto pos = s_->samples(x, count, seed);
    auto neg = s_->samples(x, count, seed + 7919);
    std::vector<Value> out;
    for (int i = 0; i < count; ++i) out.push_back({pos[i], neg[i]});
    return out;
  }

 private:
  // convolution product extended to completion pairs
  Value cmul(const FiberCube& fc, const Value& a, const Value& b) const {
    auto pp = conv_mul(*s_, fc, a.pos, b.pos);
    auto nn = conv_mul(*s_, fc, a.neg, b.neg);
    auto pn = conv_mul(*s_, fc, a.pos, b.neg);
    auto np = conv_mul(*s_, fc, a.neg, b.pos);
    return simplify({s_->add(fc.v, pp, nn), s_->add(fc.v, pn, np)});
  }

  // inverse of v = e + b in the convolution group: sum of (-b)^i, i <= max
  // fiber size (b is concentrated in positive degrees, so nilpotent).
  Value conv_inverse(const FiberCube& fc, const Value& v, const Value& e) const {
    Value minus_b = simplify({s_->add(fc.v, v.neg, e.pos), v.pos});  // -(v - e)
    Value acc = e;
    Value power = e;
    Value nil = zero(fc.v);
    for (int i = 1; i <= fc.max_fiber; ++i) {
      power = cmul(fc, power, minus_b);
      if (equal(fc.v, power, nil)) break;
      acc = add(fc.v, acc, power);
    }
    return acc;
  }

  const S* s_;
  bool cancellative_;
};

}  // namespace tambara
