#pragma once

// Independent reference implementations used only by the tests. None of them
// share code with the library beyond the value types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "shatter/geometry.hpp"
#include "shatter/set_system.hpp"

namespace oracle {

using shatter::Mask;
using shatter::Point;
using shatter::Rational;

// Largest |Y| such that every subset of Y appears as a trace; tries all 2^n Y.
inline std::size_t brute_vc_dim(const shatter::SetSystem& s) {
  const std::size_t n = s.ground_size();
  std::size_t best = 0;
  for (Mask y = 0; y < (Mask{1} << n); ++y) {
    const auto size = static_cast<std::size_t>(std::popcount(y));
    if (size <= best) continue;
    std::set<Mask> traces;
    for (Mask r : s.sets()) traces.insert(r & y);
    if (traces.size() == (std::size_t{1} << size)) best = size;
  }
  return best;
}

// Members of the union/intersection of every choice of 1..k sets, built by
// plain enumeration of index tuples.
inline std::set<Mask> brute_k_fold(const shatter::SetSystem& s, std::size_t k, bool use_union) {
  std::set<Mask> out;
  const auto& sets = s.sets();
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start, Mask acc) -> void {
    if (!idx.empty()) out.insert(acc);
    if (idx.size() == k) return;
    for (std::size_t i = start; i < sets.size(); ++i) {
      idx.push_back(i);
      const Mask next = idx.size() == 1 ? sets[i] : (use_union ? (acc | sets[i]) : (acc & sets[i]));
      self(self, i, next);
      idx.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Fourier-Motzkin feasibility of { w : rows[i] . w <= rhs[i] }.
struct Ineq {
  std::vector<Rational> a;
  Rational rhs;
};

inline bool fm_feasible(std::vector<Ineq> rows, std::size_t vars) {
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Ineq> pos, neg, keep;
    for (auto& r : rows) {
      const int s = sgn(r.a[v]);
      (s > 0 ? pos : s < 0 ? neg : keep).push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p / p.a[v] + q / (-q.a[v]) cancels variable v.
        Ineq c;
        const Rational sp = 1 / p.a[v];
        const Rational sq = -1 / q.a[v];
        for (std::size_t j = 0; j < vars; ++j) c.a.push_back(p.a[j] * sp + q.a[j] * sq);
        c.rhs = p.rhs * sp + q.rhs * sq;
        keep.push_back(std::move(c));
      }
    }
    rows = std::move(keep);
  }
  return std::all_of(rows.begin(), rows.end(), [](const Ineq& r) { return r.rhs >= 0; });
}

// Is `inside` cut out of `points` by a closed half-space a.x <= c? Scaling
// turns the strict side into >= 1 for the homogeneous unknown (a, -c).
inline bool halfspace_separable(const std::vector<Point>& points, Mask inside) {
  const std::size_t d = points.front().dim();
  std::vector<Ineq> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Ineq r;
    const bool in = (inside >> i) & 1;
    for (std::size_t j = 0; j < d; ++j) r.a.push_back(in ? points[i][j] : Rational(-points[i][j]));
    r.a.push_back(in ? Rational(1) : Rational(-1));
    r.rhs = in ? 0 : -1;
    rows.push_back(std::move(r));
  }
  return fm_feasible(std::move(rows), d + 1);
}

inline std::set<Mask> separable_subsets(const std::vector<Point>& points) {
  std::set<Mask> out;
  for (Mask m = 0; m < (Mask{1} << points.size()); ++m) {
    if (halfspace_separable(points, m)) out.insert(m);
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 6) {
  std::uniform_int_distribution<long> num(lo * max_den, hi * max_den);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, std::size_t count, std::size_t dim, long range = 6) {
  std::vector<Point> pts;
  while (pts.size() < count) {
    Point p;
    for (std::size_t j = 0; j < dim; ++j) p.coords.push_back(random_rational(rng, -range, range, 2));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

inline shatter::SetSystem random_system(std::mt19937_64& rng, std::size_t n, std::size_t max_sets) {
  std::uniform_int_distribution<std::size_t> count(1, max_sets);
  std::vector<Mask> sets;
  const std::size_t m = count(rng);
  for (std::size_t i = 0; i < m; ++i) sets.push_back(rng() & shatter::full_mask(n));
  return shatter::SetSystem(n, std::move(sets));
}

// Finds a point of the open simplex on the hyperplane by walking from the
// barycenter towards a vertex on the other side; evaluates with height_at only.
inline bool simplex_meets_by_search(const shatter::OpenSimplex& s, const shatter::DualHyperplane& h) {
  const auto& vs = s.vertices();
  const std::size_t d = h.dim();
  auto f = [&](const Point& x) { return Rational(h.height_at(x) - x[d - 1]); };
  Point c = vs.front();
  for (std::size_t j = 0; j < d; ++j) {
    Rational sum = 0;
    for (const auto& v : vs) sum += v[j];
    c[j] = sum / static_cast<long>(vs.size());
  }
  const Rational fc = f(c);
  if (fc == 0) return true;
  for (const auto& v : vs) {
    const Rational fv = f(v);
    if (sgn(fv) == -sgn(fc)) {
      const Rational t = fc / (fc - fv);  // strictly inside (0, 1)
      Point x = c;
      for (std::size_t j = 0; j < d; ++j) x[j] = c[j] + t * (v[j] - c[j]);
      return f(x) == 0 && t > 0 && t < 1;
    }
  }
  return false;
}

}  // namespace oracle
