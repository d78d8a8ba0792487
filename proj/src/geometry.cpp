#include "shatter/geometry.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>

#include "shatter/linalg.hpp"

namespace shatter {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

}  // namespace

Point Point::parse(std::initializer_list<std::string_view> c) {
  Point p;
  p.coords.reserve(c.size());
  for (auto s : c) p.coords.push_back(parse_rational(s));
  return p;
}

AxisBox::AxisBox(std::vector<Rational> lo_, std::vector<Rational> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  require_same_dim(lo.size(), hi.size(), "AxisBox");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("AxisBox: lo exceeds hi in coordinate " + std::to_string(i));
  }
}

AxisBox AxisBox::anchored(std::vector<Rational> hi) {
  std::vector<Rational> lo(hi.size(), Rational(0));
  return AxisBox(std::move(lo), std::move(hi));
}

bool AxisBox::is_anchored() const {
  return std::all_of(lo.begin(), lo.end(), [](const Rational& v) { return v == 0; });
}

RestrictedHalfspace::RestrictedHalfspace(std::vector<Rational> b_, Rational tau_) : b(std::move(b_)), tau(std::move(tau_)) {
  if (b.empty()) throw std::invalid_argument("RestrictedHalfspace: empty coefficient list");
  for (const auto& v : b) {
    if (v <= 0) throw std::invalid_argument("RestrictedHalfspace: every b_i must be positive");
  }
  if (tau <= 0) throw std::invalid_argument("RestrictedHalfspace: tau must be positive");
}

Rational RestrictedHalfspace::weighted_sum(const Point& x) const {
  require_same_dim(dim(), x.dim(), "halfspace");
  Rational s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += x[i] / b[i];
  return s;
}

Rational DualHyperplane::height_at(const Point& x) const {
  require_same_dim(dim(), x.dim(), "hyperplane");
  const std::size_t d = dim();
  Rational h = p[d - 1];
  for (std::size_t i = 0; i + 1 < d; ++i) h += p[i] * x[i];
  return h;
}

bool affinely_independent(const std::vector<Point>& points) {
  if (points.empty()) return false;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_same_dim(points[0].dim(), points[i].dim(), "affinely_independent");
    Vector row(points[0].dim());
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = points[i][c] - points[0][c];
    diffs.push_back(std::move(row));
  }
  return rank(std::move(diffs)) == points.size() - 1;
}

OpenSimplex::OpenSimplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("OpenSimplex: no vertices");
  if (vertices_.front().dim() == 0) throw std::invalid_argument("OpenSimplex: zero ambient dimension");
  for (const auto& v : vertices_) require_same_dim(vertices_.front().dim(), v.dim(), "OpenSimplex");
  if (!affinely_independent(vertices_)) {
    throw DegenerateSimplexError("OpenSimplex: " + std::to_string(vertices_.size()) +
                                 " vertices are affinely dependent");
  }
}

bool box_contains(const AxisBox& box, const Point& q) {
  require_same_dim(box.dim(), q.dim(), "box_contains");
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (q[i] < box.lo[i] || q[i] > box.hi[i]) return false;
  }
  return true;
}

bool halfspace_contains(const RestrictedHalfspace& h, const Point& x) { return h.weighted_sum(x) <= h.tau; }

int side_of(const DualHyperplane& h, const Point& x) {
  const std::size_t d = h.dim();
  require_same_dim(d, x.dim(), "side_of");
  return sign(h.height_at(x) - x[d - 1]);
}

DualHyperplane dual_point_to_hyperplane(const Point& p) {
  if (p.dim() < 2) throw std::invalid_argument("dual_point_to_hyperplane: dimension must be at least 2");
  return DualHyperplane{p};
}

Point dual_halfspace_to_point(const RestrictedHalfspace& h) {
  const std::size_t d = h.dim();
  if (d < 2) throw std::invalid_argument("dual_halfspace_to_point: dimension must be at least 2");
  Point out;
  out.coords.reserve(d);
  for (std::size_t i = 0; i + 1 < d; ++i) out.coords.push_back(h.b[d - 1] / h.b[i]);
  out.coords.push_back(h.tau * h.b[d - 1]);
  return out;
}

bool simplex_hyperplane_intersects(const OpenSimplex& s, const DualHyperplane& h) {
  require_same_dim(s.ambient_dim(), h.dim(), "simplex_hyperplane_intersects");
  bool pos = false;
  bool neg = false;
  bool nonzero = false;
  for (const auto& v : s.vertices()) {
    const int sg = side_of(h, v);
    pos |= sg > 0;
    neg |= sg < 0;
    nonzero |= sg != 0;
  }
  return (pos && neg) || !nonzero;
}

namespace {

// Sign vectors (topes) of the central arrangement { w : w . v_i = 0 } for the
// homogenized points v_i = (p_i, 1). A tope is reported as the mask of indices
// with w . v_i < 0. Every tope cone has an extreme ray (mod lineality) lying on
// a flat of corank one; near that ray the tope agrees with the ray's nonzero
// signs and with some tope of the flat's own sub-arrangement.
class TopeEnumerator {
 public:
  explicit TopeEnumerator(const std::vector<Point>& points) {
    for (const auto& p : points) {
      Vector v(p.coords);
      v.emplace_back(1);
      lifted_.push_back(std::move(v));
    }
  }

  const std::vector<Mask>& topes(Mask z) {
    auto it = memo_.find(z);
    if (it != memo_.end()) return it->second;
    std::vector<Mask> out = compute(z);
    return memo_.emplace(z, std::move(out)).first->second;
  }

 private:
  std::vector<Mask> compute(Mask z) {
    const auto members = mask_to_indices(z);
    Matrix rows;
    for (auto i : members) rows.push_back(lifted_[i]);
    const std::size_t r = rank(rows);

    std::set<Mask> found;
    if (r == 1) {
      // All vectors are positive or negative multiples of the first one.
      const Vector& u = lifted_[members.front()];
      Mask neg = 0;
      for (auto i : members) {
        if (dot(lifted_[i], u) < 0) neg |= Mask{1} << i;
      }
      found.insert(neg);
      found.insert(z & ~neg);
      return {found.begin(), found.end()};
    }

    Matrix basis = independent_rows(members, r);
    std::vector<Mask> processed_flats;
    for_each_combination(members, r - 1, [&](const std::vector<std::size_t>& b) {
      Mask bmask = 0;
      for (auto i : b) bmask |= Mask{1} << i;
      for (Mask f : processed_flats) {
        if ((bmask & ~f) == 0) return;
      }
      // w = sum_j c_j basis_j with w . v_b = 0 for b in B.
      Matrix g;
      for (auto i : b) {
        Vector row;
        for (const auto& m : basis) row.push_back(dot(m, lifted_[i]));
        g.push_back(std::move(row));
      }
      if (rank(g) != r - 1) return;
      const auto kernel = null_space(std::move(g), r);
      Vector w(lifted_.front().size(), Rational(0));
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t c = 0; c < w.size(); ++c) w[c] += kernel.front()[j] * basis[j][c];
      }
      Mask flat = 0;
      Mask neg = 0;
      for (auto i : members) {
        const int sg = sign(dot(w, lifted_[i]));
        if (sg == 0) flat |= Mask{1} << i;
        if (sg < 0) neg |= Mask{1} << i;
      }
      processed_flats.push_back(flat);
      const Mask pos = z & ~flat & ~neg;
      for (Mask t : topes(flat)) {
        found.insert(neg | t);
        found.insert(pos | t);
      }
    });
    return {found.begin(), found.end()};
  }

  Matrix independent_rows(const std::vector<std::size_t>& members, std::size_t r) const {
    Matrix basis;
    for (auto i : members) {
      basis.push_back(lifted_[i]);
      if (rank(basis) < basis.size()) basis.pop_back();
      if (basis.size() == r) break;
    }
    return basis;
  }

  template <typename F>
  static void for_each_combination(const std::vector<std::size_t>& items, std::size_t m, F&& f) {
    const std::size_t n = items.size();
    if (m > n) return;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    std::vector<std::size_t> pick(m);
    while (true) {
      for (std::size_t i = 0; i < m; ++i) pick[i] = items[idx[i]];
      f(pick);
      std::size_t i = m;
      while (i > 0 && idx[i - 1] == n - m + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  std::vector<Vector> lifted_;
  std::map<Mask, std::vector<Mask>> memo_;
};

}  // namespace

SetSystem realizable_halfspace_subsets(const std::vector<Point>& points) {
  if (points.size() > kMaxGroundSize) throw std::invalid_argument("realizable_halfspace_subsets: too many points");
  const std::size_t n = points.size();
  if (n == 0) return SetSystem(0, {0});
  for (const auto& p : points) require_same_dim(points.front().dim(), p.dim(), "realizable_halfspace_subsets");
  {
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("realizable_halfspace_subsets: duplicate points");
    }
  }
  TopeEnumerator topes(points);
  std::vector<Mask> sets = topes.topes(full_mask(n));
  sets.push_back(0);
  sets.push_back(full_mask(n));
  return SetSystem(n, std::move(sets));
}

SetSystem induced_system_points_in_halfspaces(const std::vector<Point>& points,
                                              const std::vector<RestrictedHalfspace>& halfspaces) {
  if (points.size() > kMaxGroundSize) throw std::invalid_argument("induced system: too many points");
  std::vector<Mask> sets;
  sets.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    Mask m = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (halfspace_contains(h, points[i])) m |= Mask{1} << i;
    }
    sets.push_back(m);
  }
  return SetSystem(points.size(), std::move(sets));
}

SetSystem induced_system_hyperplanes_in_simplices(const std::vector<DualHyperplane>& hyperplanes,
                                                  const std::vector<OpenSimplex>& simplices) {
  if (hyperplanes.size() > kMaxGroundSize) throw std::invalid_argument("induced system: too many hyperplanes");
  std::vector<Mask> sets;
  sets.reserve(simplices.size());
  for (const auto& s : simplices) {
    Mask m = 0;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
      if (simplex_hyperplane_intersects(s, hyperplanes[i])) m |= Mask{1} << i;
    }
    sets.push_back(m);
  }
  return SetSystem(hyperplanes.size(), std::move(sets));
}

}  // namespace shatter
