#pragma once

// Exact geometric objects and predicates over Q: closed axis-parallel boxes,
// restricted (origin-containing) half-spaces, dual hyperplanes, open simplices,
// and the finite set systems they induce on point sets.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "shatter/rational.hpp"
#include "shatter/set_system.hpp"

namespace shatter {

struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  /// Convenience for literals: Point::parse({"1/2", "3"}).
  static Point parse(std::initializer_list<std::string_view> c);

  std::size_t dim() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator<(const Point& a, const Point& b) { return a.coords < b.coords; }
};

/// Closed box lo_i <= x_i <= hi_i.
struct AxisBox {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  AxisBox() = default;
  /// Throws std::invalid_argument unless lo and hi have equal length and
  /// lo_i <= hi_i.
  AxisBox(std::vector<Rational> lo_, std::vector<Rational> hi_);
  /// [0, hi_1] x ... x [0, hi_d].
  static AxisBox anchored(std::vector<Rational> hi);

  std::size_t dim() const { return lo.size(); }
  bool is_anchored() const;

  friend bool operator==(const AxisBox& a, const AxisBox& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// { x : sum_i x_i / b_i <= tau } with every b_i > 0 and tau > 0.
struct RestrictedHalfspace {
  std::vector<Rational> b;
  Rational tau;

  RestrictedHalfspace() = default;
  RestrictedHalfspace(std::vector<Rational> b_, Rational tau_);

  std::size_t dim() const { return b.size(); }
  /// sum_i x_i / b_i
  Rational weighted_sum(const Point& x) const;

  friend bool operator==(const RestrictedHalfspace& a, const RestrictedHalfspace& b) {
    return a.b == b.b && a.tau == b.tau;
  }
};

/// H(p) = { x : p_1 x_1 + ... + p_{d-1} x_{d-1} + p_d = x_d }.
struct DualHyperplane {
  Point p;

  std::size_t dim() const { return p.dim(); }
  /// The hyperplane's x_d value above (x_1, ..., x_{d-1}).
  Rational height_at(const Point& x) const;

  friend bool operator==(const DualHyperplane& a, const DualHyperplane& b) { return a.p == b.p; }
};

class DegenerateSimplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative interior of the convex hull of affinely independent vertices.
class OpenSimplex {
 public:
  /// Throws std::invalid_argument on an empty vertex list or mismatched
  /// dimensions, DegenerateSimplexError when the vertices are affinely
  /// dependent.
  explicit OpenSimplex(std::vector<Point> vertices);

  std::size_t ambient_dim() const { return vertices_.front().dim(); }
  std::size_t simplex_dim() const { return vertices_.size() - 1; }
  const std::vector<Point>& vertices() const { return vertices_; }

  friend bool operator==(const OpenSimplex& a, const OpenSimplex& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

bool affinely_independent(const std::vector<Point>& points);

bool box_contains(const AxisBox& box, const Point& q);
bool halfspace_contains(const RestrictedHalfspace& h, const Point& x);

/// Sign of p_1 x_1 + ... + p_{d-1} x_{d-1} + p_d - x_d: +1 when x lies strictly
/// below H(p) in the x_d direction, -1 strictly above, 0 on it.
int side_of(const DualHyperplane& h, const Point& x);

DualHyperplane dual_point_to_hyperplane(const Point& p);

/// D(H) = (b_d/b_1, ..., b_d/b_{d-1}, tau * b_d). Satisfies
/// s_p(D(H)) = b_d * (sum_i p_i/b_i - tau) for every p.
Point dual_halfspace_to_point(const RestrictedHalfspace& h);

/// True iff the open simplex meets the hyperplane: vertex signs are mixed, or
/// every vertex lies on it.
bool simplex_hyperplane_intersects(const OpenSimplex& s, const DualHyperplane& h);

/// All subsets of P cut out by closed half-spaces of R^d (including the empty
/// set and P itself). Throws std::invalid_argument on duplicate points,
/// mixed dimensions, or more than 64 points.
SetSystem realizable_halfspace_subsets(const std::vector<Point>& points);

SetSystem induced_system_points_in_halfspaces(const std::vector<Point>& points,
                                              const std::vector<RestrictedHalfspace>& halfspaces);

SetSystem induced_system_hyperplanes_in_simplices(const std::vector<DualHyperplane>& hyperplanes,
                                                  const std::vector<OpenSimplex>& simplices);

}  // namespace shatter
