#pragma once

// The two lower-bound pipelines.
//
// Union pipeline: gadget boxes in R^{d/2} are lifted to points of R^d
// (lo_i, 1/hi_i interleaved) and each coordinate is rescaled so that the j-th
// smallest distinct value becomes (d+1)^j. For a target subset P' the gadget
// witness Q for the excluded boxes is mapped point by point to anchored boxes
// B(q), snapped onto the rescaled grid, and turned into restricted half-spaces
// sum x_i/b_i <= tau with tau in (d, d+1). Their union meets P exactly in P'.
//
// Simplex pipeline: every point p becomes the hyperplane H(p); the half-spaces
// of a union witness become the dual points D(H), and together with an apex
// (0, ..., 0, t), t = min_p p_d / 2, they span an open simplex whose interior
// crosses H(p) exactly for p in P'.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shatter/gadget.hpp"
#include "shatter/geometry.hpp"
#include "shatter/set_system.hpp"

namespace shatter {

inline constexpr std::size_t kMaxExhaustivePoints = 24;

/// Sorted distinct original values of one lifted coordinate and their images
/// (d+1)^1, (d+1)^2, ...
struct AlphaTable {
  std::vector<Rational> original;
  std::vector<Rational> rescaled;

  friend bool operator==(const AlphaTable&, const AlphaTable&) = default;
};

struct RescaleResult {
  std::vector<Point> points;
  std::vector<AlphaTable> alpha;
};

Point lift_box(const AxisBox& box);
AxisBox anchored_box_of(const Point& q);
RescaleResult rescale(const std::vector<Point>& points, std::size_t d);
AxisBox snap_anchored_box(const AxisBox& box, const std::vector<AlphaTable>& alpha);
/// b = hi, threshold tau; tau defaults to d + 1/2.
RestrictedHalfspace box_to_halfspace(const AxisBox& box, std::size_t d, std::optional<Rational> tau = std::nullopt);

/// Threshold of the j-th witness half-space: d + 1/2 + j/(4k) on the first
/// attempt, nudged by attempt/(8k(attempt+1)) on retries. Always inside
/// (d, d+1) for j < k.
Rational witness_threshold(std::size_t d, std::size_t k, std::size_t j, std::size_t attempt = 0);

struct Theorem1Instance {
  std::size_t d = 0;
  std::size_t k = 0;
  BoxGadget gadget;           // dimension d/2; point i comes from box i
  std::vector<Point> points;  // rescaled lifted boxes
  std::vector<AlphaTable> alpha;

  friend bool operator==(const Theorem1Instance& a, const Theorem1Instance& b) {
    return a.d == b.d && a.k == b.k && a.gadget == b.gadget && a.points == b.points && a.alpha == b.alpha;
  }
};

/// floor(log2 k) + 1, the gadget order a fold count needs.
int gadget_order_for(std::size_t k);

/// Requires d even and >= 4, k >= 2, gadget.dim == d/2, gadget.n ==
/// gadget_order_for(k) and a verified gadget (ConstructionFailure otherwise;
/// std::invalid_argument for parameter mismatches).
Theorem1Instance build_theorem1(std::size_t d, std::size_t k, const BoxGadget& gadget);

/// Half-spaces whose union contains exactly the points selected by `subset`,
/// one per distinct snapped box, the j-th with witness_threshold(d, k, j,
/// attempt). Throws ConstructionFailure when the gadget has no witness.
std::vector<RestrictedHalfspace> union_witness(const Theorem1Instance& inst, Mask subset, std::size_t attempt = 0);

struct VerifyMode {
  enum class Kind { exhaustive, sample };
  Kind kind = Kind::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  bool compute_vc_dim = false;

  static VerifyMode exhaustive() { return {}; }
  static VerifyMode sample(std::size_t count, std::uint64_t seed) { return {Kind::sample, count, seed, false}; }
};

/// Subsets visited by a verification run, in visiting order.
std::vector<Mask> verification_subsets(std::size_t point_count, const VerifyMode& mode);

struct Theorem1Report {
  bool shattered = false;
  std::size_t subsets_checked = 0;
  std::size_t max_witness_size = 0;
  std::vector<Mask> failing_subsets;
  std::optional<std::size_t> vc_dim;  // of the k-fold union of all witness half-spaces
};

/// Throws GuardError for exhaustive mode above kMaxExhaustivePoints points.
Theorem1Report verify_theorem1(const Theorem1Instance& inst, const VerifyMode& mode);

struct Theorem2Instance {
  Theorem1Instance base;
  std::vector<DualHyperplane> hyperplanes;
  std::size_t k = 0;

  friend bool operator==(const Theorem2Instance& a, const Theorem2Instance& b) {
    return a.base == b.base && a.hyperplanes == b.hyperplanes && a.k == b.k;
  }
};

Theorem2Instance build_theorem2(const Theorem1Instance& inst);

struct SimplexOptions {
  std::optional<Rational> apex_height;  // overrides min_p p_d / 2
  std::size_t max_retries = 16;
};

/// Open simplex of dimension <= k meeting exactly the hyperplanes selected by
/// `subset`.
OpenSimplex simplex_witness(const Theorem2Instance& inst, Mask subset, const SimplexOptions& options = {});

struct Theorem2Report {
  bool shattered = false;
  std::size_t subsets_checked = 0;
  std::size_t max_simplex_dim = 0;
  std::size_t zero_sign_evaluations = 0;
  std::vector<Mask> failing_subsets;
  std::optional<std::size_t> vc_dim;  // of the system induced by all witness simplices
};

Theorem2Report verify_theorem2(const Theorem2Instance& inst, const VerifyMode& mode,
                               const SimplexOptions& options = {});

}  // namespace shatter
