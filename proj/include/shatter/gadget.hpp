#pragma once

// Box gadgets: a family of positive axis-parallel boxes such that for every
// sub-family S there is a set Q of at most 2^(n-1) points that misses every
// box of S and hits every other box. Gadgets are found by search, checked
// exhaustively, and shipped as certificates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "shatter/geometry.hpp"
#include "shatter/set_system.hpp"

namespace shatter {

inline constexpr std::size_t kMaxVerifiedBoxes = 24;

struct BoxGadget {
  int n = 2;
  std::size_t dim = 2;
  std::vector<AxisBox> boxes;
  std::map<Mask, std::vector<Point>> witness_cache;  // keyed by excluded-box mask
  bool verified = false;

  /// 2^(n-1), the allowed size of every witness set Q.
  std::size_t witness_limit() const { return std::size_t{1} << (n - 1); }
  /// floor(dim/2) * (n+3) * 2^(n-2); informational only.
  std::size_t nominal_size() const;
  Mask all_boxes() const { return full_mask(boxes.size()); }

  /// Throws std::invalid_argument unless n >= 2, dim >= 2, at most 64 boxes,
  /// every box has dimension dim and strictly positive coordinates, and
  /// cached witnesses respect the size limit.
  void validate() const;

  friend bool operator==(const BoxGadget& a, const BoxGadget& b) {
    return a.n == b.n && a.dim == b.dim && a.boxes == b.boxes && a.witness_cache == b.witness_cache;
  }
};

/// One representative per cell of the arrangement of box faces: per axis the
/// midpoints between consecutive face values, one value below and one above,
/// plus any face value whose box pattern differs from both neighbouring
/// midpoints. Returns the cross product restricted to positive points.
std::vector<Point> candidate_points(const BoxGadget& gadget);

/// Candidate menu with precomputed hit masks; answers many witness queries
/// against one gadget.
class WitnessSolver {
 public:
  explicit WitnessSolver(const BoxGadget& gadget);

  const std::vector<Point>& candidates() const { return candidates_; }
  const std::vector<Mask>& hit_masks() const { return hits_; }

  /// Indices into candidates() of a minimum-size witness for `excluded`, or
  /// nullopt when no witness of size <= witness_limit exists.
  std::optional<std::vector<std::size_t>> solve(Mask excluded) const;

 private:
  std::size_t box_count_;
  std::size_t limit_;
  std::vector<Point> candidates_;
  std::vector<Mask> hits_;
};

std::optional<std::vector<Point>> witness_for(const BoxGadget& gadget, Mask excluded);

/// Direct check of both witness conditions with raw box_contains calls.
bool check_witness(const BoxGadget& gadget, Mask excluded, const std::vector<Point>& q);

struct GadgetReport {
  bool ok = false;
  std::size_t subsets_checked = 0;
  std::vector<Mask> failing_subsets;  // ascending
};

/// Runs witness_for on all 2^|boxes| subsets. On success fills witness_cache
/// and sets verified. Throws GuardError above kMaxVerifiedBoxes boxes.
GadgetReport verify(BoxGadget& gadget);

/// Excluded-box masks whose cached witness fails check_witness.
std::vector<Mask> invalid_cached_witnesses(const BoxGadget& gadget);

struct SearchOptions {
  std::size_t box_count = 0;  // 0 selects the nominal size
  std::int64_t grid = 0;      // coordinates in 1..grid; 0 selects 2*box_count+2
  std::uint64_t restart_after = 400;
};

struct SearchResult {
  std::optional<BoxGadget> gadget;
  std::uint64_t evaluations = 0;
  std::uint64_t restarts = 0;
};

/// Randomized local search over integer-grid box families, scored by the
/// number of unsatisfiable subsets. Deterministic for a given seed. `budget`
/// bounds the number of family evaluations. A returned gadget has passed
/// verify().
SearchResult search(int n, std::size_t dim, std::uint64_t seed, std::uint64_t budget, SearchOptions options = {});

}  // namespace shatter
