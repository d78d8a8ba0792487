#pragma once

// Finite set systems over the ground set {0, ..., n-1}, n <= 64. Member sets
// are stored as 64-bit masks, sorted ascending and deduplicated, so two
// systems are equal iff they describe the same family.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace shatter {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxGroundSize = 64;

/// Mask with bits 0..n-1 set.
constexpr Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

std::vector<std::size_t> mask_to_indices(Mask m);
Mask indices_to_mask(const std::vector<std::size_t>& indices, std::size_t ground_size);

/// Lexicographic order on the sorted element lists of two masks.
bool lex_less(Mask a, Mask b);

class SetSystem {
 public:
  SetSystem() = default;

  /// Throws std::invalid_argument if n > 64 or a member has bits >= n.
  SetSystem(std::size_t ground_size, std::vector<Mask> sets);

  /// Each inner list must be strictly increasing and in range; duplicate
  /// member sets are dropped and counted in duplicates_dropped().
  static SetSystem from_index_lists(std::size_t ground_size,
                                    const std::vector<std::vector<std::size_t>>& sets);

  static SetSystem powerset(std::size_t ground_size);

  std::size_t ground_size() const { return ground_size_; }
  const std::vector<Mask>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  Mask ground() const { return full_mask(ground_size_); }
  bool contains(Mask s) const;
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }

  friend bool operator==(const SetSystem& a, const SetSystem& b) {
    return a.ground_size_ == b.ground_size_ && a.sets_ == b.sets_;
  }

 private:
  std::size_t ground_size_ = 0;
  std::vector<Mask> sets_;
  std::size_t duplicates_dropped_ = 0;
};

/// R|_Y re-indexed onto 0..|Y|-1 in increasing element order.
SetSystem project(const SetSystem& system, Mask y);

bool shatters(const SetSystem& system, Mask y);

struct VcDimension {
  std::size_t dim = 0;
  Mask witness = 0;  // lexicographically smallest shattered set of size dim
};

/// Throws std::invalid_argument on an empty family.
VcDimension vc_dim(const SetSystem& system);

SetSystem k_fold_union(const SetSystem& system, std::size_t k);
SetSystem k_fold_intersection(const SetSystem& system, std::size_t k);
SetSystem complement_system(const SetSystem& system);

/// Max number of distinct projections onto an m-element subset of the ground
/// set. Cost is C(n, m) * |sets|.
std::size_t growth_function(const SetSystem& system, std::size_t m);

}  // namespace shatter
