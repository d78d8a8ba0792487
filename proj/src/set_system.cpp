#include "shatter/set_system.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace shatter {

std::vector<std::size_t> mask_to_indices(Mask m) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

Mask indices_to_mask(const std::vector<std::size_t>& indices, std::size_t ground_size) {
  Mask m = 0;
  for (std::size_t i : indices) {
    if (i >= ground_size) {
      throw std::invalid_argument("index " + std::to_string(i) + " out of range for ground size " +
                                  std::to_string(ground_size));
    }
    m |= Mask{1} << i;
  }
  return m;
}

bool lex_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    const int ea = std::countr_zero(a);
    const int eb = std::countr_zero(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

SetSystem::SetSystem(std::size_t ground_size, std::vector<Mask> sets)
    : ground_size_(ground_size), sets_(std::move(sets)) {
  if (ground_size_ > kMaxGroundSize) {
    throw std::invalid_argument("ground size " + std::to_string(ground_size_) + " exceeds " +
                                std::to_string(kMaxGroundSize));
  }
  const Mask outside = ~full_mask(ground_size_);
  for (Mask s : sets_) {
    if ((s & outside) != 0) throw std::invalid_argument("member set has an element outside the ground set");
  }
  std::sort(sets_.begin(), sets_.end());
  const auto last = std::unique(sets_.begin(), sets_.end());
  duplicates_dropped_ = static_cast<std::size_t>(sets_.end() - last);
  sets_.erase(last, sets_.end());
}

SetSystem SetSystem::from_index_lists(std::size_t ground_size,
                                      const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<Mask> masks;
  masks.reserve(sets.size());
  for (const auto& list : sets) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i] <= list[i - 1]) {
        throw std::invalid_argument("member set indices must be strictly increasing (duplicate or unsorted index " +
                                    std::to_string(list[i]) + ")");
      }
    }
    masks.push_back(indices_to_mask(list, ground_size));
  }
  return SetSystem(ground_size, std::move(masks));
}

SetSystem SetSystem::powerset(std::size_t ground_size) {
  if (ground_size > 24) throw std::invalid_argument("powerset ground size too large");
  std::vector<Mask> sets(std::size_t{1} << ground_size);
  for (std::size_t i = 0; i < sets.size(); ++i) sets[i] = i;
  return SetSystem(ground_size, std::move(sets));
}

bool SetSystem::contains(Mask s) const { return std::binary_search(sets_.begin(), sets_.end(), s); }

namespace {

void require_subset(const SetSystem& system, Mask y) {
  if ((y & ~system.ground()) != 0) {
    throw std::invalid_argument("subset Y has an element outside the ground set");
  }
}

// Packs the bits of m selected by y into the low bits, in order.
Mask compress(Mask m, Mask y) {
  Mask out = 0;
  int pos = 0;
  while (y != 0) {
    const Mask low = y & (~y + 1);
    if ((m & low) != 0) out |= Mask{1} << pos;
    ++pos;
    y &= y - 1;
  }
  return out;
}

std::size_t distinct_traces(const std::vector<Mask>& sets, Mask y, std::vector<Mask>& scratch) {
  scratch.clear();
  for (Mask s : sets) scratch.push_back(s & y);
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

bool shatters_unchecked(const std::vector<Mask>& sets, Mask y, std::vector<Mask>& scratch) {
  const int c = std::popcount(y);
  if (c >= 63) return false;
  const std::size_t need = std::size_t{1} << c;
  if (sets.size() < need) return false;
  return distinct_traces(sets, y, scratch) == need;
}

template <typename Combine>
SetSystem k_fold(const SetSystem& system, std::size_t k, Combine combine) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const auto& base = system.sets();
  std::unordered_set<Mask> seen(base.begin(), base.end());
  std::vector<Mask> frontier(base.begin(), base.end());
  for (std::size_t round = 1; round < k && !frontier.empty(); ++round) {
    std::vector<Mask> fresh;
    for (Mask a : frontier) {
      for (Mask b : base) {
        const Mask c = combine(a, b);
        if (seen.insert(c).second) fresh.push_back(c);
      }
    }
    // Only sets first produced in this round can yield new sets next round.
    frontier = std::move(fresh);
  }
  return SetSystem(system.ground_size(), std::vector<Mask>(seen.begin(), seen.end()));
}

}  // namespace

SetSystem project(const SetSystem& system, Mask y) {
  require_subset(system, y);
  std::vector<Mask> out;
  out.reserve(system.size());
  for (Mask s : system.sets()) out.push_back(compress(s & y, y));
  return SetSystem(static_cast<std::size_t>(std::popcount(y)), std::move(out));
}

bool shatters(const SetSystem& system, Mask y) {
  require_subset(system, y);
  std::vector<Mask> scratch;
  return shatters_unchecked(system.sets(), y, scratch);
}

VcDimension vc_dim(const SetSystem& system) {
  if (system.empty()) throw std::invalid_argument("VC-dimension of an empty family is undefined");
  const std::size_t n = system.ground_size();
  std::vector<Mask> scratch;
  std::vector<Mask> level{0};
  std::size_t dim = 0;
  while (true) {
    std::unordered_set<Mask> shattered(level.begin(), level.end());
    std::vector<Mask> next;
    for (Mask y : level) {
      const std::size_t start = y == 0 ? 0 : static_cast<std::size_t>(std::bit_width(y));
      for (std::size_t j = start; j < n; ++j) {
        const Mask z = y | (Mask{1} << j);
        bool faces_ok = true;
        for (Mask rest = y; rest != 0 && faces_ok; rest &= rest - 1) {
          const Mask low = rest & (~rest + 1);
          faces_ok = shattered.count(z & ~low) != 0;
        }
        if (faces_ok && shatters_unchecked(system.sets(), z, scratch)) next.push_back(z);
      }
    }
    if (next.empty()) break;
    level = std::move(next);
    ++dim;
  }
  Mask best = level.front();
  for (Mask y : level) {
    if (lex_less(y, best)) best = y;
  }
  return {dim, best};
}

SetSystem k_fold_union(const SetSystem& system, std::size_t k) {
  return k_fold(system, k, [](Mask a, Mask b) { return a | b; });
}

SetSystem k_fold_intersection(const SetSystem& system, std::size_t k) {
  return k_fold(system, k, [](Mask a, Mask b) { return a & b; });
}

SetSystem complement_system(const SetSystem& system) {
  std::vector<Mask> out;
  out.reserve(system.size());
  for (Mask s : system.sets()) out.push_back(system.ground() & ~s);
  return SetSystem(system.ground_size(), std::move(out));
}

std::size_t growth_function(const SetSystem& system, std::size_t m) {
  const std::size_t n = system.ground_size();
  if (m > n) {
    throw std::invalid_argument("growth function order " + std::to_string(m) + " exceeds ground size " +
                                std::to_string(n));
  }
  if (system.empty()) return 0;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::vector<Mask> scratch;
  std::size_t best = 0;
  while (true) {
    Mask y = 0;
    for (std::size_t i : idx) y |= Mask{1} << i;
    best = std::max(best, distinct_traces(system.sets(), y, scratch));
    // Advance to the next m-combination in lexicographic order.
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace shatter
