#include "shatter/gadget.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "shatter/errors.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

std::size_t BoxGadget::nominal_size() const {
  const std::size_t half = dim / 2;
  const std::size_t n3 = static_cast<std::size_t>(n + 3);
  if (n >= 2) return half * n3 * (std::size_t{1} << (n - 2));
  return half * n3 / 2;
}

void BoxGadget::validate() const {
  if (n < 2) throw std::invalid_argument("gadget: n must be at least 2");
  if (n > 20) throw std::invalid_argument("gadget: n too large");
  if (dim < 2) throw std::invalid_argument("gadget: dim must be at least 2");
  if (boxes.size() > kMaxGroundSize) throw std::invalid_argument("gadget: at most 64 boxes are supported");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    if (b.dim() != dim) throw std::invalid_argument("gadget: box " + std::to_string(i) + " has wrong dimension");
    for (std::size_t c = 0; c < dim; ++c) {
      if (b.lo[c] <= 0 || b.hi[c] <= 0) {
        throw std::invalid_argument("gadget: box " + std::to_string(i) + " has a nonpositive coordinate");
      }
      if (b.lo[c] > b.hi[c]) throw std::invalid_argument("gadget: box " + std::to_string(i) + " has lo > hi");
    }
  }
  for (const auto& [s, q] : witness_cache) {
    if ((s & ~all_boxes()) != 0) throw std::invalid_argument("gadget: cached witness key outside the box family");
    if (q.size() > witness_limit()) throw std::invalid_argument("gadget: cached witness exceeds 2^(n-1) points");
    for (const auto& p : q) {
      if (p.dim() != dim) throw std::invalid_argument("gadget: cached witness point has wrong dimension");
    }
  }
}

namespace {

// Per-axis representative coordinates and, for each, the mask of boxes whose
// extent on that axis contains it.
struct AxisMenu {
  std::vector<Rational> values;
  std::vector<Mask> patterns;
};

Mask axis_pattern(const std::vector<AxisBox>& boxes, std::size_t axis, const Rational& x) {
  Mask m = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].lo[axis] <= x && x <= boxes[i].hi[axis]) m |= Mask{1} << i;
  }
  return m;
}

AxisMenu axis_menu(const std::vector<AxisBox>& boxes, std::size_t axis) {
  std::vector<Rational> faces;
  for (const auto& b : boxes) {
    faces.push_back(b.lo[axis]);
    faces.push_back(b.hi[axis]);
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

  AxisMenu menu;
  auto add = [&](Rational v) {
    menu.patterns.push_back(axis_pattern(boxes, axis, v));
    menu.values.push_back(std::move(v));
  };
  if (faces.empty()) {
    add(Rational(1));
    return menu;
  }
  add(faces.front() > 0 ? Rational(faces.front() / 2) : Rational(faces.front() - 1));
  for (std::size_t j = 0; j < faces.size(); ++j) {
    const Mask here = axis_pattern(boxes, axis, faces[j]);
    const Mask left = menu.patterns.back();
    const Rational right_value = j + 1 < faces.size() ? Rational((faces[j] + faces[j + 1]) / 2) : Rational(faces[j] + 1);
    const Mask right = axis_pattern(boxes, axis, right_value);
    if (here != left && here != right) add(faces[j]);
    add(right_value);
  }
  return menu;
}

struct CandidateMenu {
  std::vector<Point> points;
  std::vector<Mask> hits;
};

CandidateMenu build_candidates(const std::vector<AxisBox>& boxes, std::size_t dim) {
  std::vector<AxisMenu> menus;
  for (std::size_t a = 0; a < dim; ++a) menus.push_back(axis_menu(boxes, a));
  CandidateMenu out;
  std::vector<std::size_t> idx(dim, 0);
  const Mask everything = full_mask(boxes.size());
  while (true) {
    bool positive = true;
    Mask hit = everything;
    Point p;
    p.coords.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      const auto& v = menus[a].values[idx[a]];
      positive = positive && v > 0;
      hit &= menus[a].patterns[idx[a]];
      p.coords.push_back(v);
    }
    if (positive) {
      out.points.push_back(std::move(p));
      out.hits.push_back(hit);
    }
    std::size_t a = dim;
    while (a > 0) {
      --a;
      if (++idx[a] < menus[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
    if (dim == 0) return out;
  }
}

struct Option {
  Mask mask;
  std::size_t index;
};

class CoverSearch {
 public:
  CoverSearch(std::vector<Option> options, std::size_t limit) : options_(std::move(options)), limit_(limit) {}

  std::optional<std::vector<std::size_t>> run(Mask targets) {
    for (std::size_t depth = 1; depth <= limit_; ++depth) {
      chosen_.clear();
      if (dfs(targets, depth)) return chosen_;
    }
    return std::nullopt;
  }

 private:
  bool dfs(Mask remaining, std::size_t depth_left) {
    if (remaining == 0) return true;
    if (depth_left == 0) return false;
    int best_gain = 0;
    for (const auto& o : options_) best_gain = std::max(best_gain, std::popcount(o.mask & remaining));
    if (static_cast<std::size_t>(best_gain) * depth_left < static_cast<std::size_t>(std::popcount(remaining))) {
      return false;
    }
    // Branch on the target hit by the fewest options.
    Mask pivot = 0;
    std::size_t pivot_count = SIZE_MAX;
    for (Mask rest = remaining; rest != 0; rest &= rest - 1) {
      const Mask e = rest & (~rest + 1);
      std::size_t c = 0;
      for (const auto& o : options_) c += (o.mask & e) != 0;
      if (c < pivot_count) {
        pivot_count = c;
        pivot = e;
      }
    }
    if (pivot_count == 0) return false;
    for (const auto& o : options_) {
      if ((o.mask & pivot) == 0) continue;
      chosen_.push_back(o.index);
      if (dfs(remaining & ~o.mask, depth_left - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::vector<Option> options_;
  std::size_t limit_;
  std::vector<std::size_t> chosen_;
};

// Exact decision "cover every non-excluded box with <= limit candidates that
// avoid every excluded box". Options dominated by another option are dropped.
std::optional<std::vector<std::size_t>> solve_cover(const std::vector<Mask>& hits, Mask excluded, Mask all,
                                                    std::size_t limit) {
  const Mask targets = all & ~excluded;
  if (targets == 0) {
    for (std::size_t i = 0; i < hits.size(); ++i) {
      if (hits[i] == 0) return std::vector<std::size_t>{i};
    }
    return std::vector<std::size_t>{};
  }
  std::vector<Option> options;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if ((hits[i] & excluded) != 0 || hits[i] == 0) continue;
    options.push_back({hits[i], i});
  }
  std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
    const int pa = std::popcount(a.mask);
    const int pb = std::popcount(b.mask);
    return pa != pb ? pa > pb : a.index < b.index;
  });
  std::vector<Option> kept;
  for (const auto& o : options) {
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [&](const Option& k) { return (o.mask & ~k.mask) == 0; });
    if (!dominated) kept.push_back(o);
  }
  return CoverSearch(std::move(kept), limit).run(targets);
}

}  // namespace

std::vector<Point> candidate_points(const BoxGadget& gadget) {
  return build_candidates(gadget.boxes, gadget.dim).points;
}

WitnessSolver::WitnessSolver(const BoxGadget& gadget)
    : box_count_(gadget.boxes.size()), limit_(gadget.witness_limit()) {
  auto menu = build_candidates(gadget.boxes, gadget.dim);
  candidates_ = std::move(menu.points);
  hits_ = std::move(menu.hits);
}

std::optional<std::vector<std::size_t>> WitnessSolver::solve(Mask excluded) const {
  if ((excluded & ~full_mask(box_count_)) != 0) throw std::invalid_argument("witness: excluded mask outside the box family");
  return solve_cover(hits_, excluded, full_mask(box_count_), limit_);
}

std::optional<std::vector<Point>> witness_for(const BoxGadget& gadget, Mask excluded) {
  const WitnessSolver solver(gadget);
  auto picked = solver.solve(excluded);
  if (!picked) return std::nullopt;
  std::vector<Point> q;
  for (auto i : *picked) q.push_back(solver.candidates()[i]);
  return q;
}

bool check_witness(const BoxGadget& gadget, Mask excluded, const std::vector<Point>& q) {
  if (q.size() > gadget.witness_limit()) return false;
  for (std::size_t i = 0; i < gadget.boxes.size(); ++i) {
    const bool is_excluded = (excluded >> i) & 1U;
    bool hit = false;
    for (const auto& p : q) hit = hit || box_contains(gadget.boxes[i], p);
    if (hit == is_excluded) return false;
  }
  return true;
}

GadgetReport verify(BoxGadget& gadget) {
  gadget.validate();
  if (gadget.boxes.size() > kMaxVerifiedBoxes) {
    throw GuardError("gadget verify: " + std::to_string(gadget.boxes.size()) + " boxes exceeds the exhaustive limit of " +
                     std::to_string(kMaxVerifiedBoxes));
  }
  const WitnessSolver solver(gadget);
  const std::size_t subset_count = std::size_t{1} << gadget.boxes.size();
  std::vector<std::optional<std::vector<std::size_t>>> picks(subset_count);
  parallel_for(subset_count, [&](std::size_t s) { picks[s] = solver.solve(static_cast<Mask>(s)); });

  GadgetReport report;
  std::map<Mask, std::vector<Point>> found;
  for (std::size_t s = 0; s < subset_count; ++s) {
    ++report.subsets_checked;
    if (!picks[s]) {
      report.failing_subsets.push_back(s);
      continue;
    }
    std::vector<Point> q;
    for (auto i : *picks[s]) q.push_back(solver.candidates()[i]);
    found.emplace(s, std::move(q));
  }
  report.ok = report.failing_subsets.empty();
  if (report.ok) {
    gadget.witness_cache = std::move(found);
    gadget.verified = true;
  } else {
    gadget.verified = false;
  }
  return report;
}

std::vector<Mask> invalid_cached_witnesses(const BoxGadget& gadget) {
  std::vector<Mask> bad;
  for (const auto& [s, q] : gadget.witness_cache) {
    if (!check_witness(gadget, s, q)) bad.push_back(s);
  }
  return bad;
}

namespace {

// Integer box family used inside the search loop.
struct GridFamily {
  std::size_t dim;
  std::vector<std::int64_t> lo;  // box-major: lo[b * dim + a]
  std::vector<std::int64_t> hi;
};

std::vector<AxisBox> to_boxes(const GridFamily& f) {
  std::vector<AxisBox> out;
  const std::size_t count = f.lo.size() / f.dim;
  for (std::size_t b = 0; b < count; ++b) {
    std::vector<Rational> lo, hi;
    for (std::size_t a = 0; a < f.dim; ++a) {
      lo.emplace_back(static_cast<long>(f.lo[b * f.dim + a]));
      hi.emplace_back(static_cast<long>(f.hi[b * f.dim + a]));
    }
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

// Distinct hit masks of the candidate menu, computed in doubled integer
// coordinates so that midpoints stay integral.
std::vector<Mask> grid_hit_masks(const GridFamily& f) {
  const std::size_t count = f.lo.size() / f.dim;
  std::vector<std::vector<Mask>> axis_patterns(f.dim);
  for (std::size_t a = 0; a < f.dim; ++a) {
    std::vector<std::int64_t> faces;
    for (std::size_t b = 0; b < count; ++b) {
      faces.push_back(2 * f.lo[b * f.dim + a]);
      faces.push_back(2 * f.hi[b * f.dim + a]);
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    auto pattern = [&](std::int64_t x) {
      Mask m = 0;
      for (std::size_t b = 0; b < count; ++b) {
        if (2 * f.lo[b * f.dim + a] <= x && x <= 2 * f.hi[b * f.dim + a]) m |= Mask{1} << b;
      }
      return m;
    };
    auto& pats = axis_patterns[a];
    pats.push_back(0);
    for (std::size_t j = 0; j < faces.size(); ++j) {
      pats.push_back(pattern(faces[j]));
      pats.push_back(pattern(j + 1 < faces.size() ? (faces[j] + faces[j + 1]) / 2 : faces[j] + 1));
    }
    std::sort(pats.begin(), pats.end());
    pats.erase(std::unique(pats.begin(), pats.end()), pats.end());
  }
  std::vector<Mask> hits{full_mask(count)};
  for (const auto& pats : axis_patterns) {
    std::vector<Mask> next;
    for (Mask h : hits) {
      for (Mask p : pats) next.push_back(h & p);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    hits = std::move(next);
  }
  return hits;
}

class FamilyScorer {
 public:
  FamilyScorer(std::size_t box_count, std::size_t limit)
      : all_(full_mask(box_count)), limit_(limit), subset_count_(std::size_t{1} << box_count) {}

  // Number of unsatisfiable subsets, stopping early once it exceeds `bound`.
  std::size_t failures(const GridFamily& f, std::size_t bound) {
    const auto hits = grid_hit_masks(f);
    std::size_t fails = 0;
    std::vector<Mask> new_hot;
    std::vector<char> seen(subset_count_, 0);
    auto check = [&](Mask s) {
      if (seen[s]) return true;
      seen[s] = 1;
      if (!solve_cover(hits, s, all_, limit_)) {
        ++fails;
        new_hot.push_back(s);
      }
      return fails <= bound;
    };
    bool within = true;
    for (Mask s : hot_) {
      if (!(within = check(s))) break;
    }
    for (Mask s = 0; within && s < subset_count_; ++s) within = check(s);
    if (within) hot_ = new_hot;
    else hot_.insert(hot_.end(), new_hot.begin(), new_hot.end());
    if (hot_.size() > 64) hot_.erase(hot_.begin(), hot_.end() - 64);
    return fails;
  }

  void reset() { hot_.clear(); }

 private:
  Mask all_;
  std::size_t limit_;
  std::size_t subset_count_;
  std::vector<Mask> hot_;
};

}  // namespace

SearchResult search(int n, std::size_t dim, std::uint64_t seed, std::uint64_t budget, SearchOptions options) {
  BoxGadget shape;
  shape.n = n;
  shape.dim = dim;
  shape.validate();
  const std::size_t count = options.box_count != 0 ? options.box_count : shape.nominal_size();
  if (count == 0 || count > kMaxVerifiedBoxes) {
    throw GuardError("gadget search: box count " + std::to_string(count) + " outside 1.." +
                     std::to_string(kMaxVerifiedBoxes));
  }
  const std::int64_t grid = options.grid > 0 ? options.grid : static_cast<std::int64_t>(2 * count + 2);

  // Explicit modular reduction keeps the stream identical across standard
  // library implementations.
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  SearchResult result;
  FamilyScorer scorer(count, shape.witness_limit());
  GridFamily family{dim, std::vector<std::int64_t>(count * dim), std::vector<std::int64_t>(count * dim)};
  auto randomize = [&] {
    for (std::size_t i = 0; i < count * dim; ++i) {
      const std::int64_t a = uniform(1, grid);
      const std::int64_t b = uniform(1, grid);
      family.lo[i] = std::min(a, b);
      family.hi[i] = std::max(a, b);
    }
  };

  while (result.evaluations < budget) {
    randomize();
    scorer.reset();
    std::size_t fails = scorer.failures(family, SIZE_MAX);
    ++result.evaluations;
    std::uint64_t stall = 0;
    while (fails > 0 && result.evaluations < budget && stall < options.restart_after) {
      GridFamily trial = family;
      const std::size_t slot = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(count * dim) - 1));
      const bool move_lo = uniform(0, 1) == 0;
      auto& face = move_lo ? trial.lo[slot] : trial.hi[slot];
      if (uniform(0, 1) == 0) {
        face += uniform(0, 1) == 0 ? -1 : 1;
      } else {
        face = uniform(1, grid);
      }
      if (face < 1 || face > grid || trial.lo[slot] > trial.hi[slot]) {
        ++stall;
        continue;
      }
      const std::size_t trial_fails = scorer.failures(trial, fails);
      ++result.evaluations;
      if (trial_fails <= fails) {
        stall = trial_fails < fails ? 0 : stall + 1;
        family = std::move(trial);
        fails = trial_fails;
      } else {
        ++stall;
      }
    }
    if (fails == 0) {
      BoxGadget g = shape;
      g.boxes = to_boxes(family);
      if (verify(g).ok) {
        result.gadget = std::move(g);
        return result;
      }
    }
    ++result.restarts;
  }
  return result;
}

}  // namespace shatter
