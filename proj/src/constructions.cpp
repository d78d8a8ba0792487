#include "shatter/constructions.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "shatter/errors.hpp"
#include "shatter/parallel.hpp"

namespace shatter {

namespace {

void require_positive(const std::vector<Rational>& values, const char* what) {
  for (const auto& v : values) {
    if (v <= 0) throw std::invalid_argument(std::string(what) + ": coordinates must be strictly positive");
  }
}

}  // namespace

Point lift_box(const AxisBox& box) {
  require_positive(box.lo, "lift_box");
  require_positive(box.hi, "lift_box");
  Point p;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    p.coords.push_back(box.lo[i]);
    p.coords.push_back(1 / box.hi[i]);
  }
  return p;
}

AxisBox anchored_box_of(const Point& q) {
  require_positive(q.coords, "anchored_box_of");
  std::vector<Rational> hi;
  for (const auto& v : q.coords) {
    hi.push_back(v);
    hi.push_back(1 / v);
  }
  return AxisBox::anchored(std::move(hi));
}

RescaleResult rescale(const std::vector<Point>& points, std::size_t d) {
  RescaleResult out;
  if (points.empty()) return out;
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) throw std::invalid_argument("rescale: mixed dimensions");
    require_positive(p.coords, "rescale");
  }
  const Rational base(static_cast<long>(d + 1));
  out.alpha.resize(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    auto& table = out.alpha[c];
    for (const auto& p : points) table.original.push_back(p[c]);
    std::sort(table.original.begin(), table.original.end());
    table.original.erase(std::unique(table.original.begin(), table.original.end()), table.original.end());
    Rational v = 1;
    for (std::size_t j = 0; j < table.original.size(); ++j) {
      v *= base;
      table.rescaled.push_back(v);
    }
  }
  out.points = points;
  for (auto& p : out.points) {
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& table = out.alpha[c];
      const auto it = std::lower_bound(table.original.begin(), table.original.end(), p[c]);
      p[c] = table.rescaled[static_cast<std::size_t>(it - table.original.begin())];
    }
  }
  return out;
}

AxisBox snap_anchored_box(const AxisBox& box, const std::vector<AlphaTable>& alpha) {
  if (box.dim() != alpha.size()) throw std::invalid_argument("snap_anchored_box: dimension mismatch");
  std::vector<Rational> hi;
  for (std::size_t c = 0; c < box.dim(); ++c) {
    const auto& table = alpha[c];
    const auto it = std::upper_bound(table.original.begin(), table.original.end(), box.hi[c]);
    if (it == table.original.begin()) {
      hi.emplace_back(1);
    } else {
      hi.push_back(table.rescaled[static_cast<std::size_t>(it - table.original.begin()) - 1]);
    }
  }
  return AxisBox::anchored(std::move(hi));
}

RestrictedHalfspace box_to_halfspace(const AxisBox& box, std::size_t d, std::optional<Rational> tau) {
  require_positive(box.hi, "box_to_halfspace");
  Rational t = tau ? *tau : ratio(static_cast<long>(2 * d + 1), 2);
  return RestrictedHalfspace(box.hi, std::move(t));
}

Rational witness_threshold(std::size_t d, std::size_t k, std::size_t j, std::size_t attempt) {
  const long kk = static_cast<long>(k);
  Rational t = ratio(static_cast<long>(2 * d + 1), 2) + ratio(static_cast<long>(j), 4 * kk);
  if (attempt > 0) t += ratio(static_cast<long>(attempt), 8 * kk * static_cast<long>(attempt + 1));
  return t;
}

int gadget_order_for(std::size_t k) {
  if (k == 0) throw std::invalid_argument("fold count must be positive");
  return std::bit_width(k);  // floor(log2 k) + 1
}

Theorem1Instance build_theorem1(std::size_t d, std::size_t k, const BoxGadget& gadget) {
  if (d < 4 || d % 2 != 0) throw std::invalid_argument("build_theorem1: d must be even and at least 4");
  if (k < 2) throw std::invalid_argument("build_theorem1: k must be at least 2");
  if (gadget.dim != d / 2) {
    throw std::invalid_argument("build_theorem1: gadget dimension " + std::to_string(gadget.dim) + " != d/2 = " +
                                std::to_string(d / 2));
  }
  if (gadget.n != gadget_order_for(k)) {
    throw std::invalid_argument("build_theorem1: gadget order " + std::to_string(gadget.n) +
                                " != floor(log2 k) + 1 = " + std::to_string(gadget_order_for(k)));
  }
  gadget.validate();
  if (!gadget.verified) throw ConstructionFailure("build_theorem1: gadget has not been verified");

  std::vector<Point> lifted;
  for (const auto& b : gadget.boxes) lifted.push_back(lift_box(b));
  auto scaled = rescale(lifted, d);

  Theorem1Instance inst;
  inst.d = d;
  inst.k = k;
  inst.gadget = gadget;
  inst.points = std::move(scaled.points);
  inst.alpha = std::move(scaled.alpha);

  auto sorted = inst.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConstructionFailure("build_theorem1: gadget has duplicate boxes");
  }
  return inst;
}

std::vector<RestrictedHalfspace> union_witness(const Theorem1Instance& inst, Mask subset, std::size_t attempt) {
  const Mask all = full_mask(inst.points.size());
  if ((subset & ~all) != 0) throw std::invalid_argument("union_witness: subset outside the point set");
  const Mask excluded = all & ~subset;

  std::vector<Point> q;
  if (auto it = inst.gadget.witness_cache.find(excluded); it != inst.gadget.witness_cache.end()) {
    q = it->second;
  } else if (auto found = witness_for(inst.gadget, excluded)) {
    q = std::move(*found);
  } else {
    throw ConstructionFailure("union_witness: gadget has no witness for excluded box mask " + std::to_string(excluded));
  }

  std::vector<AxisBox> boxes;
  for (const auto& point : q) {
    AxisBox snapped = snap_anchored_box(anchored_box_of(point), inst.alpha);
    if (std::find(boxes.begin(), boxes.end(), snapped) == boxes.end()) boxes.push_back(std::move(snapped));
  }
  std::vector<RestrictedHalfspace> out;
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    out.push_back(box_to_halfspace(boxes[j], inst.d, witness_threshold(inst.d, inst.k, j, attempt)));
  }
  return out;
}

std::vector<Mask> verification_subsets(std::size_t point_count, const VerifyMode& mode) {
  std::vector<Mask> out;
  if (mode.kind == VerifyMode::Kind::exhaustive) {
    if (point_count > kMaxExhaustivePoints) {
      throw GuardError("exhaustive verification of " + std::to_string(point_count) + " points exceeds the limit of " +
                       std::to_string(kMaxExhaustivePoints));
    }
    const Mask all = full_mask(point_count);
    for (Mask s = 0;; ++s) {
      out.push_back(s);
      if (s == all) break;
    }
    return out;
  }
  std::mt19937_64 rng(mode.seed);
  const Mask all = full_mask(point_count);
  for (std::size_t i = 0; i < mode.count; ++i) out.push_back(rng() & all);
  return out;
}

Theorem1Report verify_theorem1(const Theorem1Instance& inst, const VerifyMode& mode) {
  const auto subsets = verification_subsets(inst.points.size(), mode);
  struct Outcome {
    bool failed = false;
    std::vector<RestrictedHalfspace> witness;
  };
  std::vector<Outcome> outcomes(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    auto& out = outcomes[i];
    try {
      out.witness = union_witness(inst, subsets[i]);
    } catch (const ConstructionFailure&) {
      out.failed = true;
      return;
    }
    Mask covered = 0;
    const auto induced = induced_system_points_in_halfspaces(inst.points, out.witness);
    for (Mask s : induced.sets()) covered |= s;
    out.failed = covered != subsets[i] || out.witness.size() > inst.k;
  });

  Theorem1Report report;
  std::vector<RestrictedHalfspace> family;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    ++report.subsets_checked;
    report.max_witness_size = std::max(report.max_witness_size, outcomes[i].witness.size());
    if (outcomes[i].failed) report.failing_subsets.push_back(subsets[i]);
    if (mode.compute_vc_dim) family.insert(family.end(), outcomes[i].witness.begin(), outcomes[i].witness.end());
  }
  report.shattered = report.failing_subsets.empty();
  if (mode.compute_vc_dim && !family.empty()) {
    const auto system = induced_system_points_in_halfspaces(inst.points, family);
    report.vc_dim = vc_dim(k_fold_union(system, inst.k)).dim;
  }
  return report;
}

Theorem2Instance build_theorem2(const Theorem1Instance& inst) {
  Theorem2Instance out;
  out.base = inst;
  out.k = inst.k;
  for (const auto& p : inst.points) out.hyperplanes.push_back(dual_point_to_hyperplane(p));
  return out;
}

namespace {

Rational default_apex_height(const Theorem2Instance& inst) {
  if (inst.base.points.empty()) return Rational(1);
  const std::size_t d = inst.base.d;
  Rational lowest = inst.base.points.front()[d - 1];
  for (const auto& p : inst.base.points) lowest = std::min(lowest, p[d - 1]);
  return lowest / 2;
}

}  // namespace

OpenSimplex simplex_witness(const Theorem2Instance& inst, Mask subset, const SimplexOptions& options) {
  const std::size_t d = inst.base.d;
  Point apex(std::vector<Rational>(d, Rational(0)));
  apex[d - 1] = options.apex_height ? *options.apex_height : default_apex_height(inst);
  for (std::size_t attempt = 0; attempt <= options.max_retries; ++attempt) {
    std::vector<Point> vertices;
    for (const auto& h : union_witness(inst.base, subset, attempt)) vertices.push_back(dual_halfspace_to_point(h));
    vertices.push_back(apex);
    try {
      return OpenSimplex(std::move(vertices));
    } catch (const DegenerateSimplexError&) {
    }
  }
  throw ConstructionFailure("simplex_witness: vertices stayed affinely dependent after " +
                            std::to_string(options.max_retries + 1) + " threshold choices for subset " +
                            std::to_string(subset));
}

Theorem2Report verify_theorem2(const Theorem2Instance& inst, const VerifyMode& mode, const SimplexOptions& options) {
  const auto subsets = verification_subsets(inst.hyperplanes.size(), mode);
  struct Outcome {
    bool failed = false;
    std::size_t zero_signs = 0;
    std::optional<OpenSimplex> simplex;
  };
  std::vector<Outcome> outcomes(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    auto& out = outcomes[i];
    try {
      out.simplex.emplace(simplex_witness(inst, subsets[i], options));
    } catch (const ConstructionFailure&) {
      out.failed = true;
      return;
    }
    Mask met = 0;
    for (std::size_t h = 0; h < inst.hyperplanes.size(); ++h) {
      for (const auto& v : out.simplex->vertices()) out.zero_signs += side_of(inst.hyperplanes[h], v) == 0;
      if (simplex_hyperplane_intersects(*out.simplex, inst.hyperplanes[h])) met |= Mask{1} << h;
    }
    out.failed = met != subsets[i] || out.simplex->simplex_dim() > inst.k;
  });

  Theorem2Report report;
  std::vector<OpenSimplex> simplices;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    auto& out = outcomes[i];
    ++report.subsets_checked;
    report.zero_sign_evaluations += out.zero_signs;
    if (out.failed) report.failing_subsets.push_back(subsets[i]);
    if (!out.simplex) continue;
    report.max_simplex_dim = std::max(report.max_simplex_dim, out.simplex->simplex_dim());
    if (mode.compute_vc_dim) simplices.push_back(std::move(*out.simplex));
  }
  report.shattered = report.failing_subsets.empty();
  if (mode.compute_vc_dim && !simplices.empty()) {
    report.vc_dim = vc_dim(induced_system_hyperplanes_in_simplices(inst.hyperplanes, simplices)).dim;
  }
  return report;
}

}  // namespace shatter
