#include "shatter/io.hpp"

#include <fstream>

namespace shatter::io {

namespace {

const Json& field(const Json& j, const std::string& name, const std::string& context) {
  if (!j.is_object()) throw SchemaError(context + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(context + ": missing field '" + name + "'");
  return *it;
}

const Json& array_field(const Json& j, const std::string& name, const std::string& context) {
  const Json& v = field(j, name, context);
  if (!v.is_array()) throw SchemaError(context + ": field '" + name + "' must be an array");
  return v;
}

std::size_t size_field(const Json& j, const std::string& name, const std::string& context) {
  const Json& v = field(j, name, context);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw SchemaError(context + ": field '" + name + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& context) {
  if (!j.is_array()) throw SchemaError(context + ": expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

Json indices_json(Mask m) {
  Json out = Json::array();
  for (auto i : mask_to_indices(m)) out.push_back(i);
  return out;
}

template <typename F>
auto wrap(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(context + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(context + ": " + e.what());
  }
}

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << dump(doc);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json rational_to_json(const Rational& v) { return to_string(v); }

Rational rational_from_json(const Json& j, const std::string& context) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(context + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw SchemaError(context + ": expected a \"num/den\" string");
}

Json set_system_to_json(const SetSystem& s) {
  Json sets = Json::array();
  for (Mask m : s.sets()) sets.push_back(indices_json(m));
  return Json{{"ground_size", s.ground_size()}, {"sets", sets}};
}

SetSystem set_system_from_json(const Json& j) {
  const std::string ctx = "set system";
  const std::size_t n = size_field(j, "ground_size", ctx);
  const Json& sets = array_field(j, "sets", ctx);
  std::vector<std::vector<std::size_t>> lists;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string sctx = ctx + ": sets[" + std::to_string(i) + "]";
    if (!sets[i].is_array()) throw SchemaError(sctx + " must be an array");
    std::vector<std::size_t> list;
    for (const auto& e : sets[i]) {
      if (!e.is_number_unsigned()) throw SchemaError(sctx + " must hold non-negative integers");
      const auto v = e.get<std::size_t>();
      if (v >= n) throw SchemaError(sctx + ": index " + std::to_string(v) + " out of range for ground_size " + std::to_string(n));
      if (!list.empty() && v <= list.back()) throw SchemaError(sctx + " must be strictly increasing");
      list.push_back(v);
    }
    lists.push_back(std::move(list));
  }
  return wrap(ctx, [&] { return SetSystem::from_index_lists(n, lists); });
}

Json point_set_to_json(const std::vector<Point>& points, std::size_t dim) {
  Json arr = Json::array();
  for (const auto& p : points) arr.push_back(rationals_to_json(p.coords));
  return Json{{"dim", dim}, {"points", arr}};
}

std::vector<Point> point_set_from_json(const Json& j, std::size_t* dim_out) {
  const std::string ctx = "point set";
  const std::size_t dim = size_field(j, "dim", ctx);
  const Json& arr = array_field(j, "points", ctx);
  std::vector<Point> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Point p(rationals_from_json(arr[i], ctx + ": points[" + std::to_string(i) + "]"));
    if (p.dim() != dim) throw SchemaError(ctx + ": points[" + std::to_string(i) + "] has wrong dimension");
    out.push_back(std::move(p));
  }
  if (dim_out) *dim_out = dim;
  return out;
}

Json halfspace_to_json(const RestrictedHalfspace& h) {
  return Json{{"dim", h.dim()}, {"b", rationals_to_json(h.b)}, {"tau", rational_to_json(h.tau)}};
}

RestrictedHalfspace halfspace_from_json(const Json& j) {
  const std::string ctx = "halfspace";
  const std::size_t dim = size_field(j, "dim", ctx);
  auto b = rationals_from_json(array_field(j, "b", ctx), ctx + ": b");
  if (b.size() != dim) throw SchemaError(ctx + ": field 'b' length differs from 'dim'");
  auto tau = rational_from_json(field(j, "tau", ctx), ctx + ": tau");
  return wrap(ctx, [&] { return RestrictedHalfspace(std::move(b), std::move(tau)); });
}

Json hyperplane_to_json(const DualHyperplane& h) { return Json{{"p", rationals_to_json(h.p.coords)}}; }

DualHyperplane hyperplane_from_json(const Json& j) {
  const std::string ctx = "hyperplane";
  Point p(rationals_from_json(array_field(j, "p", ctx), ctx + ": p"));
  return wrap(ctx, [&] { return dual_point_to_hyperplane(p); });
}

Json simplex_to_json(const OpenSimplex& s) {
  Json verts = Json::array();
  for (const auto& v : s.vertices()) verts.push_back(rationals_to_json(v.coords));
  return Json{{"ambient_dim", s.ambient_dim()}, {"vertices", verts}};
}

OpenSimplex simplex_from_json(const Json& j) {
  const std::string ctx = "simplex";
  const std::size_t dim = size_field(j, "ambient_dim", ctx);
  const Json& verts = array_field(j, "vertices", ctx);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    Point p(rationals_from_json(verts[i], ctx + ": vertices[" + std::to_string(i) + "]"));
    if (p.dim() != dim) throw SchemaError(ctx + ": vertices[" + std::to_string(i) + "] has wrong dimension");
    pts.push_back(std::move(p));
  }
  return wrap(ctx, [&] { return OpenSimplex(std::move(pts)); });
}

Json gadget_to_json(const BoxGadget& g, bool include_witnesses) {
  Json boxes = Json::array();
  for (const auto& b : g.boxes) boxes.push_back(Json{{"lo", rationals_to_json(b.lo)}, {"hi", rationals_to_json(b.hi)}});
  Json out{{"n", g.n}, {"dim", g.dim}, {"boxes", boxes}};
  if (include_witnesses && !g.witness_cache.empty()) {
    Json w = Json::object();
    for (const auto& [s, q] : g.witness_cache) {
      Json pts = Json::array();
      for (const auto& p : q) pts.push_back(rationals_to_json(p.coords));
      w[std::to_string(s)] = pts;
    }
    out["witnesses"] = w;
  }
  return out;
}

BoxGadget gadget_from_json(const Json& j) {
  const std::string ctx = "gadget";
  BoxGadget g;
  const Json& n = field(j, "n", ctx);
  if (!n.is_number_integer()) throw SchemaError(ctx + ": field 'n' must be an integer");
  g.n = n.get<int>();
  g.dim = size_field(j, "dim", ctx);
  const Json& boxes = array_field(j, "boxes", ctx);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string bctx = ctx + ": boxes[" + std::to_string(i) + "]";
    auto lo = rationals_from_json(array_field(boxes[i], "lo", bctx), bctx + ".lo");
    auto hi = rationals_from_json(array_field(boxes[i], "hi", bctx), bctx + ".hi");
    g.boxes.push_back(wrap(bctx, [&] { return AxisBox(std::move(lo), std::move(hi)); }));
  }
  if (auto it = j.find("witnesses"); it != j.end()) {
    if (!it->is_object()) throw SchemaError(ctx + ": field 'witnesses' must be an object");
    for (const auto& [key, pts] : it->items()) {
      const std::string wctx = ctx + ": witnesses[" + key + "]";
      Mask s = 0;
      try {
        std::size_t used = 0;
        s = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw SchemaError(wctx + ": key must be a decimal bitmask");
      }
      if (!pts.is_array()) throw SchemaError(wctx + " must be an array of points");
      std::vector<Point> q;
      for (const auto& p : pts) q.emplace_back(rationals_from_json(p, wctx));
      g.witness_cache.emplace(s, std::move(q));
    }
  }
  wrap(ctx, [&] {
    g.validate();
    return 0;
  });
  return g;
}

Json theorem1_to_json(const Theorem1Instance& inst) {
  Json alpha = Json::array();
  for (const auto& t : inst.alpha) {
    alpha.push_back(Json{{"original", rationals_to_json(t.original)}, {"rescaled", rationals_to_json(t.rescaled)}});
  }
  return Json{{"d", inst.d},
              {"k", inst.k},
              {"gadget", gadget_to_json(inst.gadget)},
              {"points", point_set_to_json(inst.points, inst.d)},
              {"alpha", alpha}};
}

Theorem1Instance theorem1_from_json(const Json& j) {
  const std::string ctx = "instance";
  Theorem1Instance inst;
  inst.d = size_field(j, "d", ctx);
  inst.k = size_field(j, "k", ctx);
  inst.gadget = gadget_from_json(field(j, "gadget", ctx));
  // Certificates embedded in an instance carry a complete witness cache; the
  // gadget counts as verified only if every cached witness checks out.
  inst.gadget.verified = inst.gadget.witness_cache.size() == (std::size_t{1} << inst.gadget.boxes.size()) &&
                         invalid_cached_witnesses(inst.gadget).empty();
  std::size_t dim = 0;
  inst.points = point_set_from_json(field(j, "points", ctx), &dim);
  if (dim != inst.d) throw SchemaError(ctx + ": points.dim differs from d");
  if (inst.points.size() != inst.gadget.boxes.size()) throw SchemaError(ctx + ": point count differs from box count");
  const Json& alpha = array_field(j, "alpha", ctx);
  if (alpha.size() != inst.d) throw SchemaError(ctx + ": alpha must have one table per coordinate");
  for (std::size_t c = 0; c < alpha.size(); ++c) {
    const std::string actx = ctx + ": alpha[" + std::to_string(c) + "]";
    AlphaTable t;
    t.original = rationals_from_json(array_field(alpha[c], "original", actx), actx + ".original");
    t.rescaled = rationals_from_json(array_field(alpha[c], "rescaled", actx), actx + ".rescaled");
    if (t.original.size() != t.rescaled.size()) throw SchemaError(actx + ": original/rescaled lengths differ");
    inst.alpha.push_back(std::move(t));
  }
  return inst;
}

Json theorem2_to_json(const Theorem2Instance& inst) {
  Json out = theorem1_to_json(inst.base);
  Json hs = Json::array();
  for (const auto& h : inst.hyperplanes) hs.push_back(hyperplane_to_json(h));
  out["hyperplanes"] = hs;
  return out;
}

Theorem2Instance theorem2_from_json(const Json& j) {
  Theorem2Instance inst;
  inst.base = theorem1_from_json(j);
  inst.k = inst.base.k;
  const Json& hs = array_field(j, "hyperplanes", "instance");
  for (const auto& h : hs) inst.hyperplanes.push_back(hyperplane_from_json(h));
  if (inst.hyperplanes.size() != inst.base.points.size()) {
    throw SchemaError("instance: hyperplane count differs from point count");
  }
  return inst;
}

Json union_witness_to_json(Mask subset, const std::vector<RestrictedHalfspace>& halfspaces) {
  Json hs = Json::array();
  for (const auto& h : halfspaces) hs.push_back(halfspace_to_json(h));
  return Json{{"subset", indices_json(subset)}, {"halfspaces", hs}};
}

Json simplex_witness_to_json(Mask subset, const OpenSimplex& simplex) {
  return Json{{"subset", indices_json(subset)}, {"simplex", simplex_to_json(simplex)}};
}

}  // namespace shatter::io
