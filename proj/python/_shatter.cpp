// Python bindings. Rationals cross the boundary as "num/den" strings and
// structured objects as JSON text; the pure-Python layer turns them into
// Fractions and dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shatter/bundled.hpp"
#include "shatter/constructions.hpp"
#include "shatter/errors.hpp"
#include "shatter/io.hpp"

namespace py = pybind11;
using namespace shatter;

namespace {

using IndexLists = std::vector<std::vector<std::size_t>>;

IndexLists to_lists(const SetSystem& s) {
  IndexLists out;
  for (Mask m : s.sets()) out.push_back(mask_to_indices(m));
  return out;
}

std::vector<Point> to_points(const std::vector<std::vector<std::string>>& raw) {
  std::vector<Point> pts;
  for (const auto& row : raw) {
    Point p;
    for (const auto& v : row) p.coords.push_back(parse_rational(v));
    pts.push_back(std::move(p));
  }
  return pts;
}

VerifyMode make_mode(const std::string& mode, std::size_t count, std::optional<std::uint64_t> seed, bool vcdim) {
  VerifyMode m;
  if (mode == "sample") {
    if (!seed) throw std::invalid_argument("sample mode needs a seed");
    m = VerifyMode::sample(count, *seed);
  } else if (mode != "exhaustive") {
    throw std::invalid_argument("mode must be 'exhaustive' or 'sample'");
  }
  m.compute_vc_dim = vcdim;
  return m;
}

std::string report_json(bool shattered, std::size_t checked, const std::vector<Mask>& failing,
                        std::optional<std::size_t> vc, io::Json extra) {
  io::Json j{{"shattered", shattered}, {"subsets_checked", checked}};
  j.update(extra);
  io::Json f = io::Json::array();
  for (Mask m : failing) f.push_back(mask_to_indices(m));
  j["failing_subsets"] = f;
  if (vc) j["vc_dim"] = *vc;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_shatter, m) {
  m.doc() = "Exact VC-dimension constructions (native core)";

  py::register_exception<GuardError>(m, "GuardError", PyExc_ValueError);
  py::register_exception<ConstructionFailure>(m, "ConstructionFailure", PyExc_RuntimeError);
  py::register_exception<io::SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<SetSystem>(m, "SetSystem")
      .def(py::init([](std::size_t n, const IndexLists& sets) { return SetSystem::from_index_lists(n, sets); }),
           py::arg("ground_size"), py::arg("sets"))
      .def_static("powerset", &SetSystem::powerset)
      .def_property_readonly("ground_size", &SetSystem::ground_size)
      .def_property_readonly("sets", &to_lists)
      .def_property_readonly("duplicates_dropped", &SetSystem::duplicates_dropped)
      .def("__len__", &SetSystem::size)
      .def("__eq__", [](const SetSystem& a, const SetSystem& b) { return a == b; })
      .def("__repr__", [](const SetSystem& s) {
        return "SetSystem(ground_size=" + std::to_string(s.ground_size()) + ", sets=" +
               std::to_string(s.size()) + ")";
      });

  m.def("vc_dim", [](const SetSystem& s) {
    const auto v = vc_dim(s);
    return py::make_tuple(v.dim, mask_to_indices(v.witness));
  });
  m.def("shatters", [](const SetSystem& s, const std::vector<std::size_t>& y) {
    return shatters(s, indices_to_mask(y, s.ground_size()));
  });
  m.def("project", [](const SetSystem& s, const std::vector<std::size_t>& y) {
    return project(s, indices_to_mask(y, s.ground_size()));
  });
  m.def("k_fold_union", &k_fold_union);
  m.def("k_fold_intersection", &k_fold_intersection);
  m.def("complement_system", &complement_system);
  m.def("growth_function", &growth_function);

  m.def("realizable_halfspace_subsets", [](const std::vector<std::vector<std::string>>& pts) {
    return realizable_halfspace_subsets(to_points(pts));
  });
  m.def("duality_signs", [](const std::vector<std::string>& p, const std::vector<std::string>& b,
                            const std::string& tau) {
    const Point pt = to_points({p}).front();
    const RestrictedHalfspace h(to_points({b}).front().coords, parse_rational(tau));
    return py::make_tuple(sign(h.weighted_sum(pt) - h.tau),
                          side_of(dual_point_to_hyperplane(pt), dual_halfspace_to_point(h)));
  });

  py::class_<BoxGadget>(m, "BoxGadget")
      .def_readonly("n", &BoxGadget::n)
      .def_readonly("dim", &BoxGadget::dim)
      .def_readonly("verified", &BoxGadget::verified)
      .def_property_readonly("box_count", [](const BoxGadget& g) { return g.boxes.size(); })
      .def("to_json", [](const BoxGadget& g) { return io::gadget_to_json(g).dump(); })
      .def_static("from_json", [](const std::string& text) { return io::gadget_from_json(io::Json::parse(text)); });

  m.def("bundled_gadget", [] { return bundled_gadget(); });
  m.def("verify_gadget", [](BoxGadget& g) {
    py::gil_scoped_release release;
    const auto r = verify(g);
    io::Json f = io::Json::array();
    for (Mask s : r.failing_subsets) f.push_back(mask_to_indices(s));
    return io::Json{{"ok", r.ok}, {"subsets_checked", r.subsets_checked}, {"failing_subsets", f}}.dump();
  });
  m.def(
      "search_gadget",
      [](int n, std::size_t dim, std::uint64_t seed, std::uint64_t budget) -> std::optional<BoxGadget> {
        py::gil_scoped_release release;
        return search(n, dim, seed, budget).gadget;
      },
      py::arg("n"), py::arg("dim"), py::arg("seed"), py::arg("budget") = 200000);

  py::class_<Theorem1Instance>(m, "Theorem1Instance")
      .def_readonly("d", &Theorem1Instance::d)
      .def_readonly("k", &Theorem1Instance::k)
      .def_property_readonly("point_count", [](const Theorem1Instance& i) { return i.points.size(); })
      .def("to_json", [](const Theorem1Instance& i) { return io::theorem1_to_json(i).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return io::theorem1_from_json(io::Json::parse(text)); });

  py::class_<Theorem2Instance>(m, "Theorem2Instance")
      .def_property_readonly("d", [](const Theorem2Instance& i) { return i.base.d; })
      .def_readonly("k", &Theorem2Instance::k)
      .def_property_readonly("hyperplane_count", [](const Theorem2Instance& i) { return i.hyperplanes.size(); })
      .def("to_json", [](const Theorem2Instance& i) { return io::theorem2_to_json(i).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return io::theorem2_from_json(io::Json::parse(text)); });

  m.def("build_theorem1", &build_theorem1, py::arg("d"), py::arg("k"), py::arg("gadget"));
  m.def("build_theorem2", &build_theorem2, py::arg("instance"));

  m.def("union_witness", [](const Theorem1Instance& inst, const std::vector<std::size_t>& subset) {
    const Mask s = indices_to_mask(subset, inst.points.size());
    return io::union_witness_to_json(s, union_witness(inst, s)).dump();
  });
  m.def("simplex_witness", [](const Theorem2Instance& inst, const std::vector<std::size_t>& subset) {
    const Mask s = indices_to_mask(subset, inst.hyperplanes.size());
    return io::simplex_witness_to_json(s, simplex_witness(inst, s)).dump();
  });

  m.def(
      "verify_theorem1",
      [](const Theorem1Instance& inst, const std::string& mode, std::size_t count, std::optional<std::uint64_t> seed,
         bool vcdim) {
        const auto vm = make_mode(mode, count, seed, vcdim);
        Theorem1Report r;
        {
          py::gil_scoped_release release;
          r = verify_theorem1(inst, vm);
        }
        return report_json(r.shattered, r.subsets_checked, r.failing_subsets, r.vc_dim,
                           {{"max_witness_size", r.max_witness_size}});
      },
      py::arg("instance"), py::arg("mode") = "exhaustive", py::arg("count") = 100, py::arg("seed") = py::none(),
      py::arg("vcdim") = false);
  m.def(
      "verify_theorem2",
      [](const Theorem2Instance& inst, const std::string& mode, std::size_t count, std::optional<std::uint64_t> seed,
         bool vcdim) {
        const auto vm = make_mode(mode, count, seed, vcdim);
        Theorem2Report r;
        {
          py::gil_scoped_release release;
          r = verify_theorem2(inst, vm);
        }
        return report_json(r.shattered, r.subsets_checked, r.failing_subsets, r.vc_dim,
                           {{"max_simplex_dim", r.max_simplex_dim},
                            {"zero_sign_evaluations", r.zero_sign_evaluations}});
      },
      py::arg("instance"), py::arg("mode") = "exhaustive", py::arg("count") = 100, py::arg("seed") = py::none(),
      py::arg("vcdim") = false);
}
