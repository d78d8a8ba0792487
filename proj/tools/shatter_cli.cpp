// shatter: command-line front end.
//
// Every command prints one JSON report on stdout and a one-line summary on
// stderr. Exit status: 0 success, 1 verification failure, 2 usage or input
// error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shatter/bundled.hpp"
#include "shatter/constructions.hpp"
#include "shatter/errors.hpp"
#include "shatter/gadget.hpp"
#include "shatter/io.hpp"
#include "shatter/set_system.hpp"

namespace {

using shatter::Mask;
using shatter::io::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  Json result = Json::object();
  Json failing = Json::array();
  bool ok = true;
  std::string summary;
};

Json subset_json(Mask m) {
  Json idx = Json::array();
  for (auto i : shatter::mask_to_indices(m)) idx.push_back(i);
  return Json{{"mask", m}, {"indices", idx}};
}

Mask parse_index_list(const std::string& text, std::size_t ground_size, const std::string& flag) {
  if (text == "all") return shatter::full_mask(ground_size);
  if (text.empty() || text == "none") return 0;
  std::vector<std::size_t> idx;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      idx.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a non-negative integer");
    }
  }
  try {
    return shatter::indices_to_mask(idx, ground_size);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// Options shared by every command that needs a union-pipeline instance.
struct InstanceOptions {
  std::string input;
  std::size_t d = 4;
  std::size_t k = 2;
  std::string gadget_path;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 200000;

  void add_to(CLI::App* cmd, bool with_seed) {
    cmd->add_option("--input", input, "Instance bundle JSON (theorem1 or theorem2)");
    cmd->add_option("--d", d, "Ambient dimension (odd values use d-1)")->capture_default_str();
    cmd->add_option("--k", k, "Fold count / simplex dimension")->capture_default_str();
    cmd->add_option("--gadget", gadget_path, "Gadget certificate JSON (defaults to the bundled one when it fits)");
    if (with_seed) cmd->add_option("--seed", seed, "Search for a gadget with this seed when none is supplied");
    cmd->add_option("--budget", budget, "Gadget search budget (family evaluations)")->capture_default_str();
  }
};

shatter::Theorem1Instance build_instance(const InstanceOptions& opt, Report& report) {
  if (!opt.input.empty()) {
    report.parameters["input"] = opt.input;
    return shatter::io::theorem1_from_json(shatter::io::read_file(opt.input));
  }
  std::size_t d = opt.d;
  report.parameters["d"] = opt.d;
  report.parameters["k"] = opt.k;
  if (d % 2 == 1) {
    d -= 1;
    report.result["effective_d"] = d;
  }
  if (d < 4) throw UsageError("--d: the union construction needs d >= 4");
  if (opt.k < 2) throw UsageError("--k: must be at least 2");
  const int n = shatter::gadget_order_for(opt.k);
  shatter::BoxGadget gadget;
  if (!opt.gadget_path.empty()) {
    report.parameters["gadget"] = opt.gadget_path;
    gadget = shatter::io::gadget_from_json(shatter::io::read_file(opt.gadget_path));
    if (!shatter::verify(gadget).ok) throw shatter::ConstructionFailure("supplied gadget fails verification");
  } else if (n == 2 && d / 2 == 2) {
    gadget = shatter::bundled_gadget();
  } else if (opt.seed) {
    report.seed = *opt.seed;
    report.parameters["budget"] = opt.budget;
    auto found = shatter::search(n, d / 2, *opt.seed, opt.budget);
    if (!found.gadget) throw shatter::ConstructionFailure("gadget search exhausted its budget");
    gadget = std::move(*found.gadget);
  } else {
    throw UsageError("no bundled gadget for n=" + std::to_string(n) + ", dim=" + std::to_string(d / 2) +
                     "; pass --gadget or --seed");
  }
  return shatter::build_theorem1(d, opt.k, gadget);
}

shatter::Theorem2Instance build_dual_instance(const InstanceOptions& opt, Report& report) {
  if (!opt.input.empty()) {
    const Json doc = shatter::io::read_file(opt.input);
    report.parameters["input"] = opt.input;
    if (doc.contains("hyperplanes")) return shatter::io::theorem2_from_json(doc);
    return shatter::build_theorem2(shatter::io::theorem1_from_json(doc));
  }
  return shatter::build_theorem2(build_instance(opt, report));
}

struct VerifyOptions {
  std::string mode = "exhaustive";
  std::size_t count = 100;
  std::optional<std::uint64_t> seed;
  bool vcdim = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exhaustive | sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}))
        ->capture_default_str();
    cmd->add_option("--count", count, "Subsets drawn in sample mode")->capture_default_str();
    cmd->add_option("--seed", seed, "Sampling seed (required in sample mode)");
    cmd->add_flag("--vcdim", vcdim, "Also compute the exact VC-dimension of the witness-induced system");
  }

  shatter::VerifyMode to_mode(Report& report) const {
    report.parameters["mode"] = mode;
    shatter::VerifyMode m;
    if (mode == "sample") {
      if (!seed) throw UsageError("--seed is mandatory in sample mode");
      m = shatter::VerifyMode::sample(count, *seed);
      report.parameters["count"] = count;
      report.seed = *seed;
    }
    m.compute_vc_dim = vcdim;
    return m;
  }
};

void write_or_embed(Report& report, const std::string& output, const std::string& key, const Json& doc) {
  if (output.empty()) {
    report.result[key] = doc;
  } else {
    shatter::io::write_file(output, doc);
    report.parameters["output"] = output;
  }
}

shatter::SetSystem load_system(const std::string& input, Report& report) {
  report.parameters["input"] = input;
  auto system = shatter::io::set_system_from_json(shatter::io::read_file(input));
  report.result["duplicates_dropped"] = system.duplicates_dropped();
  return system;
}

Json system_summary(const shatter::SetSystem& s) {
  return Json{{"ground_size", s.ground_size()}, {"set_count", s.size()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact VC-dimension constructions for k-fold unions of half-spaces and simplex range spaces"};
  app.require_subcommand(1);
  Report report;
  std::function<void()> action;
  const auto started = std::chrono::steady_clock::now();

  // gadget
  auto* gadget = app.add_subcommand("gadget", "Box gadget certificates")->require_subcommand(1);
  struct {
    int n = 2;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::uint64_t budget = 200000;
    std::size_t boxes = 0;
    std::string output;
    std::string file;
  } g;
  auto* gsearch = gadget->add_subcommand("search", "Randomized search for a gadget");
  gsearch->add_option("--n", g.n, "Gadget order n")->required();
  gsearch->add_option("--dim", g.dim, "Box dimension")->required();
  gsearch->add_option("--seed", g.seed, "Random seed")->required();
  gsearch->add_option("--budget", g.budget, "Family evaluations")->capture_default_str();
  gsearch->add_option("--boxes", g.boxes, "Box count (default: nominal size)");
  gsearch->add_option("--output", g.output, "Write the certificate here");
  gsearch->callback([&] {
    action = [&] {
      report.command = "gadget search";
      report.parameters = Json{{"n", g.n}, {"dim", g.dim}, {"budget", g.budget}};
      if (g.boxes) report.parameters["boxes"] = g.boxes;
      report.seed = g.seed;
      shatter::SearchOptions options;
      options.box_count = g.boxes;
      auto found = shatter::search(g.n, g.dim, g.seed, g.budget, options);
      report.result["found"] = found.gadget.has_value();
      report.result["evaluations"] = found.evaluations;
      report.result["restarts"] = found.restarts;
      report.ok = found.gadget.has_value();
      if (found.gadget) {
        report.result["box_count"] = found.gadget->boxes.size();
        report.result["nominal_size"] = found.gadget->nominal_size();
        write_or_embed(report, g.output, "gadget", shatter::io::gadget_to_json(*found.gadget));
        report.summary = "found a verified gadget with " + std::to_string(found.gadget->boxes.size()) + " boxes";
      } else {
        report.summary = "no gadget found within budget";
      }
    };
  });
  auto* gverify = gadget->add_subcommand("verify", "Exhaustively verify a certificate");
  gverify->add_option("file", g.file, "Certificate JSON")->required();
  gverify->add_option("--output", g.output, "Write the certificate with a full witness cache here");
  gverify->callback([&] {
    action = [&] {
      report.command = "gadget verify";
      report.parameters["input"] = g.file;
      auto cert = shatter::io::gadget_from_json(shatter::io::read_file(g.file));
      const auto bad_cache = shatter::invalid_cached_witnesses(cert);
      const auto r = shatter::verify(cert);
      report.ok = r.ok && bad_cache.empty();
      report.result = Json{{"ok", report.ok},
                           {"box_count", cert.boxes.size()},
                           {"nominal_size", cert.nominal_size()},
                           {"subsets_checked", r.subsets_checked},
                           {"infeasible_subsets", r.failing_subsets.size()},
                           {"invalid_cached_witnesses", bad_cache.size()}};
      for (Mask s : r.failing_subsets) report.failing.push_back(subset_json(s));
      for (Mask s : bad_cache) {
        Json f = subset_json(s);
        f["reason"] = "cached witness invalid";
        report.failing.push_back(f);
      }
      if (r.ok && !g.output.empty()) write_or_embed(report, g.output, "gadget", shatter::io::gadget_to_json(cert));
      report.summary = report.ok ? "gadget verified over " + std::to_string(r.subsets_checked) + " subsets"
                                 : "gadget FAILED on " + std::to_string(report.failing.size()) + " subsets";
    };
  });

  // construct
  auto* construct = app.add_subcommand("construct", "Build instances")->require_subcommand(1);
  InstanceOptions inst_opt;
  std::string output;
  auto* c1 = construct->add_subcommand("theorem1", "Point set shattered by k-fold unions of half-spaces");
  inst_opt.add_to(c1, true);
  c1->add_option("--output", output, "Write the instance bundle here");
  c1->callback([&] {
    action = [&] {
      report.command = "construct theorem1";
      const auto inst = build_instance(inst_opt, report);
      report.result["d"] = inst.d;
      report.result["k"] = inst.k;
      report.result["point_count"] = inst.points.size();
      report.result["gadget_n"] = inst.gadget.n;
      write_or_embed(report, output, "instance", shatter::io::theorem1_to_json(inst));
      report.summary = "built " + std::to_string(inst.points.size()) + " points in R^" + std::to_string(inst.d);
    };
  });
  auto* c2 = construct->add_subcommand("theorem2", "Hyperplanes shattered by open k-simplices");
  inst_opt.add_to(c2, true);
  c2->add_option("--output", output, "Write the dual instance bundle here");
  c2->callback([&] {
    action = [&] {
      report.command = "construct theorem2";
      const auto inst = build_dual_instance(inst_opt, report);
      report.result["d"] = inst.base.d;
      report.result["k"] = inst.k;
      report.result["hyperplane_count"] = inst.hyperplanes.size();
      write_or_embed(report, output, "instance", shatter::io::theorem2_to_json(inst));
      report.summary = "built " + std::to_string(inst.hyperplanes.size()) + " hyperplanes in R^" +
                       std::to_string(inst.base.d);
    };
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Produce a single witness")->require_subcommand(1);
  std::string subset_text;
  auto* wu = witness->add_subcommand("union", "Half-spaces whose union cuts out a subset");
  inst_opt.add_to(wu, true);
  wu->add_option("--subset", subset_text, "Comma-separated point indices, 'all' or 'none'")->required();
  wu->add_option("--output", output, "Write the witness bundle here");
  wu->callback([&] {
    action = [&] {
      report.command = "witness union";
      const auto inst = build_instance(inst_opt, report);
      const Mask subset = parse_index_list(subset_text, inst.points.size(), "--subset");
      report.parameters["subset"] = subset_json(subset)["indices"];
      const auto hs = shatter::union_witness(inst, subset);
      Mask covered = 0;
      const auto induced = shatter::induced_system_points_in_halfspaces(inst.points, hs);
      for (Mask s : induced.sets()) covered |= s;
      report.ok = covered == subset && hs.size() <= inst.k;
      report.result["halfspace_count"] = hs.size();
      report.result["exact"] = report.ok;
      write_or_embed(report, output, "witness", shatter::io::union_witness_to_json(subset, hs));
      report.summary = std::to_string(hs.size()) + " half-spaces, " + (report.ok ? "exact" : "NOT exact");
    };
  });
  auto* ws = witness->add_subcommand("simplex", "Open simplex meeting exactly a subset of hyperplanes");
  inst_opt.add_to(ws, true);
  ws->add_option("--subset", subset_text, "Comma-separated hyperplane indices, 'all' or 'none'")->required();
  ws->add_option("--output", output, "Write the witness bundle here");
  ws->callback([&] {
    action = [&] {
      report.command = "witness simplex";
      const auto inst = build_dual_instance(inst_opt, report);
      const Mask subset = parse_index_list(subset_text, inst.hyperplanes.size(), "--subset");
      report.parameters["subset"] = subset_json(subset)["indices"];
      const auto simplex = shatter::simplex_witness(inst, subset);
      const auto met = shatter::induced_system_hyperplanes_in_simplices(inst.hyperplanes, {simplex});
      report.ok = met.sets().front() == subset;
      report.result["simplex_dim"] = simplex.simplex_dim();
      report.result["exact"] = report.ok;
      write_or_embed(report, output, "witness", shatter::io::simplex_witness_to_json(subset, simplex));
      report.summary = std::to_string(simplex.simplex_dim()) + "-simplex, " + (report.ok ? "exact" : "NOT exact");
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a construction over many subsets")->require_subcommand(1);
  VerifyOptions ver_opt;
  auto* v1 = verify->add_subcommand("theorem1", "Check that k-fold unions shatter the point set");
  inst_opt.add_to(v1, false);
  ver_opt.add_to(v1);
  v1->callback([&] {
    action = [&] {
      report.command = "verify theorem1";
      const auto inst = build_instance(inst_opt, report);
      const auto mode = ver_opt.to_mode(report);
      const auto r = shatter::verify_theorem1(inst, mode);
      report.ok = r.shattered;
      report.result["point_count"] = inst.points.size();
      report.result["subsets_checked"] = r.subsets_checked;
      report.result["shattered"] = r.shattered;
      report.result["max_witness_size"] = r.max_witness_size;
      if (r.vc_dim) report.result["vc_dim"] = *r.vc_dim;
      for (Mask s : r.failing_subsets) report.failing.push_back(subset_json(s));
      report.summary = std::string(r.shattered ? "shattered" : "NOT shattered") + ": " +
                       std::to_string(r.subsets_checked - r.failing_subsets.size()) + "/" +
                       std::to_string(r.subsets_checked) + " subsets realized";
    };
  });
  auto* v2 = verify->add_subcommand("theorem2", "Check that open k-simplices shatter the hyperplanes");
  inst_opt.add_to(v2, false);
  ver_opt.add_to(v2);
  v2->callback([&] {
    action = [&] {
      report.command = "verify theorem2";
      const auto inst = build_dual_instance(inst_opt, report);
      const auto mode = ver_opt.to_mode(report);
      const auto r = shatter::verify_theorem2(inst, mode);
      report.ok = r.shattered && r.zero_sign_evaluations == 0;
      report.result["hyperplane_count"] = inst.hyperplanes.size();
      report.result["subsets_checked"] = r.subsets_checked;
      report.result["shattered"] = r.shattered;
      report.result["max_simplex_dim"] = r.max_simplex_dim;
      report.result["zero_sign_evaluations"] = r.zero_sign_evaluations;
      if (r.vc_dim) report.result["vc_dim"] = *r.vc_dim;
      for (Mask s : r.failing_subsets) report.failing.push_back(subset_json(s));
      report.summary = std::string(r.shattered ? "shattered" : "NOT shattered") + ": " +
                       std::to_string(r.subsets_checked - r.failing_subsets.size()) + "/" +
                       std::to_string(r.subsets_checked) + " subsets realized, " +
                       std::to_string(r.zero_sign_evaluations) + " zero signs";
    };
  });

  // sys
  auto* sys = app.add_subcommand("sys", "Finite set system operations")->require_subcommand(1);
  std::string sys_input;
  std::size_t sys_k = 2;
  std::string sys_op = "union";
  std::string sys_y;
  std::size_t sys_m = 0;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", sys_input, "SetSystem JSON")->required();
  };

  auto* s_vc = sys->add_subcommand("vcdim", "Exact VC-dimension with a witness");
  add_input(s_vc);
  s_vc->callback([&] {
    action = [&] {
      report.command = "sys vcdim";
      const auto system = load_system(sys_input, report);
      const auto vc = shatter::vc_dim(system);
      report.result["vc_dim"] = vc.dim;
      report.result["witness"] = subset_json(vc.witness)["indices"];
      report.result["set_count"] = system.size();
      report.summary = "vc_dim = " + std::to_string(vc.dim);
    };
  });
  auto* s_kf = sys->add_subcommand("kfold", "k-fold union or intersection");
  add_input(s_kf);
  s_kf->add_option("--k", sys_k, "Fold count")->capture_default_str();
  s_kf->add_option("--op", sys_op, "union | intersection")
      ->check(CLI::IsMember({"union", "intersection"}))
      ->capture_default_str();
  s_kf->add_option("--output", output, "Write the resulting system here");
  s_kf->callback([&] {
    action = [&] {
      report.command = "sys kfold";
      report.parameters["k"] = sys_k;
      report.parameters["op"] = sys_op;
      if (sys_k == 0) throw UsageError("--k: must be positive");
      const auto system = load_system(sys_input, report);
      const auto out = sys_op == "union" ? shatter::k_fold_union(system, sys_k)
                                         : shatter::k_fold_intersection(system, sys_k);
      report.result.update(system_summary(out));
      write_or_embed(report, output, "system", shatter::io::set_system_to_json(out));
      report.summary = std::to_string(out.size()) + " sets";
    };
  });
  auto* s_co = sys->add_subcommand("complement", "Complement every member set");
  add_input(s_co);
  s_co->add_option("--output", output, "Write the resulting system here");
  s_co->callback([&] {
    action = [&] {
      report.command = "sys complement";
      const auto out = shatter::complement_system(load_system(sys_input, report));
      report.result.update(system_summary(out));
      write_or_embed(report, output, "system", shatter::io::set_system_to_json(out));
      report.summary = std::to_string(out.size()) + " sets";
    };
  });
  auto* s_pr = sys->add_subcommand("project", "Projection onto a subset of the ground set");
  add_input(s_pr);
  s_pr->add_option("--y", sys_y, "Comma-separated ground indices, 'all' or 'none'")->required();
  s_pr->add_option("--output", output, "Write the resulting system here");
  s_pr->callback([&] {
    action = [&] {
      report.command = "sys project";
      const auto system = load_system(sys_input, report);
      const Mask y = parse_index_list(sys_y, system.ground_size(), "--y");
      report.parameters["y"] = subset_json(y)["indices"];
      const auto out = shatter::project(system, y);
      report.result.update(system_summary(out));
      report.result["shattered"] = shatter::shatters(system, y);
      write_or_embed(report, output, "system", shatter::io::set_system_to_json(out));
      report.summary = std::to_string(out.size()) + " distinct traces";
    };
  });
  auto* s_gr = sys->add_subcommand("growth", "Growth function value");
  add_input(s_gr);
  s_gr->add_option("--m", sys_m, "Subset size")->required();
  s_gr->callback([&] {
    action = [&] {
      report.command = "sys growth";
      report.parameters["m"] = sys_m;
      const auto system = load_system(sys_input, report);
      if (sys_m > system.ground_size()) throw UsageError("--m: exceeds the ground size");
      report.result["growth"] = shatter::growth_function(system, sys_m);
      report.summary = "growth(" + std::to_string(sys_m) + ") = " + report.result["growth"].dump();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int code = 0;
  try {
    action();
    code = report.ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const shatter::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const shatter::GuardError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const shatter::ConstructionFailure& e) {
    report.ok = false;
    report.result["error"] = e.what();
    report.summary = std::string("construction failed: ") + e.what();
    code = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  Json out{{"command", report.command}, {"parameters", report.parameters}};
  if (report.seed) out["seed"] = *report.seed;
  out["ok"] = report.ok;
  out["result"] = report.result;
  out["failing"] = report.failing;
  out["wall_time_ms"] = elapsed;
  std::cout << shatter::io::dump(out);
  std::cerr << report.command << ": " << report.summary << "\n";
  return code;
}
