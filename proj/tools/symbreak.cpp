// Command-line pipeline: benchmark generation, breaker-family generation,
// LP export, desk-scale verification, branch-and-bound comparison runs, and
// aggregation of the resulting statistics.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification failure,
// 3 enumeration guard exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <symbreak/binpack.hpp>
#include <symbreak/breakers.hpp>
#include <symbreak/lp.hpp>
#include <symbreak/manifest.hpp>
#include <symbreak/solver.hpp>
#include <symbreak/verify.hpp>

namespace fs = std::filesystem;
using namespace symbreak;

namespace {

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// '*' wildcard match, two pointers with backtracking.
bool glob_match(const std::string& pattern, const std::string& name) {
  std::size_t p = 0, n = 0, star = std::string::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  const fs::path pat(pattern);
  const fs::path dir = pat.has_parent_path() ? pat.parent_path() : fs::path(".");
  const std::string leaf = pat.filename().string();
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && glob_match(leaf, entry.path().filename().string()))
      out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

struct BenchOpts {
  std::uint32_t classes = 3;
  std::uint32_t items = 2000;
  std::int64_t capacity = 100;
  std::uint64_t seed = 1;
  std::string out = "instance.json";
};

void run_bench(const BenchOpts& o) {
  const std::int64_t half = o.capacity / 2;
  const std::int64_t spread = (static_cast<std::int64_t>(o.classes) - 1) / 2;
  const BinPackingInstance inst = generate_benchmark(
      o.classes, o.items, half - spread, half + spread, o.capacity,
      derive_seed(o.seed, "bench"));
  write_instance(inst, o.out);

  RunManifest m;
  m.command = "bench";
  m.global_seed = o.seed;
  m.instance_file = o.out;
  m.outputs = {o.out};
  write_manifest(m, o.out + ".manifest.json");
  std::cout << "wrote " << o.out << " (" << inst.items() << " items, "
            << size_boundaries(inst).num_classes() << " size classes)\n";
}

struct BreakersOpts {
  std::string instance;
  std::string template_label = "xy";
  std::string profile_label = "few_few";
  std::uint64_t seed = 1;
  std::uint32_t product_length = 0;  // 0: keep the profile default
  std::uint32_t target_vars = 0;
  std::uint32_t perm_count = 0;
  std::string out;
};

void run_breakers(const BreakersOpts& o) {
  const BinPackingInstance inst = read_instance(o.instance);
  const Template tmpl = template_from_string(o.template_label);
  SizeProfile profile = profile_from_string(o.profile_label);
  if (o.product_length > 0) profile.generator_product_length = o.product_length;
  if (o.target_vars > 0) profile.target_vars = o.target_vars;
  if (o.perm_count > 0) profile.perm_count = o.perm_count;

  const VarLayout layout = inst.layout();
  const SizeBoundaries bounds = size_boundaries(inst);
  Rng rng(derive_seed(o.seed, "breakers"));
  const Polynomial h = instantiate_template(tmpl, profile, layout, rng);
  BreakerFamily fam = generate_family(h, tmpl, layout, bounds, profile, rng);
  fam.instance_id = stem_of(o.instance);
  fam.seed = o.seed;

  const std::string out = o.out.empty()
      ? fam.instance_id + "_" + o.template_label + "_" + o.profile_label + ".json"
      : o.out;
  write_family(fam, out);

  RunManifest m;
  m.command = "breakers";
  m.global_seed = o.seed;
  m.instance_file = o.instance;
  m.template_label = o.template_label;
  m.profile_label = o.profile_label;
  m.generator_product_length = profile.generator_product_length;
  m.outputs = {out, breakers_sidecar_path(out)};
  write_manifest(m, out + ".manifest.json");
  std::cout << "wrote " << out << ": kept " << fam.kept() << "/" << fam.sampled
            << " (zero " << fam.dropped_zero << ", linear " << fam.dropped_linear
            << ", duplicate " << fam.dropped_duplicate << ")\n";
}

struct EmitOpts {
  std::string instance;
  std::string family;
  std::string out = "model.lp";
};

void run_emit(const EmitOpts& o) {
  const BinPackingInstance inst = read_instance(o.instance);
  IPModel model = build_model(inst);
  if (!o.family.empty()) model = attach(model, read_family(o.family));
  const LpWriteStats stats = export_lp(model, inst.layout(), o.out);

  RunManifest m;
  m.command = "emit";
  m.instance_file = o.instance;
  m.outputs = {o.out};
  write_manifest(m, o.out + ".manifest.json");
  std::cout << "wrote " << o.out << ": " << stats.variables << " binaries, "
            << stats.core_rows << " core rows, " << stats.side_rows << " breaker rows ("
            << stats.quadratic_rows << " quadratic)\n";
}

struct VerifyOpts {
  std::string instance;
  std::string family;
  bool fundamental = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  GuardSettings guards;
  std::string out = "verify_report.json";
};

void run_verify(const VerifyOpts& o) {
  const BinPackingInstance inst = read_instance(o.instance);
  const IPModel model = build_model(inst);
  const VarLayout layout = inst.layout();
  const SizeBoundaries bounds = size_boundaries(inst);
  const std::string id = stem_of(o.instance);

  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  bool all_passed = true;
  const auto record = [&](const std::string& name, bool result,
                          const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json entry;
    entry["name"] = name;
    entry["instance"] = id;
    entry["seed"] = o.seed;
    entry["result"] = result;
    for (const auto& [k, v] : extra.items()) entry[k] = v;
    checks.push_back(entry);
    all_passed = all_passed && result;
  };

  const EnumerationCache cache(model, o.guards);
  const auto generators = all_generators(layout, bounds);
  bool gens_ok = true;
  for (const Permutation& g : generators) gens_ok = gens_ok && check_symmetry(cache, g);
  record("check_symmetry_generators", gens_ok,
         {{"generators", generators.size()}});

  std::optional<BreakerFamily> family;
  if (!o.family.empty()) {
    family = read_family(o.family);
    const auto witness = sound_optimum(cache, *family);
    nlohmann::ordered_json extra;
    extra["breakers"] = family->breakers.size();
    if (witness) extra["witness"] = *witness;
    record("check_family_soundness", witness.has_value(), extra);

    const EnumOptimum base = enumerate_optimum(cache, false);
    const IPModel attached = attach(model, *family);
    const EnumOptimum with = enumerate_optimum(EnumerationCache(attached, o.guards), true);
    const bool preserved = base.feasible && with.feasible && base.value == with.value;
    record("optimum_preserved", preserved,
           {{"base_optimum", base.feasible ? base.value : -1},
            {"attached_optimum", with.feasible ? with.value : -1}});
  }

  if (o.fundamental) {
    Polynomial h;
    if (family && !family->base.is_zero()) {
      h = family->base;
    } else {
      for (VarIndex v = 0; v < layout.num_vars(); ++v)
        h = h + Polynomial::var(v, 1, static_cast<std::int64_t>(v) + 1);
    }
    Rng rng(derive_seed(o.seed, "fundamental"));
    const auto rep = check_fundamental_region(generators, h, o.samples, rng, o.guards);
    record("check_fundamental_region", rep.clean(),
           {{"samples", rep.samples},
            {"group_order", rep.group_order},
            {"in_region", rep.in_region},
            {"all_witnessed", rep.all_witnessed},
            {"unwitnessed", rep.unwitnessed.size()}});

    Rng rng2(derive_seed(o.seed, "linear_existence"));
    const auto lin = check_linear_existence(layout.num_vars(), generators, rng2, o.guards);
    nlohmann::ordered_json extra;
    extra["attempts"] = lin.attempts;
    extra["vacuous"] = lin.vacuous;
    extra["inconclusive"] = lin.inconclusive;
    if (lin.found && !lin.vacuous) extra["witness"] = lin.h.render();
    record("check_linear_existence", lin.found || lin.inconclusive, extra);
  }

  nlohmann::ordered_json report;
  report["checks"] = checks;
  report["guard_settings"] = {{"max_points", o.guards.max_points},
                              {"max_orbit", o.guards.max_orbit},
                              {"max_group", o.guards.max_group}};
  std::ofstream out(o.out);
  if (!out) throw std::runtime_error("cannot open " + o.out + " for writing");
  out << report.dump(2) << "\n";
  std::cout << "wrote " << o.out << (all_passed ? " (all checks passed)" : " (FAILURES)") << "\n";
  if (!all_passed) throw VerificationFailure("verification failed, see " + o.out);
}

struct SolveOpts {
  std::string instance;
  std::vector<std::string> families;
  std::string out = "stats.csv";
};

void run_solve(const SolveOpts& o) {
  const BinPackingInstance inst = read_instance(o.instance);
  const IPModel model = build_model(inst);
  std::vector<BreakerFamily> fams;
  for (const std::string& f : o.families) fams.push_back(read_family(f));
  const auto rows = compare(model, fams);
  write_stats_csv(rows, o.out);

  RunManifest m;
  m.command = "solve";
  m.instance_file = o.instance;
  m.outputs = {o.out};
  write_manifest(m, o.out + ".manifest.json");
  for (const auto& row : rows)
    std::cout << row.config_id << ": nodes " << row.stats.nodes_explored << " ("
              << row.relative_nodes_pct << "%), optimum "
              << (row.stats.feasible ? std::to_string(row.stats.optimum) : "infeasible") << "\n";
}

struct ReportOpts {
  std::string glob = "stats/*.csv";
  std::string out = "report.csv";
};

void run_report(const ReportOpts& o) {
  struct Agg {
    std::uint64_t runs = 0;
    double sum = 0, mn = 1e300, mx = -1e300;
  };
  std::map<std::pair<std::string, std::string>, Agg> agg;

  const auto files = expand_glob(o.glob);
  if (files.empty()) throw std::runtime_error("no files match " + o.glob);
  for (const std::string& file : files) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string config, tmpl, profile, nodes, rel;
      std::getline(ls, config, ',');
      std::getline(ls, tmpl, ',');
      std::getline(ls, profile, ',');
      std::getline(ls, nodes, ',');
      std::getline(ls, rel, ',');
      if (tmpl.empty()) continue;  // baseline row
      Agg& a = agg[{tmpl, profile}];
      const double r = std::stod(rel);
      ++a.runs;
      a.sum += r;
      a.mn = std::min(a.mn, r);
      a.mx = std::max(a.mx, r);
    }
  }

  std::ofstream out(o.out);
  if (!out) throw std::runtime_error("cannot open " + o.out + " for writing");
  out << "template,profile,runs,mean_relative_nodes_pct,min_relative_nodes_pct,max_relative_nodes_pct\n";
  for (const auto& [key, a] : agg)
    out << key.first << ',' << key.second << ',' << a.runs << ',' << std::fixed
        << std::setprecision(2) << a.sum / static_cast<double>(a.runs) << ',' << a.mn << ','
        << a.mx << "\n";
  std::cout << "wrote " << o.out << " (" << agg.size() << " template/profile groups from "
            << files.size() << " files)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial symmetry-breaker toolkit for 0-1 bin packing"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  BenchOpts bench;
  auto* cb = app.add_subcommand("bench", "generate a near half-capacity benchmark instance");
  cb->add_option("--classes", bench.classes, "number of distinct sizes")
      ->check(CLI::IsMember({3, 5, 7, 9}))
      ->required();
  cb->add_option("--items", bench.items, "number of items (= bins)")->required();
  cb->add_option("--capacity", bench.capacity, "bin capacity")->capture_default_str();
  cb->add_option("--seed", bench.seed, "global seed")->capture_default_str();
  cb->add_option("--out", bench.out, "instance file")->capture_default_str();
  cb->callback([&] { run_bench(bench); });

  BreakersOpts brk;
  auto* cg = app.add_subcommand("breakers", "generate a breaker family for an instance");
  cg->add_option("--instance", brk.instance, "instance JSON")->required();
  cg->add_option("--template", brk.template_label,
                 "x|y|x+y|x2|y2|xy|x2+y2|x+y2|x2+y")->required();
  cg->add_option("--profile", brk.profile_label,
                 "few_few|few_many|many_few|numerous_few")->capture_default_str();
  cg->add_option("--seed", brk.seed, "global seed")->capture_default_str();
  cg->add_option("--product-length", brk.product_length, "generators per sampled permutation");
  cg->add_option("--target-vars", brk.target_vars, "override the profile variable target");
  cg->add_option("--perm-count", brk.perm_count, "override the profile permutation count");
  cg->add_option("--out", brk.out, "family manifest path (.json)");
  cg->callback([&] { run_breakers(brk); });

  EmitOpts emit;
  auto* ce = app.add_subcommand("emit", "export the model as an LP file");
  ce->add_option("--instance", emit.instance, "instance JSON")->required();
  ce->add_option("--family", emit.family, "breaker family manifest to attach");
  ce->add_option("--out", emit.out, "LP output path")->capture_default_str();
  ce->callback([&] { run_emit(emit); });

  VerifyOpts ver;
  auto* cv = app.add_subcommand("verify", "run the desk-scale oracle checks");
  cv->add_option("--instance", ver.instance, "instance JSON")->required();
  cv->add_option("--family", ver.family, "breaker family manifest");
  cv->add_flag("--fundamental", ver.fundamental, "also run the fundamental-region suite");
  cv->add_option("--samples", ver.samples, "samples for the fundamental-region checks")->capture_default_str();
  cv->add_option("--seed", ver.seed, "seed for sampled checks")->capture_default_str();
  cv->add_option("--max-points", ver.guards.max_points, "enumeration guard")->capture_default_str();
  cv->add_option("--max-orbit", ver.guards.max_orbit, "orbit guard")->capture_default_str();
  cv->add_option("--max-group", ver.guards.max_group, "group closure guard")->capture_default_str();
  cv->add_option("--out", ver.out, "report path")->capture_default_str();
  cv->callback([&] { run_verify(ver); });

  SolveOpts sol;
  auto* cs = app.add_subcommand("solve", "solve with branch and bound, with and without breakers");
  cs->add_option("--instance", sol.instance, "instance JSON")->required();
  cs->add_option("--family", sol.families, "breaker family manifest (repeatable)");
  cs->add_option("--out", sol.out, "stats CSV path")->capture_default_str();
  cs->callback([&] { run_solve(sol); });

  ReportOpts rep;
  auto* cr = app.add_subcommand("report", "aggregate stats CSVs per template and profile");
  cr->add_option("--glob", rep.glob, "input pattern, e.g. 'stats/*.csv'")->capture_default_str();
  cr->add_option("--out", rep.out, "aggregated CSV path")->capture_default_str();
  cr->callback([&] { run_report(rep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const VerificationFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
