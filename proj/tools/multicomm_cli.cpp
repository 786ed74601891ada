// multicomm: classical and quantum bounds for two-sender communication
// scenarios under dimension or distinguishability constraints.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multicomm/classical.hpp"
#include "multicomm/corpus.hpp"
#include "multicomm/hierarchy.hpp"
#include "multicomm/io.hpp"
#include "multicomm/model.hpp"
#include "multicomm/polytope.hpp"
#include "multicomm/seesaw.hpp"

namespace mc = multicomm;

namespace {

struct CommonOpts {
  std::string ineq;       // corpus name or alias
  std::string ineq_file;  // JSON file
  std::string out;
  std::string format = "text";
  int d = 0;              // 0 = keep scenario default
  std::string D1, D2;     // rationals as strings, empty = keep default
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt_rat(const mc::Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

mc::Rat parse_rat(const std::string& s, const std::string& what) {
  try {
    mc::Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw mc::IoError(what + ": cannot parse rational '" + s + "'");
  }
}

// Resolve the inequality from --ineq (bundled corpus) xor --ineq-file and
// apply constraint-parameter overrides. Reference value lookups only apply
// to bundled entries.
struct ResolvedIneq {
  mc::Functional f;
  std::string id;
  std::optional<mc::CorpusEntry> entry;
};

ResolvedIneq resolve_ineq(const CommonOpts& o) {
  if (o.ineq.empty() == o.ineq_file.empty())
    throw mc::IoError("specify exactly one of --ineq and --ineq-file");
  ResolvedIneq r;
  if (!o.ineq.empty()) {
    auto e = mc::find_inequality(o.ineq);
    if (!e) throw mc::IoError("unknown inequality name: " + o.ineq);
    r.f = e->functional;
    r.id = o.ineq;
    r.entry = std::move(e);
  } else {
    r.f = mc::read_inequality_json(o.ineq_file);
    r.id = r.f.name.empty() ? o.ineq_file : r.f.name;
  }
  if (o.d > 0) r.f.scenario.d = o.d;
  if (!o.D1.empty()) r.f.scenario.D1 = parse_rat(o.D1, "--D1");
  if (!o.D2.empty()) r.f.scenario.D2 = parse_rat(o.D2, "--D2");
  r.f.validate();
  return r;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw mc::IoError("cannot open output file: " + path);
  return file;
}

void fill_constraint_fields(mc::ResultRecord& rec, const mc::Scenario& s,
                            bool uses_dim) {
  if (s.constraint == mc::ConstraintType::Distinguishability) {
    rec.D1 = fmt_rat(s.D1);
    rec.D2 = fmt_rat(s.D2);
    if (uses_dim) rec.d = std::to_string(s.d);
  } else {
    rec.d = std::to_string(s.d);
  }
}

void emit_records(const std::string& format, std::ostream& os,
                  const std::vector<mc::ResultRecord>& recs) {
  if (format == "csv") {
    mc::write_csv_header(os);
    for (const auto& r : recs) mc::write_csv_row(os, r);
  } else if (format == "json") {
    mc::write_json_records(os, recs);
  } else {
    for (const auto& r : recs) {
      os << r.ineq << "  method=" << r.method;
      if (!r.d.empty()) os << "  d=" << r.d;
      if (!r.D1.empty()) os << "  D1=" << r.D1 << "  D2=" << r.D2;
      os << "  value=" << r.value;
      if (!r.classical.empty()) os << "  classical=" << r.classical;
      if (!r.paper_value.empty()) os << "  reference=" << r.paper_value;
      if (!r.seed.empty()) os << "  seed=" << r.seed;
      os << "  wall_ms=" << r.wall_ms << "\n";
    }
  }
}

std::string reference_for(const ResolvedIneq& ri, const std::string& method,
                          int d) {
  if (!ri.entry) return "";
  if (method == "classical") return ri.entry->ref_classical;
  if (d != 2) return "";
  if (method == "seesaw") return ri.entry->ref_seesaw_d2;
  if (method == "hierarchy") return ri.entry->ref_hierarchy_d2;
  return "";
}

class Stopwatch {
 public:
  std::string ms() const {
    const auto dt = std::chrono::steady_clock::now() - start_;
    const auto n =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    return std::to_string(n);
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------

int cmd_vertices(const CommonOpts& o, int nx, int ny, int nz,
                 const std::string& type) {
  mc::Scenario s;
  if (!o.ineq.empty() || !o.ineq_file.empty()) {
    s = resolve_ineq(o).f.scenario;
  } else {
    s.nx = nx;
    s.ny = ny;
    s.nz = nz;
    if (type == "distinguishability")
      s.constraint = mc::ConstraintType::Distinguishability;
    if (o.d > 0) s.d = o.d;
    if (!o.D1.empty()) s.D1 = parse_rat(o.D1, "--D1");
    if (!o.D2.empty()) s.D2 = parse_rat(o.D2, "--D2");
    if (s.constraint == mc::ConstraintType::Distinguishability) {
      if (o.D1.empty()) s.D1 = mc::Rat(2, 3);
      if (o.D2.empty()) s.D2 = mc::Rat(2, 3);
    }
    s.validate();
  }
  std::ofstream file;
  std::ostream& os = open_out(o.out, file);
  if (s.constraint == mc::ConstraintType::Dimension) {
    const auto v = mc::enum_vertices_dim(s);
    os << "# scenario (" << s.nx << "," << s.ny << "," << s.nz
       << ") dimension-bounded, binary classical messages\n";
    os << "# raw strategies: " << v.raw.size()
       << "  distinct vertices: " << v.deduped.size() << "\n";
    mc::VPolytope vp;
    vp.vertices = v.deduped;
    mc::write_v_polytope(os, vp);
  } else {
    const auto ea = mc::enum_encoder_vertices_dist(s.nx, s.D1);
    const auto eb = mc::enum_encoder_vertices_dist(s.ny, s.D2);
    os << "# scenario (" << s.nx << "," << s.ny << "," << s.nz
       << ") distinguishability-bounded, D1=" << s.D1 << " D2=" << s.D2
       << "\n";
    os << "# encoder vertices: sender A " << ea.size() << ", sender B "
       << eb.size() << "; behavior vertices = " << ea.size() << "*"
       << eb.size() << "*" << s.nz << "^(2^(" << s.nx << "-1)*2^(" << s.ny
       << "-1))\n";
    for (int side = 0; side < 2; ++side) {
      const auto& es = side == 0 ? ea : eb;
      os << "# sender " << (side == 0 ? 'A' : 'B') << " encoder tables p(m|x),"
         << " one row per vertex (rows of the table concatenated)\n";
      for (const auto& e : es) {
        for (std::size_t r = 0; r < e.table.size(); ++r)
          for (std::size_t c = 0; c < e.table[r].size(); ++c)
            os << (r + c ? " " : "") << e.table[r][c];
        os << "\n";
      }
    }
  }
  return 0;
}

int cmd_facets(const CommonOpts& o, int nx, int ny, int nz) {
  mc::Scenario s;
  if (!o.ineq.empty() || !o.ineq_file.empty()) {
    s = resolve_ineq(o).f.scenario;
  } else {
    s.nx = nx;
    s.ny = ny;
    s.nz = nz;
    s.validate();
  }
  if (s.constraint != mc::ConstraintType::Dimension)
    throw mc::CapacityError(
        "facet enumeration is only supported for dimension-bounded scenarios");
  const auto h = mc::facet_enumerate_dim(s);
  std::ofstream file;
  std::ostream& os = open_out(o.out, file);
  os << "# scenario (" << s.nx << "," << s.ny << "," << s.nz
     << "): " << h.ineqs.size() << " facets, " << h.eqs.size()
     << " affine equalities (rows [b a1..ad] mean a.p <= b)\n";
  mc::write_h_polytope(os, h);
  return 0;
}

int cmd_bound(const CommonOpts& o, const std::string& method, int restarts,
              std::uint64_t seed, const std::string& variant_name) {
  const auto ri = resolve_ineq(o);
  const auto& f = ri.f;
  const bool dist =
      f.scenario.constraint == mc::ConstraintType::Distinguishability;
  const mc::Rat classical_rat = mc::classical_bound(f).value;
  const double classical = classical_rat.get_d();

  std::vector<mc::ResultRecord> recs;
  bool all_ok = true;
  double quantum = 0;
  bool have_quantum = false;

  auto base_record = [&](const std::string& m, bool uses_dim) {
    mc::ResultRecord rec;
    rec.ineq = ri.id;
    rec.method = m;
    fill_constraint_fields(rec, f.scenario, uses_dim);
    rec.classical = fmt_rat(classical_rat);
    rec.paper_value = reference_for(ri, m, f.scenario.d);
    return rec;
  };

  if (method == "classical") {
    Stopwatch sw;
    auto rec = base_record("classical", false);
    if (!dist) rec.d = "";  // exact bound, no quantum dimension involved
    rec.value = fmt_rat(classical_rat);
    rec.wall_ms = sw.ms();
    recs.push_back(rec);
  } else if (method == "seesaw") {
    Stopwatch sw;
    mc::SeesawConfig cfg;
    cfg.d = f.scenario.d;
    cfg.restarts = restarts;
    cfg.seed = seed;
    const auto res = mc::run_seesaw(f, cfg);
    auto rec = base_record("seesaw", true);
    rec.value = fmt_double(res.value);
    rec.seed = std::to_string(seed);
    rec.wall_ms = sw.ms();
    recs.push_back(rec);
    quantum = res.value;
    have_quantum = true;
  } else if (method == "hierarchy") {
    Stopwatch sw;
    const auto variant = variant_name == "extended"
                             ? mc::HierarchyVariant::Extended
                             : mc::HierarchyVariant::Paper;
    const auto res = mc::hierarchy_upper_bound(f, variant);
    auto rec = base_record("hierarchy", !dist);
    rec.value = fmt_double(res.value);
    rec.wall_ms = sw.ms();
    recs.push_back(rec);
    if (res.status != mc::SdpStatus::Optimal) {
      std::cerr << "warning: hierarchy SDP status " << mc::to_string(res.status)
                << "\n";
      all_ok = false;
    }
    quantum = res.value;
    have_quantum = true;
  } else {
    throw mc::IoError("unknown method: " + method);
  }

  std::ofstream file;
  std::ostream& os = open_out(o.out, file);
  emit_records(o.format, os, recs);
  if (have_quantum) {
    const bool advantage = quantum > classical + 1e-6;
    std::cout << "quantum advantage: " << (advantage ? "yes" : "no") << " ("
              << method << " value " << fmt_double(quantum)
              << " vs classical bound " << fmt_rat(classical_rat) << ")\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_verify(const CommonOpts& o, const std::string& strategy_file) {
  const auto ri = resolve_ineq(o);
  const auto& f = ri.f;
  const auto strat = mc::read_strategy_json(strategy_file);
  const auto issues = strat.validation_issues();
  for (const auto& msg : issues)
    std::cout << "warning: strategy invariant violated: " << msg << "\n";

  Stopwatch sw;
  const auto behavior = mc::behavior_from_strategy_raw(f.scenario, strat);
  const double value = mc::evaluate_functional(f, behavior);
  const mc::Rat classical_rat = mc::classical_bound(f).value;

  mc::ResultRecord rec;
  rec.ineq = ri.id;
  rec.method = "verify";
  fill_constraint_fields(rec, f.scenario, false);
  rec.d = std::to_string(strat.dim_a());
  rec.value = fmt_double(value);
  rec.classical = fmt_rat(classical_rat);
  rec.wall_ms = sw.ms();

  std::ofstream file;
  std::ostream& os = open_out(o.out, file);
  emit_records(o.format, os, {rec});
  std::cout << "strategy value: " << fmt_double(value)
            << (issues.empty() ? "" : " (raw; strategy failed validation)")
            << "\n";
  std::cout << "quantum advantage: "
            << (value > classical_rat.get_d() + 1e-6 ? "yes" : "no") << "\n";
  return issues.empty() ? 0 : 1;
}

int cmd_scan(const CommonOpts& o, const std::string& d_range, int restarts,
             std::uint64_t seed, const std::string& variant_name,
             const std::string& methods_str) {
  const auto ri = resolve_ineq(o);
  int d_lo = 2, d_hi = 2;
  {
    const auto pos = d_range.find("..");
    if (pos == std::string::npos) {
      d_lo = d_hi = std::stoi(d_range);
    } else {
      d_lo = std::stoi(d_range.substr(0, pos));
      d_hi = std::stoi(d_range.substr(pos + 2));
    }
    if (d_lo < 1 || d_hi < d_lo) throw mc::IoError("invalid --d-range");
  }
  const auto variant = variant_name == "extended"
                           ? mc::HierarchyVariant::Extended
                           : mc::HierarchyVariant::Paper;
  bool want_seesaw = methods_str.find("seesaw") != std::string::npos;
  bool want_hier = methods_str.find("hierarchy") != std::string::npos;
  if (!want_seesaw && !want_hier)
    throw mc::IoError("--methods must include seesaw and/or hierarchy");

  const mc::Rat classical_rat = mc::classical_bound(ri.f).value;
  const bool dist =
      ri.f.scenario.constraint == mc::ConstraintType::Distinguishability;

  std::vector<mc::ResultRecord> recs;
  bool all_ok = true;
  // The distinguishability hierarchy is independent of the state dimension;
  // solve it once and repeat the row so every d has both columns.
  std::optional<mc::HierarchyResult> dist_hier;
  for (int d = d_lo; d <= d_hi; ++d) {
    mc::Functional f = ri.f;
    f.scenario.d = d;
    if (want_seesaw) {
      Stopwatch sw;
      mc::SeesawConfig cfg;
      cfg.d = d;
      cfg.restarts = restarts;
      cfg.seed = seed;
      const auto res = mc::run_seesaw(f, cfg);
      mc::ResultRecord rec;
      rec.ineq = ri.id;
      rec.method = "seesaw";
      fill_constraint_fields(rec, f.scenario, true);
      rec.value = fmt_double(res.value);
      rec.classical = fmt_rat(classical_rat);
      rec.paper_value = reference_for(ri, "seesaw", d);
      rec.seed = std::to_string(seed);
      rec.wall_ms = sw.ms();
      recs.push_back(rec);
    }
    if (want_hier) {
      Stopwatch sw;
      mc::HierarchyResult res;
      if (dist && dist_hier) {
        res = *dist_hier;
      } else {
        res = mc::hierarchy_upper_bound(f, variant);
        if (dist) dist_hier = res;
      }
      if (res.status != mc::SdpStatus::Optimal) all_ok = false;
      mc::ResultRecord rec;
      rec.ineq = ri.id;
      rec.method = "hierarchy";
      fill_constraint_fields(rec, f.scenario, true);
      rec.value = fmt_double(res.value);
      rec.classical = fmt_rat(classical_rat);
      rec.paper_value = reference_for(ri, "hierarchy", d);
      rec.wall_ms = sw.ms();
      recs.push_back(rec);
    }
  }
  std::stable_sort(recs.begin(), recs.end(),
                   [](const mc::ResultRecord& a, const mc::ResultRecord& b) {
                     if (a.d != b.d)
                       return std::stoi(a.d.empty() ? "0" : a.d) <
                              std::stoi(b.d.empty() ? "0" : b.d);
                     return a.method < b.method;
                   });
  std::ofstream file;
  std::ostream& os = open_out(o.out, file);
  const std::string fmt = o.format == "text" ? "csv" : o.format;
  emit_records(fmt, os, recs);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Classical and quantum bounds for two-sender/one-receiver "
      "communication scenarios"};
  app.require_subcommand(1);

  CommonOpts o;
  int nx = 0, ny = 0, nz = 0;
  std::string type = "dimension";
  std::string method = "classical";
  std::string d_range = "2..2";
  std::string methods_str = "seesaw,hierarchy";
  std::string variant = "paper";
  std::string strategy_file;
  int restarts = 100;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* c, bool ineq_required) {
    c->add_option("--ineq", o.ineq, "Bundled inequality name or alias");
    c->add_option("--ineq-file", o.ineq_file, "Inequality JSON file");
    c->add_option("--out", o.out, "Output file (default stdout)");
    c->add_option("--format", o.format, "Output format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--d", o.d, "State dimension");
    c->add_option("--D1", o.D1, "Distinguishability cap for sender A");
    c->add_option("--D2", o.D2, "Distinguishability cap for sender B");
    (void)ineq_required;
  };

  auto* cv = app.add_subcommand("vertices",
                                "Enumerate classical polytope vertices");
  add_common(cv, false);
  cv->add_option("--nx", nx, "Number of inputs for sender A");
  cv->add_option("--ny", ny, "Number of inputs for sender B");
  cv->add_option("--nz", nz, "Number of receiver outcomes");
  cv->add_option("--type", type, "Constraint type")
      ->check(CLI::IsMember({"dimension", "distinguishability"}));

  auto* cf = app.add_subcommand("facets",
                                "Enumerate classical polytope facets");
  add_common(cf, false);
  cf->add_option("--nx", nx, "Number of inputs for sender A");
  cf->add_option("--ny", ny, "Number of inputs for sender B");
  cf->add_option("--nz", nz, "Number of receiver outcomes");

  auto* cb = app.add_subcommand("bound", "Compute a bound for an inequality");
  add_common(cb, true);
  cb->add_option("--method", method, "classical, seesaw, or hierarchy")
      ->check(CLI::IsMember({"classical", "seesaw", "hierarchy"}));
  cb->add_option("--restarts", restarts, "SeeSaw restarts");
  cb->add_option("--seed", seed, "SeeSaw RNG seed");
  cb->add_option("--variant", variant, "Hierarchy variant")
      ->check(CLI::IsMember({"paper", "extended"}));

  auto* cs = app.add_subcommand("verify",
                                "Evaluate an explicit strategy file");
  add_common(cs, true);
  cs->add_option("--strategy", strategy_file, "Strategy JSON file")
      ->required();

  auto* cc = app.add_subcommand(
      "scan", "Seesaw and hierarchy bounds over a dimension range");
  add_common(cc, true);
  cc->add_option("--d-range", d_range, "Dimension range, e.g. 2..5");
  cc->add_option("--methods", methods_str,
                 "Comma-separated subset of seesaw,hierarchy");
  cc->add_option("--restarts", restarts, "SeeSaw restarts per dimension");
  cc->add_option("--seed", seed, "SeeSaw RNG seed");
  cc->add_option("--variant", variant, "Hierarchy variant")
      ->check(CLI::IsMember({"paper", "extended"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cv->parsed()) return cmd_vertices(o, nx, ny, nz, type);
    if (cf->parsed()) return cmd_facets(o, nx, ny, nz);
    if (cb->parsed()) return cmd_bound(o, method, restarts, seed, variant);
    if (cs->parsed()) return cmd_verify(o, strategy_file);
    if (cc->parsed())
      return cmd_scan(o, d_range, restarts, seed, variant, methods_str);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
