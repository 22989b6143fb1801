#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fanoreal/atlas.hpp"
#include "fanoreal/bounds.hpp"
#include "fanoreal/error.hpp"
#include "fanoreal/locus.hpp"
#include "fanoreal/pencil_io.hpp"
#include "fanoreal/retract.hpp"

namespace fanoreal::cli {

using nlohmann::ordered_json;

namespace {

constexpr int kInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("malformed number '" + tok + "' in " + what);
    }
  }
  if (v.size() != count) throw InvalidInput(what + " needs " + std::to_string(count) + " comma-separated values");
  return v;
}

std::vector<int> parse_depths(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("malformed depth '" + tok + "'");
    }
  }
  if (v.empty()) throw InvalidInput("--depths needs at least one depth");
  return v;
}

ordered_json opt(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json record_json(const FanoFamilyRecord& r) {
  ordered_json j;
  j["id"] = r.id.str();
  j["iota"] = opt(r.iota);
  j["degree"] = opt(r.degree);
  j["genus"] = opt(r.genus);
  j["h12"] = r.h12;
  j["rho_c"] = r.rho_c;
  j["geometric_rationality"] = to_string(r.geometric_rationality);
  j["s_lower"] = opt(r.s_lower);
  j["s_upper"] = opt(r.s_upper);
  j["exists_irrational_connected"] = to_string(r.exists_irrational_connected);
  j["source"] = r.source;
  j["tables"] = r.tables;
  j["description"] = r.description;
  return j;
}

std::string bound_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "?"; }

std::string record_text(const FanoFamilyRecord& r) {
  std::ostringstream o;
  o << "family " << r.id.str() << "\n";
  if (!r.description.empty()) o << "  " << r.description << "\n";
  o << "  index " << bound_text(r.iota) << ", degree " << bound_text(r.degree) << ", genus " << bound_text(r.genus)
    << ", h12 " << r.h12 << ", rho_c " << r.rho_c << "\n";
  o << "  geometrically: " << to_string(r.geometric_rationality) << "\n";
  o << "  s in [" << bound_text(r.s_lower) << ", " << bound_text(r.s_upper) << "]";
  if (!r.source.empty()) o << " (" << r.source << ")";
  o << "\n  irrational with connected real locus: " << to_string(r.exists_irrational_connected) << "\n";
  return o.str();
}

ordered_json verdict_json(const FamilyId& id, const Verdict& v) {
  ordered_json j;
  j["schema"] = "fanoreal.verdict/1";
  j["family"] = id.str();
  j["status"] = to_string(v.status);
  ordered_json missing = ordered_json::array();
  for (auto k : v.missing) missing.push_back(to_string(k));
  j["missing"] = missing;
  j["rule"] = v.rule.empty() ? ordered_json(nullptr) : ordered_json(v.rule);
  return j;
}

ordered_json report_json(const PolynomialSystem& s, const ComponentReport& r) {
  ordered_json j;
  j["schema"] = "fanoreal.locus-count/1";
  j["system"] = s.name;
  j["nvars"] = s.nvars;
  ordered_json hist = ordered_json::array();
  for (const auto& h : r.history) {
    ordered_json e;
    e["depth"] = h.depth;
    e["retained"] = h.retained;
    e["components"] = h.components;
    hist.push_back(e);
  }
  j["history"] = hist;
  j["depth"] = r.depth;
  j["retained_count"] = r.retained_count;
  j["component_estimate"] = r.component_estimate;
  j["stable"] = r.stable;
  return j;
}

ordered_json interval_json(const Interval& x) { return ordered_json::array({x.lo, x.hi}); }

struct Options {
  bool json = false;
  std::string input, output, system, depths = "4,5,6", export_path, point, evidence, family, data;
  std::uint64_t seed = 0, budget = SubdivisionOptions{}.budget;
  int n = 6, threads = 1;
  int rho_c = 0, h12 = -1;
  std::optional<int> lambda, rho_r, s_gt, m;
  std::optional<std::string> table;
  double t = 0.0, tolerance = 1e-9;
};

const Atlas& atlas_for(const Options& o, std::optional<Atlas>& holder) {
  if (o.data.empty()) return Atlas::builtin();
  holder = Atlas::from_json(read_file(o.data));
  return *holder;
}

int pencil_classify(const Options& o, std::ostream& out) {
  const QuadricPencil p = load_pencil(o.input);
  const std::string doc = classification_json(p);
  if (o.json) {
    out << doc << "\n";
    return kOk;
  }
  const auto j = ordered_json::parse(doc);
  const IsotopyClass c{j["class"].get<std::vector<int>>()};
  out << "class " << c.to_string() << " (k = " << c.k() << ")\n";
  if (!j["verdict"].is_null()) out << "real locus: " << j["verdict"].get<std::string>() << "\n";
  out << "real roots of det(Q0 + t Q1):";
  for (const auto& r : discriminant_roots(p)) out << " " << r.describe();
  out << "\n";
  return kOk;
}

int pencil_random(const Options& o, std::ostream& out) {
  if (o.n < 2) throw InvalidInput("--n must be at least 2");
  PencilGenerator gen(o.seed);
  const std::string doc = pencil_to_json(gen.generic(o.n)) + "\n";
  if (o.output.empty()) {
    out << doc;
  } else {
    write_file(o.output, doc);
  }
  return kOk;
}

int bounds(const Options& o, std::ostream& out) {
  HodgeData d{o.rho_c, o.rho_r, o.h12, o.lambda};
  d.validate();
  const BoundReport r = component_bounds(d);
  if (o.json) {
    ordered_json j;
    j["schema"] = "fanoreal.bounds/1";
    j["rho_c"] = d.rho_c;
    j["rho_r"] = opt(d.rho_r);
    j["h12"] = d.h12;
    j["lambda"] = opt(d.lambda);
    j["smith_thom"] = r.bound1;
    j["borel_swan"] = opt(r.bound2);
    j["best"] = r.best;
    j["clamped"] = r.clamped;
    out << j.dump(1) << "\n";
    return kOk;
  }
  out << "Smith-Thom bound: s <= " << r.bound1 << "\n";
  if (r.bound2) out << "Borel-Swan bound: s <= " << *r.bound2 << (r.clamped ? " (negative, clamped)" : "") << "\n";
  out << "best: " << r.best << "\n";
  return kOk;
}

int locus_count(const Options& o, std::ostream& out, std::ostream& err) {
  const PolynomialSystem s = load_system(o.system);
  if (o.threads < 1) throw InvalidInput("--threads must be positive");
  const SubdivisionOptions so{o.budget, o.threads};
  const ComponentReport r = count_components(s, parse_depths(o.depths), so);
  if (!o.export_path.empty()) {
    const Cover cover = subdivide(s, r.depth, so);
    const bool svg = o.export_path.size() >= 4 && o.export_path.substr(o.export_path.size() - 4) == ".svg";
    write_file(o.export_path, svg ? export_cover_svg(cover) : export_cover_json(cover) + "\n");
  }
  if (!r.stable) err << "warning: estimates at the last two depths differ or only one depth was given\n";
  if (o.json) {
    out << report_json(s, r).dump(1) << "\n";
    return kOk;
  }
  out << s.name << ":\n";
  for (const auto& h : r.history)
    out << "  depth " << h.depth << ": " << h.retained << " boxes, " << h.components << " components\n";
  out << "estimate " << r.component_estimate << (r.stable ? " (stable)" : " (not stable)") << "\n";
  return kOk;
}

int locus_path(const Options& o, std::ostream& out) {
  const auto v = parse_doubles(o.point, 6, "--point");
  Point6 p;
  std::copy(v.begin(), v.end(), p.begin());
  if (!(o.t >= 0.0 && o.t <= 1.0)) throw InvalidInput("--t must lie in [0, 1]");
  const Box6 start = variety_point(p, o.tolerance);
  const Box6 x = retract_path(start, o.t, o.tolerance);
  const auto res = cyclic_residual(x);
  static const char* names[6] = {"a1", "b1", "a2", "b2", "a3", "b3"};
  if (o.json) {
    ordered_json j;
    j["schema"] = "fanoreal.path/1";
    j["t"] = o.t;
    ordered_json pt;
    for (int i = 0; i < 6; ++i) pt[names[i]] = interval_json(x[i]);
    j["point"] = pt;
    ordered_json r = ordered_json::array();
    for (const auto& e : res) r.push_back(interval_json(e));
    j["residual"] = r;
    out << j.dump(1) << "\n";
    return kOk;
  }
  out << std::setprecision(17);
  out << "P(" << o.t << "):\n";
  for (int i = 0; i < 6; ++i) out << "  " << names[i] << " in [" << x[i].lo << ", " << x[i].hi << "]\n";
  out << "residuals:\n";
  for (const auto& e : res) out << "  [" << e.lo << ", " << e.hi << "]\n";
  return kOk;
}

int atlas_lookup(const Options& o, std::ostream& out) {
  std::optional<Atlas> holder;
  const auto& r = atlas_for(o, holder).lookup(o.family);
  if (o.json) {
    ordered_json j;
    j["schema"] = "fanoreal.family/1";
    j["record"] = record_json(r);
    out << j.dump(1) << "\n";
  } else {
    out << record_text(r);
  }
  return kOk;
}

int atlas_decide(const Options& o, std::ostream& out) {
  std::optional<Atlas> holder;
  const FamilyId id = FamilyId::parse(o.family);
  const Verdict v = atlas_for(o, holder).decide(id, Evidence::parse(o.evidence));
  if (o.json) {
    out << verdict_json(id, v).dump(1) << "\n";
    return kOk;
  }
  out << id.str() << ": " << to_string(v.status);
  if (!v.missing.empty()) {
    out << " (missing:";
    for (auto k : v.missing) out << " " << to_string(k);
    out << ")";
  }
  if (!v.rule.empty()) out << " by " << v.rule;
  out << "\n";
  return kOk;
}

int atlas_table(const Options& o, std::ostream& out) {
  std::optional<Atlas> holder;
  TableFilter f;
  f.s_gt = o.s_gt;
  f.m = o.m;
  f.table = o.table;
  if (f.table && *f.table != "1" && *f.table != "2" && *f.table != "4")
    throw InvalidInput("--table must be 1, 2 or 4");
  const auto rows = atlas_for(o, holder).table(f);
  if (o.json) {
    ordered_json j;
    j["schema"] = "fanoreal.table/1";
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(record_json(r));
    j["rows"] = arr;
    out << j.dump(1) << "\n";
    return kOk;
  }
  out << std::left << std::setw(7) << "family" << std::setw(5) << "h12" << std::setw(6) << "s>=" << std::setw(6)
      << "s<=" << std::setw(9) << "exists" << "source\n";
  for (const auto& r : rows)
    out << std::setw(7) << r.id.str() << std::setw(5) << r.h12 << std::setw(6) << bound_text(r.s_lower)
        << std::setw(6) << bound_text(r.s_upper) << std::setw(9) << to_string(r.exists_irrational_connected)
        << r.source << "\n";
  return kOk;
}

int atlas_check(const Options& o, std::ostream& out) {
  std::optional<Atlas> holder;
  const auto violations = atlas_for(o, holder).consistency_check();
  if (o.json) {
    ordered_json j;
    j["schema"] = "fanoreal.check/1";
    ordered_json arr = ordered_json::array();
    for (const auto& v : violations) arr.push_back({{"family", v.family}, {"message", v.message}});
    j["violations"] = arr;
    out << j.dump(1) << "\n";
  } else {
    for (const auto& v : violations) out << (v.family.empty() ? "(global)" : v.family) << ": " << v.message << "\n";
    out << violations.size() << " violations\n";
  }
  return violations.empty() ? kOk : kInvalidInput;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidInput: return kInvalidInput;
    case ErrorKind::Inconclusive: return kInconclusive;
    case ErrorKind::Internal: return kInternal;
  }
  return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Real Fano threefolds: quadric pencils, component bounds, real loci and the rationality atlas.",
               "fanoreal"};
  app.require_subcommand(1);

  auto* pencil = app.add_subcommand("pencil", "Rigid isotopy classes of real pencils of quadrics");
  pencil->require_subcommand(1);
  auto* classify_cmd = pencil->add_subcommand(
      "classify",
      "Odd decomposition (k1,...,k_2s+1) read from the jumps of the positive inertia index along the pencil "
      "circle; for six variables also the topology of the real intersection (class (1,1,4) iff two components, "
      "class (0) empty)");
  classify_cmd->add_option("--input", o.input, "Pencil JSON file (see FORMATS.md)")->required();
  classify_cmd->add_flag("--json", o.json, "Emit JSON");
  auto* random_cmd =
      pencil->add_subcommand("random", "Random generic pencil: random diagonal pencil under a random congruence");
  random_cmd->add_option("--seed", o.seed, "Generator seed")->required();
  random_cmd->add_option("--n", o.n, "Number of variables")->capture_default_str();
  random_cmd->add_option("--output", o.output, "Write to this file instead of standard output");

  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Smith-Thom bound s <= 1 + h12 + rho_c and Borel-Swan refinement s <= 1 + h12 + rho_c - 2 lambda");
  bounds_cmd->add_option("--rho-c", o.rho_c, "Picard rank over C")->required();
  bounds_cmd->add_option("--h12", o.h12, "Hodge number h^{1,2}")->required();
  bounds_cmd->add_option("--lambda", o.lambda, "Rank of (1 + sigma) Pic(X_C)");
  bounds_cmd->add_option("--rho-r", o.rho_r, "Real Picard rank");
  bounds_cmd->add_flag("--json", o.json, "Emit JSON");

  auto* locus = app.add_subcommand("locus", "Real loci of explicit polynomial systems");
  locus->require_subcommand(1);
  auto* count_cmd = locus->add_subcommand(
      "count",
      "Estimate the number of connected components of a real locus by interval subdivision "
      "(used for the disconnected two-quadric example, the quartic curve with four components, the "
      "path-connected cyclic system and the two-node cubic)");
  count_cmd->add_option("--system", o.system, "System JSON file (see FORMATS.md)")->required();
  count_cmd->add_option("--depths", o.depths, "Comma-separated subdivision depths")->capture_default_str();
  count_cmd->add_option("--budget", o.budget, "Cap on retained boxes")->capture_default_str();
  count_cmd->add_option("--threads", o.threads, "Worker threads; output does not depend on it")
      ->capture_default_str();
  count_cmd->add_option("--export", o.export_path, "Write the final cover (.svg for graphics, otherwise JSON)");
  count_cmd->add_flag("--json", o.json, "Emit JSON");
  auto* path_cmd = locus->add_subcommand(
      "path",
      "Point P(t) of the explicit retraction of the real locus of 2a1 = sqrt2 (a2^2+b2^2), 2a2 = sqrt2 "
      "(a3^2+b3^2), 2a3 = sqrt2 (a1^2+b1^2) onto the origin, with residual enclosures");
  path_cmd->add_option("--point", o.point, "a1,b1,a2,b2,a3,b3; b is re-projected onto the locus")->required();
  path_cmd->add_option("--t", o.t, "Path parameter in [0, 1]")->required();
  path_cmd->add_option("--tolerance", o.tolerance, "Accepted negative radicand")->capture_default_str();
  path_cmd->add_flag("--json", o.json, "Emit JSON");

  auto* atlas = app.add_subcommand("atlas", "Fano threefold families, bounds on s_{m.n} and R-rationality rules");
  atlas->require_subcommand(1);
  atlas->add_option("--data", o.data, "Atlas JSON file instead of the built-in data");
  auto* lookup_cmd = atlas->add_subcommand("lookup", "Invariants and bounds on s_{m.n} for one family");
  lookup_cmd->add_option("family", o.family, "Family id m.n")->required();
  lookup_cmd->add_flag("--json", o.json, "Emit JSON");
  auto* decide_cmd = atlas->add_subcommand(
      "decide",
      "R-rationality verdict from the rationality criterion for s_X = 1, the Kuznetsov-Prokhorov theorem on "
      "minimal Fano threefolds, the X_18 corollary and the product lemma for P^1 x S_d");
  decide_cmd->add_option("family", o.family, "Family id m.n")->required();
  decide_cmd->add_option("--evidence", o.evidence,
                         "Comma-separated: nonempty, connected, line, conic, twisted-cubic, picard-one, picard=N, "
                         "empty, disconnected, no-line, no-conic, no-twisted-cubic");
  decide_cmd->add_flag("--json", o.json, "Emit JSON");
  auto* table_cmd = atlas->add_subcommand("table", "Family records; with --s-gt the recap table of families with s > 1");
  table_cmd->add_option("--s-gt", o.s_gt, "Recap rows with s_lower greater than this");
  table_cmd->add_option("--m", o.m, "Picard rank over C");
  table_cmd->add_option("--table", o.table, "Rows listed in table 1, 2 or 4");
  table_cmd->add_flag("--json", o.json, "Emit JSON");
  auto* check_cmd = atlas->add_subcommand(
      "check", "Record invariants, Smith-Thom bounds on every s_upper, rule citations and rule agreement");
  check_cmd->add_flag("--json", o.json, "Emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (classify_cmd->parsed()) return pencil_classify(o, out);
    if (random_cmd->parsed()) return pencil_random(o, out);
    if (bounds_cmd->parsed()) return bounds(o, out);
    if (count_cmd->parsed()) return locus_count(o, out, err);
    if (path_cmd->parsed()) return locus_path(o, out);
    if (lookup_cmd->parsed()) return atlas_lookup(o, out);
    if (decide_cmd->parsed()) return atlas_decide(o, out);
    if (table_cmd->parsed()) return atlas_table(o, out);
    if (check_cmd->parsed()) return atlas_check(o, out);
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace fanoreal::cli
