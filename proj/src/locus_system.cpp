#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fanoreal/error.hpp"
#include "fanoreal/locus.hpp"

namespace fanoreal {

using nlohmann::json;

void PolynomialSystem::validate() const {
  if (nvars <= 0) throw InvalidInput("system needs nvars >= 1");
  if (static_cast<int>(domain.size()) != nvars) throw InvalidInput("domain must have one interval per variable");
  if (!vars.empty() && static_cast<int>(vars.size()) != nvars) throw InvalidInput("vars must name every variable");
  for (const auto& d : domain)
    if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
      throw InvalidInput("domain intervals must be bounded with lo < hi");
  for (const auto& p : polys)
    if (p.nvars() != nvars) throw InvalidInput("polynomial arity does not match nvars");
  auto check_groups = [&](const std::vector<std::vector<int>>& groups, const char* what) {
    std::set<int> seen;
    for (const auto& g : groups) {
      if (g.empty()) throw InvalidInput(std::string(what) + " group is empty");
      for (int v : g) {
        if (v < 0 || v >= nvars) throw InvalidInput(std::string(what) + " group index out of range");
        if (!seen.insert(v).second) throw InvalidInput(std::string(what) + " groups overlap");
      }
    }
  };
  check_groups(spheres, "sphere");
  check_groups(antipodal, "antipodal");
  for (const auto& g : antipodal)
    for (int v : g)
      if (domain[v].lo != -domain[v].hi)
        throw InvalidInput("antipodal identification needs a domain symmetric about 0 on variable " +
                           std::to_string(v));
}

bool PolynomialSystem::excludes(const std::vector<Interval>& box) const {
  for (const auto& p : polys)
    if (!p.eval(box).contains_zero()) return true;
  for (const auto& g : spheres) {
    Interval s(0.0);
    for (int v : g) s = s + sqr(box[v]);
    if (!s.contains(1.0)) return true;
  }
  return false;
}

namespace {

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return Rational(v.get<double>());
  throw InvalidInput("expected a number or numeric string, got " + v.dump());
}

Interval json_interval(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw InvalidInput("interval must be [lo, hi]");
    const Rational lo = json_rational(v[0]), hi = json_rational(v[1]);
    if (lo > hi) throw InvalidInput("interval with lo > hi: " + v.dump());
    return Interval::enclose(lo, hi);
  }
  return Interval::enclose(json_rational(v));
}

std::vector<std::vector<int>> json_groups(const json& doc, const char* key) {
  std::vector<std::vector<int>> out;
  if (!doc.contains(key)) return out;
  for (const auto& g : doc.at(key)) out.push_back(g.get<std::vector<int>>());
  return out;
}

}  // namespace

PolynomialSystem parse_system(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("system file is not valid JSON: ") + e.what());
  }
  PolynomialSystem s;
  try {
    s.name = doc.value("name", "");
    s.nvars = doc.at("nvars").get<int>();
    if (doc.contains("vars")) s.vars = doc.at("vars").get<std::vector<std::string>>();
    for (const auto& poly : doc.at("polys")) {
      std::vector<Monomial> terms;
      for (const auto& term : poly) {
        if (!term.is_array() || term.size() != 2) throw InvalidInput("term must be [coefficient, exponents]");
        terms.push_back({json_interval(term[0]), term[1].get<std::vector<int>>()});
      }
      s.polys.emplace_back(s.nvars, std::move(terms));
    }
    s.spheres = json_groups(doc, "spheres");
    s.antipodal = json_groups(doc, "antipodal");
    for (const auto& d : doc.at("domain")) s.domain.push_back(json_interval(d));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed system file: ") + e.what());
  }
  s.validate();
  return s;
}

PolynomialSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open system file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace fanoreal
