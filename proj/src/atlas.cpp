#include "fanoreal/atlas.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

#include "fanoreal/bounds.hpp"
#include "fanoreal/error.hpp"

extern const char* const fanoreal_atlas_json;

namespace fanoreal {

using nlohmann::json;

namespace {

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidInput("malformed " + what + ": '" + s + "'");
  return v;
}

std::optional<int> opt_int(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<int>();
}

GeometricRationality parse_geo(const std::string& s) {
  if (s == "Rational") return GeometricRationality::Rational;
  if (s == "ConjecturallyIrrational") return GeometricRationality::ConjecturallyIrrational;
  if (s == "Irrational") return GeometricRationality::Irrational;
  throw InvalidInput("unknown geometric rationality '" + s + "'");
}

Tristate parse_tristate(const std::string& s) {
  if (s == "Yes") return Tristate::Yes;
  if (s == "No") return Tristate::No;
  if (s == "Unknown") return Tristate::Unknown;
  throw InvalidInput("unknown tristate '" + s + "'");
}

}  // namespace

FamilyId FamilyId::parse(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) throw InvalidInput("family id must look like m.n, got '" + text + "'");
  return {parse_int(text.substr(0, dot), "family id"), parse_int(text.substr(dot + 1), "family id")};
}

bool FanoFamilyRecord::in_table(const std::string& t) const {
  return std::find(tables.begin(), tables.end(), t) != tables.end();
}

std::string to_string(GeometricRationality g) {
  switch (g) {
    case GeometricRationality::Rational: return "Rational";
    case GeometricRationality::ConjecturallyIrrational: return "ConjecturallyIrrational";
    case GeometricRationality::Irrational: return "Irrational";
  }
  return {};
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::Yes: return "Yes";
    case Tristate::No: return "No";
    case Tristate::Unknown: return "Unknown";
  }
  return {};
}

Atlas Atlas::from_json(const std::string& text) {
  Atlas a;
  try {
    const json doc = json::parse(text);
    a.schema_ = doc.at("schema").get<std::string>();
    for (const auto& r : doc.at("rules"))
      a.rules_.push_back({r.at("id").get<std::string>(), r.at("citation").get<std::string>(),
                          r.at("statement").get<std::string>()});
    for (const auto& id : doc.at("recap_order")) a.recap_.push_back(FamilyId::parse(id.get<std::string>()));
    for (const auto& f : doc.at("families")) {
      FanoFamilyRecord r;
      r.id = FamilyId::parse(f.at("id").get<std::string>());
      r.iota = opt_int(f, "iota");
      r.degree = opt_int(f, "degree");
      r.genus = opt_int(f, "genus");
      r.h12 = f.at("h12").get<int>();
      r.rho_c = f.at("rho_c").get<int>();
      r.geometric_rationality = parse_geo(f.at("geometric_rationality").get<std::string>());
      r.s_lower = opt_int(f, "s_lower");
      r.s_upper = opt_int(f, "s_upper");
      r.exists_irrational_connected = parse_tristate(f.at("exists_irrational_connected").get<std::string>());
      r.source = f.value("source", json()).is_null() ? "" : f.at("source").get<std::string>();
      r.tables = f.value("tables", std::vector<std::string>{});
      r.description = f.value("description", "");
      a.records_.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed atlas data: ") + e.what());
  }
  std::sort(a.records_.begin(), a.records_.end(),
            [](const FanoFamilyRecord& x, const FanoFamilyRecord& y) { return x.id < y.id; });
  return a;
}

const Atlas& Atlas::builtin() {
  static const Atlas atlas = from_json(fanoreal_atlas_json);
  return atlas;
}

const FanoFamilyRecord& Atlas::lookup(const FamilyId& id) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), id,
                             [](const FanoFamilyRecord& r, const FamilyId& k) { return r.id < k; });
  if (it == records_.end() || it->id != id) throw UnknownFamily("no family " + id.str());
  return *it;
}

FanoFamilyRecord& Atlas::mutable_record(const FamilyId& id) {
  return const_cast<FanoFamilyRecord&>(lookup(id));
}

TableFilter TableFilter::from_pairs(const std::map<std::string, std::string>& pairs) {
  TableFilter f;
  for (const auto& [key, value] : pairs) {
    if (key == "s-gt" || key == "s_gt") {
      f.s_gt = parse_int(value, "s-gt value");
    } else if (key == "m") {
      f.m = parse_int(value, "m value");
    } else if (key == "table") {
      if (value != "1" && value != "2" && value != "4") throw InvalidInput("table must be 1, 2 or 4");
      f.table = value;
    } else {
      throw InvalidInput("unknown table filter '" + key + "'");
    }
  }
  return f;
}

std::vector<FanoFamilyRecord> Atlas::table(const TableFilter& filter) const {
  auto keep = [&](const FanoFamilyRecord& r) {
    if (filter.m && r.id.m != *filter.m) return false;
    if (filter.table && !r.in_table(*filter.table)) return false;
    return true;
  };
  std::vector<FanoFamilyRecord> out;
  if (filter.s_gt) {
    for (const FamilyId& id : recap_) {
      const auto& r = lookup(id);
      if (r.s_lower && *r.s_lower > *filter.s_gt && keep(r)) out.push_back(r);
    }
    return out;
  }
  for (const auto& r : records_)
    if (keep(r)) out.push_back(r);
  return out;
}

namespace {

constexpr int kFamilies[11] = {0, 17, 36, 31, 13, 3, 1, 1, 1, 1, 1};

void check_record(const FanoFamilyRecord& r, std::vector<Violation>& out) {
  const std::string id = r.id.str();
  auto bad = [&](const std::string& m) { out.push_back({id, m}); };
  if (r.id.m < 1 || r.id.m > 10 || r.id.n < 1 || r.id.n > kFamilies[r.id.m]) bad("not one of the 105 families");
  if (r.rho_c != r.id.m) bad("rho_c differs from m");
  if (r.h12 < 0) bad("negative h12");
  if (r.s_lower && r.s_upper && *r.s_lower > *r.s_upper) bad("s_lower exceeds s_upper");
  if (r.s_lower && *r.s_lower < 1) bad("s_lower below 1");
  if (r.s_upper) {
    const int st = smith_thom_bound({r.rho_c, std::nullopt, r.h12, std::nullopt});
    if (*r.s_upper > st)
      bad("s_upper " + std::to_string(*r.s_upper) + " exceeds the Smith-Thom bound " + std::to_string(st));
  }
  if ((r.s_lower || r.s_upper) && r.source.empty()) bad("s bounds without a source");
  if (r.in_table("4") && (!r.s_lower || *r.s_lower < 2)) bad("recap row without s_lower >= 2");
  if (r.s_upper && *r.s_upper == 1 && r.geometric_rationality != GeometricRationality::Rational)
    bad("s_upper = 1 recorded for a family that is not geometrically rational");
  if (r.s_upper == 1 && r.exists_irrational_connected == Tristate::Yes)
    bad("irrational connected member claimed although s = 1");
}

}  // namespace

std::vector<Violation> Atlas::consistency_check() const {
  std::vector<Violation> out;
  std::set<FamilyId> seen;
  for (const auto& r : records_) {
    if (!seen.insert(r.id).second) out.push_back({r.id.str(), "duplicate record"});
    check_record(r, out);
  }
  if (records_.size() != 105) out.push_back({"", "expected 105 families, found " + std::to_string(records_.size())});
  for (const FamilyId& id : recap_) {
    try {
      if (!lookup(id).in_table("4")) out.push_back({id.str(), "recap order lists a row not marked as table 4"});
    } catch (const UnknownFamily&) {
      out.push_back({id.str(), "recap order lists an unknown family"});
    }
  }
  std::set<std::string> citations;
  for (const auto& rule : rules_) {
    if (rule.citation.empty()) out.push_back({"", "rule " + rule.id + " has no citation"});
    if (!citations.insert(rule.citation).second) out.push_back({"", "duplicate citation " + rule.citation});
  }

  // Rule agreement and monotonicity over every evidence subset.
  const std::vector<Certificate> certs = {
      {CertificateKind::NonemptyRealLocus}, {CertificateKind::ConnectedRealLocus}, {CertificateKind::RealLine},
      {CertificateKind::RealConic},         {CertificateKind::RealTwistedCubic},   {CertificateKind::RealPicardRankOne}};
  const std::vector<NegativeFact> negs = {NegativeFact::EmptyRealLocus, NegativeFact::DisconnectedRealLocus,
                                          NegativeFact::NoRealLine, NegativeFact::NoRealConic,
                                          NegativeFact::NoRealTwistedCubic};
  const unsigned bits = static_cast<unsigned>(certs.size() + negs.size());
  for (const auto& r : records_) {
    if (r.tables.empty()) continue;
    std::vector<std::optional<Verdict>> verdicts(1u << bits);
    for (unsigned s = 0; s < (1u << bits); ++s) {
      Evidence e;
      for (unsigned b = 0; b < certs.size(); ++b)
        if (s >> b & 1u) e.certificates.push_back(certs[b]);
      for (unsigned b = 0; b < negs.size(); ++b)
        if (s >> (b + certs.size()) & 1u) e.negatives.push_back(negs[b]);
      try {
        verdicts[s] = decide(r.id, e);
      } catch (const InconsistentEvidence&) {
        continue;
      } catch (const std::exception& ex) {
        out.push_back({r.id.str(), std::string("decide failed: ") + ex.what()});
        continue;
      }
      const Verdict& v = *verdicts[s];
      if (v.status != VerdictStatus::Undetermined && !citations.count(v.rule))
        out.push_back({r.id.str(), "verdict cites '" + v.rule + "', which is not in the rule table"});
      if (v.status == VerdictStatus::NeedsCertificate && v.missing.empty())
        out.push_back({r.id.str(), "NeedsCertificate without missing certificates"});
    }
    for (unsigned s = 0; s < (1u << bits); ++s) {
      if (!verdicts[s]) continue;
      for (unsigned b = 0; b < bits; ++b) {
        const unsigned t = s | (1u << b);
        if (t == s || !verdicts[t]) continue;
        const auto a = verdicts[s]->status, c = verdicts[t]->status;
        const bool flip = (a == VerdictStatus::Rational && c == VerdictStatus::Irrational) ||
                          (a == VerdictStatus::Irrational && c == VerdictStatus::Rational);
        if (flip) out.push_back({r.id.str(), "adding evidence flips the verdict"});
      }
    }
  }
  // The main criterion realized over the data.
  for (const auto& r : records_) {
    if (r.geometric_rationality != GeometricRationality::Rational || r.s_upper != 1) continue;
    const Verdict v = decide(r.id, Evidence{{{CertificateKind::NonemptyRealLocus}}, {}});
    if (v.status != VerdictStatus::Rational) out.push_back({r.id.str(), "s = 1 with real points but not Rational"});
  }
  return out;
}

}  // namespace fanoreal
