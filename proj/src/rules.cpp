#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "fanoreal/atlas.hpp"
#include "fanoreal/error.hpp"

namespace fanoreal {

namespace {

using K = CertificateKind;
using N = NegativeFact;

struct Outcome {
  enum Kind { Silent, Fires, Needs } kind = Silent;
  VerdictStatus status = VerdictStatus::Undetermined;
  std::vector<K> missing;
};

Outcome fires(VerdictStatus s) { return {Outcome::Fires, s, {}}; }
Outcome needs(std::vector<K> m) { return {Outcome::Needs, VerdictStatus::NeedsCertificate, std::move(m)}; }
Outcome silent() { return {}; }

bool is(const FamilyId& id, std::initializer_list<const char*> ids) {
  for (const char* s : ids)
    if (FamilyId::parse(s) == id) return true;
  return false;
}

bool picard_one(const Evidence& e) {
  if (e.has(K::RealPicardRankOne)) return true;
  for (const auto& c : e.certificates)
    if (c.kind == K::RealPicardRank && c.value == 1) return true;
  return false;
}

// Nonempty plus one curve certificate; the negative fact rules it out.
Outcome curve_rule(const Evidence& e, K curve, N none) {
  if (e.has(none)) return fires(VerdictStatus::Irrational);
  std::vector<K> missing;
  if (!e.has(K::NonemptyRealLocus)) missing.push_back(K::NonemptyRealLocus);
  if (!e.has(curve)) missing.push_back(curve);
  if (missing.empty()) return fires(VerdictStatus::Rational);
  return needs(std::move(missing));
}

Outcome nonempty_rule(const Evidence& e) {
  if (e.has(K::NonemptyRealLocus)) return fires(VerdictStatus::Rational);
  return needs({K::NonemptyRealLocus});
}

bool is_product(const FamilyId& id) {
  return id.m >= 7 || is(id, {"3.27", "3.28", "4.10", "5.3", "6.1"});
}

Outcome apply(const std::string& rule, const FanoFamilyRecord& r, const Evidence& e) {
  const FamilyId& id = r.id;
  if (rule == "empty-locus") return e.has(N::EmptyRealLocus) ? fires(VerdictStatus::Irrational) : silent();
  if (rule == "geometrically-irrational")
    return r.geometric_rationality == GeometricRationality::Irrational ? fires(VerdictStatus::Irrational) : silent();
  if (rule == "kp-1") return is(id, {"1.15"}) ? fires(VerdictStatus::Rational) : silent();
  if (rule == "kp-2") return is(id, {"1.6", "1.10", "1.16", "1.17"}) ? nonempty_rule(e) : silent();
  if (rule == "kp-3") return is(id, {"1.14"}) ? curve_rule(e, K::RealLine, N::NoRealLine) : silent();
  if (rule == "kp-4") return is(id, {"1.8"}) ? curve_rule(e, K::RealTwistedCubic, N::NoRealTwistedCubic) : silent();
  if (rule == "kp-5") return is(id, {"1.9"}) ? curve_rule(e, K::RealConic, N::NoRealConic) : silent();
  if (rule == "kp-6") return is(id, {"2.21", "2.32"}) ? nonempty_rule(e) : silent();
  if (rule == "kp-7") {
    if (!is(id, {"2.12"})) return silent();
    return picard_one(e) ? fires(VerdictStatus::Irrational) : needs({K::RealPicardRankOne});
  }
  if (rule == "x18")
    return is(id, {"1.9"}) && e.has(K::NonemptyRealLocus) ? fires(VerdictStatus::Rational) : silent();
  if (rule == "main-criterion") {
    if (r.geometric_rationality != GeometricRationality::Rational || r.s_upper != 1) return silent();
    return nonempty_rule(e);
  }
  if (rule == "product") {
    if (!is_product(id)) return silent();
    if (e.has(N::DisconnectedRealLocus)) return fires(VerdictStatus::Irrational);
    std::vector<K> missing;
    if (!e.has(K::NonemptyRealLocus)) missing.push_back(K::NonemptyRealLocus);
    if (!e.has(K::ConnectedRealLocus)) missing.push_back(K::ConnectedRealLocus);
    if (missing.empty()) return fires(VerdictStatus::Rational);
    return needs(std::move(missing));
  }
  if (rule == "pi0-invariance")
    return e.has(N::DisconnectedRealLocus) ? fires(VerdictStatus::Irrational) : silent();
  throw InvariantViolation("rule table names an unknown rule '" + rule + "'");
}

// Adds implied facts and rejects contradictions.
Evidence close(const FanoFamilyRecord& r, Evidence e) {
  const bool real_point = e.has(N::DisconnectedRealLocus) || e.has(K::RealLine) || e.has(K::RealConic) ||
                          e.has(K::RealTwistedCubic);
  if (real_point && !e.has(K::NonemptyRealLocus)) e.certificates.push_back({K::NonemptyRealLocus});
  auto conflict = [](const std::string& what) { throw InconsistentEvidence(what); };
  if (e.has(K::NonemptyRealLocus) && e.has(N::EmptyRealLocus)) conflict("real locus both empty and nonempty");
  if (e.has(K::ConnectedRealLocus) && e.has(N::DisconnectedRealLocus))
    conflict("real locus both connected and disconnected");
  if (e.has(K::RealLine) && e.has(N::NoRealLine)) conflict("real line both present and absent");
  if (e.has(K::RealConic) && e.has(N::NoRealConic)) conflict("real conic both present and absent");
  if (e.has(K::RealTwistedCubic) && e.has(N::NoRealTwistedCubic))
    conflict("real twisted cubic both present and absent");
  std::set<int> ranks;
  if (e.has(K::RealPicardRankOne)) ranks.insert(1);
  for (const auto& c : e.certificates)
    if (c.kind == K::RealPicardRank) ranks.insert(c.value);
  if (ranks.size() > 1) conflict("several real Picard ranks given");
  if (!ranks.empty() && (*ranks.begin() < 1 || *ranks.begin() > r.rho_c))
    conflict("real Picard rank " + std::to_string(*ranks.begin()) + " outside [1, " + std::to_string(r.rho_c) +
             "]");
  return e;
}

}  // namespace

bool Evidence::has(CertificateKind k) const {
  return std::any_of(certificates.begin(), certificates.end(), [&](const Certificate& c) { return c.kind == k; });
}

bool Evidence::has(NegativeFact f) const {
  return std::find(negatives.begin(), negatives.end(), f) != negatives.end();
}

Evidence Evidence::parse(const std::string& text) {
  Evidence e;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    if (tok == "nonempty") e.certificates.push_back({K::NonemptyRealLocus});
    else if (tok == "connected") e.certificates.push_back({K::ConnectedRealLocus});
    else if (tok == "line") e.certificates.push_back({K::RealLine});
    else if (tok == "conic") e.certificates.push_back({K::RealConic});
    else if (tok == "twisted-cubic") e.certificates.push_back({K::RealTwistedCubic});
    else if (tok == "picard-one") e.certificates.push_back({K::RealPicardRankOne});
    else if (tok.rfind("picard=", 0) == 0) {
      const std::string v = tok.substr(7);
      int n = 0;
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
      if (ec != std::errc() || p != v.data() + v.size()) throw InvalidInput("malformed evidence token '" + tok + "'");
      e.certificates.push_back({K::RealPicardRank, n});
    } else if (tok == "empty") e.negatives.push_back(N::EmptyRealLocus);
    else if (tok == "disconnected") e.negatives.push_back(N::DisconnectedRealLocus);
    else if (tok == "no-line") e.negatives.push_back(N::NoRealLine);
    else if (tok == "no-conic") e.negatives.push_back(N::NoRealConic);
    else if (tok == "no-twisted-cubic") e.negatives.push_back(N::NoRealTwistedCubic);
    else throw InvalidInput("unknown evidence token '" + tok + "'");
  }
  return e;
}

Verdict Atlas::decide(const FamilyId& id, const Evidence& evidence) const {
  const FanoFamilyRecord& r = lookup(id);
  const Evidence e = close(r, evidence);
  std::optional<Verdict> decided;
  std::optional<Verdict> pending;
  for (const RuleEntry& rule : rules_) {
    Outcome o = apply(rule.id, r, e);
    if (o.kind == Outcome::Fires) {
      if (!decided) {
        decided = Verdict{o.status, {}, rule.citation};
      } else if (decided->status != o.status) {
        throw InconsistentEvidence(decided->rule + " gives " + to_string(decided->status) + " but " +
                                   rule.citation + " gives " + to_string(o.status));
      }
    } else if (o.kind == Outcome::Needs && !pending) {
      pending = Verdict{VerdictStatus::NeedsCertificate, std::move(o.missing), rule.citation};
    }
  }
  if (decided) return *decided;
  if (pending) return *pending;
  return {};
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case K::NonemptyRealLocus: return "NonemptyRealLocus";
    case K::ConnectedRealLocus: return "ConnectedRealLocus";
    case K::RealLine: return "RealLine";
    case K::RealConic: return "RealConic";
    case K::RealTwistedCubic: return "RealTwistedCubic";
    case K::RealPicardRankOne: return "RealPicardRankOne";
    case K::RealPicardRank: return "RealPicardRank";
  }
  return {};
}

std::string to_string(const Certificate& c) {
  if (c.kind == K::RealPicardRank) return "RealPicardRank(" + std::to_string(c.value) + ")";
  return to_string(c.kind);
}

std::string to_string(NegativeFact f) {
  switch (f) {
    case N::EmptyRealLocus: return "EmptyRealLocus";
    case N::DisconnectedRealLocus: return "DisconnectedRealLocus";
    case N::NoRealLine: return "NoRealLine";
    case N::NoRealConic: return "NoRealConic";
    case N::NoRealTwistedCubic: return "NoRealTwistedCubic";
  }
  return {};
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Rational: return "Rational";
    case VerdictStatus::Irrational: return "Irrational";
    case VerdictStatus::NeedsCertificate: return "NeedsCertificate";
    case VerdictStatus::Undetermined: return "Undetermined";
  }
  return {};
}

}  // namespace fanoreal
