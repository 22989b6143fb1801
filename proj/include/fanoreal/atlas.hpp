#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fanoreal {

/// Family number m.n of a smooth Fano threefold (m = Picard rank over C).
struct FamilyId {
  int m = 0;
  int n = 0;
  /// Parses "m.n"; throws InvalidInput on malformed text (not on unknown ids).
  static FamilyId parse(const std::string& text);
  std::string str() const { return std::to_string(m) + "." + std::to_string(n); }
  friend auto operator<=>(const FamilyId&, const FamilyId&) = default;
};

enum class GeometricRationality { Rational, ConjecturallyIrrational, Irrational };
enum class Tristate { Yes, No, Unknown };

struct FanoFamilyRecord {
  FamilyId id;
  std::optional<int> iota;
  std::optional<int> degree;
  std::optional<int> genus;
  int h12 = 0;
  int rho_c = 0;
  GeometricRationality geometric_rationality = GeometricRationality::Rational;
  std::optional<int> s_lower;
  std::optional<int> s_upper;
  Tristate exists_irrational_connected = Tristate::Unknown;
  std::string source;                 // result establishing the s bounds
  std::vector<std::string> tables;    // "1", "2", "4": tables listing this family
  std::string description;

  bool in_table(const std::string& t) const;
  friend bool operator==(const FanoFamilyRecord&, const FanoFamilyRecord&) = default;
};

enum class CertificateKind {
  NonemptyRealLocus,
  ConnectedRealLocus,
  RealLine,
  RealConic,
  RealTwistedCubic,
  RealPicardRankOne,
  RealPicardRank,
};

struct Certificate {
  CertificateKind kind;
  int value = 0;  // only for RealPicardRank
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class NegativeFact { EmptyRealLocus, DisconnectedRealLocus, NoRealLine, NoRealConic, NoRealTwistedCubic };

struct Evidence {
  std::vector<Certificate> certificates;
  std::vector<NegativeFact> negatives;

  bool has(CertificateKind k) const;
  bool has(NegativeFact f) const;
  /// Comma-separated tokens: nonempty, connected, line, conic, twisted-cubic,
  /// picard-one, picard=N, empty, disconnected, no-line, no-conic,
  /// no-twisted-cubic. Throws InvalidInput on unknown tokens.
  static Evidence parse(const std::string& text);
};

enum class VerdictStatus { Rational, Irrational, NeedsCertificate, Undetermined };

struct Verdict {
  VerdictStatus status = VerdictStatus::Undetermined;
  std::vector<CertificateKind> missing;  // for NeedsCertificate
  std::string rule;                       // citation, empty only when Undetermined
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct RuleEntry {
  std::string id;
  std::string citation;
  std::string statement;
};

struct TableFilter {
  std::optional<int> s_gt;            // recap-table rows with s_lower > value
  std::optional<int> m;               // Picard rank over C
  std::optional<std::string> table;   // "1", "2" or "4"
  /// Builds a filter from key/value pairs; throws InvalidInput on an
  /// unknown key or a malformed value.
  static TableFilter from_pairs(const std::map<std::string, std::string>& pairs);
};

struct Violation {
  std::string family;  // empty for global problems
  std::string message;
};

class Atlas {
 public:
  /// Data compiled into the library.
  static const Atlas& builtin();
  /// Throws InvalidInput on malformed data.
  static Atlas from_json(const std::string& text);

  const std::vector<FanoFamilyRecord>& records() const { return records_; }
  const std::vector<RuleEntry>& rules() const { return rules_; }
  const std::vector<FamilyId>& recap_order() const { return recap_; }
  const std::string& schema() const { return schema_; }

  /// Throws UnknownFamily.
  const FanoFamilyRecord& lookup(const FamilyId& id) const;
  const FanoFamilyRecord& lookup(const std::string& id) const { return lookup(FamilyId::parse(id)); }

  /// Rationality verdict under the given evidence. Throws UnknownFamily or
  /// InconsistentEvidence (contradictory facts, or applicable rules that
  /// disagree).
  Verdict decide(const FamilyId& id, const Evidence& evidence) const;

  /// Records in table order (recap order when s_gt is set).
  std::vector<FanoFamilyRecord> table(const TableFilter& filter = {}) const;

  /// Record invariants, bounds against the Smith-Thom inequality, rule
  /// citations, and rule agreement over all evidence subsets for the
  /// tabulated families. Empty when the data is consistent.
  std::vector<Violation> consistency_check() const;

  /// Mutable access for fault-injection tests.
  FanoFamilyRecord& mutable_record(const FamilyId& id);

 private:
  std::string schema_;
  std::vector<FanoFamilyRecord> records_;
  std::vector<RuleEntry> rules_;
  std::vector<FamilyId> recap_;
};

std::string to_string(GeometricRationality g);
std::string to_string(Tristate t);
std::string to_string(CertificateKind k);
std::string to_string(NegativeFact f);
std::string to_string(VerdictStatus s);
std::string to_string(const Certificate& c);

}  // namespace fanoreal
