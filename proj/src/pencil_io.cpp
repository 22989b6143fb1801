#include "fanoreal/pencil_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fanoreal/error.hpp"

namespace fanoreal {

using nlohmann::ordered_json;

namespace {

Rational entry(const ordered_json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidInput("matrix entries must be rational strings or integers");
}

SymmetricForm form(const ordered_json& rows, int n, const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw InvalidInput(std::string(name) + " must have n rows");
  std::vector<std::vector<Rational>> m;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InvalidInput(std::string(name) + " must have n columns");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(entry(v));
    m.push_back(std::move(r));
  }
  return SymmetricForm(std::move(m));
}

ordered_json form_json(const SymmetricForm& f) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : f.entries()) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(r);
  }
  return rows;
}

Rational det2(const std::vector<std::vector<Rational>>& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

}  // namespace

QuadricPencil parse_pencil(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw InvalidInput(std::string("pencil file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("q0") || !doc.contains("q1"))
    throw InvalidInput("pencil file needs the keys n, q0 and q1");
  if (!doc["n"].is_number_integer()) throw InvalidInput("n must be an integer");
  const int n = doc["n"].get<int>();
  if (n < 2) throw InvalidInput("n must be at least 2");
  return QuadricPencil(form(doc["q0"], n, "q0"), form(doc["q1"], n, "q1"));
}

QuadricPencil load_pencil(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pencil(ss.str());
}

std::string pencil_to_json(const QuadricPencil& p) {
  ordered_json doc;
  doc["n"] = p.n();
  doc["q0"] = form_json(p.q0);
  doc["q1"] = form_json(p.q1);
  return doc.dump(1);
}

std::string classification_json(const QuadricPencil& p) {
  const IsotopyClass c = classify(p);
  ordered_json doc;
  doc["schema"] = "fanoreal.pencil-class/1";
  doc["n"] = p.n();
  doc["class"] = c.parts;
  doc["k"] = c.k();
  doc["verdict"] = p.n() == 6 ? ordered_json(to_string(interpret(c, 6))) : ordered_json(nullptr);
  ordered_json roots = ordered_json::array();
  for (const PencilRoot& r : discriminant_roots(p)) {
    ordered_json j;
    switch (r.kind) {
      case PencilRoot::Kind::Exact:
        j["kind"] = "exact";
        j["value"] = to_string(r.lo);
        break;
      case PencilRoot::Kind::Interval:
        j["kind"] = "interval";
        j["lo"] = to_string(r.lo);
        j["hi"] = to_string(r.hi);
        break;
      case PencilRoot::Kind::Infinity:
        j["kind"] = "infinity";
        break;
    }
    j["multiplicity"] = r.multiplicity;
    roots.push_back(j);
  }
  doc["discriminant_roots"] = roots;
  return doc.dump(1);
}

long PencilGenerator::uniform(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng_() % span);
}

Rational PencilGenerator::nonzero_rational(long num, long den) {
  long p = 0;
  while (p == 0) p = uniform(-num, num);
  Rational q(p, uniform(1, den));
  q.canonicalize();
  return q;
}

QuadricPencil PencilGenerator::diagonal(int n) {
  for (;;) {
    std::vector<Rational> a, b, roots;
    for (int i = 0; i < n; ++i) {
      a.push_back(nonzero_rational(9, 4));
      b.push_back(nonzero_rational(9, 4));
      roots.push_back(-a.back() / b.back());
    }
    bool distinct = true;
    for (int i = 0; i < n && distinct; ++i)
      for (int j = i + 1; j < n; ++j)
        if (roots[i] == roots[j]) distinct = false;
    if (distinct) return QuadricPencil(SymmetricForm::diagonal(a), SymmetricForm::diagonal(b));
  }
}

std::vector<std::vector<Rational>> PencilGenerator::invertible_matrix(int n) {
  for (;;) {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (auto& row : m)
      for (auto& v : row) {
        v = Rational(uniform(-3, 3), uniform(1, 3));
        v.canonicalize();
      }
    // det(A)^2 = det(A^T A), and determinant() takes symmetric input.
    std::vector<std::vector<Rational>> ata(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) ata[i][j] += m[k][i] * m[k][j];
    if (determinant(SymmetricForm(ata)) != 0) return m;
  }
}

std::vector<std::vector<Rational>> PencilGenerator::pencil_change() {
  for (;;) {
    std::vector<std::vector<Rational>> m(2, std::vector<Rational>(2));
    for (auto& row : m)
      for (auto& v : row) {
        v = Rational(uniform(-5, 5), uniform(1, 4));
        v.canonicalize();
      }
    if (det2(m) != 0) return m;
  }
}

QuadricPencil PencilGenerator::generic(int n) { return congruent(diagonal(n), invertible_matrix(n)); }

QuadricPencil change_coordinates(const QuadricPencil& p, const std::vector<std::vector<Rational>>& m) {
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw InvalidInput("pencil change must be 2 x 2");
  if (det2(m) == 0) throw InvalidInput("pencil change must be invertible");
  return QuadricPencil(p.q0.combine(m[0][0], p.q1, m[0][1]), p.q0.combine(m[1][0], p.q1, m[1][1]));
}

QuadricPencil congruent(const QuadricPencil& p, const std::vector<std::vector<Rational>>& a) {
  return QuadricPencil(p.q0.congruence(a), p.q1.congruence(a));
}

}  // namespace fanoreal
