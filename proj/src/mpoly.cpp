#include "fanoreal/mpoly.hpp"

#include <algorithm>
#include <map>

#include "fanoreal/error.hpp"

namespace fanoreal {

MultiPolynomial::MultiPolynomial(int nvars, std::vector<Monomial> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars_ <= 0) throw InvalidInput("polynomial needs at least one variable");
  std::vector<const Monomial*> refs;
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exps.size()) != nvars_)
      throw InvalidInput("exponent vector length " + std::to_string(t.exps.size()) + " != nvars " +
                         std::to_string(nvars_));
    if (std::any_of(t.exps.begin(), t.exps.end(), [](int e) { return e < 0; }))
      throw InvalidInput("negative exponent");
    if (t.coeff.is_empty()) throw InvalidInput("coefficient interval with lo > hi");
    refs.push_back(&t);
  }
  root_ = build(refs, 0, nvars_);
}

int MultiPolynomial::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

MultiPolynomial::Node MultiPolynomial::build(const std::vector<const Monomial*>& terms, int var, int nvars) {
  Node node;
  while (var < nvars &&
         std::all_of(terms.begin(), terms.end(), [var](const Monomial* t) { return t->exps[var] == 0; }))
    ++var;
  if (var == nvars) {
    node.constant = Interval(0.0);
    for (const Monomial* t : terms) node.constant = node.constant + t->coeff;
    return node;
  }
  std::map<int, std::vector<const Monomial*>, std::greater<>> groups;
  for (const Monomial* t : terms) groups[t->exps[var]].push_back(t);
  node.var = var;
  for (const auto& [e, group] : groups) {
    node.exps.push_back(e);
    node.coeffs.push_back(build(group, var + 1, nvars));
  }
  return node;
}

Interval MultiPolynomial::eval_node(const Node& node, const std::vector<Interval>& box) {
  if (node.var < 0) return node.constant;
  const Interval& x = box[node.var];
  Interval acc = eval_node(node.coeffs[0], box);
  for (std::size_t k = 1; k < node.exps.size(); ++k)
    acc = acc * pow(x, node.exps[k - 1] - node.exps[k]) + eval_node(node.coeffs[k], box);
  if (node.exps.back() > 0) acc = acc * pow(x, node.exps.back());
  return acc;
}

Interval MultiPolynomial::eval(const std::vector<Interval>& box) const {
  if (static_cast<int>(box.size()) != nvars_) throw InvalidInput("box dimension does not match polynomial");
  if (terms_.empty()) return Interval(0.0);
  return eval_node(root_, box);
}

Interval MultiPolynomial::eval_expanded(const std::vector<Interval>& box) const {
  if (static_cast<int>(box.size()) != nvars_) throw InvalidInput("box dimension does not match polynomial");
  Interval sum(0.0);
  for (const auto& t : terms_) {
    Interval m = t.coeff;
    for (int i = 0; i < nvars_; ++i)
      if (t.exps[i]) m = m * pow(box[i], t.exps[i]);
    sum = sum + m;
  }
  return sum;
}

}  // namespace fanoreal
