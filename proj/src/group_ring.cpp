#include "threefold/group_ring.hpp"

#include <sstream>
#include <vector>

namespace threefold {

GroupRingElement::GroupRingElement(const Word& w, std::int64_t coeff) { add(reduce(w), coeff); }

void GroupRingElement::add(const Word& w, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t GroupRingElement::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t GroupRingElement::augmentation() const {
  std::int64_t s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

GroupRingElement operator-(const GroupRingElement& a) { return -1 * a; }

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& [u, cu] : a.terms_)
    for (const auto& [v, cv] : b.terms_) out.add(concat(u, v), cu * cv);
  return out;
}

GroupRingElement operator*(std::int64_t s, const GroupRingElement& a) {
  GroupRingElement out;
  for (const auto& [w, c] : a.terms_) out.add(w, s * c);
  return out;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const std::int64_t m = c < 0 ? -c : c;
    if (m != 1 || w.empty()) os << m;
    if (!w.empty()) os << (m != 1 ? "*" : "") << threefold::to_string(w);
  }
  return os.str();
}

GroupRingElement fox_derivative(const Word& w, int gen) {
  // Sum over runs: prefix * d(x^e)/dx, where
  //   d(x^e)/dx = 1 + x + ... + x^(e-1)        for e > 0
  //             = -(x^-1 + x^-2 + ... + x^e)   for e < 0.
  GroupRingElement out;
  Word prefix;
  for (const Letter& l : w) {
    if (l.gen == gen) {
      if (l.exp > 0) {
        for (int m = 0; m < l.exp; ++m) out += GroupRingElement(concat(prefix, {{gen, m}}));
      } else {
        for (int m = 1; m <= -l.exp; ++m) out -= GroupRingElement(concat(prefix, {{gen, -m}}));
      }
    }
    prefix = concat(prefix, {l});
  }
  return out;
}

Eigen::MatrixXcd evaluate(const Word& w, std::span<const Eigen::MatrixXcd> images) {
  const Eigen::Index dim = images.empty() ? 1 : images[0].rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Letter& l : w) {
    const Eigen::MatrixXcd& g = images[static_cast<std::size_t>(l.gen)];
    const Eigen::MatrixXcd base = l.exp > 0 ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd(g.inverse());
    for (int k = 0; k < (l.exp > 0 ? l.exp : -l.exp); ++k) out = out * base;
  }
  return out;
}

Eigen::MatrixXcd evaluate(const GroupRingElement& e, std::span<const Eigen::MatrixXcd> images) {
  const Eigen::Index dim = images.empty() ? 1 : images[0].rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : e.terms()) out += static_cast<double>(c) * evaluate(w, images);
  return out;
}

}  // namespace threefold
