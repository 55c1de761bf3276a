#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "threefold/presentations.hpp"

namespace threefold {

// Finite Z-linear combination of reduced words in the free group.
// Zero coefficients are never stored.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const Word& w, std::int64_t coeff = 1);

  static GroupRingElement one() { return GroupRingElement(Word{}); }

  const std::map<Word, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(const Word& w) const;
  // Sum of coefficients (image under the trivial representation).
  std::int64_t augmentation() const;

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator-(const GroupRingElement& a);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(std::int64_t s, const GroupRingElement& a);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

  std::string to_string() const;

 private:
  void add(const Word& w, std::int64_t c);
  std::map<Word, std::int64_t> terms_;
};

// Left-module Fox derivative d w / d x_gen in Z[F]:
//   d(uv) = du + u dv,  d x_j / d x_j = 1,  d x_j^-1 / d x_j = -x_j^-1.
GroupRingElement fox_derivative(const Word& w, int gen);

// Image of an element under a matrix representation; images[i] is the
// matrix of generator i (must be invertible).
Eigen::MatrixXcd evaluate(const GroupRingElement& e, std::span<const Eigen::MatrixXcd> images);
Eigen::MatrixXcd evaluate(const Word& w, std::span<const Eigen::MatrixXcd> images);

}  // namespace threefold
