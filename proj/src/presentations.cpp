#include "threefold/presentations.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

#include "threefold/errors.hpp"

namespace threefold {

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return reduce(std::move(out));
}

Word power(const Word& w, int n) {
  const Word base = n >= 0 ? w : inverse(w);
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
  return reduce(std::move(out));
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].exp == 0) return false;
    if (i > 0 && w[i].gen == w[i - 1].gen) return false;
  }
  return true;
}

int letter_count(const Word& w) {
  int n = 0;
  for (const Letter& l : w) n += std::abs(l.exp);
  return n;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'g' << w[i].gen;
    if (w[i].exp != 1) os << '^' << w[i].exp;
  }
  return os.str();
}

std::string family_name(Family f) {
  switch (f) {
    case Family::S3: return "S3";
    case Family::Lens: return "Lens";
    case Family::Brieskorn: return "Brieskorn";
    case Family::Torus3: return "Torus3";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::S3, Family::Lens, Family::Brieskorn, Family::Torus3})
    if (family_name(f) == name) return f;
  throw ParameterError("unknown manifold family '" + name + "'");
}

std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  os << family_name(spec.family);
  if (!spec.params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < spec.params.size(); ++i) os << (i ? "," : "") << spec.params[i];
    os << ')';
  }
  return os.str();
}

void GroupPresentation::validate() const {
  if (num_generators <= 0) throw ValidationError("presentation needs at least one generator");
  for (std::size_t r = 0; r < relators.size(); ++r) {
    for (const Letter& l : relators[r]) {
      if (l.gen < 0 || l.gen >= num_generators)
        throw ValidationError("relator " + std::to_string(r) + " uses generator " +
                              std::to_string(l.gen) + " out of range");
    }
    if (!is_reduced(relators[r]))
      throw ValidationError("relator " + std::to_string(r) + " is not reduced");
  }
}

namespace {

void expect_count(const FamilySpec& spec, std::size_t n) {
  if (spec.params.size() != n)
    throw ParameterError(family_name(spec.family) + " expects " + std::to_string(n) +
                         " parameters, got " + std::to_string(spec.params.size()));
}

// Extended Euclid: returns g = gcd(a,b) and sets a*x + b*y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  std::int64_t x1 = 0, y1 = 0;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Word commutator(int a, int b) { return {{a, 1}, {b, 1}, {a, -1}, {b, -1}}; }

GroupPresentation brieskorn(int p, int q, int r) {
  GroupPresentation g;
  g.label = "Brieskorn(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
  g.family = {Family::Brieskorn, {p, q, r}};
  if (p == 2 && q == 3 && r == 5) {
    // x^2 = y^3 = z^5 = xyz with z = y^-1 x eliminated.
    g.num_generators = 2;
    g.relators = {
        {{0, 2}, {1, -3}},
        reduce(concat(power({{1, -1}, {0, 1}}, 5), {{0, -2}})),
    };
    return g;
  }
  // b1*qr + b2*pr + b3*pq = 1: first u*qr + v*pr = r, then s*r + t*pq = 1.
  std::int64_t u = 0, v = 0, s = 0, t = 0;
  ext_gcd(std::int64_t{q} * r, std::int64_t{p} * r, u, v);
  ext_gcd(r, std::int64_t{p} * q, s, t);
  const int b[3] = {static_cast<int>(s * u), static_cast<int>(s * v), static_cast<int>(t)};
  const int order[3] = {p, q, r};
  constexpr int h = 3;
  g.num_generators = 4;
  for (int i = 0; i < 3; ++i) g.relators.push_back(commutator(i, h));
  for (int i = 0; i < 3; ++i) g.relators.push_back(reduce({{i, order[i]}, {h, b[i]}}));
  g.relators.push_back({{0, 1}, {1, 1}, {2, 1}});
  return g;
}

}  // namespace

GroupPresentation builtin_presentation(Family family, std::vector<int> params) {
  return builtin_presentation(FamilySpec{family, std::move(params)});
}

GroupPresentation builtin_presentation(const FamilySpec& spec) {
  GroupPresentation g;
  g.family = spec;
  switch (spec.family) {
    case Family::S3:
      expect_count(spec, 0);
      g.num_generators = 1;
      g.relators = {{{0, 1}}};
      g.label = "S3";
      break;
    case Family::Lens: {
      expect_count(spec, 2);
      const int p = spec.params[0], q = spec.params[1];
      if (p < 2) throw ParameterError("Lens(p,q) requires p >= 2");
      if (std::gcd(p, q) != 1) throw ParameterError("Lens(p,q) requires gcd(p,q) = 1");
      g.num_generators = 1;
      g.relators = {{{0, p}}};
      g.label = describe(spec);
      break;
    }
    case Family::Brieskorn: {
      expect_count(spec, 3);
      const int p = spec.params[0], q = spec.params[1], r = spec.params[2];
      if (p < 2 || q < 2 || r < 2) throw ParameterError("Brieskorn(p,q,r) requires p,q,r >= 2");
      if (std::gcd(p, q) != 1 || std::gcd(q, r) != 1 || std::gcd(p, r) != 1)
        throw ParameterError("Brieskorn(p,q,r) requires pairwise coprime parameters");
      g = brieskorn(p, q, r);
      if (homology_h1(g) != HomologySummary{})
        throw ParameterError("internal: Brieskorn presentation is not a homology sphere");
      break;
    }
    case Family::Torus3:
      expect_count(spec, 0);
      g.num_generators = 3;
      g.relators = {commutator(0, 1), commutator(1, 2), commutator(2, 0)};
      g.label = "Torus3";
      break;
  }
  g.validate();
  return g;
}

std::vector<std::vector<std::int64_t>> relation_matrix(const GroupPresentation& p) {
  std::vector<std::vector<std::int64_t>> m(p.relators.size(),
                                           std::vector<std::int64_t>(p.num_generators, 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const Letter& l : p.relators[r]) m[r][l.gen] += l.exp;
  return m;
}

std::vector<std::int64_t> smith_invariant_factors(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || std::abs(m[i][j]) < std::abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Enforce divisibility of the remaining block by the pivot.
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(std::abs(m[t][t]));
    ++t;
  }
  return diag;
}

HomologySummary homology_h1(const GroupPresentation& p) {
  const auto factors = smith_invariant_factors(relation_matrix(p));
  HomologySummary h;
  h.betti_1 = p.num_generators - static_cast<int>(factors.size());
  for (const std::int64_t d : factors)
    if (d > 1) h.torsion_coefficients.push_back(d);
  return h;
}

}  // namespace threefold
