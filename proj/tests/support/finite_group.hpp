#pragma once

// Test-only exact arithmetic in finite groups given by presentations:
// HLT coset enumeration over the trivial subgroup, the resulting
// multiplication table, and integer group-ring elements on top of it.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "threefold/group_ring.hpp"
#include "threefold/presentations.hpp"

namespace threefold::testing {

class FiniteGroup {
 public:
  // Throws if enumeration exceeds max_cosets (group infinite or too large).
  explicit FiniteGroup(const GroupPresentation& p, int max_cosets = 2'000'000) : gens_(p.num_generators) {
    enumerate(p, max_cosets);
    build_multiplication();
  }

  int order() const { return static_cast<int>(mult_.size()); }
  int identity() const { return 0; }
  int multiply(int g, int h) const { return mult_[g][h]; }
  int inverse(int g) const { return inv_[g]; }
  int generator(int gen, int sign) const { return table_[0][col(gen, sign)]; }

  int element(const Word& w) const {
    int c = 0;
    for (const Letter& l : w)
      for (int k = 0; k < std::abs(l.exp); ++k) c = table_[c][col(l.gen, l.exp > 0 ? 1 : -1)];
    return c;
  }

  // Integer group-ring element as a dense coefficient vector.
  using Ring = std::vector<std::int64_t>;

  Ring ring(const GroupRingElement& e) const {
    Ring r(order(), 0);
    for (const auto& [w, c] : e.terms()) r[element(w)] += c;
    return r;
  }

  Ring ring_multiply(const Ring& a, const Ring& b) const {
    Ring out(order(), 0);
    for (int g = 0; g < order(); ++g) {
      if (!a[g]) continue;
      for (int h = 0; h < order(); ++h)
        if (b[h]) out[mult_[g][h]] += a[g] * b[h];
    }
    return out;
  }

  // Left regular permutation matrix of each generator, e_g -> e_{xg}.
  std::vector<Eigen::MatrixXcd> regular_representation() const {
    std::vector<Eigen::MatrixXcd> out;
    for (int gen = 0; gen < gens_; ++gen) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(order(), order());
      const int x = generator(gen, 1);
      for (int g = 0; g < order(); ++g) m(mult_[x][g], g) = 1.0;
      out.push_back(m);
    }
    return out;
  }

 private:
  int col(int gen, int sign) const { return 2 * gen + (sign > 0 ? 0 : 1); }
  static int inv_col(int c) { return c ^ 1; }

  static std::vector<int> letters(const Word& w, int /*gens*/) {
    std::vector<int> out;
    for (const Letter& l : w)
      for (int k = 0; k < std::abs(l.exp); ++k) out.push_back(2 * l.gen + (l.exp > 0 ? 0 : 1));
    return out;
  }

  int rep(int k) {
    int l = k;
    while (parent_[l] != l) l = parent_[l];
    while (parent_[k] != l) {
      const int next = parent_[k];
      parent_[k] = l;
      k = next;
    }
    return l;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    const int a = rep(k), b = rep(l);
    if (a == b) return;
    const int lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int g = queue[i];
      for (int x = 0; x < 2 * gens_; ++x) {
        const int d = table_[g][x];
        if (d < 0) continue;
        table_[d][inv_col(x)] = -1;
        const int mu = rep(g), nu = rep(d);
        if (table_[mu][x] >= 0) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][inv_col(x)] >= 0) {
          merge(mu, table_[nu][inv_col(x)], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][inv_col(x)] = mu;
        }
      }
    }
  }

  void define(int c, int x, int max_cosets) {
    if (static_cast<int>(table_.size()) >= max_cosets) throw std::runtime_error("coset limit exceeded");
    const int n = static_cast<int>(table_.size());
    table_.emplace_back(2 * gens_, -1);
    parent_.push_back(n);
    table_[c][x] = n;
    table_[n][inv_col(x)] = c;
  }

  void scan_and_fill(int a, const std::vector<int>& w, int max_cosets) {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inv_col(w[j])] >= 0) b = table_[b][inv_col(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][inv_col(w[i])] = f;
        return;
      }
      define(f, w[i], max_cosets);
    }
  }

  void enumerate(const GroupPresentation& p, int max_cosets) {
    table_.assign(1, std::vector<int>(2 * gens_, -1));
    parent_.assign(1, 0);
    std::vector<std::vector<int>> rels;
    for (const Word& r : p.relators) rels.push_back(letters(r, gens_));
    for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
      for (const auto& r : rels) {
        if (parent_[a] != a) break;
        scan_and_fill(a, r, max_cosets);
      }
      if (parent_[a] != a) continue;
      for (int x = 0; x < 2 * gens_; ++x)
        if (table_[a][x] < 0) define(a, x, max_cosets);
    }
    // Compact live cosets, keeping coset 0 as the identity.
    std::vector<int> index(table_.size(), -1);
    int n = 0;
    for (int a = 0; a < static_cast<int>(table_.size()); ++a)
      if (parent_[a] == a) index[a] = n++;
    std::vector<std::vector<int>> compact;
    for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
      if (parent_[a] != a) continue;
      std::vector<int> row(2 * gens_);
      for (int x = 0; x < 2 * gens_; ++x) row[x] = index[rep(table_[a][x])];
      compact.push_back(row);
    }
    table_ = std::move(compact);
  }

  void build_multiplication() {
    const int n = static_cast<int>(table_.size());
    // Spanning-tree words from the identity coset.
    std::vector<std::vector<int>> word(n);
    std::vector<bool> seen(n, false);
    std::vector<int> queue{0};
    seen[0] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int c = queue[i];
      for (int x = 0; x < 2 * gens_; ++x) {
        const int d = table_[c][x];
        if (!seen[d]) {
          seen[d] = true;
          word[d] = word[c];
          word[d].push_back(x);
          queue.push_back(d);
        }
      }
    }
    mult_.assign(n, std::vector<int>(n));
    inv_.assign(n, 0);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        int c = g;
        for (int x : word[h]) c = table_[c][x];
        mult_[g][h] = c;
        if (c == 0) inv_[g] = h;
      }
  }

  int gens_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
};

}  // namespace threefold::testing
