#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace threefold {

// One run x_gen^exp of a group word.
struct Letter {
  int gen = 0;
  int exp = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Words are stored as runs; a reduced word has no zero exponents and no
// two adjacent runs on the same generator.
using Word = std::vector<Letter>;

Word reduce(Word w);
Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);
Word power(const Word& w, int n);
bool is_reduced(const Word& w);
// Signed number of single letters, e.g. x^3 y^-1 has length 4.
int letter_count(const Word& w);
std::string to_string(const Word& w);

enum class Family { S3, Lens, Brieskorn, Torus3 };

struct FamilySpec {
  Family family = Family::S3;
  std::vector<int> params;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

std::string family_name(Family f);
// Accepts the names produced by family_name; throws ParameterError otherwise.
Family parse_family(const std::string& name);
std::string describe(const FamilySpec& spec);

struct GroupPresentation {
  int num_generators = 0;
  std::vector<Word> relators;
  std::string label;
  FamilySpec family;

  // Throws ValidationError if a generator index is out of range or a relator
  // is not reduced.
  void validate() const;
};

// Built-in presentations of pi_1 for the supported manifold families.
//   S3              <x | x>
//   Lens(p,q)       <x | x^p>
//   Brieskorn(p,q,r) genus-0 Seifert form <x1,x2,x3,h | h central,
//                   x1^p h^b1, x2^q h^b2, x3^r h^b3, x1 x2 x3> with
//                   b1 qr + b2 pr + b3 pq = 1. (2,3,5) uses the frozen
//                   two-generator fixture <x,y | x^2 = y^3 = (y^-1 x)^5>.
//   Torus3          <x,y,z | [x,y], [y,z], [z,x]>
GroupPresentation builtin_presentation(const FamilySpec& spec);
GroupPresentation builtin_presentation(Family family, std::vector<int> params = {});

// Exponent-sum (abelianization) matrix, one row per relator.
std::vector<std::vector<std::int64_t>> relation_matrix(const GroupPresentation& p);

// Invariant factors d_1 | d_2 | ... of an integer matrix, zeros dropped.
std::vector<std::int64_t> smith_invariant_factors(std::vector<std::vector<std::int64_t>> m);

struct HomologySummary {
  int betti_1 = 0;
  std::vector<std::int64_t> torsion_coefficients;

  friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

HomologySummary homology_h1(const GroupPresentation& p);

}  // namespace threefold
