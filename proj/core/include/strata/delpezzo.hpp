#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace strata {

/// A class d H - sum n_i E_i on the degree-5 del Pezzo surface.
struct DPClass {
  long long d = 0;
  std::array<long long, 4> n{};
  friend bool operator==(const DPClass&, const DPClass&) = default;
};

std::string dp_string(const DPClass& a);
/// Parses "d,n1,n2,n3,n4". Throws InputError.
DPClass parse_dp_class(const std::string& text);

/// d d' - sum n_i n_i'.
long long dp_pairing(const DPClass& a, const DPClass& b);
/// E_1..E_4, then H - E_i - E_j for i < j.
std::vector<DPClass> dp_minus_one_curves();
/// Positive against all ten (-1)-curves.
bool dp_is_ample(const DPClass& a);
DPClass dp_anticanonical();

/// Quadratic transformation based at a triple of distinct indices in 1..4.
DPClass cremona(const DPClass& a, std::array<int, 3> triple);
/// Swaps E_i and E_j (1-based).
DPClass transpose(const DPClass& a, int i, int j);

/// Generators s12, s23, s34 (transpositions) and c123 (Cremona).
inline constexpr int kWeylGenerators = 4;
std::string weyl_generator_name(int g);
DPClass apply_generator(const DPClass& a, int g);

/// A group element as a 5x5 integer matrix on (d; n_1..n_4) with its
/// shortlex-least word (generators applied left to right).
struct WeylElement {
  std::vector<int> word;
  std::array<std::array<long long, 5>, 5> matrix{};
  DPClass apply(const DPClass& a) const;
  std::string word_string() const;  ///< "e" for the identity
};

/// All elements, in shortlex order of their words.
const std::vector<WeylElement>& weyl_group();

struct Normalized {
  DPClass cls;
  std::vector<int> witness;
  bool strict = false;  ///< the strict inequalities were required and hold
};

/// Sorts the n_i descending, applies c123 and asserts n_i + n_j + n_4 <= d
/// for distinct i, j in {1,2,3}, strictly when no two disjoint (-1)-curves
/// have equal degree against a. Throws InputError if a is not ample and
/// InvariantViolation if the inequalities fail.
Normalized dp_normalize(const DPClass& a);

struct NAlpha {
  bool feasible = false;
  long long N = 0;
  std::size_t argmax = 0;  ///< index into weyl_group()
  DPClass image;
};

/// Maximum of the general-position M (v = 3) over the Weyl orbit of a,
/// ties broken by the shortlex-least word.
NAlpha n_alpha(const DPClass& a);

/// Ample classes drawn with a seeded generator: d in [1, max_degree],
/// n_i in [0, d], rejected unless ample.
std::vector<DPClass> random_ample_classes(std::uint64_t seed, std::size_t count,
                                          long long max_degree = 40);

}  // namespace strata
