#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace chevexp {

enum class SimpleType { A, B, C, D, E, F, G };

SimpleType parse_type(char c);
char type_char(SimpleType t);

using RootVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// A reduced irreducible root system in a fixed integer lattice. Positive
/// roots are ordered by (height, lexicographic coefficient vector); every
/// downstream convention (structure-constant signs, basis order, triangular
/// solves) keys off this one total order.
class RootSystem {
 public:
  RootSystem(SimpleType type, int rank);

  SimpleType type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const;
  int ambient_dim() const { return static_cast<int>(simple_[0].size()); }

  int num_positive() const { return static_cast<int>(positive_.size()); }
  const RootVec& simple_root(int i) const { return simple_[i]; }
  const RootVec& positive_root(int i) const { return positive_[i]; }
  /// Expansion of positive root i over the simple roots (nonnegative ints).
  const RootVec& simple_coords(int i) const { return coords_[i]; }
  int height(int i) const { return height_[i]; }
  int max_height() const { return height_.back(); }

  /// Index of +root in the positive order, if coords describe a root.
  std::optional<int> index_of_coords(const RootVec& coords) const;
  /// Positive-order index of simple root i (the order is lexicographic, so
  /// this is not i itself).
  int simple_root_index(int i) const { return simple_index_[i]; }
  /// Looks up alpha + beta (by positive indices); nullopt if not a root.
  std::optional<int> sum_index(int i, int j) const;
  /// Looks up alpha - beta as a signed root: (index, sign) with sign +1 when
  /// alpha - beta is positive, -1 when negative; nullopt if not a root.
  std::optional<std::pair<int, int>> difference(int i, int j) const;

  /// W-invariant pairing on the ambient lattice (uniformly scaled).
  std::int64_t dot(const RootVec& a, const RootVec& b) const;
  std::int64_t norm2(int i) const { return dot(positive_[i], positive_[i]); }
  /// Cartan pairing <alpha_i, alpha_j^vee> = 2(a_i, a_j)/(a_j, a_j).
  const Eigen::MatrixXi& cartan_matrix() const { return cartan_; }
  /// <positive root i, simple coroot j>.
  int pairing_with_simple_coroot(int i, int j) const { return pairing_(i, j); }
  /// Integer coordinates of coroot i over the simple coroots.
  const RootVec& coroot_coords(int i) const { return coroot_coords_[i]; }

  /// Largest r >= 0 with beta - r*alpha a root (alpha, beta positive ids).
  int string_down_length(int alpha, int beta) const;

 private:
  SimpleType type_;
  int rank_;
  std::vector<RootVec> simple_;
  std::vector<RootVec> positive_;
  std::vector<RootVec> coords_;
  std::vector<int> height_;
  std::map<std::vector<std::int64_t>, int> coord_index_;
  std::vector<int> simple_index_;
  Eigen::MatrixXi cartan_;
  Eigen::MatrixXi pairing_;
  std::vector<RootVec> coroot_coords_;
};

RootSystem build_root_system(SimpleType type, int rank);
RootSystem build_root_system(const std::string& label);  // e.g. "G2", "E8"

/// Exponents computed from the height distribution of the positive roots
/// (the conjugate partition), ascending.
std::vector<int> weyl_exponents(const RootSystem& rs);

int coxeter_number(const RootSystem& rs);
std::set<long> bad_primes(const RootSystem& rs);
bool is_good_prime(const RootSystem& rs, long p);
/// Good, and for the A_n row of the distinguished isogeny types (SL_{n+1})
/// additionally p does not divide n+1.
bool is_separably_good(const RootSystem& rs, long p);

/// Reference values: exponents, bad primes and Coxeter number per type,
/// tabulated independently of the height computation.
struct RootSystemFacts {
  std::vector<int> exponents;
  std::set<long> bad_primes;
  int coxeter_number;
};
RootSystemFacts tabulated_facts(SimpleType type, int rank);

}  // namespace chevexp
