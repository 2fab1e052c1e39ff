#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chevexp/linalg.hpp"
#include "chevexp/rootdata.hpp"

namespace chevexp {

/// Thrown when an internal consistency cross-check fails; callers treat it
/// as a defect, never as bad input.
struct DefectError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Scalar-ring handles used to map integer/rational constants into the ring
/// that a coordinate vector lives over.
template <class S>
struct Ring;

template <>
struct Ring<Rat> {
  long characteristic() const { return 0; }
  Rat from_int(long v) const { return Rat(v); }
  Rat from_rat(const Rat& r) const { return r; }
};

template <>
struct Ring<Fq> {
  FqFieldPtr field;
  long characteristic() const { return field->p(); }
  Fq from_int(long v) const { return Fq(field, v); }
  Fq from_rat(const Rat& r) const {
    return Fq(field, reduce_mod_p(r, field->p()).v);
  }
};

template <>
struct Ring<Unram> {
  UnramFieldPtr field;
  long characteristic() const { return 0; }
  Unram from_int(long v) const { return Unram(field, Rat(v)); }
  Unram from_rat(const Rat& r) const { return Unram(field, r); }
};

inline Ring<Rat> rat_ring() { return {}; }
inline Ring<Fq> fq_ring(FqFieldPtr F) { return {std::move(F)}; }
inline Ring<Unram> unram_ring(UnramFieldPtr F) { return {std::move(F)}; }

enum class RepKind { Natural, Adjoint };

struct SparseEntry {
  int row;
  int col;
  long value;
};

/// Split simple Lie algebra over Z in a Chevalley basis, together with the
/// distinguished faithful representation (natural for A-D, adjoint for
/// E-G) as integer matrices.
///
/// Coordinate order: h_1..h_r, then e_alpha for positive alpha in the fixed
/// (height, lex) order, then e_{-alpha} in the same order. The
/// representation rows are sorted by decreasing weight, which makes
/// rep(e_alpha) strictly upper triangular for every positive alpha.
class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(RootSystem rs);

  const RootSystem& root_system() const { return rs_; }
  int rank() const { return rs_.rank(); }
  int num_positive() const { return rs_.num_positive(); }
  int dim() const { return dim_; }
  RepKind rep_kind() const { return rep_kind_; }
  int rep_dim() const { return rep_dim_; }

  // basis index helpers
  int index_h(int i) const { return i; }
  int index_pos(int a) const { return rank() + a; }
  int index_neg(int a) const { return rank() + num_positive() + a; }
  bool is_h_index(int i) const { return i < rank(); }
  bool is_pos_index(int i) const { return i >= rank() && i < rank() + num_positive(); }
  int root_of_index(int i) const;   // positive-root id of a +/- basis index
  int weight_2rho(int i) const;     // 2*height, 0 on the Cartan part

  /// Structure constant N_{alpha,beta} for positive root ids (0 if the sum
  /// is not a root or alpha == beta).
  long structure_constant(int a, int b) const { return npos_[a * num_positive() + b]; }

  /// [b_i, b_j] as a sparse coordinate list.
  const std::vector<std::pair<int, long>>& bracket_basis(int i, int j) const {
    return table_[i * dim_ + j];
  }

  template <class S>
  Vec<S> bracket(const Vec<S>& x, const Vec<S>& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw std::invalid_argument("bracket: wrong coordinate length");
    Vec<S> out = zero_vec<S>(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x(i).is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y(j).is_zero()) continue;
        for (const auto& [idx, c] : bracket_basis(i, j))
          out(idx) += x(i) * y(j) * S(static_cast<long>(c));
      }
    }
    return out;
  }

  /// Matrix of ad(x) on the coordinate basis.
  template <class S>
  Mat<S> ad_matrix(const Vec<S>& x) const {
    Mat<S> m = zeros<S>(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x(i).is_zero()) continue;
      for (int j = 0; j < dim_; ++j)
        for (const auto& [idx, c] : bracket_basis(i, j))
          m(idx, j) += x(i) * S(static_cast<long>(c));
    }
    return m;
  }

  const std::vector<SparseEntry>& rep_basis_matrix(int i) const { return rep_[i]; }

  /// Linear extension of the stored basis matrices.
  template <class S>
  Mat<S> rep(const Vec<S>& x) const {
    Mat<S> m = zeros<S>(rep_dim_, rep_dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x(i).is_zero()) continue;
      for (const SparseEntry& e : rep_[i]) m(e.row, e.col) += x(i) * S(e.value);
    }
    return m;
  }

  /// Solves rep(x) = M; nullopt when M is not in the image. The witness
  /// positions are weight-separated, so extraction is direct and the final
  /// full comparison makes the membership decision exact.
  template <class S>
  std::optional<Vec<S>> rep_preimage(const Mat<S>& M, const Ring<S>& ring) const {
    Vec<S> x = zero_vec<S>(dim_);
    long p = ring.characteristic();
    for (int i = 0; i < dim_; ++i) {
      if (is_h_index(i)) continue;
      const Witness& w = witness_[i];
      if (p != 0 && w.value % p == 0)
        throw std::invalid_argument("rep_preimage: witness entry not invertible mod p");
      x(i) = M(w.row, w.col) / ring.from_int(w.value);
    }
    // Cartan coordinates from the chosen diagonal positions
    for (int i = 0; i < rank(); ++i) {
      S acc = S(0);
      for (int j = 0; j < rank(); ++j)
        acc += ring.from_rat(h_solve_inv_(i, j)) * M(h_rows_[j], h_rows_[j]);
      x(index_h(i)) = acc;
    }
    Mat<S> back = rep(x);
    if (!mats_equal(back, M)) return std::nullopt;
    return x;
  }

  /// The restricted p-power over F_{p^k}: the unique y with rep(y) =
  /// rep(x)^p, cross-checked against ad(y) = ad(x)^p.
  Vec<Fq> p_power(const Vec<Fq>& x, const Ring<Fq>& ring) const;

  /// Order p^m of a nilpotent element: minimal m with x^{[p^m]} = 0.
  int nilpotent_order_exponent(const Vec<Fq>& x, const Ring<Fq>& ring) const;

  /// Bilinear form preserved by the natural representations (empty for the
  /// adjoint types).
  const MatZ& invariant_form() const { return form_; }

  /// Weights of rep rows under the simple coroot cocharacters:
  /// entry (a, k) = weight of row a under alpha_k^vee.
  const Eigen::MatrixXi& rep_row_weights() const { return rep_row_weights_; }

  /// Divided powers rep(b_i)^j / j! of a root vector, as integer matrices
  /// (integrality is a basis property, asserted at build). Index j from 0.
  const std::vector<std::vector<SparseEntry>>& rep_divided_powers(int i) const {
    if (is_h_index(i)) throw std::invalid_argument("divided powers: root indices only");
    return divided_[i];
  }

  /// Root group element U_alpha(t) = sum_j t^j rep(e_alpha)^j / j!, valid
  /// over any coefficient ring.
  template <class S>
  Mat<S> root_group_element(int basis_index, const S& t, const Ring<S>&) const {
    const auto& dp = rep_divided_powers(basis_index);
    Mat<S> m = zeros<S>(rep_dim_, rep_dim_);
    S tj = S(1);
    for (std::size_t j = 0; j < dp.size(); ++j) {
      for (const SparseEntry& e : dp[j]) m(e.row, e.col) += tj * S(e.value);
      tj = tj * t;
    }
    return m;
  }

  /// Torus point prod_k (alpha_k^vee)(c_k), acting diagonally on the rep.
  template <class S>
  Mat<S> torus_element(const std::vector<S>& c, const Ring<S>& ring) const {
    if (static_cast<int>(c.size()) != rank())
      throw std::invalid_argument("torus_element: one scalar per simple coroot");
    Mat<S> m = zeros<S>(rep_dim_, rep_dim_);
    for (int a = 0; a < rep_dim_; ++a) {
      S v = ring.from_int(1);
      for (int k = 0; k < rank(); ++k) {
        int w = rep_row_weights_(a, k);
        if (w == 0) continue;
        S base = w > 0 ? c[k] : S(S(1) / c[k]);
        for (int rep_count = 0; rep_count < std::abs(w); ++rep_count) v = v * base;
      }
      m(a, a) = v;
    }
    return m;
  }

 private:
  struct Witness {
    int row = -1, col = -1;
    long value = 0;
  };

  void build_structure_constants();
  long n_full(int a, int sa, int b, int sb) const;  // signed-root constant
  void build_bracket_table();
  void build_natural_rep();
  void build_adjoint_rep();
  void finalize_rep();
  void build_divided_powers();
  void verify_rep_homomorphism() const;

  RootSystem rs_;
  int dim_;
  std::vector<long> npos_;    // dense positive-pair table
  std::vector<long> nmixed_;  // N(+a, -b) for a != b with a-b a root
  std::vector<std::vector<std::pair<int, long>>> table_;

  RepKind rep_kind_;
  int rep_dim_;
  std::vector<std::vector<SparseEntry>> rep_;
  std::vector<Witness> witness_;
  std::vector<int> h_rows_;
  MatQ h_solve_inv_;
  MatZ form_;
  Eigen::MatrixXi rep_row_weights_;
  std::vector<std::vector<std::vector<SparseEntry>>> divided_;
};

using AlgebraPtr = std::shared_ptr<const ChevalleyAlgebra>;
AlgebraPtr build_algebra(const RootSystem& rs);
AlgebraPtr build_algebra(const std::string& label);

/// Coordinate vector with every entry in the given ring's zero.
template <class S>
Vec<S> zero_element(const ChevalleyAlgebra& alg, const Ring<S>& ring) {
  Vec<S> v(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) v(i) = ring.from_int(0);
  return v;
}

template <class S>
bool supported_on_positive_part(const ChevalleyAlgebra& alg, const Vec<S>& x) {
  for (int i = 0; i < alg.dim(); ++i)
    if (!alg.is_pos_index(i) && !x(i).is_zero()) return false;
  return true;
}

}  // namespace chevexp
