#pragma once

#include "chevexp/chevalley.hpp"

namespace chevexp {

/// Raised when the trace form degenerates mod p and the module splitting is
/// requested anyway.
struct SplittingUnavailable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Trace-form data of the distinguished representation: the Gram matrix on
/// the embedded algebra, its exact determinant, and the induced splitting
/// of the ambient matrix algebra into the embedded algebra plus its
/// orthogonal complement.
///
/// The Gram matrix pairs h against h and e_alpha against e_{-alpha} only, so
/// every solve is a small Cartan-block solve plus one division per root
/// pair; that structure is asserted at construction.
class TraceFormSplitting {
 public:
  explicit TraceFormSplitting(AlgebraPtr alg);

  const ChevalleyAlgebra& algebra() const { return *alg_; }
  const MatZ& gram() const { return gram_; }
  const Int& gram_det() const { return det_; }

  bool nondegenerate_mod(long p) const;
  void require_available(long p) const {
    if (p != 0 && !nondegenerate_mod(p))
      throw SplittingUnavailable("trace form degenerates mod " + std::to_string(p));
  }

  /// Unique x with trace(rep(x) rep(b_i)) = trace(M rep(b_i)) for all i.
  template <class S>
  Vec<S> project_g(const Mat<S>& M, const Ring<S>& ring) const {
    require_available(ring.characteristic());
    const ChevalleyAlgebra& alg = *alg_;
    Vec<S> t(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) {
      S acc = S(0);
      for (const SparseEntry& e : alg.rep_basis_matrix(i)) acc += M(e.col, e.row) * S(e.value);
      t(i) = acc;
    }
    Vec<S> x = zero_vec<S>(alg.dim());
    for (int a = 0; a < alg.num_positive(); ++a) {
      S inv_pair = ring.from_rat(Rat(Int(1), pair_[a]));
      x(alg.index_neg(a)) = t(alg.index_pos(a)) * inv_pair;
      x(alg.index_pos(a)) = t(alg.index_neg(a)) * inv_pair;
    }
    for (int i = 0; i < alg.rank(); ++i) {
      S acc = S(0);
      for (int j = 0; j < alg.rank(); ++j)
        acc += ring.from_rat(h_block_inv_(i, j)) * t(alg.index_h(j));
      x(alg.index_h(i)) = acc;
    }
    return x;
  }

  template <class S>
  Mat<S> project_m(const Mat<S>& M, const Ring<S>& ring) const {
    return Mat<S>(M - alg_->rep(project_g(M, ring)));
  }

  /// Projection of a unipotent group element into the algebra; the inverse
  /// direction of the unipotent-to-nilpotent correspondence on the positive
  /// part is inverse_on_unipotent_radical.
  template <class S>
  Vec<S> unipotent_to_nilpotent(const Mat<S>& g, const Ring<S>& ring) const {
    Mat<S> n = Mat<S>(g - identity<S>(alg_->rep_dim()));
    if (!is_nilpotent(n)) throw std::invalid_argument("unipotent_to_nilpotent: g is not unipotent");
    Vec<S> x = project_g(g, ring);
    if (!is_nilpotent(alg_->rep(x)))
      throw DefectError("projection of a unipotent element is not nilpotent");
    return x;
  }

  /// The unique u in the positive unipotent radical with project_g(u) = x,
  /// for x supported on the positive part. Solved by induction over the
  /// root order: each step fixes one root-group parameter, and only lower
  /// heights influence it.
  template <class S>
  Mat<S> inverse_on_unipotent_radical(const Vec<S>& x, const Ring<S>& ring) const {
    const ChevalleyAlgebra& alg = *alg_;
    if (!supported_on_positive_part(alg, x))
      throw std::invalid_argument("inverse_on_unipotent_radical: support must be positive");
    Mat<S> u = identity<S>(alg.rep_dim());
    for (int a = 0; a < alg.num_positive(); ++a) {
      Vec<S> w = project_g(u, ring);
      S t = x(alg.index_pos(a)) - w(alg.index_pos(a));
      u = Mat<S>(u * alg.root_group_element(alg.index_pos(a), t, ring));
    }
    Vec<S> final = project_g(u, ring);
    if (!vecs_equal(final, x)) throw DefectError("triangular solve failed to reproduce input");
    return u;
  }

 private:
  AlgebraPtr alg_;
  MatZ gram_;
  Int det_;
  std::vector<Int> pair_;  // trace(rep e_a rep e_-a) per positive a
  MatQ h_block_inv_;
};

using SplittingPtr = std::shared_ptr<const TraceFormSplitting>;
SplittingPtr build_splitting(AlgebraPtr alg);

/// Table condition for the distinguished representations: nondegeneracy of
/// the trace form mod p, computed from the exact determinant.
bool is_nondegenerate_mod_p(const TraceFormSplitting& split, long p);

}  // namespace chevexp
