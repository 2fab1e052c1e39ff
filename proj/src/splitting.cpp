#include "chevexp/splitting.hpp"

#include <map>

namespace chevexp {

TraceFormSplitting::TraceFormSplitting(AlgebraPtr alg) : alg_(std::move(alg)) {
  const ChevalleyAlgebra& a = *alg_;
  const int d = a.dim();

  // position maps for sparse trace products
  std::vector<std::map<std::pair<int, int>, long>> pos(d);
  for (int i = 0; i < d; ++i)
    for (const SparseEntry& e : a.rep_basis_matrix(i)) pos[i][{e.row, e.col}] += e.value;

  gram_ = zeros<Int>(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      std::int64_t acc = 0;
      for (const SparseEntry& e : a.rep_basis_matrix(i)) {
        auto it = pos[j].find({e.col, e.row});
        if (it != pos[j].end()) acc += e.value * it->second;
      }
      gram_(i, j) = Int(static_cast<long>(acc));
      gram_(j, i) = gram_(i, j);
    }

  // structural zeros: only h-h and e_a vs e_{-a} survive
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      bool allowed = (a.is_h_index(i) && a.is_h_index(j)) ||
                     (!a.is_h_index(i) && !a.is_h_index(j) && i != j &&
                      a.root_of_index(i) == a.root_of_index(j));
      if (!allowed && !gram_(i, j).is_zero())
        throw DefectError("trace form pairs basis vectors outside h-h and opposite roots");
    }

  pair_.resize(a.num_positive());
  for (int p = 0; p < a.num_positive(); ++p) {
    pair_[p] = gram_(a.index_pos(p), a.index_neg(p));
    if (pair_[p].is_zero()) throw DefectError("degenerate root pairing over Q");
  }

  const int r = a.rank();
  MatZ hblock = zeros<Int>(r, r);
  MatQ hq = zeros<Rat>(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      hblock(i, j) = gram_(i, j);
      hq(i, j) = Rat(gram_(i, j));
    }
  Int hdet = det_integer(hblock);
  if (hdet.is_zero()) throw DefectError("degenerate Cartan block over Q");
  auto inv = inverse(hq);
  if (!inv) throw DefectError("Cartan block inversion failed");
  h_block_inv_ = *inv;

  // det(G) = det(H) * prod_a (-pair_a^2)
  det_ = hdet;
  for (int p = 0; p < a.num_positive(); ++p) det_ *= -(pair_[p] * pair_[p]);
}

bool TraceFormSplitting::nondegenerate_mod(long p) const {
  if (!is_prime(p)) throw std::invalid_argument("nondegenerate_mod: p must be prime");
  return !det_.mod(Int(p)).is_zero();
}

SplittingPtr build_splitting(AlgebraPtr alg) {
  return std::make_shared<const TraceFormSplitting>(std::move(alg));
}

bool is_nondegenerate_mod_p(const TraceFormSplitting& split, long p) {
  return split.nondegenerate_mod(p);
}

}  // namespace chevexp
