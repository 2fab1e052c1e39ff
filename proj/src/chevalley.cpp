#include "chevexp/chevalley.hpp"

#include <algorithm>
#include <numeric>

namespace chevexp {

namespace {

using DenseI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

DenseI commutator(const DenseI& a, const DenseI& b) { return a * b - b * a; }

bool dense_equal(const DenseI& a, const DenseI& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(RootSystem rs) : rs_(std::move(rs)) {
  dim_ = 2 * rs_.num_positive() + rs_.rank();
  build_structure_constants();
  build_bracket_table();
  switch (rs_.type()) {
    case SimpleType::A:
    case SimpleType::B:
    case SimpleType::C:
    case SimpleType::D:
      rep_kind_ = RepKind::Natural;
      build_natural_rep();
      break;
    default:
      rep_kind_ = RepKind::Adjoint;
      build_adjoint_rep();
      break;
  }
  finalize_rep();
}

int ChevalleyAlgebra::root_of_index(int i) const {
  if (is_h_index(i)) throw std::invalid_argument("root_of_index: Cartan index");
  int a = i - rank();
  return a < num_positive() ? a : a - num_positive();
}

int ChevalleyAlgebra::weight_2rho(int i) const {
  if (is_h_index(i)) return 0;
  int a = root_of_index(i);
  return is_pos_index(i) ? 2 * rs_.height(a) : -2 * rs_.height(a);
}

void ChevalleyAlgebra::build_structure_constants() {
  const int N = rs_.num_positive();
  npos_.assign(static_cast<std::size_t>(N) * N, 0);

  // Positive pairs by height induction. For each sum root the pair with the
  // smallest first component (in the fixed order) gets the positive sign;
  // every other pair is forced by the Jacobi identity against that pair.
  for (int g = 0; g < N; ++g) {
    if (rs_.height(g) < 2) continue;
    std::vector<std::pair<int, int>> pairs;  // (a, b) with a < b, sum = g
    for (int a = 0; a < g; ++a) {
      RootVec diff = rs_.simple_coords(g) - rs_.simple_coords(a);
      auto b = rs_.index_of_coords(diff);
      if (b && *b > a) pairs.push_back({a, *b});
    }
    if (pairs.empty()) throw DefectError("root of height >= 2 with no decomposition");
    const auto [eps, del] = pairs.front();  // extraspecial: minimal first component
    {
      int r = rs_.string_down_length(eps, del);
      npos_[eps * N + del] = r + 1;
      npos_[del * N + eps] = -(r + 1);
    }
    for (std::size_t t = 1; t < pairs.size(); ++t) {
      const auto [a, b] = pairs[t];
      // Jacobi on (e_{-eps}, e_a, e_b); both reduction terms live in height
      // < ht(g) tables.
      long acc = 0;
      auto da = rs_.difference(a, eps);
      if (da) {
        if (da->second < 0) throw DefectError("extraspecial component not minimal");
        int am = da->first;  // a - eps
        long term = n_full(eps, -1, a, +1) * npos_[b * N + am];
        acc += term;
      }
      auto db = rs_.difference(b, eps);
      if (db) {
        if (db->second < 0) throw DefectError("extraspecial component not minimal");
        int bm = db->first;  // b - eps
        long term = n_full(b, +1, eps, -1) * npos_[a * N + bm];
        acc += term;
      }
      long den = n_full(eps, -1, g, +1);
      if (den == 0) throw DefectError("degenerate extraspecial reduction");
      if (acc % den != 0) throw DefectError("non-integral structure constant");
      long nab = -(acc / den);
      int r = rs_.string_down_length(a, b);
      if (std::abs(nab) != r + 1) throw DefectError("structure constant magnitude mismatch");
      npos_[a * N + b] = nab;
      npos_[b * N + a] = -nab;
    }
  }

  // mixed table: N(+a, -b) for a != b with a - b a root
  nmixed_.assign(static_cast<std::size_t>(N) * N, 0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      if (rs_.difference(a, b)) nmixed_[a * N + b] = n_full(a, +1, b, -1);
    }
}

// Structure constant on signed roots, via the three-term cycle relation
// N(u,v)/(w,w) = N(v,w)/(u,u) = N(w,u)/(v,v) for u + v + w = 0.
long ChevalleyAlgebra::n_full(int a, int sa, int b, int sb) const {
  const int N = rs_.num_positive();
  if (sa > 0 && sb > 0) return npos_[a * N + b];
  if (sa < 0 && sb < 0) return -npos_[a * N + b];
  if (sa < 0) return -n_full(b, sb, a, sa);
  // u = +a, v = -b
  auto d = rs_.difference(a, b);
  if (!d) throw DefectError("n_full: sum is not a root");
  auto [idx, sign] = *d;
  if (sign > 0) {
    // u + v = nu > 0, w = -nu: N = -N(b, nu) (nu,nu)/(a,a)
    std::int64_t num = -npos_[b * N + idx] * rs_.norm2(idx);
    std::int64_t den = rs_.norm2(a);
    if (num % den != 0) throw DefectError("n_full: non-integral value");
    return static_cast<long>(num / den);
  }
  // u + v = -mu < 0, w = +mu: N = N(mu, a) (mu,mu)/(b,b)
  std::int64_t num = npos_[idx * N + a] * rs_.norm2(idx);
  std::int64_t den = rs_.norm2(b);
  if (num % den != 0) throw DefectError("n_full: non-integral value");
  return static_cast<long>(num / den);
}

void ChevalleyAlgebra::build_bracket_table() {
  const int N = rs_.num_positive();
  const int r = rank();
  table_.assign(static_cast<std::size_t>(dim_) * dim_, {});
  auto at = [&](int i, int j) -> std::vector<std::pair<int, long>>& {
    return table_[static_cast<std::size_t>(i) * dim_ + j];
  };

  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < N; ++a) {
      long c = rs_.pairing_with_simple_coroot(a, i);
      if (c != 0) {
        at(index_h(i), index_pos(a)) = {{index_pos(a), c}};
        at(index_pos(a), index_h(i)) = {{index_pos(a), -c}};
        at(index_h(i), index_neg(a)) = {{index_neg(a), -c}};
        at(index_neg(a), index_h(i)) = {{index_neg(a), c}};
      }
    }
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      long n = npos_[a * N + b];
      if (n != 0) {
        int s = *rs_.sum_index(a, b);
        at(index_pos(a), index_pos(b)) = {{index_pos(s), n}};
        at(index_neg(a), index_neg(b)) = {{index_neg(s), -n}};
      }
      long m = nmixed_[a * N + b];
      if (m != 0) {
        auto [idx, sign] = *rs_.difference(a, b);
        int target = sign > 0 ? index_pos(idx) : index_neg(idx);
        at(index_pos(a), index_neg(b)) = {{target, m}};
        at(index_neg(b), index_pos(a)) = {{target, -m}};
      }
    }
  for (int a = 0; a < N; ++a) {
    std::vector<std::pair<int, long>> h;
    const RootVec& cc = rs_.coroot_coords(a);
    for (int k = 0; k < r; ++k)
      if (cc(k) != 0) h.push_back({index_h(k), static_cast<long>(cc(k))});
    at(index_pos(a), index_neg(a)) = h;
    for (auto& [idx, val] : h) val = -val;
    at(index_neg(a), index_pos(a)) = h;
  }
}

void ChevalleyAlgebra::build_natural_rep() {
  const int r = rank();
  const int N = rs_.num_positive();
  const SimpleType type = rs_.type();

  int n = 0;
  switch (type) {
    case SimpleType::A: n = r + 1; break;
    case SimpleType::B: n = 2 * r + 1; break;
    case SimpleType::C:
    case SimpleType::D: n = 2 * r; break;
    default: throw std::logic_error("natural rep only for classical types");
  }
  rep_dim_ = n;
  auto mirror = [&](int i) { return n - 1 - i; };

  // Candidate matrices per positive root, in the weight-sorted row basis
  // (eps_1..eps_r, [0], -eps_r..-eps_1). Signs are then aligned to the
  // abstract structure constants by a height induction.
  std::vector<DenseI> cand_pos(N), cand_neg(N);
  for (int a = 0; a < N; ++a) {
    const RootVec& root = rs_.positive_root(a);
    DenseI P = DenseI::Zero(n, n), M = DenseI::Zero(n, n);
    // classify the root in eps coordinates
    int i = -1, j = -1;
    int plus = 0, minus = 0;
    for (int k = 0; k < root.size(); ++k) {
      if (root(k) > 0) {
        (plus++ ? j : i) = k;
        if (root(k) == 2 && type == SimpleType::C) {
          i = k;  // long root 2 eps_i
          plus = 2;
          j = -2;
        }
      } else if (root(k) < 0) {
        j = k;
        ++minus;
      }
    }
    if (minus == 1) {  // eps_i - eps_j, i < j
      P(i, j) = 1;
      M(j, i) = 1;
      if (type != SimpleType::A) {
        P(mirror(j), mirror(i)) = -1;
        M(mirror(i), mirror(j)) = -1;
      }
    } else if (type == SimpleType::C && j == -2) {  // 2 eps_i
      P(i, mirror(i)) = 1;
      M(mirror(i), i) = 1;
    } else if (plus == 2) {  // eps_i + eps_j, i < j
      if (type == SimpleType::C) {
        P(i, mirror(j)) = 1;
        P(j, mirror(i)) = 1;
        M(mirror(j), i) = 1;
        M(mirror(i), j) = 1;
      } else {
        P(i, mirror(j)) = 1;
        P(j, mirror(i)) = -1;
        M(mirror(j), i) = 1;
        M(mirror(i), j) = -1;
      }
    } else {  // short root eps_i of B
      int mid = r;
      P(i, mid) = 2;
      P(mid, mirror(i)) = -1;
      M(mid, i) = 1;
      M(mirror(i), mid) = -2;
    }
    cand_pos[a] = P;
    cand_neg[a] = M;
  }

  // sign alignment eta, by height over extraspecial pairs
  std::vector<long> eta(N, 0);
  for (int a = 0; a < N; ++a)
    if (rs_.height(a) == 1) eta[a] = 1;
  auto coefficient_of = [&](const DenseI& m, const DenseI& base) {
    for (int c = 0; c < n; ++c)
      for (int rr = 0; rr < n; ++rr)
        if (base(rr, c) != 0) {
          std::int64_t v = m(rr, c);
          if (v % base(rr, c) != 0) throw DefectError("candidate is not proportional");
          std::int64_t q = v / base(rr, c);
          if (!dense_equal(m, DenseI(q * base))) throw DefectError("candidate is not proportional");
          return static_cast<long>(q);
        }
    throw DefectError("zero candidate matrix");
  };
  for (int g = 0; g < N; ++g) {
    if (rs_.height(g) < 2) continue;
    int eps = -1, del = -1;
    for (int a = 0; a < g; ++a) {
      RootVec diff = rs_.simple_coords(g) - rs_.simple_coords(a);
      auto b = rs_.index_of_coords(diff);
      if (b && *b > a) {
        eps = a;
        del = *b;
        break;
      }
    }
    long nprime = coefficient_of(commutator(cand_pos[eps], cand_pos[del]), cand_pos[g]);
    long nabs = structure_constant(eps, del);
    if (nprime % nabs != 0 && nabs % nprime != 0)
      throw DefectError("candidate basis is not a compatible integral basis");
    long q = nprime / nabs;
    if (q * nabs != nprime || (q != 1 && q != -1))
      throw DefectError("sign alignment needs a unit ratio");
    eta[g] = eta[eps] * eta[del] * q;
  }

  rep_.assign(dim_, {});
  std::vector<DenseI> dense(dim_, DenseI::Zero(n, n));
  for (int a = 0; a < N; ++a) {
    dense[index_pos(a)] = eta[a] * cand_pos[a];
    dense[index_neg(a)] = eta[a] * cand_neg[a];
  }
  for (int i = 0; i < r; ++i) {
    int a = rs_.simple_root_index(i);
    dense[index_h(i)] = commutator(dense[index_pos(a)], dense[index_neg(a)]);
  }
  for (int i = 0; i < dim_; ++i)
    for (int c = 0; c < n; ++c)
      for (int rr = 0; rr < n; ++rr)
        if (dense[i](rr, c) != 0)
          rep_[i].push_back({rr, c, static_cast<long>(dense[i](rr, c))});

  verify_rep_homomorphism();

  // invariant bilinear form
  if (type == SimpleType::A) {
    form_ = zeros<Int>(0, 0);
  } else {
    form_ = zeros<Int>(n, n);
    for (int i = 0; i < n; ++i) {
      if (type == SimpleType::C)
        form_(i, mirror(i)) = Int(i < r ? 1 : -1);
      else
        form_(i, mirror(i)) = Int(1);
    }
    if (type == SimpleType::B) form_(r, r) = Int(2);
  }
}

void ChevalleyAlgebra::build_adjoint_rep() {
  rep_dim_ = dim_;
  // rows sorted by decreasing 2 rho-vee weight; ties keep basis order
  std::vector<int> perm(dim_);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return weight_2rho(a) > weight_2rho(b); });
  std::vector<int> inv(dim_);
  for (int i = 0; i < dim_; ++i) inv[perm[i]] = i;

  rep_.assign(dim_, {});
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (const auto& [idx, c] : bracket_basis(i, j))
        rep_[i].push_back({inv[idx], inv[j], c});
  form_ = zeros<Int>(0, 0);
}

void ChevalleyAlgebra::verify_rep_homomorphism() const {
  const int n = rep_dim_;
  std::vector<DenseI> dense(dim_, DenseI::Zero(n, n));
  for (int i = 0; i < dim_; ++i)
    for (const SparseEntry& e : rep_[i]) dense[i](e.row, e.col) += e.value;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      DenseI lhs = commutator(dense[i], dense[j]);
      DenseI rhs = DenseI::Zero(n, n);
      for (const auto& [idx, c] : bracket_basis(i, j)) rhs += c * dense[idx];
      if (!dense_equal(lhs, rhs)) throw DefectError("representation is not a homomorphism");
    }
}

void ChevalleyAlgebra::finalize_rep() {
  // strict upper triangularity of every positive root vector
  for (int a = 0; a < num_positive(); ++a)
    for (const SparseEntry& e : rep_[index_pos(a)])
      if (e.row >= e.col) throw DefectError("positive part is not strictly upper triangular");

  // witness entries (smallest magnitude) for direct coordinate extraction
  witness_.assign(dim_, {});
  for (int i = 0; i < dim_; ++i) {
    if (is_h_index(i)) continue;
    if (rep_[i].empty()) throw DefectError("basis vector with zero representation");
    const SparseEntry* best = &rep_[i][0];
    for (const SparseEntry& e : rep_[i])
      if (std::abs(e.value) < std::abs(best->value)) best = &e;
    witness_[i] = {best->row, best->col, best->value};
  }

  // Cartan solve: pick rep-diagonal positions that make the r x r weight
  // matrix invertible, and invert it exactly.
  const int r = rank();
  Eigen::MatrixXi diag = Eigen::MatrixXi::Zero(rep_dim_, r);
  for (int k = 0; k < r; ++k)
    for (const SparseEntry& e : rep_[index_h(k)]) {
      if (e.row != e.col) throw DefectError("Cartan representation not diagonal");
      diag(e.row, k) = static_cast<int>(e.value);
    }
  rep_row_weights_ = diag;
  h_rows_.clear();
  MatQ chosen = zeros<Rat>(r, r);
  int have = 0;
  for (int row = 0; row < rep_dim_ && have < r; ++row) {
    MatQ trial = zeros<Rat>(have + 1, r);
    trial.block(0, 0, have, r) = chosen.block(0, 0, have, r);
    for (int k = 0; k < r; ++k) trial(have, k) = Rat(static_cast<long>(diag(row, k)));
    if (::chevexp::rank(Mat<Rat>(trial)) == have + 1) {
      chosen.row(have) = trial.row(have);
      h_rows_.push_back(row);
      ++have;
    }
  }
  if (have < r) throw DefectError("could not find independent Cartan rows");
  auto inv = inverse(Mat<Rat>(chosen.block(0, 0, r, r)));
  if (!inv) throw DefectError("Cartan row matrix not invertible");
  h_solve_inv_ = *inv;

  build_divided_powers();
}

void ChevalleyAlgebra::build_divided_powers() {
  divided_.assign(dim_, {});
  // sparse triplet product helper on the rep space
  auto sparse_mul = [&](const std::vector<SparseEntry>& a, const std::vector<SparseEntry>& b) {
    std::map<std::pair<int, int>, std::int64_t> acc;
    std::map<int, std::vector<const SparseEntry*>> b_by_row;
    for (const SparseEntry& e : b) b_by_row[e.row].push_back(&e);
    for (const SparseEntry& ea : a) {
      auto it = b_by_row.find(ea.col);
      if (it == b_by_row.end()) continue;
      for (const SparseEntry* eb : it->second) acc[{ea.row, eb->col}] += ea.value * eb->value;
    }
    std::vector<SparseEntry> out;
    for (const auto& [rc, v] : acc)
      if (v != 0) out.push_back({rc.first, rc.second, static_cast<long>(v)});
    return out;
  };
  for (int i = 0; i < dim_; ++i) {
    if (is_h_index(i)) continue;
    std::vector<std::vector<SparseEntry>> dp;
    std::vector<SparseEntry> ident;
    for (int a = 0; a < rep_dim_; ++a) ident.push_back({a, a, 1});
    dp.push_back(ident);
    std::vector<SparseEntry> power = rep_[i];  // e^1
    long factorial = 1;
    for (int j = 1; !power.empty(); ++j) {
      factorial *= j;
      std::vector<SparseEntry> scaled = power;
      for (SparseEntry& e : scaled) {
        if (e.value % factorial != 0)
          throw DefectError("divided power of a root vector is not integral");
        e.value /= factorial;
      }
      dp.push_back(std::move(scaled));
      power = sparse_mul(power, rep_[i]);
      if (j > rep_dim_) throw DefectError("root vector representation not nilpotent");
    }
    divided_[i] = std::move(dp);
  }
}

Vec<Fq> ChevalleyAlgebra::p_power(const Vec<Fq>& x, const Ring<Fq>& ring) const {
  long p = ring.characteristic();
  Mat<Fq> M = rep(x);
  Mat<Fq> K = mat_pow(M, static_cast<unsigned long>(p));
  auto y = rep_preimage(K, ring);
  if (!y) throw DefectError("p-th matrix power left the embedded algebra");
  if (rep_kind_ == RepKind::Natural) {
    Mat<Fq> adp = mat_pow(ad_matrix(x), static_cast<unsigned long>(p));
    if (!mats_equal(adp, ad_matrix(*y)))
      throw DefectError("p-power cross-check failed: ad(y) != ad(x)^p");
  }
  return *y;
}

int ChevalleyAlgebra::nilpotent_order_exponent(const Vec<Fq>& x, const Ring<Fq>& ring) const {
  Vec<Fq> cur = x;
  for (int m = 0; m < 12; ++m) {
    if (is_zero_vec(cur)) return m;
    cur = p_power(cur, ring);
  }
  throw std::invalid_argument("nilpotent_order_exponent: element is not nilpotent");
}

AlgebraPtr build_algebra(const RootSystem& rs) {
  return std::make_shared<const ChevalleyAlgebra>(rs);
}

AlgebraPtr build_algebra(const std::string& label) {
  return build_algebra(build_root_system(label));
}

}  // namespace chevexp
