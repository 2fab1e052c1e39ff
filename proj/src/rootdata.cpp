#include "chevexp/rootdata.hpp"

#include <algorithm>
#include <stdexcept>

#include "chevexp/rational.hpp"

namespace chevexp {

SimpleType parse_type(char c) {
  switch (c) {
    case 'A': return SimpleType::A;
    case 'B': return SimpleType::B;
    case 'C': return SimpleType::C;
    case 'D': return SimpleType::D;
    case 'E': return SimpleType::E;
    case 'F': return SimpleType::F;
    case 'G': return SimpleType::G;
    default: throw std::invalid_argument("unknown type letter");
  }
}

char type_char(SimpleType t) {
  switch (t) {
    case SimpleType::A: return 'A';
    case SimpleType::B: return 'B';
    case SimpleType::C: return 'C';
    case SimpleType::D: return 'D';
    case SimpleType::E: return 'E';
    case SimpleType::F: return 'F';
    case SimpleType::G: return 'G';
  }
  return '?';
}

namespace {

RootVec make_vec(std::initializer_list<std::int64_t> xs) {
  RootVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

// Simple roots in integer ambient coordinates. Half-integer realizations
// (E-series, F4) are doubled; the pairing is uniformly scaled and only
// ratios of root lengths matter.
std::vector<RootVec> simple_roots_for(SimpleType type, int rank) {
  std::vector<RootVec> s;
  auto unit_diff = [&](int amb, int i) {  // e_i - e_{i+1}
    RootVec v = RootVec::Zero(amb);
    v(i) = 1;
    v(i + 1) = -1;
    return v;
  };
  switch (type) {
    case SimpleType::A: {
      if (rank < 1) throw std::invalid_argument("A_n needs n >= 1");
      int amb = rank + 1;
      for (int i = 0; i < rank; ++i) s.push_back(unit_diff(amb, i));
      break;
    }
    case SimpleType::B: {
      if (rank < 2) throw std::invalid_argument("B_n needs n >= 2");
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit_diff(rank, i));
      RootVec last = RootVec::Zero(rank);
      last(rank - 1) = 1;
      s.push_back(last);
      break;
    }
    case SimpleType::C: {
      if (rank < 2) throw std::invalid_argument("C_n needs n >= 2");
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit_diff(rank, i));
      RootVec last = RootVec::Zero(rank);
      last(rank - 1) = 2;
      s.push_back(last);
      break;
    }
    case SimpleType::D: {
      // D_3 is permitted (isomorphic to A_3); the small case participates in
      // the D_{p^n+1} family tests.
      if (rank < 3) throw std::invalid_argument("D_n needs n >= 3");
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit_diff(rank, i));
      RootVec last = RootVec::Zero(rank);
      last(rank - 2) = 1;
      last(rank - 1) = 1;
      s.push_back(last);
      break;
    }
    case SimpleType::E: {
      if (rank < 6 || rank > 8) throw std::invalid_argument("E_n needs n in {6,7,8}");
      // E8 simple roots, doubled to stay integral; E6/E7 are the first 6/7.
      std::vector<RootVec> e8 = {
          make_vec({1, -1, -1, -1, -1, -1, -1, 1}),  // (e1+e8-(e2+..+e7))/2, doubled
          make_vec({2, 2, 0, 0, 0, 0, 0, 0}),        // e1+e2, doubled
          make_vec({-2, 2, 0, 0, 0, 0, 0, 0}),       // e2-e1, doubled
          make_vec({0, -2, 2, 0, 0, 0, 0, 0}),       // e3-e2, doubled
          make_vec({0, 0, -2, 2, 0, 0, 0, 0}),
          make_vec({0, 0, 0, -2, 2, 0, 0, 0}),
          make_vec({0, 0, 0, 0, -2, 2, 0, 0}),
          make_vec({0, 0, 0, 0, 0, -2, 2, 0}),
      };
      s.assign(e8.begin(), e8.begin() + rank);
      break;
    }
    case SimpleType::F: {
      if (rank != 4) throw std::invalid_argument("F requires rank 4");
      // doubled coordinates
      s = {make_vec({0, 2, -2, 0}), make_vec({0, 0, 2, -2}), make_vec({0, 0, 0, 2}),
           make_vec({1, -1, -1, -1})};
      break;
    }
    case SimpleType::G: {
      if (rank != 2) throw std::invalid_argument("G requires rank 2");
      s = {make_vec({1, -1, 0}), make_vec({-2, 1, 1})};
      break;
    }
  }
  return s;
}

}  // namespace

RootSystem::RootSystem(SimpleType type, int rank) : type_(type), rank_(rank) {
  simple_ = simple_roots_for(type, rank);
  const int amb = static_cast<int>(simple_[0].size());

  // Closure by root strings, processed by height. A candidate gamma + alpha_i
  // (gamma known, alpha_i simple) is a root exactly when the alpha_i-string
  // down-length minus the Cartan pairing is positive.
  auto dot_vec = [&](const RootVec& a, const RootVec& b) {
    std::int64_t acc = 0;
    for (int i = 0; i < amb; ++i) acc += a(i) * b(i);
    return acc;
  };

  std::map<std::vector<std::int64_t>, RootVec> by_coords;  // simple coords -> root
  auto coords_key = [&](const RootVec& c) {
    return std::vector<std::int64_t>(c.data(), c.data() + c.size());
  };

  std::vector<std::pair<RootVec, RootVec>> frontier;  // (root, simple coords)
  for (int i = 0; i < rank_; ++i) {
    RootVec c = RootVec::Zero(rank_);
    c(i) = 1;
    by_coords[coords_key(c)] = simple_[i];
    frontier.push_back({simple_[i], c});
  }
  int ht = 1;
  while (!frontier.empty()) {
    std::vector<std::pair<RootVec, RootVec>> next;
    for (const auto& [root, coords] : frontier) {
      for (int i = 0; i < rank_; ++i) {
        // down-length r: largest r with root - r*alpha_i a root
        int r = 0;
        RootVec down = coords;
        while (true) {
          down(i) -= 1;
          bool nonneg = true, zero = true;
          for (int j = 0; j < rank_; ++j) {
            nonneg = nonneg && down(j) >= 0;
            zero = zero && down(j) == 0;
          }
          if (zero || !nonneg || !by_coords.count(coords_key(down))) break;
          ++r;
        }
        std::int64_t cart = 2 * dot_vec(root, simple_[i]) / dot_vec(simple_[i], simple_[i]);
        int q = r - static_cast<int>(cart);  // up-length of the alpha_i-string
        if (q <= 0) continue;
        RootVec up_coords = coords;
        up_coords(i) += 1;
        auto key = coords_key(up_coords);
        if (by_coords.count(key)) continue;
        RootVec up = root + simple_[i];
        by_coords[key] = up;
        next.push_back({up, up_coords});
      }
    }
    frontier = std::move(next);
    ++ht;
  }

  // fixed total order: height, then lexicographic simple coefficients
  std::vector<std::pair<std::vector<std::int64_t>, RootVec>> all(by_coords.begin(),
                                                                 by_coords.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    std::int64_t ha = 0, hb = 0;
    for (auto x : a.first) ha += x;
    for (auto x : b.first) hb += x;
    if (ha != hb) return ha < hb;
    return a.first < b.first;
  });
  for (const auto& [key, root] : all) {
    RootVec c(rank_);
    for (int i = 0; i < rank_; ++i) c(i) = key[i];
    coord_index_[key] = static_cast<int>(positive_.size());
    positive_.push_back(root);
    coords_.push_back(c);
    int h = 0;
    for (int i = 0; i < rank_; ++i) h += static_cast<int>(c(i));
    height_.push_back(h);
  }

  simple_index_.resize(rank_);
  for (int i = 0; i < rank_; ++i) {
    RootVec c = RootVec::Zero(rank_);
    c(i) = 1;
    std::vector<std::int64_t> key(c.data(), c.data() + rank_);
    simple_index_[i] = coord_index_.at(key);
  }

  cartan_ = Eigen::MatrixXi(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      cartan_(i, j) = static_cast<int>(2 * dot_vec(simple_[i], simple_[j]) /
                                       dot_vec(simple_[j], simple_[j]));

  pairing_ = Eigen::MatrixXi(num_positive(), rank_);
  for (int i = 0; i < num_positive(); ++i)
    for (int j = 0; j < rank_; ++j)
      pairing_(i, j) = static_cast<int>(2 * dot_vec(positive_[i], simple_[j]) /
                                        dot_vec(simple_[j], simple_[j]));

  // Coroot coordinates: solve <alpha_j, root_i^vee> = sum_k c_k <alpha_j,
  // alpha_k^vee> by Cramer on the (tiny) Cartan matrix.
  for (int i = 0; i < num_positive(); ++i) {
    int rnk = rank_;
    Eigen::MatrixXi P = cartan_;  // P(j,k) = <alpha_j, alpha_k^vee>
    std::vector<std::int64_t> d(rnk);
    for (int j = 0; j < rnk; ++j)
      d[j] = 2 * dot_vec(simple_[j], positive_[i]) / dot_vec(positive_[i], positive_[i]);
    // Bareiss determinant and Cramer replacements over int64 (rank <= 8)
    auto det_int = [&](const Eigen::MatrixXi& M) {
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> W =
          M.cast<std::int64_t>();
      std::int64_t prev = 1;
      int sign = 1;
      int n = static_cast<int>(W.rows());
      for (int k = 0; k + 1 < n; ++k) {
        if (W(k, k) == 0) {
          int piv = -1;
          for (int r2 = k + 1; r2 < n; ++r2)
            if (W(r2, k) != 0) {
              piv = r2;
              break;
            }
          if (piv < 0) return std::int64_t(0);
          W.row(piv).swap(W.row(k));
          sign = -sign;
        }
        for (int r2 = k + 1; r2 < n; ++r2) {
          for (int c2 = k + 1; c2 < n; ++c2)
            W(r2, c2) = (W(r2, c2) * W(k, k) - W(r2, k) * W(k, c2)) / prev;
          W(r2, k) = 0;
        }
        prev = W(k, k);
      }
      return sign * W(n - 1, n - 1);
    };
    std::int64_t detP = det_int(P);
    RootVec c(rnk);
    for (int k = 0; k < rnk; ++k) {
      Eigen::MatrixXi Pk = P;
      for (int j = 0; j < rnk; ++j) Pk(j, k) = static_cast<int>(d[j]);
      std::int64_t dk = det_int(Pk);
      if (dk % detP != 0) throw std::logic_error("coroot coordinates not integral");
      c(k) = dk / detP;
    }
    coroot_coords_.push_back(c);
  }
}

std::string RootSystem::label() const {
  return std::string(1, type_char(type_)) + std::to_string(rank_);
}

std::optional<int> RootSystem::index_of_coords(const RootVec& coords) const {
  std::vector<std::int64_t> key(coords.data(), coords.data() + coords.size());
  auto it = coord_index_.find(key);
  if (it == coord_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> RootSystem::sum_index(int i, int j) const {
  RootVec c = coords_[i] + coords_[j];
  return index_of_coords(c);
}

std::optional<std::pair<int, int>> RootSystem::difference(int i, int j) const {
  RootVec c = coords_[i] - coords_[j];
  bool nonneg = true, nonpos = true;
  for (int k = 0; k < rank_; ++k) {
    nonneg = nonneg && c(k) >= 0;
    nonpos = nonpos && c(k) <= 0;
  }
  if (nonneg) {
    auto idx = index_of_coords(c);
    if (idx) return std::make_pair(*idx, +1);
    return std::nullopt;
  }
  if (nonpos) {
    RootVec n = -c;
    auto idx = index_of_coords(n);
    if (idx) return std::make_pair(*idx, -1);
    return std::nullopt;
  }
  return std::nullopt;
}

std::int64_t RootSystem::dot(const RootVec& a, const RootVec& b) const {
  std::int64_t acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

int RootSystem::string_down_length(int alpha, int beta) const {
  int r = 0;
  RootVec c = coords_[beta];
  while (true) {
    c -= coords_[alpha];
    bool nonneg = true, zero = true;
    for (int k = 0; k < rank_; ++k) {
      nonneg = nonneg && c(k) >= 0;
      zero = zero && c(k) == 0;
    }
    if (zero) break;  // beta - r*alpha hit 0: not a root
    if (nonneg) {
      if (!index_of_coords(c)) break;
    } else {
      RootVec n = -c;
      if (!index_of_coords(n)) break;
    }
    ++r;
  }
  return r;
}

RootSystem build_root_system(SimpleType type, int rank) { return RootSystem(type, rank); }

RootSystem build_root_system(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("bad type label: " + label);
  SimpleType t = parse_type(label[0]);
  int rank = std::stoi(label.substr(1));
  return RootSystem(t, rank);
}

std::vector<int> weyl_exponents(const RootSystem& rs) {
  // conjugate partition of the height multiset
  int maxht = rs.max_height();
  std::vector<int> count(maxht + 1, 0);
  for (int i = 0; i < rs.num_positive(); ++i) count[rs.height(i)]++;
  std::vector<int> exps;
  for (int level = 1; level <= count[1]; ++level) {
    int val = 0;
    for (int h = 1; h <= maxht; ++h)
      if (count[h] >= level) ++val;
    exps.push_back(val);
  }
  std::sort(exps.begin(), exps.end());
  return exps;
}

int coxeter_number(const RootSystem& rs) { return rs.max_height() + 1; }

std::set<long> bad_primes(const RootSystem& rs) {
  return tabulated_facts(rs.type(), rs.rank()).bad_primes;
}

bool is_good_prime(const RootSystem& rs, long p) {
  if (!is_prime(p)) throw std::invalid_argument("is_good_prime: p must be prime");
  return bad_primes(rs).count(p) == 0;
}

bool is_separably_good(const RootSystem& rs, long p) {
  if (!is_good_prime(rs, p)) return false;
  if (rs.type() == SimpleType::A) return (rs.rank() + 1) % p != 0;
  return true;
}

RootSystemFacts tabulated_facts(SimpleType type, int rank) {
  RootSystemFacts f;
  switch (type) {
    case SimpleType::A: {
      for (int i = 1; i <= rank; ++i) f.exponents.push_back(i);
      f.bad_primes = {};
      f.coxeter_number = rank + 1;
      break;
    }
    case SimpleType::B:
    case SimpleType::C: {
      for (int i = 1; i <= rank; ++i) f.exponents.push_back(2 * i - 1);
      f.bad_primes = {2};
      f.coxeter_number = 2 * rank;
      break;
    }
    case SimpleType::D: {
      for (int i = 1; i < rank; ++i) f.exponents.push_back(2 * i - 1);
      f.exponents.push_back(rank - 1);
      std::sort(f.exponents.begin(), f.exponents.end());
      f.bad_primes = {2};
      f.coxeter_number = 2 * rank - 2;
      break;
    }
    case SimpleType::E: {
      if (rank == 6) {
        f.exponents = {1, 4, 5, 7, 8, 11};
        f.bad_primes = {2, 3};
        f.coxeter_number = 12;
      } else if (rank == 7) {
        f.exponents = {1, 5, 7, 9, 11, 13, 17};
        f.bad_primes = {2, 3};
        f.coxeter_number = 18;
      } else {
        f.exponents = {1, 7, 11, 13, 17, 19, 23, 29};
        f.bad_primes = {2, 3, 5};
        f.coxeter_number = 30;
      }
      break;
    }
    case SimpleType::F: {
      f.exponents = {1, 5, 7, 11};
      f.bad_primes = {2, 3};
      f.coxeter_number = 12;
      break;
    }
    case SimpleType::G: {
      f.exponents = {1, 5};
      f.bad_primes = {2, 3};
      f.coxeter_number = 6;
      break;
    }
  }
  return f;
}

}  // namespace chevexp
