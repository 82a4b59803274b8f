// homology.hpp - integer simplicial homology via Smith normal form,
// homological connectivity, and the connectivity-based chromatic bound.
#pragma once

#include "kneser/scomplex.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <queue>
#include <limits>

namespace kneser {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------
struct SnfResult {
  int rank = 0;
  std::vector<BigInt> factors;  // d_1 | d_2 | ... | d_rank, all positive
};

namespace detail {

// Sparse integer matrix with row maps and column occupancy sets, enough for
// destructive SNF reduction.
struct SparseIntMatrix {
  int nrows = 0, ncols = 0;
  std::vector<std::map<int, BigInt>> rows;
  std::vector<std::set<int>> cols;

  SparseIntMatrix(int nr, int nc) : nrows(nr), ncols(nc), rows(nr), cols(nc) {}

  void set(int r, int c, const BigInt& v) {
    auto it = rows[r].find(c);
    if (v == 0) {
      if (it != rows[r].end()) {
        rows[r].erase(it);
        cols[c].erase(r);
      }
      return;
    }
    if (it == rows[r].end()) {
      rows[r].emplace(c, v);
      cols[c].insert(r);
    } else {
      it->second = v;
    }
  }

  const BigInt* get(int r, int c) const {
    auto it = rows[r].find(c);
    return it == rows[r].end() ? nullptr : &it->second;
  }
};

// rows[dst] += q * rows[src]
inline void row_axpy(SparseIntMatrix& m, int dst, int src, const BigInt& q) {
  if (q == 0) return;
  for (const auto& [c, v] : m.rows[src]) {
    BigInt nv = (m.get(dst, c) ? *m.get(dst, c) : BigInt(0)) + q * v;
    m.set(dst, c, nv);
  }
}

// cols[dst] += q * cols[src]
inline void col_axpy(SparseIntMatrix& m, int dst, int src, const BigInt& q) {
  if (q == 0) return;
  std::vector<int> src_rows(m.cols[src].begin(), m.cols[src].end());
  for (int r : src_rows) {
    const BigInt* v = m.get(r, src);
    BigInt nv = (m.get(r, dst) ? *m.get(r, dst) : BigInt(0)) + q * (*v);
    m.set(r, dst, nv);
  }
}

inline SnfResult snf_reduce(SparseIntMatrix& m, const Budget& budget) {
  SnfResult out;
  std::vector<char> row_done(m.nrows, 0), col_done(m.ncols, 0);
  std::vector<BigInt> diag;
  auto start = std::chrono::steady_clock::now();
  std::uint64_t ticks = 0;

  auto check_time = [&]() {
    if ((++ticks & 0x3FF) != 0) return;
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget.max_seconds)
      throw budget_error("smith_normal_form: time budget exceeded");
  };

  // Markowitz-style selection keeps fill-in tame: take a sparsest active
  // column, and inside it a smallest-magnitude entry in a sparsest row.
  // The heap holds (nnz, col) snapshots; stale ones are skipped on pop.
  std::priority_queue<std::pair<std::size_t, int>,
                      std::vector<std::pair<std::size_t, int>>,
                      std::greater<>>
      col_heap;
  for (int c = 0; c < m.ncols; ++c)
    if (!m.cols[c].empty()) col_heap.emplace(m.cols[c].size(), c);
  auto touch_col = [&](int c) {
    if (!col_done[c] && !m.cols[c].empty()) col_heap.emplace(m.cols[c].size(), c);
  };
  auto touch_row_cols = [&](int r) {
    for (const auto& [c, v] : m.rows[r]) touch_col(c);
  };

  auto pick_pivot = [&]() -> std::pair<int, int> {
    int best_col = -1;
    while (!col_heap.empty()) {
      auto [nnz, c] = col_heap.top();
      if (col_done[c] || m.cols[c].size() != nnz || m.cols[c].empty()) {
        col_heap.pop();
        continue;
      }
      best_col = c;
      break;
    }
    if (best_col < 0) return {-1, -1};
    int best_row = -1;
    BigInt best_abs = 0;
    std::size_t best_rnnz = 0;
    for (int r : m.cols[best_col]) {
      BigInt a = abs(*m.get(r, best_col));
      std::size_t rnnz = m.rows[r].size();
      if (best_row < 0 || a < best_abs || (a == best_abs && rnnz < best_rnnz)) {
        best_row = r;
        best_abs = a;
        best_rnnz = rnnz;
      }
    }
    return {best_row, best_col};
  };

  while (true) {
    check_time();
    auto [pr, pc] = pick_pivot();
    if (pr < 0) break;

    // clear the pivot row and column; truncating division leaves strictly
    // smaller remainders, so re-pivoting terminates
    while (true) {
      check_time();
      BigInt p = *m.get(pr, pc);
      int other = -1;
      for (int r : m.cols[pc])
        if (r != pr && !row_done[r]) {
          other = r;
          break;
        }
      if (other >= 0) {
        BigInt a = *m.get(other, pc);
        BigInt q = a / p;
        row_axpy(m, other, pr, -q);
        touch_row_cols(pr);
        touch_row_cols(other);
        if (m.get(other, pc)) {  // remainder: smaller pivot found
          pr = other;
        }
        continue;
      }
      int otherc = -1;
      for (const auto& [c, v] : m.rows[pr])
        if (c != pc && !col_done[c]) {
          otherc = c;
          break;
        }
      if (otherc >= 0) {
        BigInt a = *m.get(pr, otherc);
        BigInt q = a / p;
        col_axpy(m, otherc, pc, -q);
        touch_col(otherc);
        if (m.get(pr, otherc)) {
          pc = otherc;
        }
        continue;
      }
      break;
    }

    diag.push_back(abs(*m.get(pr, pc)));
    row_done[pr] = 1;
    col_done[pc] = 1;
  }

  // normalize to a divisibility chain: gcd/lcm exchanges preserve the
  // determinantal divisors of the diagonal form
  std::sort(diag.begin(), diag.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] != 0) {
          BigInt g = gcd(diag[i], diag[j]);
          BigInt l = diag[i] / g * diag[j];
          diag[i] = g;
          diag[j] = l;
          changed = true;
        }
      }
    }
    if (changed) std::sort(diag.begin(), diag.end());
  }

  out.rank = static_cast<int>(diag.size());
  out.factors = std::move(diag);
  return out;
}

}  // namespace detail

inline SnfResult smith_normal_form(const std::vector<std::vector<long long>>& dense,
                                   const Budget& budget = {}) {
  int nr = static_cast<int>(dense.size());
  int nc = nr ? static_cast<int>(dense[0].size()) : 0;
  detail::SparseIntMatrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (static_cast<int>(dense[r].size()) != nc)
      throw input_error("smith_normal_form: ragged matrix");
    for (int c = 0; c < nc; ++c)
      if (dense[r][c] != 0) m.set(r, c, BigInt(dense[r][c]));
  }
  return detail::snf_reduce(m, budget);
}

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------
struct ChainComplexData {
  // faces_by_dim[d]: sorted list of (d+1)-element vertex sets
  std::vector<std::vector<std::vector<int>>> faces_by_dim;
  int top_dim() const { return static_cast<int>(faces_by_dim.size()) - 1; }
  long long face_count(int d) const {
    return d >= 0 && d <= top_dim()
               ? static_cast<long long>(faces_by_dim[d].size())
               : 0;
  }
};

namespace detail {

// Enumerates all faces of the complex up to dimension max_dim (-1 for all),
// with the distinct-face count capped by the budget.
inline ChainComplexData enumerate_faces(const SimplicialComplex& sc, int max_dim,
                                        const Budget& budget) {
  // generation workload precheck: subsets visited per facet
  double workload = 0;
  for (const auto& f : sc.facets) {
    int top = max_dim < 0 ? static_cast<int>(f.size())
                          : std::min<int>(static_cast<int>(f.size()), max_dim + 1);
    double c = 1, binom_sum = 0;
    for (int size = 1; size <= top; ++size) {
      c = c * (static_cast<double>(f.size()) - size + 1) / size;
      binom_sum += c;
    }
    workload += binom_sum;
    if (workload > 16.0 * static_cast<double>(budget.max_faces))
      throw budget_error("enumerate_faces: face budget exceeded");
  }

  std::set<std::vector<int>> seen;
  std::size_t total = 0;
  ChainComplexData out;
  for (const auto& f : sc.facets) {
    int top = max_dim < 0 ? static_cast<int>(f.size())
                          : std::min<int>(static_cast<int>(f.size()), max_dim + 1);
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (!cur.empty() && seen.insert(cur).second) {
        if (++total > budget.max_faces)
          throw budget_error("enumerate_faces: face budget exceeded");
        int d = static_cast<int>(cur.size()) - 1;
        if (d >= static_cast<int>(out.faces_by_dim.size()))
          out.faces_by_dim.resize(d + 1);
        out.faces_by_dim[d].push_back(cur);
      }
      if (static_cast<int>(cur.size()) == top) return;
      for (std::size_t i = from; i < f.size(); ++i) {
        cur.push_back(f[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  for (auto& faces : out.faces_by_dim) std::sort(faces.begin(), faces.end());
  return out;
}

// boundary matrix from d-faces to (d-1)-faces; d = 0 gives the augmentation
inline SparseIntMatrix boundary_matrix(const ChainComplexData& cc, int d) {
  if (d == 0) {
    SparseIntMatrix m(1, static_cast<int>(cc.face_count(0)));
    for (int c = 0; c < m.ncols; ++c) m.set(0, c, 1);
    return m;
  }
  if (d > cc.top_dim()) return SparseIntMatrix(static_cast<int>(cc.face_count(d - 1)), 0);
  const auto& lower = cc.faces_by_dim[d - 1];
  const auto& upper = cc.faces_by_dim[d];
  SparseIntMatrix m(static_cast<int>(lower.size()), static_cast<int>(upper.size()));
  for (int c = 0; c < static_cast<int>(upper.size()); ++c) {
    std::vector<int> sub(upper[c].begin() + 1, upper[c].end());
    int sign = 1;
    for (std::size_t i = 0; i < upper[c].size(); ++i) {
      auto it = std::lower_bound(lower.begin(), lower.end(), sub);
      if (it == lower.end() || *it != sub)
        throw std::logic_error("boundary_matrix: missing face");
      m.set(static_cast<int>(it - lower.begin()), c, BigInt(sign));
      if (i + 1 < upper[c].size()) sub[i] = upper[c][i];
      sign = -sign;
    }
  }
  return m;
}

// composition of consecutive boundaries must vanish
inline void assert_dd_zero(const ChainComplexData& cc) {
  for (int d = 1; d <= cc.top_dim(); ++d) {
    const auto& upper = cc.faces_by_dim[d];
    std::map<std::vector<int>, long long> acc;
    for (const auto& f : upper) {
      acc.clear();
      int sign = 1;
      std::vector<int> sub(f.begin() + 1, f.end());
      for (std::size_t i = 0; i < f.size(); ++i) {
        // boundary of the boundary summand
        int inner_sign = sign;
        std::vector<int> sub2(sub.begin() + 1, sub.end());
        for (std::size_t j = 0; j < sub.size(); ++j) {
          acc[sub2] += inner_sign;
          if (j + 1 < sub.size()) sub2[j] = sub[j];
          inner_sign = -inner_sign;
        }
        if (i + 1 < f.size()) sub[i] = f[i];
        sign = -sign;
      }
      for (const auto& [face, coeff] : acc)
        if (coeff != 0) throw std::logic_error("boundary composition is nonzero");
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Homology profiles
// ---------------------------------------------------------------------------
struct HomologyProfile {
  bool empty_complex = true;
  std::vector<long long> reduced_betti;            // dims 0..top
  std::vector<std::vector<long long>> torsion;     // invariant factors > 1 per dim
  long long euler = 0;                             // unreduced alternating face count
};

inline constexpr int kConnEmpty = -2;
inline constexpr int kConnInfinite = std::numeric_limits<int>::max();

// Reduced integer Betti numbers and torsion via SNF of the boundary matrices.
// A complex with a single facet is a full simplex: its reduced homology
// vanishes and no matrix work is needed (or feasible, for large facets).
inline HomologyProfile betti_numbers(const SimplicialComplex& sc,
                                     const Budget& budget = {}) {
  HomologyProfile out;
  if (sc.empty()) return out;
  out.empty_complex = false;

  if (sc.facets.size() == 1) {
    int dim = static_cast<int>(sc.facets[0].size()) - 1;
    out.reduced_betti.assign(dim + 1, 0);
    out.torsion.assign(dim + 1, {});
    out.euler = 1;
    return out;
  }

  auto cc = detail::enumerate_faces(sc, -1, budget);
  detail::assert_dd_zero(cc);
  const int top = cc.top_dim();
  std::vector<int> rank(top + 2, 0);
  std::vector<std::vector<long long>> tor(top + 1);
  for (int d = 0; d <= top + 1; ++d) {
    auto m = detail::boundary_matrix(cc, d);
    auto snf = detail::snf_reduce(m, budget);
    rank[d] = snf.rank;
    if (d >= 1 && d <= top) {
      for (const auto& f : snf.factors)
        if (f > 1) tor[d - 1].push_back(static_cast<long long>(f));
    }
  }
  out.reduced_betti.resize(top + 1);
  out.torsion = std::move(tor);
  out.euler = 0;
  for (int d = 0; d <= top; ++d) {
    long long nd = cc.face_count(d);
    out.reduced_betti[d] = nd - rank[d] - rank[d + 1];
    out.euler += (d % 2 == 0 ? nd : -nd);
  }
  return out;
}

// Largest c with vanishing reduced homology (and torsion) through degree c:
// -2 for the empty complex, kConnInfinite when every computed degree vanishes.
inline int homological_connectivity(const SimplicialComplex& sc,
                                    const Budget& budget = {}) {
  if (sc.empty()) return kConnEmpty;
  auto profile = betti_numbers(sc, budget);
  for (std::size_t d = 0; d < profile.reduced_betti.size(); ++d)
    if (profile.reduced_betti[d] != 0 || !profile.torsion[d].empty())
      return static_cast<int>(d) - 1;
  return kConnInfinite;
}

// Bounded variant: checks vanishing only through degree c, so the chain
// complex stops at dimension c+1.
inline bool connectivity_at_least(const SimplicialComplex& sc, int c,
                                  const Budget& budget = {}) {
  if (c <= -2) return true;
  if (sc.empty()) return false;
  if (c == -1) return true;
  if (sc.facets.size() == 1) return true;  // simplex

  auto cc = detail::enumerate_faces(sc, c + 1, budget);
  detail::assert_dd_zero(cc);
  std::vector<int> rank(c + 3, 0);
  std::vector<bool> torsion_free(c + 2, true);
  for (int d = 0; d <= std::min(c + 1, cc.top_dim() + 1); ++d) {
    auto m = detail::boundary_matrix(cc, d);
    auto snf = detail::snf_reduce(m, budget);
    rank[d] = snf.rank;
    if (d >= 1)
      for (const auto& f : snf.factors)
        if (f > 1) torsion_free[d - 1] = false;
  }
  for (int d = 0; d <= c; ++d) {
    long long nd = cc.face_count(d);
    if (nd - rank[d] - rank[d + 1] != 0) return false;
    if (!torsion_free[d]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The connectivity-based chromatic lower bound ceil((c+r+1)/(r-1)).
// ---------------------------------------------------------------------------
struct AflBound {
  int value = 0;
  bool prime_hypothesis = true;  // the bound's theorem assumes r prime
};

inline AflBound afl_lower_bound(int c, int r) {
  if (r < 2) throw input_error("afl_lower_bound: r must be >= 2");
  AflBound out;
  out.prime_hypothesis = is_prime(r);
  out.value = c <= -2 ? 0 : static_cast<int>(ceil_div(c + r + 1, r - 1));
  return out;
}

}  // namespace kneser
