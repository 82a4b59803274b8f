// tucker.hpp - mechanical certificate checker for the equivariant labeling
// underlying the chromatic lower bound: builds the lambda map from a proper
// coloring and verifies equivariance and both chain conditions over all faces
// of E_{n-1}(Zp).
#pragma once

#include "kneser/coloring.hpp"
#include "kneser/scomplex.hpp"

namespace kneser {

// Total order on subsets of [1..n]: by cardinality, ties by colexicographic
// comparison (the larger set is the one owning the largest differing element).
struct SubsetOrder {
  static bool less(std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    std::uint64_t d = a ^ b;
    if (d == 0) return false;
    int hb = 63 - std::countl_zero(d);
    return (b >> hb) & 1;
  }
};

struct TuckerParams {
  int p = 0, n = 0, k = 0;
  Partition blocks;
  int t = 0;

  TuckerParams(int prime, int ground, int subset_size, Partition part, int colors)
      : p(prime), n(ground), k(subset_size), blocks(std::move(part)), t(colors) {
    if (!is_prime(p)) throw input_error("TuckerParams: p must be prime");
    if (blocks.n != n) throw input_error("TuckerParams: partition ground-set mismatch");
    if (blocks.max_block_size() > p)
      throw input_error("TuckerParams: blocks must have size <= p");
    if (t < 1 || k < 1) throw input_error("TuckerParams: bad sizes");
  }

  int alpha() const { return p * (k - 1); }
  int m() const { return alpha() + t; }
};

struct LambdaValue {
  int l1 = 0;  // element of Zp
  int l2 = 0;  // index in [1..m]
  friend bool operator==(const LambdaValue& a, const LambdaValue& b) {
    return a.l1 == b.l1 && a.l2 == b.l2;
  }
};

// The order-maximal subset B of A whose sign classes are all admissible.
// Since positions are distinct within a face, this is computed cell-wise:
// for each (sign, block) keep exactly the largest position present.
inline ZpFace max_admissible_subset(const ZpFace& A, const Partition& blocks) {
  ZpFace B(A.p, A.n());
  for (int j = 0; j < blocks.block_count(); ++j) {
    std::vector<int> best(A.p, 0);  // largest element per sign in this block
    for (int x : blocks.blocks[j]) {
      int sign = A.sign[x - 1];
      if (sign >= 0) best[sign] = x;
    }
    for (int i = 0; i < A.p; ++i)
      if (best[i] > 0) B.sign[best[i] - 1] = static_cast<std::int8_t>(i);
  }
  return B;
}

// The Zp invariant of an admissible face: restrict B to its first occupied
// block, giving pairs (i_1,j_1),...,(i_h,j_h) by position; the value is i_1
// when h = p and otherwise h' * (i_1 + ... + i_h) mod p with h*h' = 1 mod p.
inline int p_invariant(const ZpFace& B, const Partition& blocks) {
  const int p = B.p;
  for (int j = 0; j < blocks.block_count(); ++j) {
    std::vector<int> signs;
    for (int x : blocks.blocks[j])
      if (B.sign[x - 1] >= 0) signs.push_back(B.sign[x - 1]);
    if (signs.empty()) continue;
    int h = static_cast<int>(signs.size());
    if (h == p) return signs[0];
    int hinv = 1;
    for (int c = 1; c < p; ++c)
      if ((h * c) % p == 1) hinv = c;
    int sum = 0;
    for (int s : signs) sum += s;
    return (hinv * sum) % p;
  }
  throw input_error("p_invariant: face is empty");
}

// lambda(A): with B the maximal admissible subset, either (invariant, |B|)
// when |B| <= alpha, or (i, c(F) + alpha) where F is the order-smallest
// admissible k-subset of some sign class B^i.
inline LambdaValue lambda_map(const ZpFace& A, const TuckerParams& params,
                              const Coloring& coloring,
                              const std::vector<KSubset>& verts) {
  ZpFace B = max_admissible_subset(A, params.blocks);
  int size = B.size();
  if (size <= params.alpha()) return {p_invariant(B, params.blocks), size};

  std::uint64_t best = 0;
  int owner = -1;
  for (int i = 0; i < params.p; ++i) {
    std::uint64_t cls = 0;
    for (int x = 1; x <= params.n; ++x)
      if (B.sign[x - 1] == i) cls |= std::uint64_t{1} << (x - 1);
    if (std::popcount(cls) < params.k) continue;
    // order-smallest k-subset of a set: its k smallest elements
    std::uint64_t f = 0;
    std::uint64_t rest = cls;
    for (int c = 0; c < params.k; ++c) {
      f |= rest & (~rest + 1);
      rest &= rest - 1;
    }
    if (owner < 0 || SubsetOrder::less(f, best)) {
      best = f;
      owner = i;
    }
  }
  if (owner < 0)
    throw std::logic_error("lambda_map: no sign class of size k despite |B| > alpha");
  KSubset F(params.n, best);
  auto it = std::lower_bound(verts.begin(), verts.end(), F);
  if (it == verts.end() || !(*it == F))
    throw std::logic_error("lambda_map: chosen subset is not a vertex");
  int color = coloring.color[static_cast<std::size_t>(it - verts.begin())];
  return {owner, color + params.alpha()};
}

// ---------------------------------------------------------------------------
// Full certificate run
// ---------------------------------------------------------------------------
struct TuckerViolation {
  std::vector<std::string> faces;  // the offending face or chain
  std::string detail;
};

struct TuckerReport {
  bool pass = false;
  long long faces = 0;
  int alpha = 0, m = 0;
  bool equivariance_ok = false, cond1_ok = false, cond2_ok = false;
  long long inequality_lhs = 0, inequality_rhs = 0;
  bool inequality_holds = false;
  std::optional<TuckerViolation> equivariance_violation;
  std::optional<TuckerViolation> cond1_violation;
  std::optional<TuckerViolation> cond2_violation;
};

// Enumerates every nonempty face of E_{n-1}(Zp), computes lambda, and checks
// equivariance, both chain conditions, and the dimension-count inequality
// alpha + (m - alpha)(p - 1) >= n.
inline TuckerReport verify_tucker_conditions(const TuckerParams& params,
                                             const Coloring& coloring,
                                             const Budget& budget = {}) {
  const int p = params.p, n = params.n;
  auto spec = HypergraphSpec::partition(n, params.k, p, params.blocks);
  auto verts = enumerate_vertices(spec);
  check_total(spec, coloring, verts);
  if (coloring.t != params.t)
    throw input_error("verify_tucker_conditions: color count mismatch");

  auto faces = enumerate_E_faces(n, p, budget);
  TuckerReport rep;
  rep.faces = static_cast<long long>(faces.size());
  rep.alpha = params.alpha();
  rep.m = params.m();

  std::uint64_t id_count = 1;
  for (int j = 0; j < n; ++j) id_count *= p + 1;
  std::vector<LambdaValue> lam(id_count, LambdaValue{-1, -1});
  for (const auto& f : faces) lam[zp_face_id(f)] = lambda_map(f, params, coloring, verts);

  // equivariance: lambda(w.A) = (lambda_1(A) + w, lambda_2(A))
  rep.equivariance_ok = true;
  for (const auto& f : faces) {
    LambdaValue base = lam[zp_face_id(f)];
    for (int w = 1; w < p && rep.equivariance_ok; ++w) {
      LambdaValue moved = lam[zp_face_id(zp_act(w, f))];
      LambdaValue expect{(base.l1 + w) % p, base.l2};
      if (!(moved == expect)) {
        rep.equivariance_ok = false;
        rep.equivariance_violation =
            TuckerViolation{{f.str()}, "shift " + std::to_string(w)};
      }
    }
    if (!rep.equivariance_ok) break;
  }

  // bucket faces by lambda_2
  std::vector<std::vector<std::uint64_t>> classes(rep.m + 1);
  for (const auto& f : faces) classes[lam[zp_face_id(f)].l2].push_back(zp_face_id(f));

  // condition 1: comparable faces with equal lambda_2 <= alpha share lambda_1
  rep.cond1_ok = true;
  for (int v = 1; v <= rep.alpha && rep.cond1_ok; ++v) {
    const auto& cls = classes[v];
    for (std::size_t a = 0; a < cls.size() && rep.cond1_ok; ++a)
      for (std::size_t b = 0; b < cls.size(); ++b) {
        if (a == b) continue;
        ZpFace fa = zp_face_from_id(cls[a], n, p);
        ZpFace fb = zp_face_from_id(cls[b], n, p);
        if (!fa.subset_of(fb)) continue;
        if (lam[cls[a]].l1 != lam[cls[b]].l1) {
          rep.cond1_ok = false;
          rep.cond1_violation = TuckerViolation{
              {fa.str(), fb.str()},
              "lambda_1 differs on a comparable pair in class " + std::to_string(v)};
          break;
        }
      }
  }

  // condition 2: no chain A_1 c ... c A_p in one class > alpha with pairwise
  // distinct lambda_1
  rep.cond2_ok = true;
  for (int v = rep.alpha + 1; v <= rep.m && rep.cond2_ok; ++v) {
    auto cls = classes[v];
    std::sort(cls.begin(), cls.end(), [&](std::uint64_t x, std::uint64_t y) {
      ZpFace fx = zp_face_from_id(x, n, p), fy = zp_face_from_id(y, n, p);
      if (fx.size() != fy.size()) return fx.size() < fy.size();
      return x < y;
    });
    std::vector<ZpFace> cf;
    cf.reserve(cls.size());
    for (auto id : cls) cf.push_back(zp_face_from_id(id, n, p));
    std::vector<int> chain;
    std::uint32_t used = 0;
    auto dfs = [&](auto&& self, int last) -> bool {
      if (static_cast<int>(chain.size()) == p) {
        std::vector<std::string> names;
        for (int idx : chain) names.push_back(cf[idx].str());
        rep.cond2_violation = TuckerViolation{
            std::move(names),
            "chain with pairwise distinct lambda_1 in class " + std::to_string(v)};
        return true;
      }
      for (std::size_t j = last + 1; j < cf.size(); ++j) {
        int l1 = lam[cls[j]].l1;
        if (used & (1u << l1)) continue;
        if (last >= 0 && !cf[last].subset_of(cf[j])) continue;
        chain.push_back(static_cast<int>(j));
        used |= 1u << l1;
        if (self(self, static_cast<int>(j))) return true;
        used &= ~(1u << l1);
        chain.pop_back();
      }
      return false;
    };
    if (dfs(dfs, -1)) rep.cond2_ok = false;
  }

  rep.inequality_lhs =
      static_cast<long long>(rep.alpha) + static_cast<long long>(rep.m - rep.alpha) * (p - 1);
  rep.inequality_rhs = n;
  rep.inequality_holds = rep.inequality_lhs >= rep.inequality_rhs;
  rep.pass = rep.equivariance_ok && rep.cond1_ok && rep.cond2_ok && rep.inequality_holds;
  return rep;
}

}  // namespace kneser
