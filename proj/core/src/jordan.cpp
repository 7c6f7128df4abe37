#include "modsuper/jordan.hpp"

#include <algorithm>
#include <stdexcept>

namespace modsuper {

JordanData nilpotent_jordan(const Matrix& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("nilpotent_jordan: not square");
  const FieldCtx& F = *X.field();
  FieldPtr Fp = X.field();
  int n = X.rows();

  JordanData jd;
  jd.dim = n;
  if (n == 0) return jd;

  // kernel filtration K_j = ker X^j
  std::vector<std::vector<Vec>> kernels;  // kernels[j] = basis of ker X^{j+1}
  Matrix P = X;
  int L = 0;
  while (true) {
    auto kb = kernel_basis(P);
    kernels.push_back(kb);
    ++L;
    if (static_cast<int>(kb.size()) == n) break;
    if (L > n) throw std::invalid_argument("nilpotent_jordan: matrix is not nilpotent");
    P = P * X;
  }

  auto kernel_span = [&](int j) {  // span of ker X^j, j >= 0
    RowSpan s(Fp, n);
    if (j >= 1)
      for (const Vec& v : kernels[std::min(j, L) - 1]) s.insert(v);
    return s;
  };

  std::vector<std::pair<int, Vec>> chains;  // (length, head)
  for (int j = L; j >= 1; --j) {
    // span_j = K_{j-1} + X*K_{j+1}; heads of length-j chains extend it in K_j
    RowSpan span = kernel_span(j - 1);
    if (j < L)
      for (const Vec& v : kernels[std::min(j + 1, L) - 1]) span.insert(X.apply(v));
    for (const Vec& cand : kernels[j - 1]) {
      if (span.insert(cand)) chains.emplace_back(j, cand);
    }
  }
  std::stable_sort(chains.begin(), chains.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& [len, head] : chains) {
    jd.partition.push_back(len);
    jd.chain_heads.push_back(head);
  }

  // sanity: chain vectors form a basis
  RowSpan all(Fp, n);
  int count = 0;
  for (size_t i = 0; i < jd.chain_heads.size(); ++i) {
    Vec v = jd.chain_heads[i];
    for (int j = 0; j < jd.partition[i]; ++j) {
      if (!all.insert(v)) throw std::logic_error("nilpotent_jordan: chain vectors dependent");
      ++count;
      v = X.apply(v);
    }
    if (!vec_is_zero(v)) throw std::logic_error("nilpotent_jordan: chain does not terminate");
  }
  if (count != n) throw std::logic_error("nilpotent_jordan: chains do not span");
  (void)F;
  return jd;
}

Matrix chain_basis_matrix(const Matrix& X, const JordanData& jd) {
  int n = jd.dim;
  Matrix B(X.field(), n, n);
  int col = 0;
  for (size_t i = 0; i < jd.chain_heads.size(); ++i) {
    int len = jd.partition[i];
    // compute X^j v for j = 0..len-1, place highest power first
    std::vector<Vec> tower(len);
    tower[0] = jd.chain_heads[i];
    for (int j = 1; j < len; ++j) tower[j] = X.apply(tower[j - 1]);
    for (int j = len - 1; j >= 0; --j) {
      for (int r = 0; r < n; ++r) B.set(r, col, tower[j][r]);
      ++col;
    }
  }
  return B;
}

JordanChevalley jordan_chevalley(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("jordan_chevalley: not square");
  const FieldCtx& F = *A.field();
  FieldPtr Fp = A.field();
  int n = A.rows();
  if (n == 0) return {A, A};

  Poly m = minpoly(A);
  Poly rad = poly_radical(m);
  // Newton iteration S <- S - rad(S) * u(S), u = (rad')^{-1} mod rad
  PolyEgcd e = poly_egcd(poly_derivative(rad), rad);
  if (e.g.deg() != 0)
    throw std::logic_error("jordan_chevalley: radical not separable");  // impossible over F_q
  Poly u = e.s;  // u * rad' = 1 mod rad

  Matrix S = A;
  for (int iter = 0; iter <= 2 * n; ++iter) {
    Matrix val = poly_eval_matrix(rad, S);
    if (val.is_zero()) break;
    Matrix corr = val * poly_eval_matrix(u, S);
    S = S - corr;
  }
  if (!poly_eval_matrix(rad, S).is_zero())
    throw std::logic_error("jordan_chevalley: iteration did not converge");
  Matrix N = A - S;
  (void)F;
  (void)Fp;
  return {S, N};
}

}  // namespace modsuper
