#include "modsuper/matrix.hpp"

#include <stdexcept>

namespace modsuper {

Matrix Matrix::identity(FieldPtr F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, F->one());
  return m;
}

Matrix Matrix::from_rows(FieldPtr F, const std::vector<Vec>& rows, int cols) {
  Matrix m(F, static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (int j = 0; j < cols; ++j) m.set(static_cast<int>(i), j, rows[i][j]);
  }
  return m;
}

Vec Matrix::row(int i) const {
  Vec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec Matrix::col(int j) const {
  Vec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix+: shape mismatch");
  Matrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix-: shape mismatch");
  Matrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
  Matrix r(F_, rows_, o.cols_);
  const FieldCtx& F = *F_;
  for (int i = 0; i < rows_; ++i) {
    for (int l = 0; l < cols_; ++l) {
      Scalar c = at(i, l);
      if (F.is_zero(c)) continue;
      size_t ro = static_cast<size_t>(i) * o.cols_;
      size_t lo = static_cast<size_t>(l) * o.cols_;
      for (int j = 0; j < o.cols_; ++j)
        r.a_[ro + j] = F.add(r.a_[ro + j], F.mul(c, o.a_[lo + j]));
    }
  }
  return r;
}

Matrix Matrix::scaled(Scalar c) const {
  Matrix r(F_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->mul(c, a_[i]);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Scalar Matrix::trace() const {
  Scalar t = F_->zero();
  for (int i = 0; i < rows_ && i < cols_; ++i) t = F_->add(t, at(i, i));
  return t;
}

bool Matrix::is_zero() const {
  for (auto s : a_)
    if (s.v != 0) return false;
  return true;
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Matrix::apply: size");
  const FieldCtx& F = *F_;
  Vec r(rows_, F.zero());
  for (int i = 0; i < rows_; ++i) {
    Scalar acc = F.zero();
    size_t off = static_cast<size_t>(i) * cols_;
    for (int j = 0; j < cols_; ++j) {
      if (a_[off + j].v != 0 && v[j].v != 0) acc = F.add(acc, F.mul(a_[off + j], v[j]));
    }
    r[i] = acc;
  }
  return r;
}

void Matrix::add_in_place(const Matrix& o, Scalar c) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add_in_place: shape");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] = F_->add(a_[i], F_->mul(c, o.a_[i]));
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < rows_; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < cols_; ++j) r.push_back(F_->coeffs(at(i, j)));
    rows.push_back(r);
  }
  return nlohmann::json{{"field", F_->header_json()}, {"rows", rows_}, {"cols", cols_}, {"entries", rows}};
}

Matrix Matrix::from_json(const nlohmann::json& j) {
  FieldPtr F = FieldCtx::from_header(j.at("field"));
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  Matrix m(F, rows, cols);
  const auto& e = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m.set(i, c, F->from_coeffs(e.at(i).at(c).get<std::vector<long>>()));
  return m;
}

Matrix matrix_pow(const Matrix& A, std::uint64_t e) {
  Matrix r = Matrix::identity(A.field(), A.rows());
  Matrix base = A;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Echelon row_reduce(const Matrix& A) {
  const FieldCtx& F = *A.field();
  Echelon e;
  e.rref = A;
  Matrix& M = e.rref;
  int r = 0;
  for (int c = 0; c < M.cols() && r < M.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < M.rows(); ++i)
      if (!F.is_zero(M.at(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols(); ++j) {
        Scalar t = M.at(r, j);
        M.set(r, j, M.at(piv, j));
        M.set(piv, j, t);
      }
    Scalar iv = F.inv(M.at(r, c));
    for (int j = c; j < M.cols(); ++j) M.set(r, j, F.mul(iv, M.at(r, j)));
    for (int i = 0; i < M.rows(); ++i) {
      if (i == r) continue;
      Scalar f = M.at(i, c);
      if (F.is_zero(f)) continue;
      for (int j = c; j < M.cols(); ++j) M.set(i, j, F.sub(M.at(i, j), F.mul(f, M.at(r, j))));
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

int rank(const Matrix& A) { return row_reduce(A).rank; }

std::vector<Vec> kernel_basis(const Matrix& A) {
  const FieldCtx& F = *A.field();
  Echelon e = row_reduce(A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < A.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v(A.cols(), F.zero());
    v[c] = F.one();
    for (int r = 0; r < e.rank; ++r) v[e.pivots[r]] = F.neg(e.rref.at(r, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve(const Matrix& A, const Vec& b, Vec& x) {
  const FieldCtx& F = *A.field();
  Matrix aug(A.field(), A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.set(i, j, A.at(i, j));
    aug.set(i, A.cols(), b[i]);
  }
  Echelon e = row_reduce(aug);
  x.assign(A.cols(), F.zero());
  for (int r = 0; r < e.rank; ++r) {
    if (e.pivots[r] == A.cols()) return false;  // row (0...0 | 1)
    x[e.pivots[r]] = e.rref.at(r, A.cols());
  }
  return true;
}

Matrix inverse(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse: not square");
  const FieldCtx& F = *A.field();
  int n = A.rows();
  Matrix aug(A.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.set(i, j, A.at(i, j));
    aug.set(i, n + i, F.one());
  }
  Echelon e = row_reduce(aug);
  if (e.rank < n || e.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  Matrix inv(A.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, e.rref.at(i, n + j));
  return inv;
}

std::vector<Scalar> charpoly(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("charpoly: not square");
  const FieldCtx& F = *A.field();
  int n = A.rows();
  // Hessenberg reduction, then the standard three-term recurrence on leading
  // principal characteristic polynomials.
  Matrix H = A;
  for (int c = 0; c < n - 2; ++c) {
    int piv = -1;
    for (int i = c + 1; i < n; ++i)
      if (!F.is_zero(H.at(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      for (int j = 0; j < n; ++j) {
        Scalar t = H.at(c + 1, j);
        H.set(c + 1, j, H.at(piv, j));
        H.set(piv, j, t);
      }
      for (int i = 0; i < n; ++i) {
        Scalar t = H.at(i, c + 1);
        H.set(i, c + 1, H.at(i, piv));
        H.set(i, piv, t);
      }
    }
    Scalar d = F.inv(H.at(c + 1, c));
    for (int i = c + 2; i < n; ++i) {
      Scalar f = F.mul(H.at(i, c), d);
      if (F.is_zero(f)) continue;
      for (int j = 0; j < n; ++j) H.set(i, j, F.sub(H.at(i, j), F.mul(f, H.at(c + 1, j))));
      for (int r = 0; r < n; ++r) H.set(r, c + 1, F.add(H.at(r, c + 1), F.mul(f, H.at(r, i))));
    }
  }
  // p_0 = 1; p_m(x) = (x - H[m-1][m-1]) p_{m-1} - sum_k H[k-1][m-1] (prod subdiag) p_{k-1}
  std::vector<std::vector<Scalar>> P(n + 1);
  P[0] = {F.one()};
  for (int m = 1; m <= n; ++m) {
    std::vector<Scalar> pm(m + 1, F.zero());
    const auto& prev = P[m - 1];
    for (size_t i = 0; i < prev.size(); ++i) {
      pm[i + 1] = F.add(pm[i + 1], prev[i]);
      pm[i] = F.sub(pm[i], F.mul(H.at(m - 1, m - 1), prev[i]));
    }
    Scalar beta = F.one();
    for (int k = m - 1; k >= 1; --k) {
      beta = F.mul(beta, H.at(k, k - 1));
      if (F.is_zero(beta)) break;
      Scalar coef = F.mul(beta, H.at(k - 1, m - 1));
      if (F.is_zero(coef)) continue;
      const auto& pk = P[k - 1];
      for (size_t i = 0; i < pk.size(); ++i) pm[i] = F.sub(pm[i], F.mul(coef, pk[i]));
    }
    P[m] = std::move(pm);
  }
  return P[n];
}

bool RowSpan::insert(Vec v) {
  const FieldCtx& F = *F_;
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = v[pivots_[r]];
    if (!F.is_zero(c)) vec_axpy(F, v, F.neg(c), rows_[r]);
  }
  int piv = -1;
  for (int j = 0; j < width_; ++j)
    if (!F.is_zero(v[j])) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  Scalar iv = F.inv(v[piv]);
  for (auto& s : v) s = F.mul(iv, s);
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = rows_[r][piv];
    if (!F.is_zero(c)) vec_axpy(F, rows_[r], F.neg(c), v);
  }
  // keep rows ordered by pivot for deterministic output
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

Vec RowSpan::reduce(Vec v) const {
  const FieldCtx& F = *F_;
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = v[pivots_[r]];
    if (!F.is_zero(c)) vec_axpy(F, v, F.neg(c), rows_[r]);
  }
  return v;
}

bool RowSpan::contains(Vec v) const { return vec_is_zero(reduce(std::move(v))); }

Vec RowSpan::coordinates(const Vec& v) const {
  const FieldCtx& F = *F_;
  Vec w = v;
  Vec coord(rows_.size(), F.zero());
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = w[pivots_[r]];
    coord[r] = c;
    if (!F.is_zero(c)) vec_axpy(F, w, F.neg(c), rows_[r]);
  }
  if (!vec_is_zero(w)) throw std::domain_error("RowSpan::coordinates: vector not in span");
  return coord;
}

bool TrackedSpan::insert(Vec v, Vec coord) {
  const FieldCtx& F = *F_;
  if (static_cast<int>(coord.size()) != coord_len_)
    throw std::invalid_argument("TrackedSpan::insert: coordinate length mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = v[pivots_[r]];
    if (!F.is_zero(c)) {
      Scalar nc = F.neg(c);
      vec_axpy(F, v, nc, rows_[r]);
      vec_axpy(F, coord, nc, coords_[r]);
    }
  }
  int piv = -1;
  for (int j = 0; j < width_; ++j)
    if (!F.is_zero(v[j])) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  Scalar iv = F.inv(v[piv]);
  for (auto& s : v) s = F.mul(iv, s);
  for (auto& s : coord) s = F.mul(iv, s);
  rows_.push_back(std::move(v));
  coords_.push_back(std::move(coord));
  pivots_.push_back(piv);
  return true;
}

bool TrackedSpan::express(const Vec& v, Vec& coords_out) const {
  const FieldCtx& F = *F_;
  Vec w = v;
  coords_out.assign(coord_len_, F.zero());
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = w[pivots_[r]];
    if (!F.is_zero(c)) {
      vec_axpy(F, w, F.neg(c), rows_[r]);
      vec_axpy(F, coords_out, c, coords_[r]);
    }
  }
  return vec_is_zero(w);
}

bool TrackedSpan::contains(const Vec& v) const {
  Vec dummy;
  return express(v, dummy);
}

Vec vec_zero(int n) { return Vec(n, Scalar{0}); }

Vec vec_unit(const FieldCtx& F, int n, int i) {
  Vec v(n, F.zero());
  v[i] = F.one();
  return v;
}

bool vec_is_zero(const Vec& v) {
  for (auto s : v)
    if (s.v != 0) return false;
  return true;
}

Vec vec_add(const FieldCtx& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const FieldCtx& F, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const FieldCtx& F, Scalar c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  return r;
}

void vec_axpy(const FieldCtx& F, Vec& y, Scalar c, const Vec& x) {
  if (F.is_zero(c)) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (x[i].v != 0) y[i] = F.add(y[i], F.mul(c, x[i]));
}

Scalar vec_dot(const FieldCtx& F, const Vec& a, const Vec& b) {
  Scalar t = F.zero();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].v != 0 && b[i].v != 0) t = F.add(t, F.mul(a[i], b[i]));
  return t;
}

}  // namespace modsuper
