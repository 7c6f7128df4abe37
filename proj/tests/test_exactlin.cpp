#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modsuper/field.hpp"
#include "modsuper/jordan.hpp"
#include "modsuper/matrix.hpp"
#include "modsuper/poly.hpp"

using namespace modsuper;

namespace {

// independent row-reduction rank oracle: plain textbook elimination, no
// shared code with Matrix::row_reduce
int rank_oracle(const Matrix& A) {
  const FieldCtx& F = *A.field();
  std::vector<std::vector<Scalar>> m(A.rows(), std::vector<Scalar>(A.cols()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) m[i][j] = A.at(i, j);
  int r = 0;
  for (int c = 0; c < A.cols(); ++c) {
    int piv = -1;
    for (int i = r; i < A.rows(); ++i)
      if (!F.is_zero(m[i][c])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = 0; i < A.rows(); ++i) {
      if (i == r || F.is_zero(m[i][c])) continue;
      Scalar f = F.div(m[i][c], m[r][c]);
      for (int j = 0; j < A.cols(); ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

Matrix random_matrix(FieldPtr F, int rows, int cols, std::mt19937_64& rng) {
  Matrix m(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, F->random(rng));
  return m;
}

Poly poly_of_ints(FieldPtr F, std::initializer_list<long> cs) {
  std::vector<Scalar> v;
  for (long c : cs) v.push_back(F->from_int(c));
  return poly_from(F, v);
}

}  // namespace

TEST_CASE("field axioms on random elements") {
  for (long p : {3L, 5L, 7L}) {
    for (int k : {1, 2}) {
      auto F = make_field(p, k);
      std::mt19937_64 rng(42);
      for (int t = 0; t < 200; ++t) {
        Scalar a = F->random(rng), b = F->random(rng), c = F->random(rng);
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        CHECK(F->add(a, F->neg(a)) == F->zero());
        if (!F->is_zero(a)) CHECK(F->mul(a, F->inv(a)) == F->one());
      }
    }
  }
}

TEST_CASE("frobenius is a bijection with exact inverse") {
  for (long p : {3L, 5L, 7L}) {
    for (int k : {1, 2}) {
      auto F = make_field(p, k);
      std::mt19937_64 rng(7);
      for (int t = 0; t < 1000; ++t) {
        Scalar a = F->random(rng);
        CHECK(F->pow(F->frobenius_root(a), p) == a);
        CHECK(F->frobenius_root(F->frobenius(a)) == a);
      }
    }
  }
}

TEST_CASE("frobenius_root fixed points and exhaustive oracle in F_9") {
  auto F = make_field(3, 2);
  CHECK(F->frobenius_root(F->zero()) == F->zero());
  CHECK(F->frobenius_root(F->one()) == F->one());
  // exhaustive oracle: search all 9 elements for the cube root
  for (std::uint64_t i = 0; i < F->size(); ++i) {
    Scalar a = F->element(i);
    Scalar found = F->zero();
    int hits = 0;
    for (std::uint64_t j = 0; j < F->size(); ++j) {
      Scalar b = F->element(j);
      if (F->pow(b, 3) == a) {
        found = b;
        ++hits;
      }
    }
    CHECK(hits == 1);
    CHECK(F->frobenius_root(a) == found);
  }
}

TEST_CASE("modulus irreducibility is enforced") {
  // x^2 - 1 = (x-1)(x+1) over F_5
  CHECK_THROWS(FieldCtx(5, 2, std::vector<long>{4, 0, 1}));
  CHECK(is_irreducible_mod_p({2, 0, 1}, 5));   // x^2 + 2 over F_5
  CHECK(!is_irreducible_mod_p({4, 0, 1}, 5));  // x^2 - 1
  CHECK_THROWS(FieldCtx(4, 1));                // p must be prime
  CHECK_THROWS(FieldCtx(2, 1));                // p must be odd
}

TEST_CASE("scalar coefficient round trip and json header") {
  auto F = make_field(7, 2);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    Scalar a = F->random(rng);
    CHECK(F->from_coeffs(F->coeffs(a)) == a);
  }
  auto G = FieldCtx::from_header(F->header_json());
  CHECK(G->same_field(*F));
}

TEST_CASE("kernel of the zero map and of the identity") {
  auto F = make_field(5);
  Matrix Z(F, 3, 3);
  CHECK(kernel_basis(Z).size() == 3);
  CHECK(kernel_basis(Matrix::identity(F, 4)).empty());
}

TEST_CASE("rank plus kernel dimension equals column count") {
  auto F3 = make_field(3);
  std::mt19937_64 rng(123);
  for (int t = 0; t < 40; ++t) {
    Matrix A = random_matrix(F3, 5, 5, rng);
    int r = rank_oracle(A);
    CHECK(rank(A) == r);
    auto kb = kernel_basis(A);
    CHECK(static_cast<int>(kb.size()) == 5 - r);
    for (const Vec& v : kb) CHECK(vec_is_zero(A.apply(v)));
  }
}

TEST_CASE("matrix json round trip is bit exact") {
  auto F = make_field(3, 2);
  std::mt19937_64 rng(9);
  Matrix A = random_matrix(F, 4, 6, rng);
  auto j = A.to_json();
  Matrix B = Matrix::from_json(j);
  CHECK(A == B);
  CHECK(j.dump() == B.to_json().dump());
}

TEST_CASE("charpoly and minpoly agree with small cases") {
  auto F = make_field(5);
  // companion matrix of x^3 + 2x + 1
  Matrix C(F, 3, 3);
  C.set(0, 2, F->from_int(-1));
  C.set(1, 0, F->one());
  C.set(1, 2, F->from_int(-2));
  C.set(2, 1, F->one());
  Poly target = poly_of_ints(F, {1, 2, 0, 1});
  Poly cp = poly_from(F, charpoly(C));
  CHECK(cp == target);
  CHECK(minpoly(C) == target);

  Matrix I = Matrix::identity(F, 4);
  Poly mp = minpoly(I);
  CHECK(mp == poly_of_ints(F, {-1, 1}));
}

TEST_CASE("poly factorization recovers known factors") {
  auto F = make_field(3);
  // f = (x+1)^2 (x^2+1) over F_3, x^2+1 irreducible
  Poly f = poly_mul(poly_mul(poly_of_ints(F, {1, 1}), poly_of_ints(F, {1, 1})),
                    poly_of_ints(F, {1, 0, 1}));
  auto fs = poly_factor(f);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == poly_of_ints(F, {1, 1}));
  CHECK(fs[0].multiplicity == 2);
  CHECK(fs[1].factor == poly_of_ints(F, {1, 0, 1}));
  CHECK(fs[1].multiplicity == 1);
  CHECK(poly_radical(f) == poly_mul(poly_of_ints(F, {1, 1}), poly_of_ints(F, {1, 0, 1})));
}

TEST_CASE("poly factorization handles p-th powers") {
  auto F = make_field(3);
  Poly g = poly_of_ints(F, {1, 1});
  Poly f = poly_const(F, F->one());
  for (int i = 0; i < 6; ++i) f = poly_mul(f, g);  // (x+1)^6, 6 = 2*3
  auto fs = poly_factor(f);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].factor == g);
  CHECK(fs[0].multiplicity == 6);
}

TEST_CASE("random poly factorization sanity across fields") {
  for (long p : {3L, 5L}) {
    for (int k : {1, 2}) {
      auto F = make_field(p, k);
      std::mt19937_64 rng(1000 * p + k);
      for (int t = 0; t < 20; ++t) {
        int deg = 1 + static_cast<int>(rng() % 7);
        std::vector<Scalar> cs(deg + 1);
        for (int i = 0; i < deg; ++i) cs[i] = F->random(rng);
        cs[deg] = F->one();
        Poly f = poly_from(F, cs);
        auto fs = poly_factor(f);
        Poly prod = poly_const(F, F->one());
        for (auto& pf : fs) {
          CHECK(poly_is_irreducible(pf.factor));
          for (int i = 0; i < pf.multiplicity; ++i) prod = poly_mul(prod, pf.factor);
        }
        CHECK(prod == f);
      }
    }
  }
}

TEST_CASE("nilpotent jordan of the zero matrix and of a single block") {
  auto F = make_field(5);
  Matrix Z(F, 3, 3);
  auto jd = nilpotent_jordan(Z);
  CHECK(jd.partition == std::vector<int>{1, 1, 1});

  Matrix J(F, 3, 3);
  J.set(0, 1, F->one());
  J.set(1, 2, F->one());
  auto jd2 = nilpotent_jordan(J);
  CHECK(jd2.partition == std::vector<int>{3});

  Matrix NotNil = Matrix::identity(F, 2);
  CHECK_THROWS(nilpotent_jordan(NotNil));
}

TEST_CASE("jordan chain basis reconstructs block structure") {
  auto F = make_field(3);
  std::mt19937_64 rng(77);
  for (int t = 0; t < 25; ++t) {
    // random strictly upper triangular => nilpotent
    int n = 4 + static_cast<int>(rng() % 3);
    Matrix X(F, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) X.set(i, j, F->random(rng));
    auto jd = nilpotent_jordan(X);
    int sum = 0;
    for (size_t i = 0; i + 1 < jd.partition.size(); ++i)
      CHECK(jd.partition[i] >= jd.partition[i + 1]);
    for (int l : jd.partition) sum += l;
    CHECK(sum == n);
    // in the chain basis, X must be exactly the direct sum of Jordan blocks
    Matrix B = chain_basis_matrix(X, jd);
    Matrix Xc = inverse(B) * X * B;
    int off = 0;
    Matrix expect(F, n, n);
    for (int l : jd.partition) {
      for (int j = 0; j + 1 < l; ++j) expect.set(off + j, off + j + 1, F->one());
      off += l;
    }
    CHECK(Xc == expect);
  }
}

TEST_CASE("jordan chevalley on nilpotent and diagonal inputs") {
  auto F = make_field(5);
  Matrix X(F, 3, 3);
  X.set(0, 1, F->one());
  auto jc = jordan_chevalley(X);
  CHECK(jc.S.is_zero());
  CHECK(jc.N == X);

  Matrix D(F, 3, 3);
  D.set(0, 0, F->from_int(2));
  D.set(1, 1, F->from_int(3));
  D.set(2, 2, F->from_int(3));
  auto jc2 = jordan_chevalley(D);
  CHECK(jc2.S == D);
  CHECK(jc2.N.is_zero());
}

TEST_CASE("jordan chevalley matches minimal polynomial oracle on 2x2 repeated eigenvalue") {
  auto F = make_field(5);
  // A = [[2,1],[0,2]]: S must be 2*I and N the strictly upper part.
  Matrix A(F, 2, 2);
  A.set(0, 0, F->from_int(2));
  A.set(0, 1, F->one());
  A.set(1, 1, F->from_int(2));
  // oracle: minpoly = (x-2)^2; factor explicitly and build S by interpolation:
  // single eigenvalue 2 => S = 2I exactly.
  Poly mp = minpoly(A);
  auto fs = poly_factor(mp);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].factor == poly_of_ints(F, {-2, 1}));
  CHECK(fs[0].multiplicity == 2);
  Matrix S_oracle = Matrix::identity(F, 2).scaled(F->from_int(2));

  auto jc = jordan_chevalley(A);
  CHECK(jc.S == S_oracle);
  CHECK(jc.N == A - S_oracle);
}

TEST_CASE("jordan chevalley properties on random matrices") {
  for (long p : {3L, 5L}) {
    auto F = make_field(p);
    std::mt19937_64 rng(31 * p);
    for (int t = 0; t < 15; ++t) {
      int n = 2 + static_cast<int>(rng() % 4);
      Matrix A(F, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.set(i, j, F->random(rng));
      auto jc = jordan_chevalley(A);
      CHECK(jc.S + jc.N == A);
      CHECK(jc.S * jc.N == jc.N * jc.S);
      CHECK(matrix_pow(jc.N, n).is_zero());
      // minimal polynomial of S is squarefree: gcd(m, m') = 1
      Poly m = minpoly(jc.S);
      CHECK(poly_gcd(m, poly_derivative(m)).deg() == 0);
    }
  }
}

TEST_CASE("crt idempotents from a factored minimal polynomial") {
  auto F = make_field(5);
  // A diagonal with eigenvalues 1,1,2 -> K[A] has two blocks
  Matrix A(F, 3, 3);
  A.set(0, 0, F->one());
  A.set(1, 1, F->one());
  A.set(2, 2, F->from_int(2));
  Poly m = minpoly(A);
  auto fs = poly_factor(m);
  REQUIRE(fs.size() == 2);
  auto es = crt_idempotent_polys(fs);
  Matrix E0 = poly_eval_matrix(es[0], A);
  Matrix E1 = poly_eval_matrix(es[1], A);
  CHECK(E0 * E0 == E0);
  CHECK(E1 * E1 == E1);
  CHECK((E0 * E1).is_zero());
  CHECK(E0 + E1 == Matrix::identity(F, 3));
}
