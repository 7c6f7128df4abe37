#ifndef MODSUPER_POLY_HPP
#define MODSUPER_POLY_HPP

#include <utility>
#include <vector>

#include "modsuper/matrix.hpp"

namespace modsuper {

/// Dense polynomial over F_{p^k}; coefficients lowest degree first, no
/// trailing zeros. The zero polynomial is the empty vector.
struct Poly {
  FieldPtr F;
  std::vector<Scalar> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == F->one(); }
  Scalar lead() const { return c.back(); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

Poly poly_zero(FieldPtr F);
Poly poly_const(FieldPtr F, Scalar s);
Poly poly_x(FieldPtr F);
Poly poly_from(FieldPtr F, std::vector<Scalar> coeffs);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(Scalar s, const Poly& a);
Poly poly_monic(const Poly& a);
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_derivative(const Poly& a);
Scalar poly_eval(const Poly& a, Scalar x);
Poly poly_pow_mod(const Poly& base, std::uint64_t e, const Poly& mod);

/// g, s, t with s*a + t*b = g = gcd(a,b) (g monic).
struct PolyEgcd {
  Poly g, s, t;
};
PolyEgcd poly_egcd(const Poly& a, const Poly& b);

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity;
};

/// Full factorization into monic irreducibles (char-p squarefree split plus
/// Berlekamp). Deterministic ordering: by degree, then coefficient indices.
std::vector<PolyFactor> poly_factor(const Poly& f);

/// Product of the distinct monic irreducible factors.
Poly poly_radical(const Poly& f);

bool poly_is_irreducible(const Poly& f);

/// Minimal polynomial of a square matrix (Krylov over standard basis vectors).
Poly minpoly(const Matrix& A);
/// Minimal polynomial of A on the cyclic subspace generated by v.
Poly minpoly_on_vector(const Matrix& A, const Vec& v);

/// Horner evaluation of f at a square matrix.
Matrix poly_eval_matrix(const Poly& f, const Matrix& A);

/// For f = prod f_i^{m_i} (the given coprime factorization), returns
/// polynomials e_i with e_i = 1 mod f_i^{m_i}, e_i = 0 mod f_j^{m_j} (j != i);
/// the images e_i(a) are orthogonal idempotents summing to 1 in K[a]/(f).
std::vector<Poly> crt_idempotent_polys(const std::vector<PolyFactor>& factors);

}  // namespace modsuper

#endif
