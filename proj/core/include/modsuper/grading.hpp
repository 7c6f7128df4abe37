#ifndef MODSUPER_GRADING_HPP
#define MODSUPER_GRADING_HPP

#include "modsuper/errors.hpp"
#include "modsuper/jordan.hpp"
#include "modsuper/superalgebra.hpp"

namespace modsuper {

/// Integer grading of the algebra induced by a nilpotent even element of the
/// matrix model, carried by a change of basis to a graded basis.
struct ZGrading {
  AlgebraPtr original;
  AlgebraPtr graded;                 // same algebra on the graded basis
  std::vector<Vec> change_of_basis;  // graded basis vectors in original coordinates
  std::vector<int> g_degrees;        // degree per graded basis element
  std::vector<int> v_degrees;        // degree per defining-space vector (chain order)
  Matrix chain_basis;                // columns: graded basis of V in standard coordinates
  Vec x_graded;                      // X in graded coordinates
  PChar chi_graded;

  std::vector<int> degree_block(int degree, int parity) const;
  std::pair<int, int> block_dims(int degree) const;  // (even, odd)
};

/// Degrees 2j + 1 - lambda_i for the chain vectors X^j v_i, aligned with the
/// column order of chain_basis_matrix (top of each chain first).
std::vector<int> grade_defining_space(const JordanData& jd);

/// Chain bases of the two parity summands adapted to the supersymmetric form:
/// the induced degrees satisfy phi(V(k), V(l)) = 0 unless k + l = 0.
/// The post-condition is verified exactly; failure after the retry budget is
/// reported by exception.
std::pair<JordanData, JordanData> osp_compatible_basis(const AlgebraPtr& g, const Matrix& Xmodel,
                                                       std::uint64_t seed = 1);

/// Full pipeline: Jordan data per parity (form-adapted for osp), defining
/// space degrees, and the graded basis of g obtained by slicing the matrix
/// model into degree blocks. Throws when the slices do not exhaust g.
ZGrading induce_grading(const AlgebraPtr& g, const Vec& X, std::uint64_t seed = 1);

struct GradingReport {
  bool x_in_degree_two = false;
  bool form_pairing = false;       // (g(k), g(l)) = 0 unless k + l = 0
  bool centralizer_graded = false;
  bool centralizer_nonnegative = false;
  bool dim_identity = false;       // dim g_X = dim g(0) + dim g(1), by parity
  bool bracket_surjectivity = false;  // [g(k-2)_i, X] = g(k)_i for k >= 2
  bool mirror_dims = false;        // dim g(k) = dim g(-k), by parity
  bool ok = false;
  std::string detail;
  std::pair<int, int> centralizer_dims;  // (even, odd)
};
GradingReport verify_grading(const ZGrading& z);

/// dim of the centralizer of a nilpotent with the given Jordan types:
/// even part sum min(l_i, l_j) over both partitions, odd part
/// 2 sum min(l^0_i, l^1_j).
std::pair<int, int> centralizer_dims_by_partition(const std::vector<int>& pi0,
                                                  const std::vector<int>& pi1);

/// m and m' from the grading: everything in degrees <= -2 plus a maximal
/// isotropic half of g(-1), with the odd (-1)-block normalized so the
/// symmetric form is anti-diagonal. The algebra is rebased so that m and m'
/// are coordinate subalgebras.
struct MPair {
  AlgebraPtr algebra;   // graded algebra in the (-1)-adapted basis
  PChar chi;            // transported character
  std::vector<int> degrees;
  std::vector<int> m_indices;
  std::vector<int> m_prime_indices;
  std::vector<int> g_minus1_iso;  // indices of the isotropic half inside g(-1)
  Matrix skew_gram;               // form <x,y> = chi([x,y]) on the adapted g(-1) basis
  int r_odd = 0;
  Scalar middle_norm{0};  // self-pairing of the middle odd vector (1 when a root exists)
  std::uint64_t dim_u_m = 1;
  std::uint64_t dim_u_m_prime = 1;

  // adapted basis vectors expressed in the coordinates of the algebra the
  // grading was built from
  std::vector<Vec> basis_in_original;

  Subalgebra m_sub() const;
  Subalgebra m_prime_sub() const;
  /// m as a subalgebra of the original (ungraded-basis) algebra.
  Subalgebra m_sub_of(const AlgebraPtr& original) const;
};
MPair build_m(const ZGrading& z);

}  // namespace modsuper

#endif
