#ifndef MODSUPER_SUPERALGEBRA_HPP
#define MODSUPER_SUPERALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modsuper/matrix.hpp"

namespace modsuper {

/// An even linear functional on g, given by its values on the even basis.
/// Extended by zero on the odd part.
struct PChar {
  Vec even_dual;

  bool is_zero() const { return vec_is_zero(even_dual); }
};

struct KWData {
  int d0 = 0;
  int d1 = 0;
  std::uint64_t divisor = 1;  // p^{d0/2} * 2^{ceil(d1/2)}
};

/// A finite-dimensional Lie superalgebra given by structure constants over a
/// fixed basis (even elements first), with restricted structure, an optional
/// invariant bilinear form and an optional supermatrix realization.
class LieSuperAlgebra {
 public:
  FieldPtr field;
  std::string family;  // gl | sl | ospB | ospC | ospD | osp12 | sub | ...
  std::vector<std::string> labels;
  std::vector<int> parity;  // nondecreasing 0/1
  int dim0 = 0, dim1 = 0;

  // sc[i][j] = coefficient vector of [b_i, b_j]
  std::vector<std::vector<Vec>> sc;
  // pmap[i] = coefficient vector of b_i^{[p]} for even i < dim0
  std::vector<Vec> pmap;

  std::optional<Matrix> form;  // Gram matrix of (.,.)
  bool form_nondegenerate = false;

  // supermatrix model: one (model_m0+model_m1)-square matrix per basis element
  std::vector<Matrix> model;
  int model_m0 = 0, model_m1 = 0;
  // Gram matrix of the defining form on the model space (osp families)
  std::optional<Matrix> model_gram;

  // integer weights under the standard diagonal Cartan, when the family
  // construction provides them (coordinates in Z^{weight_rank})
  std::vector<std::vector<int>> weights;
  int weight_rank = 0;
  std::vector<int> cartan_indices;  // basis indices of the standard Cartan
  // model diagonal positions realizing each weight coordinate: a weight w
  // evaluates on a Cartan element h as sum_i w_i * diag(model(h))[pos_i]
  std::vector<int> weight_positions;

  int dim() const { return dim0 + dim1; }

  Vec bracket(const Vec& a, const Vec& b) const;
  Matrix ad(const Vec& a) const;                 // matrix of [a, .]
  Vec bracket_basis(int i, int j) const { return sc[i][j]; }

  /// p-power of an arbitrary even element, computed in the matrix model.
  Vec pmap_of(const Vec& a) const;
  /// Coefficients of a model matrix in the algebra basis; throws if the
  /// matrix is not in the span.
  Vec coords_of_model(const Matrix& M) const;
  Matrix model_of(const Vec& a) const;

  Scalar chi_value(const PChar& chi, const Vec& a) const;
  bool is_even_element(const Vec& a) const;

  nlohmann::json to_json() const;
  static std::shared_ptr<LieSuperAlgebra> from_json(const nlohmann::json& j);

 private:
  mutable std::unique_ptr<TrackedSpan> model_span_;
  void build_model_span() const;
};

using AlgebraPtr = std::shared_ptr<LieSuperAlgebra>;

/// Table families. Throws std::invalid_argument for parameter/characteristic
/// combinations outside the supported range; exceptional families are
/// rejected by name.
AlgebraPtr construct_gl(FieldPtr F, int m, int n);
AlgebraPtr construct_sl(FieldPtr F, int m, int n);
/// osp(V) for dim V = m0|m1 (m1 even) with the split supersymmetric form.
AlgebraPtr construct_osp(FieldPtr F, int m0, int m1);
/// osp(1|2) with the standard basis {e,h,f,E,F} and hard-coded p-power table.
AlgebraPtr construct_osp12(FieldPtr F);

struct CheckReport {
  bool ok = true;
  std::string detail;
};

/// Structure-constant invariants: parity compatibility, super
/// anticommutativity, the super Jacobi identity, and the form being even,
/// supersymmetric, invariant (and nondegenerate when flagged).
CheckReport verify_superalgebra(const LieSuperAlgebra& g);

/// Restricted-structure axioms: the stored p-power table against the matrix
/// model, ad(x^{[p]}) = (ad x)^p on all basis pairs, p-semilinearity on
/// random multiples, and the binomial-tail sum formula on random even pairs.
CheckReport check_restricted(const LieSuperAlgebra& g, std::uint64_t seed = 1,
                             int sample_pairs = 50);

struct CentralizerData {
  std::vector<Vec> basis_even;
  std::vector<Vec> basis_odd;
  KWData kw;
};

/// g_chi = {y : chi([y, g]) = 0}, split by parity, with codimension data.
CentralizerData centralizer(const LieSuperAlgebra& g, const PChar& chi);

std::uint64_t super_kw_divisor(const LieSuperAlgebra& g, const PChar& chi);

/// Mutually inverse maps between even elements and even functionals through
/// the invariant form; require a nondegenerate form on the even part.
PChar chi_from_element(const LieSuperAlgebra& g, const Vec& x);
Vec element_from_chi(const LieSuperAlgebra& g, const PChar& chi);

/// A subalgebra presented on its own basis, remembering the embedding.
struct Subalgebra {
  AlgebraPtr alg;
  std::vector<Vec> embedding;  // sub basis vectors in parent coordinates

  Vec to_parent(const Vec& sub_vec) const;
  Vec from_parent(const Vec& parent_vec) const;  // throws if not in span

 private:
  mutable std::shared_ptr<TrackedSpan> solver_;
  friend Subalgebra subalgebra_from_basis(const AlgebraPtr&, const std::vector<Vec>&, bool);
};

/// Builds the subalgebra spanned by the given parent-coordinate vectors.
/// Checks bracket closure; checks p-closure when require_p_closed.
Subalgebra subalgebra_from_basis(const AlgebraPtr& g, const std::vector<Vec>& span_vecs,
                                 bool require_p_closed = true);

/// The same algebra presented on a new ordered basis (given in old
/// coordinates; must be parity-homogeneous, even elements first). Structure
/// constants, p-power table, form, and model are transported; labels are
/// reused when a new basis vector is a multiple of an old basis element.
AlgebraPtr rebase_algebra(const AlgebraPtr& g, const std::vector<Vec>& new_basis,
                          const std::vector<std::string>* labels = nullptr);

/// Transport of a character along rebase_algebra's basis change.
PChar transport_chi(const LieSuperAlgebra& old_g, const PChar& chi,
                    const std::vector<Vec>& new_basis);

PChar restrict_chi(const LieSuperAlgebra& parent, const PChar& chi, const Subalgebra& sub);

/// Zero functional and a few standard builders.
PChar zero_chi(const LieSuperAlgebra& g);
PChar chi_from_values(const LieSuperAlgebra& g, const std::vector<std::pair<int, Scalar>>& vals);

}  // namespace modsuper

#endif
