#ifndef MODSUPER_MODULE_HPP
#define MODSUPER_MODULE_HPP

#include <string>
#include <vector>

#include "modsuper/superalgebra.hpp"

namespace modsuper {

/// Finite-dimensional super-module over a reduced enveloping superalgebra,
/// given by one action matrix per algebra basis element.
struct ModuleRep {
  AlgebraPtr g;
  PChar chi;
  int dim = 0;
  std::vector<int> parity;       // per module basis vector
  std::vector<Matrix> action;    // indexed like g->labels
  std::vector<std::string> labels;

  const FieldCtx& field() const { return *g->field; }

  Matrix act(const Vec& algebra_elt) const;
  /// Parity involution: +1 on even vectors, -1 on odd ones.
  Matrix parity_matrix() const;

  /// Invariant checks: super-commutator compatibility on basis pairs (all
  /// pairs when dim <= full_bound, a seeded sample otherwise), the
  /// p-character identity rho(x)^p - rho(x^{[p]}) = chi(x)^p on every even
  /// basis element, and parity-block compatibility of every action matrix.
  CheckReport verify(int full_bound = 200, std::uint64_t seed = 1) const;

  nlohmann::json to_json() const;
};

/// Restriction along a subalgebra: action matrices of the subalgebra basis.
ModuleRep restrict_module(const ModuleRep& M, const Subalgebra& sub);

/// The module on a basis of an invariant subspace W (rows span W, must be
/// parity-homogeneous and invariant).
ModuleRep submodule_on(const ModuleRep& M, const std::vector<Vec>& w_basis);

/// Quotient by an invariant subspace (given as echelonized rows).
ModuleRep quotient_module(const ModuleRep& M, const std::vector<Vec>& w_basis);

/// Direct check that a subspace is invariant under all action matrices.
bool is_invariant_subspace(const ModuleRep& M, const std::vector<Vec>& w_basis);

}  // namespace modsuper

#endif
