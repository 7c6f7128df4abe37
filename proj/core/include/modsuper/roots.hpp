#ifndef MODSUPER_ROOTS_HPP
#define MODSUPER_ROOTS_HPP

#include <set>
#include <vector>

#include "modsuper/superalgebra.hpp"

namespace modsuper {

using RootVec = std::vector<int>;

struct Root {
  RootVec coords;
  int parity = 0;
  std::vector<int> space;  // basis indices of the root space
};

/// Root line types: even {+-a}, odd {+-a}, odd with double {+-a, +-2a}.
enum class LineType { EvenPair, OddPair, OddWithDouble };

struct RootLine {
  RootVec delta;  // the primitive root on the line (odd one for type 3)
  LineType type = LineType::EvenPair;
};

/// Simultaneous eigenspace decomposition of g under its standard diagonal
/// Cartan, with integer weights taken from the model coordinates. Verifies
/// [h, x] = a(h) x exactly for every Cartan element and root vector, and the
/// dimension reconstruction g = h + sum of root spaces.
struct RootSystem {
  AlgebraPtr g;
  std::vector<int> cartan;  // basis indices
  std::vector<Root> roots;
  int rank = 0;

  const Root* find(const RootVec& v) const;
  bool is_root(const RootVec& v) const;
  std::vector<RootLine> lines() const;
  /// Integer value a(h) for a Cartan element given in algebra coordinates.
  Scalar eval(const RootVec& alpha, const Vec& h) const;
};

RootSystem root_decomposition(const AlgebraPtr& g);

/// A system of positive roots, stored as the set of positive coordinate
/// vectors (both delta and 2*delta present on type-3 lines).
struct PositiveSystem {
  std::set<RootVec> pos;

  bool contains(const RootVec& v) const { return pos.count(v) > 0; }
};

/// Positivity by lexicographic sign of the coordinate vector.
PositiveSystem standard_positive_system(const RootSystem& rs);

/// Indecomposable elements of the positive set.
std::vector<RootVec> simple_roots(const RootSystem& rs, const PositiveSystem& P);

/// Checks: exactly one of +-a per line, and every positive root is an
/// N-combination of the simple roots (exhaustive closure at desk rank).
CheckReport verify_positive_system(const RootSystem& rs, const PositiveSystem& P);

/// delta* = {delta} or {delta, 2 delta} when the double is a root.
std::vector<RootVec> delta_star(const RootSystem& rs, const RootVec& delta);

/// Reflection of the positive system at a simple root delta:
/// P' = (P \ delta*) united with -delta*. For an odd delta with 2delta a root
/// this is the even reflection at 2delta. The result is verified to be a
/// positive system with the stated intersection property.
PositiveSystem odd_reflection(const RootSystem& rs, const PositiveSystem& P, const RootVec& delta);

/// The enumeration of the u-lines: starting from Phi_0^+ = Phi_s^- union
/// Phi_u, repeatedly reflect at a simple root lying in Phi_u (lowest
/// lexicographic choice) until all u-lines are consumed. Returns the sequence
/// of reflected deltas and verifies at every step that the intermediate set
/// is a positive system in which delta_i is simple, and that each
/// Psi_i = {-delta_1*, ..., -delta_i*} is closed and normalized by Phi_s^+.
struct PhiUSequence {
  std::vector<RootVec> deltas;           // reflected delta_i (line representatives)
  std::vector<PositiveSystem> systems;   // systems after each reflection
};
PhiUSequence enumerate_phi_u(const RootSystem& rs, const std::set<RootVec>& phi_s_plus,
                             const std::set<RootVec>& phi_u);

/// Triangular decomposition data extracted from a positive system.
struct TriangularData {
  std::vector<int> cartan;  // basis indices
  std::vector<int> n_plus;  // basis indices of positive root spaces
  std::vector<int> n_minus;
};
TriangularData triangular_data(const RootSystem& rs, const PositiveSystem& P);

}  // namespace modsuper

#endif
