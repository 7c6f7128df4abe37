#ifndef MODSUPER_JORDAN_HPP
#define MODSUPER_JORDAN_HPP

#include <vector>

#include "modsuper/matrix.hpp"
#include "modsuper/poly.hpp"

namespace modsuper {

/// Jordan type of a nilpotent operator: the partition (weakly decreasing)
/// and one chain head per part. The vectors {X^j v_i : 0 <= j < lambda_i}
/// form a basis of the ambient space and X^{lambda_i} v_i = 0.
struct JordanData {
  std::vector<int> partition;
  std::vector<Vec> chain_heads;
  int dim = 0;
};

/// Chain data for a nilpotent matrix, via the kernel filtration. Chain heads
/// are chosen greedily from complements, ties broken by lowest column index.
/// Throws std::invalid_argument if X is not nilpotent.
JordanData nilpotent_jordan(const Matrix& X);

/// Full chain basis as a matrix whose columns are
/// X^{l_1-1}v_1, ..., X v_1, v_1, X^{l_2-1}v_2, ... (top of chain first).
Matrix chain_basis_matrix(const Matrix& X, const JordanData& jd);

/// A = S + N with S semisimple (squarefree minimal polynomial), N nilpotent,
/// SN = NS; both are polynomials in A.
struct JordanChevalley {
  Matrix S, N;
};
JordanChevalley jordan_chevalley(const Matrix& A);

}  // namespace modsuper

#endif
