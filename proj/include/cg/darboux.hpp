#pragma once

#include <optional>
#include <vector>

#include "cg/contextuality.hpp"

namespace cg {

/// Invertible base change U over Z_d; the new form is U^T mu U.
struct BaseChange {
  std::vector<std::vector<long long>> u;  // n x n, entries reduced mod d
};

struct CogredientResult {
  BaseChange u;
  CommutatorMatrix result;
};

/// Determinant mod d by fraction-free elimination.
long long det_mod(const std::vector<std::vector<long long>>& m, long long d);
bool is_unit(long long v, long long d);

/// U^T mu U == result, checked by direct multiplication.
bool cogredient_holds(const CommutatorMatrix& mu, const BaseChange& u,
                      const CommutatorMatrix& result);

/// Simultaneous row and column swap. i == j is a no-op and permitted.
CogredientResult swap_cogredient(const CommutatorMatrix& mu, std::size_t i,
                                 std::size_t j);
/// Simultaneous column i += alpha * column j and row i += alpha * row j.
CogredientResult add_cogredient(const CommutatorMatrix& mu, std::size_t i,
                                std::size_t j, long long alpha);

/// Tridiagonal skew form: Euclid over cogredient operations on integer
/// representatives in [0, d), clearing each row below the subdiagonal
/// from the bottom up.
CogredientResult standard_form(const CommutatorMatrix& mu);

/// Block-diagonal form with antisymmetric 2x2 blocks (0, lambda;
/// -lambda, 0). Each block position pivots a nonzero entry, pulls the
/// gcd into it until it divides the two bordering rows (the divisor
/// chain of gcd(lambda, d) bounds the pulls), then clears the rows with
/// exact column operations.
CogredientResult darboux_form(const CommutatorMatrix& mu);

bool is_darboux(const CommutatorMatrix& mu);

/// 2-adic valuation comparison of a block entry lambda against n = d/2.
struct RelativeParity {
  long long valuation_of_entry;  // l with lambda = l' * 2^l, l' odd
  long long valuation_of_n;      // m with n = m' * 2^m, m' odd
  bool odd_relative;             // l <= m
};

/// Requires d even and lambda nonzero mod d.
RelativeParity relative_parity(long long lambda, long long d);

struct DarbouxDecision {
  bool contextual;
  std::optional<ContextualWord> word;       // present iff contextual
  std::vector<std::size_t> odd_blocks;      // block indices i (gens 2i, 2i+1)
};

/// Decision for a matrix already in Darboux form: contextual iff at
/// least two blocks carry an entry odd relative to d/2; the emitted word
/// is built from the first two such blocks and verified (phase d/2).
/// Odd d is never contextual. Errors on non-Darboux input, citing the
/// offending entry.
DarbouxDecision decide_darboux(const CommutatorMatrix& mu);

}  // namespace cg
