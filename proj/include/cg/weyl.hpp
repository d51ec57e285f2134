#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cg/group.hpp"

namespace cg {

/// Phase-decorated clock/shift operator w^p X^a Z^b acting on basis
/// labels as |l> -> w^{p + b.l} |l + a>, with w = exp(2 pi i / d).
struct WeylOperator {
  long long d;
  long long phase;                // p
  std::vector<long long> shift;   // a
  std::vector<long long> clock;   // b

  bool operator==(const WeylOperator& o) const {
    return d == o.d && phase == o.phase && shift == o.shift && clock == o.clock;
  }
};

WeylOperator weyl_identity(long long d, std::size_t n);
/// Shift on tensor factor i (X_i).
WeylOperator weyl_shift(long long d, std::size_t n, std::size_t i);
/// Clock on tensor factor i (Z_i).
WeylOperator weyl_clock(long long d, std::size_t n, std::size_t i);

/// The representation rho: (k, kvec) acts as |l> -> w^{k + lower(kvec, l)}
/// |l + kvec|, i.e. a Weyl operator with clock row kvec^T * lower(mu).
WeylOperator represent(const GroupElement& g, const CommutatorMatrix& mu);

/// (p,a,b)(p',a',b') = (p + p' + b.a', a + a', b + b').
WeylOperator compose_weyl(const WeylOperator& p, const WeylOperator& q);
bool weyl_equal(const WeylOperator& p, const WeylOperator& q);

/// Row-major dense matrix, basis labels in lexicographic order with the
/// first tensor factor most significant.
struct DenseOperator {
  std::size_t dim;
  std::vector<std::complex<double>> a;  // dim x dim, row major

  std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const {
    return a[r * dim + c];
  }
};

/// Errors when d^n exceeds the cap. One nonzero root-of-unity entry per
/// column.
DenseOperator to_dense(const WeylOperator& p, std::size_t cap = 1024);

bool dense_close(const DenseOperator& a, const DenseOperator& b,
                 double tol = 1e-9);
DenseOperator dense_multiply(const DenseOperator& a, const DenseOperator& b);
bool dense_unitary(const DenseOperator& a, double tol = 1e-9);

/// Text form like "w^1 X1 Z1^2 X2"; "1" for the identity.
std::string pauli_string(const WeylOperator& p);

struct RepresentationReport {
  bool homomorphism;   // symbolic and, when within the cap, dense
  bool scalars;        // rho(k, 0) = w^k * identity
  bool injective;      // all d^{n+1} images pairwise distinct
  std::string failure; // offending pair when any check fails
  bool ok() const { return homomorphism && scalars && injective; }
};

enum class VerifyMode { Exhaustive, Sampled };

/// Checks rho on all (or sampled) element pairs; any failure indicates
/// an implementation bug.
RepresentationReport verify_representation(const CommutatorMatrix& mu,
                                           VerifyMode mode,
                                           std::size_t samples = 200,
                                           std::uint64_t rng_seed = 1);

}  // namespace cg
