#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cg/zmod.hpp"

namespace cg {

/// Skew-symmetric n x n matrix over Z_d with zero diagonal, plus ordered
/// generator labels. The generator order is the input row order and is
/// never re-sorted.
class CommutatorMatrix {
 public:
  /// Validates squareness, skew-symmetry mod d and the zero diagonal;
  /// errors name the offending index pair. Labels default to x1..xn.
  CommutatorMatrix(const std::vector<std::vector<long long>>& raw, Modulus d,
                   std::vector<std::string> labels = {});

  std::size_t n() const { return n_; }
  long long d() const { return d_; }
  Modulus modulus() const { return Modulus(d_); }
  long long at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool operator==(const CommutatorMatrix& o) const {
    return d_ == o.d_ && n_ == o.n_ && a_ == o.a_;
  }

  static CommutatorMatrix from_json(const std::string& text);
  std::string to_json() const;

 private:
  long long d_;
  std::size_t n_;
  std::vector<long long> a_;
  std::vector<std::string> labels_;
};

/// Strictly lower-triangular part of a commutator matrix; mu is
/// recoverable as lower - transpose(lower).
class LowerPart {
 public:
  explicit LowerPart(const CommutatorMatrix& mu);

  std::size_t n() const { return n_; }
  long long d() const { return d_; }
  long long at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  long long d_;
  std::size_t n_;
  std::vector<long long> a_;
};

LowerPart lower_part(const CommutatorMatrix& mu);

/// k^T M l over Z_d.
Zd bilinear(const LowerPart& m, const Vec& k, const Vec& l);
Zd bilinear(const CommutatorMatrix& m, const Vec& k, const Vec& l);

/// mu(k, l) as a bilinear form; equals the group commutator phase.
Zd commutator_value(const CommutatorMatrix& mu, const Vec& k, const Vec& l);

/// Doubled matrix over two copies of the generators: same-copy pairs
/// inherit mu, cross-copy pairs commute. Labels get suffixes "1"/"2".
CommutatorMatrix tensor_double(const CommutatorMatrix& mu);

/// Entrywise embedding Z_2 -> Z_{2k}, 1 |-> k.
CommutatorMatrix embed_scale(const CommutatorMatrix& mu, long long k);

}  // namespace cg
