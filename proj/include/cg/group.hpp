#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cg/rewrite.hpp"

namespace cg {

/// Element (k, kvec) of H(mu); components reduced mod d. Equality is
/// componentwise within one context.
struct GroupElement {
  long long phase;
  std::vector<long long> vec;
  bool operator==(const GroupElement& o) const {
    return phase == o.phase && vec == o.vec;
  }
};

/// Shared immutable context: mu with its lower part cached.
class GroupContext {
 public:
  explicit GroupContext(CommutatorMatrix mu);

  const CommutatorMatrix& mu() const { return mu_; }
  const LowerPart& lower() const { return lower_; }
  long long d() const { return mu_.d(); }
  std::size_t n() const { return mu_.n(); }

  GroupElement identity() const;
  GroupElement generator(std::size_t i) const;
  GroupElement scalar(long long k) const;

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const;
  bool commutes(const GroupElement& g, const GroupElement& h) const;
  /// Least m >= 1 with g^m = 1; bounded by d*d.
  long long order(const GroupElement& g) const;

  GroupElement from_normal_form(const NormalForm& nf) const;
  NormalForm to_normal_form(const GroupElement& g) const;

  /// All d^{n+1} elements, phases fastest. Errors when the count exceeds
  /// the cap.
  std::vector<GroupElement> enumerate(std::size_t cap = 1000000) const;

  /// Elements of S commuting with every element of S.
  std::vector<GroupElement> centre(const std::vector<GroupElement>& s) const;

  /// Dense index in [0, d^{n+1}); requires d^{n+1} to fit in 64 bits.
  std::uint64_t key(const GroupElement& g) const;
  std::uint64_t vec_key(const std::vector<long long>& vec) const;

 private:
  long long mu_check(const GroupElement& g, const GroupElement& h) const;
  CommutatorMatrix mu_;
  LowerPart lower_;
};

using ContextPtr = std::shared_ptr<const GroupContext>;

}  // namespace cg
