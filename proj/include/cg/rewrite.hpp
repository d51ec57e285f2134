#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cg/word.hpp"

namespace cg {

/// The oriented rules: xy -> J_{mu(x,y)} yx for x > y; J_0 -> 1;
/// J_k J_k' -> J_{k+k'}; x J_k -> J_k x; x^d -> 1.
enum class RuleTag { PhaseZero, PhaseMerge, PhaseLeft, GeneratorPower, GeneratorOrder };

const char* rule_name(RuleTag tag);

struct Step {
  Word result;
  RuleTag rule;
  std::size_t pos;
};

/// Rewrites the leftmost redex, or nullopt when w is normal.
std::optional<Step> apply_step(const Word& w, const CommutatorMatrix& mu);

/// Every applicable single step (all redex choices). Used by the
/// confluence checks and by random-strategy tests.
std::vector<Step> all_steps(const Word& w, const CommutatorMatrix& mu);

/// Canonical form J_k x1^{k1} ... xn^{kn}.
struct NormalForm {
  long long phase;
  std::vector<long long> exponents;
  bool operator==(const NormalForm& o) const {
    return phase == o.phase && exponents == o.exponents;
  }
};

/// Normal form of a word (the function theta). Runs the rewrite system
/// with an insertion strategy, O(len * n); confluence makes the strategy
/// an implementation detail.
NormalForm normalize(const Word& w, const CommutatorMatrix& mu);

/// Normal form by literally iterating apply_step; records one trace line
/// per step. Quadratic in the step count; used for traces and as a
/// cross-check of normalize.
NormalForm normalize_traced(const Word& w, const CommutatorMatrix& mu,
                            std::vector<std::string>* trace);

Word word_of_normal_form(const NormalForm& nf, const CommutatorMatrix& mu);

/// The termination measure phi: (X-inversions, J-inversions, length),
/// compared lexicographically.
struct InversionMeasure {
  std::size_t x_inversions;
  std::size_t j_inversions;
  std::size_t length;
  bool operator==(const InversionMeasure& o) const {
    return x_inversions == o.x_inversions && j_inversions == o.j_inversions &&
           length == o.length;
  }
  bool operator<(const InversionMeasure& o) const {
    if (x_inversions != o.x_inversions) return x_inversions < o.x_inversions;
    if (j_inversions != o.j_inversions) return j_inversions < o.j_inversions;
    return length < o.length;
  }
};

InversionMeasure inversion_measure(const Word& w);

/// Word problem: theta(u) == theta(v).
bool words_equal(const Word& u, const Word& v, const CommutatorMatrix& mu);

/// Sum over X-inversions of mu(x, y), for a generator-only word.
Zd inversion_sum(const Word& w, const CommutatorMatrix& mu);

/// Sum over inversions between s and t: pairs (x in s, y in t) with x > y.
Zd inversion_sum_between(const Word& s, const Word& t, const CommutatorMatrix& mu);

/// [[s, t]] = inversion_sum_between(s, t) - inversion_sum_between(t, s).
Zd formal_commutator(const Word& s, const Word& t, const CommutatorMatrix& mu);

}  // namespace cg
