#pragma once

#include <memory>
#include <random>

#include "cg/contextuality.hpp"

// Shared fixtures: the three four-generator matrices over Z_2 with their
// known contextual words, the two-generator anticommuting pair, and a
// deterministic random matrix generator.
namespace fx {

inline cg::CommutatorMatrix mu1() {
  return cg::CommutatorMatrix(
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}, cg::Modulus(2),
      {"a", "b", "c", "d"});
}

inline cg::CommutatorMatrix mu2() {
  return cg::CommutatorMatrix(
      {{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 0}, {1, 1, 0, 0}}, cg::Modulus(2),
      {"a", "b", "c", "d"});
}

inline cg::CommutatorMatrix mu3() {
  return cg::CommutatorMatrix(
      {{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 0}}, cg::Modulus(2),
      {"a", "b", "c", "d"});
}

inline const char* kWitness1 = "((ab)(dc))((ca)(bd))";
inline const char* kWitness2 = "(b(dc))((ca)((ab)d))";
inline const char* kWitness3 = "(d(ca))(b(((ba)d)c))";

// One anticommuting generator pair over Z_2 (a qubit X/Z pair).
inline cg::CommutatorMatrix xz_pair() {
  return cg::CommutatorMatrix({{0, 1}, {1, 0}}, cg::Modulus(2), {"x", "y"});
}

inline cg::ContextPtr context(const cg::CommutatorMatrix& mu) {
  return std::make_shared<const cg::GroupContext>(mu);
}

// Deterministic skew matrix with entries uniform mod d.
inline cg::CommutatorMatrix random_matrix(std::size_t n, long long d,
                                          std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> pick(0, d - 1);
  std::vector<std::vector<long long>> rows(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j] = pick(rng);
      rows[j][i] = cg::mod_reduce(-rows[i][j], d);
    }
  return cg::CommutatorMatrix(rows, cg::Modulus(d));
}

// Deterministic random word over the generators of mu (no phase letters).
inline cg::Word random_word(const cg::CommutatorMatrix& mu, std::size_t len,
                            std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, mu.n() - 1);
  cg::Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(cg::Letter::gen(pick(rng)));
  return w;
}

}  // namespace fx
