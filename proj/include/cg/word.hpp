#pragma once

#include <string>
#include <vector>

#include "cg/matrix.hpp"

namespace cg {

/// A letter is either a generator (index into the matrix labels) or a
/// phase J_k with k reduced mod d.
struct Letter {
  bool is_phase;
  long long val;  // generator index, or phase value

  static Letter gen(std::size_t i) { return {false, static_cast<long long>(i)}; }
  static Letter phase(long long k) { return {true, k}; }
  bool operator==(const Letter& o) const {
    return is_phase == o.is_phase && val == o.val;
  }
};

/// Sequence of letters; the empty word is the group identity.
using Word = std::vector<Letter>;

/// Grammar: word := item*; item := label | label '^' uint | 'J' uint.
/// Items are whitespace separated; a token that is not a single label is
/// also accepted as a run of labels matched greedily ("abdc").
Word parse_word(const std::string& text, const CommutatorMatrix& mu);

std::string format_word(const Word& w, const CommutatorMatrix& mu);

/// True when the word contains no phase letters.
bool generators_only(const Word& w);

/// Generator occurrence counts, length n.
std::vector<long long> letter_counts(const Word& w, const CommutatorMatrix& mu);

Word reversed(const Word& w);

}  // namespace cg
