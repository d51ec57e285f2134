#include "cg/word.hpp"

#include <algorithm>
#include <cctype>

namespace cg {

namespace {

// Longest label match at position pos, or npos.
std::size_t match_label(const std::string& s, std::size_t pos,
                        const CommutatorMatrix& mu, std::size_t* gen_out) {
  std::size_t best = std::string::npos;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < mu.n(); ++i) {
    const std::string& l = mu.label(i);
    if (l.size() > best_len && s.compare(pos, l.size(), l) == 0) {
      best = i;
      best_len = l.size();
    }
  }
  if (best != std::string::npos) *gen_out = best;
  return best == std::string::npos ? std::string::npos : best_len;
}

long long parse_uint(const std::string& s, std::size_t& pos, const char* what) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw Error(std::string("malformed ") + what, "at offset " + std::to_string(pos));
  long long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    ++pos;
  }
  return v;
}

// One token: J<uint>, label, or label '^' uint, else a greedy run of labels.
void parse_token(const std::string& tok, const CommutatorMatrix& mu, Word& out) {
  // J<uint> is a phase, unless "J..." is itself a generator label.
  std::size_t gi = 0;
  if (tok[0] == 'J' && tok.size() > 1 &&
      std::isdigit(static_cast<unsigned char>(tok[1])) && !mu.index_of(tok)) {
    std::size_t pos = 1;
    long long k = parse_uint(tok, pos, "phase");
    if (pos != tok.size()) throw Error("malformed phase letter", tok);
    out.push_back(Letter::phase(mod_reduce(k, mu.d())));
    return;
  }
  auto caret = tok.find('^');
  if (caret != std::string::npos) {
    auto idx = mu.index_of(tok.substr(0, caret));
    if (!idx) throw Error("unknown label", tok.substr(0, caret));
    std::size_t pos = caret + 1;
    long long e = parse_uint(tok, pos, "exponent");
    if (pos != tok.size()) throw Error("malformed exponent", tok);
    for (long long i = 0; i < e; ++i) out.push_back(Letter::gen(*idx));
    return;
  }
  if (auto idx = mu.index_of(tok)) {
    out.push_back(Letter::gen(*idx));
    return;
  }
  // Greedy run of labels.
  std::size_t pos = 0;
  while (pos < tok.size()) {
    std::size_t len = match_label(tok, pos, mu, &gi);
    if (len == std::string::npos) throw Error("unknown label", tok);
    out.push_back(Letter::gen(gi));
    pos += len;
  }
}

}  // namespace

Word parse_word(const std::string& text, const CommutatorMatrix& mu) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    parse_token(text.substr(i, j - i), mu, out);
    i = j;
  }
  return out;
}

std::string format_word(const Word& w, const CommutatorMatrix& mu) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    if (!out.empty()) out += ' ';
    if (w[i].is_phase) {
      out += "J" + std::to_string(w[i].val);
      ++i;
      continue;
    }
    std::size_t run = 1;
    while (i + run < w.size() && w[i + run] == w[i]) ++run;
    out += mu.label(static_cast<std::size_t>(w[i].val));
    if (run > 1) out += "^" + std::to_string(run);
    i += run;
  }
  return out;
}

bool generators_only(const Word& w) {
  return std::none_of(w.begin(), w.end(), [](const Letter& l) { return l.is_phase; });
}

std::vector<long long> letter_counts(const Word& w, const CommutatorMatrix& mu) {
  std::vector<long long> c(mu.n(), 0);
  for (const Letter& l : w)
    if (!l.is_phase) ++c[static_cast<std::size_t>(l.val)];
  return c;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

}  // namespace cg
