#include "cg/rewrite.hpp"

#include <algorithm>

namespace cg {

const char* rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::PhaseZero: return "J0";
    case RuleTag::PhaseMerge: return "JJ";
    case RuleTag::PhaseLeft: return "xJ";
    case RuleTag::GeneratorPower: return "x^d";
    case RuleTag::GeneratorOrder: return "xy";
  }
  return "?";
}

namespace {

// The single step with redex at position i and the given rule.
Word rewrite_at(const Word& w, std::size_t i, RuleTag rule,
                const CommutatorMatrix& mu) {
  Word r;
  r.reserve(w.size() + 1);
  r.assign(w.begin(), w.begin() + i);
  long long d = mu.d();
  switch (rule) {
    case RuleTag::PhaseZero:
      r.insert(r.end(), w.begin() + i + 1, w.end());
      break;
    case RuleTag::PhaseMerge:
      r.push_back(Letter::phase(mod_reduce(w[i].val + w[i + 1].val, d)));
      r.insert(r.end(), w.begin() + i + 2, w.end());
      break;
    case RuleTag::PhaseLeft:
      r.push_back(w[i + 1]);
      r.push_back(w[i]);
      r.insert(r.end(), w.begin() + i + 2, w.end());
      break;
    case RuleTag::GeneratorPower:
      r.insert(r.end(), w.begin() + i + d, w.end());
      break;
    case RuleTag::GeneratorOrder: {
      auto x = static_cast<std::size_t>(w[i].val);
      auto y = static_cast<std::size_t>(w[i + 1].val);
      r.push_back(Letter::phase(mu.at(x, y)));
      r.push_back(w[i + 1]);
      r.push_back(w[i]);
      r.insert(r.end(), w.begin() + i + 2, w.end());
      break;
    }
  }
  return r;
}

bool power_redex(const Word& w, std::size_t i, long long d) {
  if (w[i].is_phase) return false;
  if (i + static_cast<std::size_t>(d) > w.size()) return false;
  for (std::size_t k = 1; k < static_cast<std::size_t>(d); ++k)
    if (!(w[i + k] == w[i])) return false;
  return true;
}

// Rules applicable at position i, in the deterministic priority order.
void rules_at(const Word& w, std::size_t i, const CommutatorMatrix& mu,
              std::vector<RuleTag>& out) {
  out.clear();
  if (w[i].is_phase) {
    if (w[i].val == 0) out.push_back(RuleTag::PhaseZero);
    if (i + 1 < w.size() && w[i + 1].is_phase) out.push_back(RuleTag::PhaseMerge);
    return;
  }
  if (i + 1 < w.size() && w[i + 1].is_phase) out.push_back(RuleTag::PhaseLeft);
  if (power_redex(w, i, mu.d())) out.push_back(RuleTag::GeneratorPower);
  if (i + 1 < w.size() && !w[i + 1].is_phase && w[i].val > w[i + 1].val)
    out.push_back(RuleTag::GeneratorOrder);
}

}  // namespace

std::optional<Step> apply_step(const Word& w, const CommutatorMatrix& mu) {
  std::vector<RuleTag> rules;
  for (std::size_t i = 0; i < w.size(); ++i) {
    rules_at(w, i, mu, rules);
    if (!rules.empty())
      return Step{rewrite_at(w, i, rules.front(), mu), rules.front(), i};
  }
  return std::nullopt;
}

std::vector<Step> all_steps(const Word& w, const CommutatorMatrix& mu) {
  std::vector<Step> steps;
  std::vector<RuleTag> rules;
  for (std::size_t i = 0; i < w.size(); ++i) {
    rules_at(w, i, mu, rules);
    for (RuleTag t : rules) steps.push_back(Step{rewrite_at(w, i, t, mu), t, i});
  }
  return steps;
}

NormalForm normalize(const Word& w, const CommutatorMatrix& mu) {
  const long long d = mu.d();
  const std::size_t n = mu.n();
  long long phase = 0;
  std::vector<long long> counts(n, 0);
  for (const Letter& l : w) {
    if (l.is_phase) {
      phase = mod_reduce(phase + l.val, d);
      continue;
    }
    // Insert the generator at its sorted position: each larger generator
    // already placed is passed once, at cost mu(y, x).
    auto g = static_cast<std::size_t>(l.val);
    for (std::size_t y = g + 1; y < n; ++y)
      phase = mod_reduce(phase + counts[y] * mu.at(y, g), d);
    if (++counts[g] == d) counts[g] = 0;
  }
  return NormalForm{phase, std::move(counts)};
}

NormalForm normalize_traced(const Word& w, const CommutatorMatrix& mu,
                            std::vector<std::string>* trace) {
  Word cur = w;
  InversionMeasure measure = inversion_measure(cur);
  while (auto step = apply_step(cur, mu)) {
    InversionMeasure next = inversion_measure(step->result);
    if (!(next < measure))
      throw Error("termination measure did not decrease",
                  format_word(cur, mu) + " -> " + format_word(step->result, mu));
    if (trace)
      trace->push_back(std::string(rule_name(step->rule)) + "  " +
                       format_word(cur, mu) + "  ->  " +
                       format_word(step->result, mu));
    cur = std::move(step->result);
    measure = next;
  }
  // Fixpoint: phases (already merged, nonzero) lead, generators sorted.
  long long phase = 0;
  std::vector<long long> counts(mu.n(), 0);
  for (const Letter& l : cur) {
    if (l.is_phase)
      phase = mod_reduce(phase + l.val, mu.d());
    else
      ++counts[static_cast<std::size_t>(l.val)];
  }
  return NormalForm{phase, std::move(counts)};
}

Word word_of_normal_form(const NormalForm& nf, const CommutatorMatrix& mu) {
  Word w;
  if (nf.phase != 0) w.push_back(Letter::phase(nf.phase));
  for (std::size_t i = 0; i < nf.exponents.size(); ++i)
    for (long long k = 0; k < nf.exponents[i]; ++k) w.push_back(Letter::gen(i));
  return w;
}

InversionMeasure inversion_measure(const Word& w) {
  InversionMeasure m{0, 0, w.size()};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_phase) continue;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j].is_phase)
        ++m.j_inversions;
      else if (w[i].val > w[j].val)
        ++m.x_inversions;
    }
  }
  return m;
}

bool words_equal(const Word& u, const Word& v, const CommutatorMatrix& mu) {
  return normalize(u, mu) == normalize(v, mu);
}

namespace {

void require_generators_only(const Word& w, const char* op) {
  if (!generators_only(w))
    throw Error(std::string(op) + " requires a generator-only word");
}

}  // namespace

Zd inversion_sum(const Word& w, const CommutatorMatrix& mu) {
  require_generators_only(w, "inversion_sum");
  long long acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i].val > w[j].val)
        acc = mod_reduce(acc + mu.at(static_cast<std::size_t>(w[i].val),
                                     static_cast<std::size_t>(w[j].val)),
                         mu.d());
  return Zd(acc, mu.modulus());
}

Zd inversion_sum_between(const Word& s, const Word& t, const CommutatorMatrix& mu) {
  require_generators_only(s, "inversion_sum_between");
  require_generators_only(t, "inversion_sum_between");
  long long acc = 0;
  for (const Letter& x : s)
    for (const Letter& y : t)
      if (x.val > y.val)
        acc = mod_reduce(acc + mu.at(static_cast<std::size_t>(x.val),
                                     static_cast<std::size_t>(y.val)),
                         mu.d());
  return Zd(acc, mu.modulus());
}

Zd formal_commutator(const Word& s, const Word& t, const CommutatorMatrix& mu) {
  return inversion_sum_between(s, t, mu) - inversion_sum_between(t, s, mu);
}

}  // namespace cg
