#include "cg/contextuality.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cg {

BracketingPtr bleaf(std::size_t gen) {
  return std::make_shared<Bracketing>(
      Bracketing{static_cast<long long>(gen), nullptr, nullptr});
}

BracketingPtr bpair(BracketingPtr l, BracketingPtr r) {
  return std::make_shared<Bracketing>(Bracketing{-1, std::move(l), std::move(r)});
}

namespace {

void flatten_into(const Bracketing& b, Word& out) {
  if (b.leaf >= 0) {
    out.push_back(Letter::gen(static_cast<std::size_t>(b.leaf)));
    return;
  }
  flatten_into(*b.left, out);
  flatten_into(*b.right, out);
}

// Recursive-descent parser over label characters and ( [ ] ) ^.
struct BracketingParser {
  const std::string& s;
  const CommutatorMatrix& mu;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool at_close() const { return pos < s.size() && (s[pos] == ')' || s[pos] == ']'); }

  BracketingPtr parse_factor() {
    skip_ws();
    if (pos >= s.size()) throw Error("unexpected end of bracketing", s);
    if (s[pos] == '(' || s[pos] == '[') {
      char open = s[pos++];
      BracketingPtr inner = parse_seq();
      skip_ws();
      char close = open == '(' ? ')' : ']';
      if (pos >= s.size() || s[pos] != close)
        throw Error("unbalanced bracketing", "expected '" + std::string(1, close) +
                                                 "' at offset " + std::to_string(pos));
      ++pos;
      return inner;
    }
    // Longest label match.
    std::size_t best = mu.n();
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < mu.n(); ++i) {
      const std::string& l = mu.label(i);
      if (l.size() > best_len && s.compare(pos, l.size(), l) == 0) {
        best = i;
        best_len = l.size();
      }
    }
    if (best == mu.n())
      throw Error("unknown label in bracketing", "at offset " + std::to_string(pos));
    pos += best_len;
    return bleaf(best);
  }

  BracketingPtr parse_repeated() {
    BracketingPtr f = parse_factor();
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip_ws();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw Error("malformed exponent in bracketing", s);
      long long e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        e = e * 10 + (s[pos++] - '0');
      if (e < 1) throw Error("bracketing exponent must be positive", s);
      BracketingPtr acc = f;
      for (long long i = 1; i < e; ++i) acc = bpair(acc, f);
      return acc;
    }
    return f;
  }

  BracketingPtr parse_seq() {
    BracketingPtr acc = parse_repeated();
    for (;;) {
      skip_ws();
      if (pos >= s.size() || at_close()) return acc;
      acc = bpair(acc, parse_repeated());
    }
  }
};

}  // namespace

BracketingPtr parse_bracketing(const std::string& text, const CommutatorMatrix& mu) {
  BracketingParser p{text, mu};
  BracketingPtr b = p.parse_seq();
  p.skip_ws();
  if (p.pos != text.size())
    throw Error("trailing input in bracketing", "at offset " + std::to_string(p.pos));
  return b;
}

std::string format_bracketing(const Bracketing& b, const CommutatorMatrix& mu) {
  if (b.leaf >= 0) return mu.label(static_cast<std::size_t>(b.leaf));
  return "(" + format_bracketing(*b.left, mu) + format_bracketing(*b.right, mu) + ")";
}

Word flatten(const Bracketing& b) {
  Word out;
  flatten_into(b, out);
  return out;
}

namespace {

// Count vector of a subtree; checks each pair node's halves commute.
std::vector<long long> witness_counts(const Bracketing& b, const CommutatorMatrix& mu,
                                      bool& ok) {
  if (b.leaf >= 0) {
    std::vector<long long> c(mu.n(), 0);
    c[static_cast<std::size_t>(b.leaf)] = 1;
    return c;
  }
  auto l = witness_counts(*b.left, mu, ok);
  auto r = witness_counts(*b.right, mu, ok);
  if (ok) {
    Vec vl(l, mu.modulus()), vr(r, mu.modulus());
    if (!commutator_value(mu, vl, vr).is_zero()) ok = false;
  }
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = mod_reduce(l[i] + r[i], mu.d());
  return l;
}

}  // namespace

bool check_witness(const Bracketing& b, const CommutatorMatrix& mu) {
  bool ok = true;
  witness_counts(b, mu, ok);
  return ok;
}

VerifyResult verify_contextual_word(const Word& w, const Bracketing& b,
                                    const CommutatorMatrix& mu) {
  if (flatten(b) != w)
    throw Error("bracketing does not flatten to the given word");
  if (w.empty()) return {std::nullopt, "word is empty"};
  if (!generators_only(w)) return {std::nullopt, "word contains phase letters"};
  auto counts = letter_counts(w, mu);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] % mu.d() != 0)
      return {std::nullopt, "multiplicity of " + mu.label(i) +
                                " is not a multiple of d"};
  if (!check_witness(b, mu))
    return {std::nullopt, "bracketing is not a commuting-product witness"};
  NormalForm nf = normalize(w, mu);
  for (long long e : nf.exponents)
    if (e != 0) return {std::nullopt, "normal form is not a scalar"};
  if (nf.phase == 0) return {std::nullopt, "global phase is zero"};
  return {nf.phase, {}};
}

std::optional<std::size_t> CompatibleMonoid::find(const GroupElement& g) const {
  auto it = index.find(ctx->key(g));
  return it == index.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

bool CompatibleMonoid::compatible(std::size_t i, std::size_t j) const {
  return ctx->commutes(elements[i], elements[j]);
}

namespace {

Provenance combine_provenance(const Provenance& a, const Provenance& b) {
  Provenance p;
  p.word = a.word;
  p.word.insert(p.word.end(), b.word.begin(), b.word.end());
  if (!a.bracketing)
    p.bracketing = b.bracketing;
  else if (!b.bracketing)
    p.bracketing = a.bracketing;
  else
    p.bracketing = bpair(a.bracketing, b.bracketing);
  return p;
}

}  // namespace

CompatibleMonoid compatible_submonoid(ContextPtr ctx, Seed seed, std::size_t cap) {
  CompatibleMonoid c;
  c.ctx = ctx;
  auto add = [&](const GroupElement& g, Provenance p) {
    std::uint64_t k = ctx->key(g);
    if (c.index.count(k)) return;
    if (c.elements.size() >= cap) throw Error("compatible-monoid cap exceeded");
    c.index.emplace(k, c.elements.size());
    c.elements.push_back(g);
    c.witness.push_back(std::move(p));
  };
  add(ctx->identity(), Provenance{{}, nullptr});
  if (seed == Seed::WithScalars)
    for (long long k = 1; k < ctx->d(); ++k)
      add(ctx->scalar(k), Provenance{{Letter::phase(k)}, nullptr});
  for (std::size_t i = 0; i < ctx->n(); ++i)
    add(ctx->generator(i), Provenance{{Letter::gen(i)}, bleaf(i)});

  // Fixpoint: each element, once reached, is paired with every element
  // reached no later than itself.
  std::size_t processed = 0;
  while (processed < c.elements.size()) {
    std::size_t u = processed++;
    for (std::size_t v = 0; v <= u; ++v) {
      if (!ctx->commutes(c.elements[u], c.elements[v])) continue;
      GroupElement prod = ctx->multiply(c.elements[u], c.elements[v]);
      if (c.index.count(ctx->key(prod))) continue;
      add(prod, combine_provenance(c.witness[u], c.witness[v]));
    }
  }
  return c;
}

namespace {

// Contextual word from a scalar conflict: g and h share a vector but not
// a phase, so g * h^{o(h)-1} is a nonzero scalar reached by commuting
// products.
ContextualWord conflict_word(const ContextPtr& ctx, const CompatibleMonoid& cprime,
                             std::size_t g_idx, std::size_t h_idx) {
  const Provenance& pg = cprime.witness[g_idx];
  const Provenance& ph = cprime.witness[h_idx];
  long long ord = ctx->order(cprime.elements[h_idx]);
  Word w = pg.word;
  BracketingPtr b = pg.bracketing;
  BracketingPtr hpow;
  for (long long t = 1; t < ord; ++t) {
    w.insert(w.end(), ph.word.begin(), ph.word.end());
    hpow = hpow ? bpair(hpow, ph.bracketing) : ph.bracketing;
  }
  if (hpow) b = bpair(b, hpow);
  VerifyResult v = verify_contextual_word(w, *b, ctx->mu());
  if (!v.phase)
    throw Error("extracted conflict word failed verification", v.failure);
  return ContextualWord{std::move(w), std::move(b), *v.phase};
}

}  // namespace

std::variant<CanonicalScalar, ContextualWord> canonical_scalar_assignment(
    ContextPtr ctx, std::size_t cap) {
  CompatibleMonoid cprime = compatible_submonoid(ctx, Seed::GeneratorsOnly, cap);
  CanonicalScalar cs;
  std::unordered_map<std::uint64_t, std::size_t> rep;
  for (std::size_t i = 0; i < cprime.elements.size(); ++i) {
    std::uint64_t vk = ctx->vec_key(cprime.elements[i].vec);
    auto [it, fresh] = rep.emplace(vk, i);
    if (fresh) {
      cs.s.emplace(vk, cprime.elements[i].phase);
    } else if (cprime.elements[it->second].phase != cprime.elements[i].phase) {
      return conflict_word(ctx, cprime, i, it->second);
    }
  }
  return cs;
}

std::variant<ValueAssignment, ContextualWord> value_assignment(ContextPtr ctx,
                                                               std::size_t cap) {
  auto canonical = canonical_scalar_assignment(ctx, cap);
  if (std::holds_alternative<ContextualWord>(canonical))
    return std::get<ContextualWord>(canonical);
  const CanonicalScalar& cs = std::get<CanonicalScalar>(canonical);

  ValueAssignment va;
  va.domain = compatible_submonoid(ctx, Seed::WithScalars, cap);
  va.values.resize(va.domain.elements.size());
  for (std::size_t i = 0; i < va.domain.elements.size(); ++i) {
    auto it = cs.s.find(ctx->vec_key(va.domain.elements[i].vec));
    if (it == cs.s.end())
      throw Error("canonical scalar undefined on a C(mu) vector");
    va.values[i] = mod_reduce(va.domain.elements[i].phase - it->second, ctx->d());
  }

  // Validation: splits scalars, additive on every commuting pair.
  for (std::size_t i = 0; i < va.domain.elements.size(); ++i) {
    const GroupElement& g = va.domain.elements[i];
    bool scalar = std::all_of(g.vec.begin(), g.vec.end(),
                              [](long long e) { return e == 0; });
    if (scalar && va.values[i] != g.phase)
      throw Error("value assignment does not split scalars");
    for (std::size_t j = i; j < va.domain.elements.size(); ++j) {
      if (!ctx->commutes(g, va.domain.elements[j])) continue;
      auto p = va.domain.find(ctx->multiply(g, va.domain.elements[j]));
      if (!p) throw Error("compatible monoid not closed under commuting products");
      if (va.values[*p] != mod_reduce(va.values[i] + va.values[j], ctx->d()))
        throw Error("value assignment not additive on a commuting pair");
    }
  }
  return va;
}

std::variant<ContextualWord, SearchExhausted> search_contextual_word(
    ContextPtr ctx, std::size_t max_len, std::size_t cap) {
  if (max_len < 1) throw Error("search bound must be at least 1");
  struct Entry {
    GroupElement el;
    Provenance prov;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<std::vector<std::size_t>> by_len(max_len + 1);

  auto add = [&](GroupElement g, Provenance p,
                 std::size_t len) -> std::optional<ContextualWord> {
    std::uint64_t k = ctx->key(g);
    if (seen.count(k)) return std::nullopt;
    if (entries.size() >= cap) throw Error("search cap exceeded");
    bool scalar = std::all_of(g.vec.begin(), g.vec.end(),
                              [](long long e) { return e == 0; });
    if (scalar && g.phase != 0) {
      VerifyResult v = verify_contextual_word(p.word, *p.bracketing, ctx->mu());
      if (!v.phase)
        throw Error("search candidate failed verification", v.failure);
      return ContextualWord{p.word, p.bracketing, *v.phase};
    }
    seen.emplace(k, entries.size());
    by_len[len].push_back(entries.size());
    entries.push_back(Entry{std::move(g), std::move(p)});
    return std::nullopt;
  };

  for (std::size_t i = 0; i < ctx->n(); ++i)
    add(ctx->generator(i), Provenance{{Letter::gen(i)}, bleaf(i)}, 1);

  for (std::size_t len = 2; len <= max_len; ++len) {
    for (std::size_t l1 = 1; l1 <= len - l1; ++l1) {
      std::size_t l2 = len - l1;
      for (std::size_t ui : by_len[l1]) {
        for (std::size_t vi : by_len[l2]) {
          const Entry& u = entries[ui];
          const Entry& v = entries[vi];
          if (!ctx->commutes(u.el, v.el)) continue;
          GroupElement prod = ctx->multiply(u.el, v.el);
          Provenance p = combine_provenance(u.prov, v.prov);
          if (auto found = add(std::move(prod), std::move(p), len)) return *found;
        }
      }
    }
  }
  return SearchExhausted{};
}

CompatibilityGraph compatibility_graph(ContextPtr ctx, std::size_t cap) {
  CompatibleMonoid c = compatible_submonoid(ctx, Seed::WithScalars, cap);
  CompatibilityGraph g;
  g.ctx = ctx;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    bool central = true;
    for (std::size_t j = 0; j < c.elements.size(); ++j)
      if (!ctx->commutes(c.elements[i], c.elements[j])) {
        central = false;
        break;
      }
    if (!central) {
      g.vertices.push_back(c.elements[i]);
      g.witness.push_back(c.witness[i]);
    }
  }
  std::size_t m = g.vertices.size();
  g.adj.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      g.adj[i][j] = g.adj[j][i] = ctx->commutes(g.vertices[i], g.vertices[j]);
  return g;
}

bool is_cluster_graph(const CompatibilityGraph& g) {
  std::size_t m = g.vertices.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || !g.adj[i][j]) continue;
      for (std::size_t k = 0; k < m; ++k)
        if (k != i && k != j && g.adj[j][k] && !g.adj[i][k]) return false;
    }
  return true;
}

std::optional<PatternMatch> find_pattern(const CompatibilityGraph& g) {
  std::size_t m = g.vertices.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a || !g.adj[a][b]) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == b || !g.adj[a][c] || g.adj[b][c]) continue;
        for (std::size_t d = 0; d < m; ++d) {
          if (d == a || d == b || d == c || g.adj[a][d]) continue;
          bool db = g.adj[d][b], dc = g.adj[d][c];
          if (!db && !dc) return PatternMatch{a, b, c, d, 1};
          if (db && dc) return PatternMatch{a, b, c, d, 3};
          // Relabel so the single extra edge is c-d.
          if (db && !dc) return PatternMatch{a, c, b, d, 2};
          return PatternMatch{a, b, c, d, 2};
        }
      }
    }
  return std::nullopt;
}

namespace {

// Template bracketings over the four pattern roles (0=a, 1=b, 2=c, 3=d),
// keyed by which 4-vertex graph the roles realize.
BracketingPtr pattern_template(int graph_id) {
  auto a = bleaf(0), b = bleaf(1), c = bleaf(2), d = bleaf(3);
  switch (graph_id) {
    case 3:  // ((ab)(dc))((ca)(bd))
      return bpair(bpair(bpair(a, b), bpair(d, c)), bpair(bpair(c, a), bpair(b, d)));
    case 2:  // (b(dc))((ca)((ab)d))
      return bpair(bpair(b, bpair(d, c)),
                   bpair(bpair(c, a), bpair(bpair(a, b), d)));
    case 1:  // (d(ca))(b(((ba)d)c))
      return bpair(bpair(d, bpair(c, a)),
                   bpair(b, bpair(bpair(bpair(b, a), d), c)));
  }
  throw Error("unknown pattern graph id");
}

BracketingPtr substitute_roles(const Bracketing& b, const BracketingPtr roles[4]) {
  if (b.leaf >= 0) return roles[b.leaf];
  return bpair(substitute_roles(*b.left, roles), substitute_roles(*b.right, roles));
}

}  // namespace

std::variant<ContextualWord, ValueAssignment> classify_z2(ContextPtr ctx,
                                                          std::size_t cap) {
  if (ctx->d() != 2) throw Error("classification is only defined over Z_2");
  CompatibilityGraph graph = compatibility_graph(ctx, cap);
  if (is_cluster_graph(graph)) {
    auto r = value_assignment(ctx, cap);
    if (std::holds_alternative<ValueAssignment>(r))
      return std::get<ValueAssignment>(r);
    return std::get<ContextualWord>(r);
  }
  auto pat = find_pattern(graph);
  if (!pat) throw Error("non-cluster graph without a pattern quadruple");

  // Pattern vertices live in C(mu); substitute generator-only provenance
  // from C'(mu) representatives with the same vector component.
  CompatibleMonoid cprime = compatible_submonoid(ctx, Seed::GeneratorsOnly, cap);
  std::unordered_map<std::uint64_t, std::size_t> by_vec;
  for (std::size_t i = 0; i < cprime.elements.size(); ++i)
    by_vec.emplace(ctx->vec_key(cprime.elements[i].vec), i);
  std::size_t roles_idx[4] = {pat->a, pat->b, pat->c, pat->d};
  BracketingPtr roles[4];
  for (int r = 0; r < 4; ++r) {
    auto it = by_vec.find(ctx->vec_key(graph.vertices[roles_idx[r]].vec));
    if (it == by_vec.end())
      throw Error("pattern vertex has no generator-word representative");
    roles[r] = cprime.witness[it->second].bracketing;
  }
  BracketingPtr sub = substitute_roles(*pattern_template(pat->graph_id), roles);
  Word w = flatten(*sub);
  VerifyResult v = verify_contextual_word(w, *sub, ctx->mu());
  if (v.phase) return ContextualWord{std::move(w), std::move(sub), *v.phase};

  // The substituted word came out trivial; the canonical-scalar conflict
  // route is complete and must produce a witness here.
  auto canonical = canonical_scalar_assignment(ctx, cap);
  if (std::holds_alternative<ContextualWord>(canonical))
    return std::get<ContextualWord>(canonical);
  throw Error("pattern found but no contextual word could be constructed");
}

std::pair<Word, BracketingPtr> pad_word(const Word& w, BracketingPtr b,
                                        const CommutatorMatrix& mu_embedded) {
  long long dd = mu_embedded.d();
  auto counts = letter_counts(w, mu_embedded);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] % 2 != 0)
      throw Error("pad_word requires even multiplicities",
                  mu_embedded.label(i) + " occurs " + std::to_string(counts[i]) +
                      " times");
  Word padded = w;
  BracketingPtr tail;
  for (std::size_t i = counts.size(); i-- > 0;) {
    long long need = (dd - counts[i] % dd) % dd;
    if (need == 0) continue;
    BracketingPtr block = bleaf(i);
    for (long long t = 1; t < need; ++t) block = bpair(bleaf(i), block);
    tail = tail ? bpair(block, tail) : block;
  }
  if (!tail) return {padded, b};
  // Flatten order: original word, then blocks in ascending generator order.
  for (std::size_t i = 0; i < counts.size(); ++i) {
    long long need = (dd - counts[i] % dd) % dd;
    for (long long t = 0; t < need; ++t) padded.push_back(Letter::gen(i));
  }
  return {padded, bpair(std::move(b), tail)};
}

long long verify_splitting_example() {
  CommutatorMatrix mu({{0, 0, 1, 1, 1},
                       {0, 0, 3, 3, 1},
                       {3, 1, 0, 2, 0},
                       {3, 1, 2, 0, 0},
                       {3, 3, 0, 0, 0}},
                      Modulus(4), {"a1", "a2", "b", "c", "d"});
  auto a1 = bleaf(0), a2 = bleaf(1), b = bleaf(2), c = bleaf(3), d = bleaf(4);
  BracketingPtr f1 = bpair(bpair(bpair(a1, a2), b), bpair(c, d));
  BracketingPtr f2 = bpair(bpair(bpair(a1, a2), c), bpair(b, d));
  BracketingPtr pad;
  for (std::size_t i = 5; i-- > 0;) {
    BracketingPtr block = bpair(bleaf(i), bleaf(i));
    pad = pad ? bpair(block, pad) : block;
  }
  BracketingPtr whole = bpair(bpair(f1, f2), pad);
  Word w = flatten(*whole);
  VerifyResult v = verify_contextual_word(w, *whole, mu);
  if (!v.phase) throw Error("splitting example failed verification", v.failure);
  return *v.phase;
}

namespace {

void bron_kerbosch(const std::vector<std::vector<bool>>& adj,
                   std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x,
                   std::vector<std::vector<std::size_t>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  // The adjacency is reflexive, so the pivot counts as its own candidate.
  std::vector<std::size_t> candidates;
  for (std::size_t v : p)
    if (!adj[pivot][v] || v == pivot) candidates.push_back(v);
  for (std::size_t v : candidates) {
    std::vector<std::size_t> np, nx;
    for (std::size_t u : p)
      if (adj[v][u] && u != v) np.push_back(u);
    for (std::size_t u : x)
      if (adj[v][u] && u != v) nx.push_back(u);
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> maximal_cliques(const CompatibleMonoid& c) {
  std::size_t m = c.elements.size();
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      adj[i][j] = adj[j][i] = c.ctx->commutes(c.elements[i], c.elements[j]);
  std::vector<std::size_t> p(m), r;
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  std::vector<std::vector<std::size_t>> out;
  bron_kerbosch(adj, r, std::move(p), {}, out);
  for (auto& clique : out) std::sort(clique.begin(), clique.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Section> local_splittings(const CompatibleMonoid& c,
                                      const std::vector<std::size_t>& clique) {
  long long d = c.ctx->d();
  // Constraint triples (i, j, i*j) within the clique, plus forced scalar
  // values.
  std::vector<std::size_t> members = clique;
  std::vector<std::optional<long long>> forced(members.size());
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const GroupElement& g = c.elements[members[i]];
    if (std::all_of(g.vec.begin(), g.vec.end(), [](long long e) { return e == 0; }))
      forced[i] = g.phase;
  }
  struct Triple {
    std::size_t i, j, p;
  };
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j) {
      auto prod = c.find(c.ctx->multiply(c.elements[members[i]], c.elements[members[j]]));
      if (!prod) throw Error("clique product left the compatible monoid");
      auto it = pos.find(*prod);
      if (it == pos.end())
        throw Error("maximal clique not closed under products");
      triples.push_back(Triple{i, j, it->second});
    }

  std::vector<long long> vals(members.size(), -1);
  std::vector<Section> out;
  auto consistent = [&](std::size_t upto) {
    for (const Triple& t : triples) {
      if (t.i > upto || t.j > upto || t.p > upto) continue;
      if (mod_reduce(vals[t.i] + vals[t.j], d) != vals[t.p]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == members.size()) {
      Section s;
      for (std::size_t k = 0; k < members.size(); ++k) s[members[k]] = vals[k];
      out.push_back(std::move(s));
      return;
    }
    for (long long v = 0; v < d; ++v) {
      if (forced[i] && *forced[i] != v) continue;
      vals[i] = v;
      if (consistent(i)) rec(i + 1);
    }
    vals[i] = -1;
  };
  rec(0);
  return out;
}

namespace {

bool sections_agree(const Section& a, const Section& b,
                    const std::vector<std::size_t>& overlap) {
  for (std::size_t e : overlap)
    if (a.at(e) != b.at(e)) return false;
  return true;
}

std::vector<std::size_t> clique_overlap(const std::vector<std::size_t>& a,
                                        const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

EmpiricalModel full_model(const CompatibleMonoid& c) {
  EmpiricalModel m;
  m.cliques = maximal_cliques(c);
  for (const auto& clique : m.cliques) m.sections.push_back(local_splittings(c, clique));

  // Prune to local consistency: drop sections whose restriction to an
  // overlap has no counterpart in the neighbouring clique.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < m.cliques.size(); ++i)
      for (std::size_t j = 0; j < m.cliques.size(); ++j) {
        if (i == j) continue;
        auto overlap = clique_overlap(m.cliques[i], m.cliques[j]);
        auto& si = m.sections[i];
        for (std::size_t k = si.size(); k-- > 0;) {
          bool matched = false;
          for (const Section& t : m.sections[j])
            if (sections_agree(si[k], t, overlap)) {
              matched = true;
              break;
            }
          if (!matched) {
            si.erase(si.begin() + static_cast<std::ptrdiff_t>(k));
            changed = true;
          }
        }
        if (si.empty())
          throw Error("no locally consistent empirical model exists");
      }
  }
  return m;
}

namespace {

void validate_model(const CompatibleMonoid& c, const EmpiricalModel& m) {
  long long d = c.ctx->d();
  for (std::size_t i = 0; i < m.cliques.size(); ++i) {
    if (m.sections[i].empty())
      throw Error("empirical model has an empty section set",
                  "clique " + std::to_string(i));
    for (const Section& s : m.sections[i]) {
      for (std::size_t e : m.cliques[i]) {
        if (!s.count(e))
          throw Error("section does not cover its clique", "clique " + std::to_string(i));
        const GroupElement& g = c.elements[e];
        if (std::all_of(g.vec.begin(), g.vec.end(),
                        [](long long x) { return x == 0; }) &&
            s.at(e) != g.phase)
          throw Error("section does not split scalars", "clique " + std::to_string(i));
      }
      for (std::size_t a : m.cliques[i])
        for (std::size_t b : m.cliques[i]) {
          auto prod = c.find(c.ctx->multiply(c.elements[a], c.elements[b]));
          if (prod && s.count(*prod) &&
              s.at(*prod) != mod_reduce(s.at(a) + s.at(b), d))
            throw Error("section is not a homomorphism",
                        "clique " + std::to_string(i));
        }
    }
  }
  for (std::size_t i = 0; i < m.cliques.size(); ++i)
    for (std::size_t j = i + 1; j < m.cliques.size(); ++j) {
      auto overlap = clique_overlap(m.cliques[i], m.cliques[j]);
      for (const Section& s : m.sections[i]) {
        bool matched = false;
        for (const Section& t : m.sections[j])
          if (sections_agree(s, t, overlap)) {
            matched = true;
            break;
          }
        if (!matched)
          throw Error("empirical model violates local consistency",
                      "cliques " + std::to_string(i) + "," + std::to_string(j));
      }
      for (const Section& t : m.sections[j]) {
        bool matched = false;
        for (const Section& s : m.sections[i])
          if (sections_agree(s, t, overlap)) {
            matched = true;
            break;
          }
        if (!matched)
          throw Error("empirical model violates local consistency",
                      "cliques " + std::to_string(j) + "," + std::to_string(i));
      }
    }
}

bool noncentral_is_cluster(const CompatibleMonoid& c,
                           std::vector<bool>& central_out) {
  std::size_t m = c.elements.size();
  central_out.assign(m, true);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!c.ctx->commutes(c.elements[i], c.elements[j])) {
        central_out[i] = false;
        break;
      }
  for (std::size_t i = 0; i < m; ++i) {
    if (central_out[i]) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (central_out[j] || j == i || !c.compatible(i, j)) continue;
      for (std::size_t k = 0; k < m; ++k)
        if (!central_out[k] && k != i && k != j && c.compatible(j, k) &&
            !c.compatible(i, k))
          return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Section> glue_global_section(const CompatibleMonoid& c,
                                           const EmpiricalModel& m) {
  validate_model(c, m);
  if (m.cliques.empty()) return Section{};

  std::vector<bool> central;
  if (noncentral_is_cluster(c, central)) {
    // Constructive gluing: fix one section, then match every other
    // clique on the shared central part (the pairwise overlap).
    Section global = m.sections[0][0];
    std::vector<std::size_t> z;
    for (std::size_t e : m.cliques[0])
      if (central[e]) z.push_back(e);
    for (std::size_t i = 1; i < m.cliques.size(); ++i) {
      const Section* match = nullptr;
      for (const Section& s : m.sections[i])
        if (sections_agree(global, s, z)) {
          match = &s;
          break;
        }
      if (!match)
        throw Error("cluster gluing failed despite local consistency",
                    "clique " + std::to_string(i));
      for (const auto& [e, v] : *match) global[e] = v;
    }
    return global;
  }

  // General case: exhaustive search for a compatible family of sections.
  Section global;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == m.cliques.size()) return true;
    for (const Section& s : m.sections[i]) {
      bool fits = true;
      for (const auto& [e, v] : s) {
        auto it = global.find(e);
        if (it != global.end() && it->second != v) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      std::vector<std::size_t> added;
      for (const auto& [e, v] : s)
        if (!global.count(e)) {
          global[e] = v;
          added.push_back(e);
        }
      if (rec(i + 1)) return true;
      for (std::size_t e : added) global.erase(e);
    }
    return false;
  };
  if (rec(0)) return global;
  return std::nullopt;
}

}  // namespace cg
