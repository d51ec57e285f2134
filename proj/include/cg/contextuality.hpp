#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cg/group.hpp"

namespace cg {

/// Binary bracketing tree over generators. Immutable and shared so that
/// closure provenance can reuse subtrees.
struct Bracketing;
using BracketingPtr = std::shared_ptr<const Bracketing>;

struct Bracketing {
  long long leaf;  // generator index, or -1 for a pair node
  BracketingPtr left, right;
};

BracketingPtr bleaf(std::size_t gen);
BracketingPtr bpair(BracketingPtr l, BracketingPtr r);

/// Balanced parentheses over generator labels; '[' ']' are accepted as
/// synonyms and a factor may carry '^' uint. Multi-factor sequences fold
/// left-nested.
BracketingPtr parse_bracketing(const std::string& text, const CommutatorMatrix& mu);
std::string format_bracketing(const Bracketing& b, const CommutatorMatrix& mu);

/// The flattening map: leaf -> its generator, pair -> concatenation.
Word flatten(const Bracketing& b);

/// True iff for every pair node the two halves commute in G(mu).
bool check_witness(const Bracketing& b, const CommutatorMatrix& mu);

struct ContextualWord {
  Word word;
  BracketingPtr bracketing;
  long long phase;
};

struct VerifyResult {
  std::optional<long long> phase;
  std::string failure;  // first failed condition when phase is empty
};

/// Checks the three contextual-word conditions in order: per-generator
/// multiplicity divisible by d, commuting-product witness, nonzero
/// scalar normal form. Throws if flatten(b) != w.
VerifyResult verify_contextual_word(const Word& w, const Bracketing& b,
                                    const CommutatorMatrix& mu);

/// How a compatible-monoid element was first reached: a word over the
/// generators (and, for scalar seeds, a single phase letter) plus its
/// commuting-product bracketing. The bracketing is null for the identity
/// and for scalar seeds.
struct Provenance {
  Word word;
  BracketingPtr bracketing;
};

enum class Seed { WithScalars, GeneratorsOnly };

/// The compatible submonoid: fixpoint closure of the seed set under
/// products of commuting elements. First-reached provenance wins.
struct CompatibleMonoid {
  ContextPtr ctx;
  std::vector<GroupElement> elements;
  std::vector<Provenance> witness;
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::optional<std::size_t> find(const GroupElement& g) const;
  bool compatible(std::size_t i, std::size_t j) const;
};

CompatibleMonoid compatible_submonoid(ContextPtr ctx, Seed seed,
                                      std::size_t cap = 1000000);

/// The canonical scalar map s: vector component -> scalar component over
/// C'(mu), when well defined.
struct CanonicalScalar {
  std::unordered_map<std::uint64_t, long long> s;  // vec_key -> scalar
};

/// Either the well-defined canonical scalar, or - on a scalar conflict -
/// the contextual word extracted from the conflicting pair's provenance.
std::variant<CanonicalScalar, ContextualWord> canonical_scalar_assignment(
    ContextPtr ctx, std::size_t cap = 1000000);

/// Left splitting l(k, v) = k - s(v) over all of C(mu), validated.
struct ValueAssignment {
  CompatibleMonoid domain;          // C(mu)
  std::vector<long long> values;    // parallel to domain.elements
};

std::variant<ValueAssignment, ContextualWord> value_assignment(
    ContextPtr ctx, std::size_t cap = 1000000);

struct SearchExhausted {};

/// Breadth-first search over the commuting-closure graph by witness
/// length. Exhaustion at the bound proves nothing.
std::variant<ContextualWord, SearchExhausted> search_contextual_word(
    ContextPtr ctx, std::size_t max_len, std::size_t cap = 1000000);

/// Non-central elements of C(mu) under the commuting relation.
struct CompatibilityGraph {
  ContextPtr ctx;
  std::vector<GroupElement> vertices;
  std::vector<Provenance> witness;
  std::vector<std::vector<bool>> adj;  // reflexive, symmetric
};

CompatibilityGraph compatibility_graph(ContextPtr ctx, std::size_t cap = 1000000);

/// Adjacency transitivity on the non-central vertices.
bool is_cluster_graph(const CompatibilityGraph& g);

/// An induced quadruple realizing one of the three 4-vertex graphs:
/// a-b, a-c edges; b-c and a-d non-edges; graph_id 1 = d isolated,
/// 2 = c-d edge only, 3 = both b-d and c-d edges.
struct PatternMatch {
  std::size_t a, b, c, d;
  int graph_id;
};

std::optional<PatternMatch> find_pattern(const CompatibilityGraph& g);

/// Complete decision over Z_2: a verified contextual word built by
/// substituting the pattern quadruple into the matching template, or a
/// validated value assignment.
std::variant<ContextualWord, ValueAssignment> classify_z2(
    ContextPtr ctx, std::size_t cap = 1000000);

/// Appends per-generator power blocks (right-nested) so every
/// multiplicity becomes divisible by the embedded modulus.
std::pair<Word, BracketingPtr> pad_word(const Word& w, BracketingPtr b,
                                        const CommutatorMatrix& mu_embedded);

/// Built-in five-generator fixture over Z_4; returns the verified phase
/// of its contextual word.
long long verify_splitting_example();

/// Local section: element index (into a CompatibleMonoid) -> value.
using Section = std::map<std::size_t, long long>;

/// Maximal cliques of (C(mu), commuting); each contains the centre.
std::vector<std::vector<std::size_t>> maximal_cliques(const CompatibleMonoid& c);

/// All homomorphisms clique -> Z_d splitting the scalars.
std::vector<Section> local_splittings(const CompatibleMonoid& c,
                                      const std::vector<std::size_t>& clique);

struct EmpiricalModel {
  std::vector<std::vector<std::size_t>> cliques;
  std::vector<std::vector<Section>> sections;  // non-empty per clique
};

/// Every maximal clique with all of its local splittings, pruned to
/// local consistency.
EmpiricalModel full_model(const CompatibleMonoid& c);

/// Validates the model (non-empty sections, splitting property, local
/// consistency; violations throw naming the clique pair), then glues:
/// constructively when the non-central part is a cluster graph, by
/// exhaustive compatible-family search otherwise.
std::optional<Section> glue_global_section(const CompatibleMonoid& c,
                                           const EmpiricalModel& model);

}  // namespace cg
