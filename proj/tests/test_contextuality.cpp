#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace cg;

TEST_CASE("bracketing parse, format, flatten") {
  CommutatorMatrix m1 = fx::mu1();
  BracketingPtr b = parse_bracketing(fx::kWitness1, m1);
  CHECK(format_bracketing(*b, m1) == "(((ab)(dc))((ca)(bd)))");
  CHECK(format_word(flatten(*b), m1) == "a b d c^2 a b d");
  // Square brackets, exponents, and left-folded sequences.
  BracketingPtr c = parse_bracketing("[a^2]bc", m1);
  CHECK(format_bracketing(*c, m1) == "(((aa)b)c)");
  CHECK_THROWS_AS(parse_bracketing("(ab", m1), Error);
  CHECK_THROWS_AS(parse_bracketing("a)", m1), Error);
  CHECK_THROWS_AS(parse_bracketing("(aq)", m1), Error);
  CHECK_THROWS_AS(parse_bracketing("a^0", m1), Error);
}

TEST_CASE("witness checking") {
  CommutatorMatrix m1 = fx::mu1();
  CHECK(check_witness(*parse_bracketing(fx::kWitness1, m1), m1));
  CHECK(check_witness(*parse_bracketing("(ab)", m1), m1));
  // a and d anticommute.
  CHECK(!check_witness(*parse_bracketing("(ad)", m1), m1));
  CHECK(!check_witness(*parse_bracketing("((ab)(ad))", m1), m1));
}

TEST_CASE("the three four-generator witnesses verify") {
  struct Case {
    CommutatorMatrix mu;
    const char* witness;
  };
  Case cases[] = {{fx::mu1(), fx::kWitness1},
                  {fx::mu2(), fx::kWitness2},
                  {fx::mu3(), fx::kWitness3}};
  for (const Case& c : cases) {
    BracketingPtr b = parse_bracketing(c.witness, c.mu);
    Word w = flatten(*b);
    VerifyResult v = verify_contextual_word(w, *b, c.mu);
    REQUIRE(v.phase.has_value());
    CHECK(*v.phase == 1);
  }
}

TEST_CASE("verification failure reasons in order") {
  CommutatorMatrix m1 = fx::mu1();
  auto reason = [&](const char* witness) {
    BracketingPtr b = parse_bracketing(witness, m1);
    return verify_contextual_word(flatten(*b), *b, m1).failure;
  };
  CHECK(reason("(ab)").find("multiple of d") != std::string::npos);
  CHECK(reason("((ad)(ad))").find("witness") != std::string::npos);
  CHECK(reason("(aa)").find("phase is zero") != std::string::npos);
  CHECK(reason("((ab)(ab))").find("phase is zero") != std::string::npos);
  // Mismatched word and bracketing is a usage error, not a verdict.
  BracketingPtr b = parse_bracketing("(ab)", m1);
  CHECK_THROWS_AS(verify_contextual_word(parse_word("ba", m1), *b, m1), Error);
}

TEST_CASE("compatible monoid closure") {
  auto ctx = fx::context(fx::xz_pair());
  CompatibleMonoid c = compatible_submonoid(ctx, Seed::WithScalars);
  // Scalars, x, y, and their scalar multiples; x*y is not compatible.
  CHECK(c.elements.size() == 6);
  CompatibleMonoid cp = compatible_submonoid(ctx, Seed::GeneratorsOnly);
  CHECK(cp.elements.size() == 3);  // identity (= x*x), x, y
  for (std::size_t i = 0; i < cp.elements.size(); ++i) {
    // Provenance reproduces the element.
    NormalForm nf = normalize(cp.witness[i].word, ctx->mu());
    CHECK(ctx->from_normal_form(nf) == cp.elements[i]);
    if (cp.witness[i].bracketing)
      CHECK(flatten(*cp.witness[i].bracketing) == cp.witness[i].word);
  }
  CHECK(c.find(ctx->scalar(1)) .has_value());
  CHECK(!c.find(ctx->multiply(ctx->generator(0), ctx->generator(1))).has_value());
}

TEST_CASE("canonical scalars and conflicts") {
  // The anticommuting pair admits a canonical scalar map.
  auto ok = canonical_scalar_assignment(fx::context(fx::xz_pair()));
  CHECK(std::holds_alternative<CanonicalScalar>(ok));
  // The contextual four-generator matrix forces a conflict whose
  // extracted word verifies.
  auto bad = canonical_scalar_assignment(fx::context(fx::mu1()));
  REQUIRE(std::holds_alternative<ContextualWord>(bad));
  const ContextualWord& cw = std::get<ContextualWord>(bad);
  VerifyResult v = verify_contextual_word(cw.word, *cw.bracketing, fx::mu1());
  REQUIRE(v.phase.has_value());
  CHECK(*v.phase == cw.phase);
  CHECK(cw.phase != 0);
}

TEST_CASE("value assignments on odd moduli") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    CommutatorMatrix mu = fx::random_matrix(3, 3, rng);
    auto r = value_assignment(fx::context(mu));
    REQUIRE(std::holds_alternative<ValueAssignment>(r));
    const ValueAssignment& va = std::get<ValueAssignment>(r);
    CHECK(va.values.size() == va.domain.elements.size());
  }
  auto r = value_assignment(fx::context(fx::mu2()));
  CHECK(std::holds_alternative<ContextualWord>(r));
}

TEST_CASE("search finds witnesses and reports exhaustion") {
  auto found = search_contextual_word(fx::context(fx::mu1()), 8);
  REQUIRE(std::holds_alternative<ContextualWord>(found));
  const ContextualWord& cw = std::get<ContextualWord>(found);
  CHECK(cw.word.size() <= 8);
  CHECK(cw.phase != 0);
  CHECK(verify_contextual_word(cw.word, *cw.bracketing, fx::mu1())
            .phase.has_value());

  CommutatorMatrix z3({{0, 1}, {2, 0}}, Modulus(3));
  auto none = search_contextual_word(fx::context(z3), 9);
  CHECK(std::holds_alternative<SearchExhausted>(none));
}

TEST_CASE("compatibility graphs and clusters") {
  CompatibilityGraph g = compatibility_graph(fx::context(fx::xz_pair()));
  CHECK(g.vertices.size() == 4);  // x, y and their scalar multiples
  CHECK(is_cluster_graph(g));
  CHECK(!find_pattern(g).has_value());

  CompatibilityGraph g1 = compatibility_graph(fx::context(fx::mu1()));
  CHECK(!is_cluster_graph(g1));
  auto pat = find_pattern(g1);
  REQUIRE(pat.has_value());
  CHECK(g1.adj[pat->a][pat->b]);
  CHECK(g1.adj[pat->a][pat->c]);
  CHECK(!g1.adj[pat->b][pat->c]);
  CHECK(!g1.adj[pat->a][pat->d]);
}

TEST_CASE("complete classification over Z_2") {
  for (const CommutatorMatrix& mu : {fx::mu1(), fx::mu2(), fx::mu3()}) {
    auto r = classify_z2(fx::context(mu));
    REQUIRE(std::holds_alternative<ContextualWord>(r));
    const ContextualWord& cw = std::get<ContextualWord>(r);
    VerifyResult v = verify_contextual_word(cw.word, *cw.bracketing, mu);
    REQUIRE(v.phase.has_value());
    CHECK(*v.phase == cw.phase);
  }
  CHECK(std::holds_alternative<ValueAssignment>(
      classify_z2(fx::context(fx::xz_pair()))));
  CommutatorMatrix abelian({{0, 0}, {0, 0}}, Modulus(2));
  CHECK(std::holds_alternative<ValueAssignment>(classify_z2(fx::context(abelian))));
  CommutatorMatrix z3({{0, 1}, {2, 0}}, Modulus(3));
  CHECK_THROWS_AS(classify_z2(fx::context(z3)), Error);
}

TEST_CASE("doubled square word") {
  CommutatorMatrix dbl = tensor_double(fx::xz_pair());
  BracketingPtr b = parse_bracketing("((x1y2)(y1x2))((x1x2)(y1y2))", dbl);
  VerifyResult v = verify_contextual_word(flatten(*b), *b, dbl);
  REQUIRE(v.phase.has_value());
  CHECK(*v.phase == 1);
}

TEST_CASE("padding lifts witnesses to scaled moduli") {
  for (long long k : {2, 3}) {
    CommutatorMatrix emb = embed_scale(fx::mu1(), k);
    BracketingPtr b = parse_bracketing(fx::kWitness1, emb);
    auto [w, pb] = pad_word(flatten(*b), b, emb);
    VerifyResult v = verify_contextual_word(w, *pb, emb);
    REQUIRE(v.phase.has_value());
    CHECK(*v.phase == k);
  }
  // Odd multiplicities cannot be padded.
  CommutatorMatrix emb = embed_scale(fx::mu1(), 2);
  BracketingPtr b = parse_bracketing("(ab)", emb);
  CHECK_THROWS_AS(pad_word(flatten(*b), b, emb), Error);
}

TEST_CASE("five-generator splitting example") {
  CHECK(verify_splitting_example() == 2);
}

TEST_CASE("cliques, splittings, and gluing on a cluster instance") {
  auto ctx = fx::context(fx::xz_pair());
  CompatibleMonoid c = compatible_submonoid(ctx, Seed::WithScalars);
  auto cliques = maximal_cliques(c);
  REQUIRE(cliques.size() == 2);
  CHECK(cliques[0].size() == 4);
  CHECK(cliques[1].size() == 4);
  for (const auto& clique : cliques) {
    auto sections = local_splittings(c, clique);
    CHECK(sections.size() == 2);
    for (const Section& s : sections)
      for (std::size_t e : clique) CHECK(s.count(e) == 1);
  }
  EmpiricalModel m = full_model(c);
  auto glued = glue_global_section(c, m);
  REQUIRE(glued.has_value());
  CHECK(glued->size() == c.elements.size());
}

TEST_CASE("no global section for the contextual four-generator matrix") {
  auto ctx = fx::context(fx::mu1());
  CompatibleMonoid c = compatible_submonoid(ctx, Seed::WithScalars);
  EmpiricalModel m = full_model(c);
  CHECK(!glue_global_section(c, m).has_value());
}

TEST_CASE("model validation rejects broken inputs") {
  auto ctx = fx::context(fx::xz_pair());
  CompatibleMonoid c = compatible_submonoid(ctx, Seed::WithScalars);
  EmpiricalModel m = full_model(c);
  EmpiricalModel empty = m;
  empty.sections[0].clear();
  CHECK_THROWS_AS(glue_global_section(c, empty), Error);
  EmpiricalModel broken = m;
  // Corrupt a scalar value inside the first section.
  for (auto& [e, v] : broken.sections[0][0])
    if (c.elements[e].vec == std::vector<long long>{0, 0} &&
        c.elements[e].phase == 1)
      v = 0;
  CHECK_THROWS_AS(glue_global_section(c, broken), Error);
}
