#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace cg;

TEST_CASE("group axioms hold exhaustively on the two-generator pair") {
  auto ctx = fx::context(fx::xz_pair());
  std::vector<GroupElement> all = ctx->enumerate();
  CHECK(all.size() == 8);  // d^(n+1) = 2^3
  GroupElement e = ctx->identity();
  for (const auto& g : all) {
    CHECK(ctx->multiply(g, e) == g);
    CHECK(ctx->multiply(e, g) == g);
    CHECK(ctx->multiply(g, ctx->inverse(g)) == e);
    CHECK(ctx->multiply(ctx->inverse(g), g) == e);
    for (const auto& h : all)
      for (const auto& k : all)
        CHECK(ctx->multiply(ctx->multiply(g, h), k) ==
              ctx->multiply(g, ctx->multiply(h, k)));
  }
}

TEST_CASE("product matches word concatenation") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    long long d = 2 + (t % 4);
    CommutatorMatrix mu = fx::random_matrix(1 + t % 4, d, rng);
    auto ctx = fx::context(mu);
    Word u = fx::random_word(mu, t % 9, rng);
    Word v = fx::random_word(mu, t % 7, rng);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    GroupElement gu = ctx->from_normal_form(normalize(u, mu));
    GroupElement gv = ctx->from_normal_form(normalize(v, mu));
    CHECK(ctx->multiply(gu, gv) == ctx->from_normal_form(normalize(uv, mu)));
  }
}

TEST_CASE("commutators and commuting") {
  CommutatorMatrix m1 = fx::mu1();
  auto ctx = fx::context(m1);
  GroupElement a = ctx->generator(0), b = ctx->generator(1),
               d = ctx->generator(3);
  CHECK(ctx->commutes(a, b));
  CHECK(!ctx->commutes(a, d));
  CHECK(ctx->commutator(a, d).phase == 1);
  CHECK(ctx->commutator(a, d).vec == std::vector<long long>{0, 0, 0, 0});
  CHECK(ctx->commutes(ctx->scalar(1), d));
}

TEST_CASE("orders") {
  CommutatorMatrix m({{0, 1}, {3, 0}}, Modulus(4));
  auto ctx = fx::context(m);
  CHECK(ctx->order(ctx->identity()) == 1);
  CHECK(ctx->order(ctx->scalar(1)) == 4);
  CHECK(ctx->order(ctx->scalar(2)) == 2);
  CHECK(ctx->order(ctx->generator(0)) == 4);
}

TEST_CASE("enumeration and keys") {
  CommutatorMatrix m({{0, 1, 2}, {2, 0, 0}, {1, 0, 0}}, Modulus(3));
  auto ctx = fx::context(m);
  std::vector<GroupElement> all = ctx->enumerate();
  CHECK(all.size() == 81);
  std::set<std::uint64_t> keys;
  for (const auto& g : all) keys.insert(ctx->key(g));
  CHECK(keys.size() == all.size());
  CHECK_THROWS_AS(ctx->enumerate(10), Error);
}

TEST_CASE("centre of the full group") {
  auto ctx = fx::context(fx::xz_pair());
  std::vector<GroupElement> z = ctx->centre(ctx->enumerate());
  // Only the scalars commute with both generators.
  CHECK(z.size() == 2);
  for (const auto& g : z)
    CHECK(g.vec == std::vector<long long>{0, 0});
}

TEST_CASE("normal form round trip") {
  CommutatorMatrix m1 = fx::mu1();
  auto ctx = fx::context(m1);
  NormalForm nf{1, {1, 0, 1, 1}};
  CHECK(ctx->to_normal_form(ctx->from_normal_form(nf)) == nf);
  CHECK_THROWS_AS(ctx->from_normal_form(NormalForm{0, {1}}), Error);
}
