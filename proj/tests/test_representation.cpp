#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cg/weyl.hpp"
#include "fixtures.hpp"

using namespace cg;

namespace {

bool exact_entry(const std::complex<double>& v, double re, double im) {
  return v.real() == re && v.imag() == im;
}

}  // namespace

TEST_CASE("scalars map to phased identities") {
  CommutatorMatrix m1 = fx::mu1();
  auto ctx = fx::context(m1);
  WeylOperator w = represent(ctx->scalar(1), m1);
  CHECK(w.phase == 1);
  CHECK(w.shift == std::vector<long long>(4, 0));
  CHECK(w.clock == std::vector<long long>(4, 0));
  DenseOperator d = to_dense(w);
  for (std::size_t i = 0; i < d.dim; ++i)
    CHECK(std::abs(d.at(i, i) - std::complex<double>(-1.0, 0.0)) < 1e-9);
}

TEST_CASE("pure shift at one abelian generator") {
  CommutatorMatrix m({{0}}, Modulus(3));
  auto ctx = fx::context(m);
  WeylOperator w = represent(ctx->generator(0), m);
  CHECK(w == weyl_shift(3, 1, 0));
  DenseOperator d = to_dense(w);
  // |l> -> |l+1>: column l has its entry in row l+1.
  for (std::size_t c = 0; c < 3; ++c)
    CHECK(std::abs(d.at((c + 1) % 3, c) - std::complex<double>(1.0, 0.0)) < 1e-9);
}

TEST_CASE("qubit clock and shift matrices are exact") {
  DenseOperator x = to_dense(weyl_shift(2, 1, 0));
  DenseOperator z = to_dense(weyl_clock(2, 1, 0));
  CHECK(exact_entry(x.at(0, 1), 1, 0));
  CHECK(exact_entry(x.at(1, 0), 1, 0));
  CHECK(exact_entry(x.at(0, 0), 0, 0));
  CHECK(exact_entry(z.at(0, 0), 1, 0));
  CHECK(exact_entry(z.at(1, 1), -1, 0));
  DenseOperator xx = dense_multiply(x, x);
  DenseOperator zz = dense_multiply(z, z);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double id = i == j ? 1.0 : 0.0;
      CHECK(exact_entry(xx.at(i, j), id, 0));
      CHECK(exact_entry(zz.at(i, j), id, 0));
      // ZX = -XZ entrywise.
      CHECK(exact_entry(dense_multiply(z, x).at(i, j),
                        -dense_multiply(x, z).at(i, j).real(),
                        -dense_multiply(x, z).at(i, j).imag()));
    }
}

TEST_CASE("clock-shift commutation as Weyl composition") {
  for (long long d : {2, 3, 5}) {
    WeylOperator x = weyl_shift(d, 1, 0);
    WeylOperator z = weyl_clock(d, 1, 0);
    WeylOperator zx = compose_weyl(z, x);
    WeylOperator xz = compose_weyl(x, z);
    CHECK(zx.phase == mod_reduce(xz.phase + 1, d));  // ZX = w XZ
    CHECK(zx.shift == xz.shift);
    CHECK(zx.clock == xz.clock);
  }
  WeylOperator p = weyl_shift(3, 2, 1);
  CHECK(weyl_equal(compose_weyl(p, weyl_identity(3, 2)), p));
  CHECK_THROWS_AS(compose_weyl(p, weyl_identity(2, 2)), Error);
}

TEST_CASE("generator images carry the lower-part clock row") {
  CommutatorMatrix m1 = fx::mu1();
  auto ctx = fx::context(m1);
  LowerPart low(m1);
  for (std::size_t i = 0; i < 4; ++i) {
    WeylOperator w = represent(ctx->generator(i), m1);
    CHECK(w.phase == 0);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(w.shift[j] == (i == j ? 1 : 0));
      CHECK(w.clock[j] == low.at(i, j));
    }
  }
}

TEST_CASE("composition represents the group product") {
  std::mt19937_64 rng(19);
  CommutatorMatrix mu = fx::random_matrix(2, 3, rng);
  auto ctx = fx::context(mu);
  std::vector<GroupElement> all = ctx->enumerate();
  for (const auto& g : all)
    for (const auto& h : all)
      CHECK(weyl_equal(compose_weyl(represent(g, mu), represent(h, mu)),
                       represent(ctx->multiply(g, h), mu)));
}

TEST_CASE("dense images are generalized permutations and unitary") {
  std::mt19937_64 rng(29);
  CommutatorMatrix mu = fx::random_matrix(2, 4, rng);
  auto ctx = fx::context(mu);
  for (const auto& g : ctx->enumerate()) {
    DenseOperator d = to_dense(represent(g, mu));
    CHECK(dense_unitary(d));
    for (std::size_t c = 0; c < d.dim; ++c) {
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < d.dim; ++r)
        if (std::abs(d.at(r, c)) > 1e-12) {
          ++nonzero;
          CHECK(std::abs(std::abs(d.at(r, c)) - 1.0) < 1e-9);
        }
      CHECK(nonzero == 1);
    }
  }
  CHECK_THROWS_AS(to_dense(weyl_identity(2, 3), 4), Error);
}

TEST_CASE("symbolic and dense composition cohere") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    long long d = 2 + t % 3;
    CommutatorMatrix mu = fx::random_matrix(2, d, rng);
    auto ctx = fx::context(mu);
    std::uniform_int_distribution<long long> pick(0, d - 1);
    auto rand_el = [&]() {
      GroupElement g = ctx->identity();
      g.phase = pick(rng);
      for (auto& e : g.vec) e = pick(rng);
      return g;
    };
    WeylOperator p = represent(rand_el(), mu);
    WeylOperator q = represent(rand_el(), mu);
    CHECK(dense_close(to_dense(compose_weyl(p, q)),
                      dense_multiply(to_dense(p), to_dense(q))));
  }
}

TEST_CASE("pauli strings") {
  CHECK(pauli_string(weyl_identity(3, 2)) == "1");
  CHECK(pauli_string(weyl_shift(3, 2, 1)) == "X2");
  WeylOperator w{3, 1, {0, 1}, {2, 0}};
  CHECK(pauli_string(w) == "w^1 Z1^2 X2");
}

TEST_CASE("representation reports") {
  RepresentationReport r =
      verify_representation(fx::mu2(), VerifyMode::Exhaustive);
  CHECK(r.ok());
  CommutatorMatrix abel({{0}}, Modulus(4));
  CHECK(verify_representation(abel, VerifyMode::Exhaustive).ok());
  std::mt19937_64 rng(43);
  CommutatorMatrix mu = fx::random_matrix(3, 3, rng);
  CHECK(verify_representation(mu, VerifyMode::Exhaustive).ok());
  CHECK(verify_representation(mu, VerifyMode::Sampled, 50).ok());
}

TEST_CASE("square of observables has an odd context") {
  CommutatorMatrix dbl = tensor_double(fx::xz_pair());
  auto ctx = fx::context(dbl);
  auto el = [&](const char* text) {
    return ctx->from_normal_form(normalize(parse_word(text, dbl), dbl));
  };
  // Three rows and three columns of pairwise commuting observables.
  GroupElement sq[3][3] = {
      {el("x1"), el("x2"), el("x1 x2")},
      {el("y2"), el("y1"), el("y1 y2")},
      {el("x1 y2"), el("x2 y1"), el("x1 x2 y1 y2")}};
  long long odd = 0;
  for (int r = 0; r < 3; ++r) {
    CHECK(ctx->commutes(sq[r][0], sq[r][1]));
    CHECK(ctx->commutes(sq[r][1], sq[r][2]));
    CHECK(ctx->commutes(sq[r][0], sq[r][2]));
    GroupElement prod = ctx->multiply(ctx->multiply(sq[r][0], sq[r][1]), sq[r][2]);
    CHECK(prod.vec == std::vector<long long>(4, 0));
    odd += prod.phase;
  }
  for (int c = 0; c < 3; ++c) {
    CHECK(ctx->commutes(sq[0][c], sq[1][c]));
    CHECK(ctx->commutes(sq[1][c], sq[2][c]));
    CHECK(ctx->commutes(sq[0][c], sq[2][c]));
    GroupElement prod = ctx->multiply(ctx->multiply(sq[0][c], sq[1][c]), sq[2][c]);
    CHECK(prod.vec == std::vector<long long>(4, 0));
    odd += prod.phase;
    // The dense product is the matching signed identity.
    DenseOperator dp = dense_multiply(
        dense_multiply(to_dense(represent(sq[0][c], dbl)),
                       to_dense(represent(sq[1][c], dbl))),
        to_dense(represent(sq[2][c], dbl)));
    double sign = prod.phase == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < dp.dim; ++i)
      CHECK(std::abs(dp.at(i, i) - std::complex<double>(sign, 0.0)) < 1e-9);
  }
  // An odd number of contexts multiply to the nontrivial scalar.
  CHECK(odd % 2 == 1);
}
