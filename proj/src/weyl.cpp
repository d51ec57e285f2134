#include "cg/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cg {

namespace {

void check_same_space(const WeylOperator& p, const WeylOperator& q) {
  if (p.d != q.d || p.shift.size() != q.shift.size())
    throw Error("Weyl operator modulus or arity mismatch");
}

std::size_t dense_dim(long long d, std::size_t n, std::size_t cap) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > cap / static_cast<std::size_t>(d))
      throw Error("dense dimension cap exceeded",
                  "d^n > " + std::to_string(cap));
    dim *= static_cast<std::size_t>(d);
  }
  if (dim > cap)
    throw Error("dense dimension cap exceeded", "d^n > " + std::to_string(cap));
  return dim;
}

constexpr double kTau = 6.283185307179586476925286766559;

std::complex<double> root_of_unity(long long k, long long d) {
  long long r = mod_reduce(k, d);
  // Quarter turns are exact so that d = 2 relations hold with entries in
  // {0, +-1}.
  if (r == 0) return {1.0, 0.0};
  if (2 * r == d) return {-1.0, 0.0};
  if (4 * r == d) return {0.0, 1.0};
  if (4 * r == 3 * d) return {0.0, -1.0};
  double t = kTau * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(t), std::sin(t)};
}

}  // namespace

WeylOperator weyl_identity(long long d, std::size_t n) {
  Modulus m(d);
  return WeylOperator{d, 0, std::vector<long long>(n, 0),
                      std::vector<long long>(n, 0)};
}

WeylOperator weyl_shift(long long d, std::size_t n, std::size_t i) {
  WeylOperator w = weyl_identity(d, n);
  w.shift.at(i) = 1;
  return w;
}

WeylOperator weyl_clock(long long d, std::size_t n, std::size_t i) {
  WeylOperator w = weyl_identity(d, n);
  w.clock.at(i) = 1;
  return w;
}

WeylOperator represent(const GroupElement& g, const CommutatorMatrix& mu) {
  if (g.vec.size() != mu.n()) throw Error("element arity mismatch");
  LowerPart low(mu);
  WeylOperator w = weyl_identity(mu.d(), mu.n());
  w.phase = mod_reduce(g.phase, mu.d());
  for (std::size_t j = 0; j < mu.n(); ++j) {
    w.shift[j] = mod_reduce(g.vec[j], mu.d());
    long long acc = 0;
    for (std::size_t i = 0; i < mu.n(); ++i)
      acc = mod_reduce(acc + g.vec[i] * low.at(i, j), mu.d());
    w.clock[j] = acc;
  }
  return w;
}

WeylOperator compose_weyl(const WeylOperator& p, const WeylOperator& q) {
  check_same_space(p, q);
  WeylOperator r = weyl_identity(p.d, p.shift.size());
  long long cross = 0;
  for (std::size_t i = 0; i < p.shift.size(); ++i)
    cross = mod_reduce(cross + p.clock[i] * q.shift[i], p.d);
  r.phase = mod_reduce(p.phase + q.phase + cross, p.d);
  for (std::size_t i = 0; i < p.shift.size(); ++i) {
    r.shift[i] = mod_reduce(p.shift[i] + q.shift[i], p.d);
    r.clock[i] = mod_reduce(p.clock[i] + q.clock[i], p.d);
  }
  return r;
}

bool weyl_equal(const WeylOperator& p, const WeylOperator& q) {
  check_same_space(p, q);
  return p == q;
}

DenseOperator to_dense(const WeylOperator& p, std::size_t cap) {
  std::size_t n = p.shift.size();
  std::size_t dim = dense_dim(p.d, n, cap);
  DenseOperator m{dim, std::vector<std::complex<double>>(dim * dim, 0.0)};
  std::vector<long long> label(n, 0);
  for (std::size_t col = 0; col < dim; ++col) {
    long long exp = p.phase;
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
      exp = mod_reduce(exp + p.clock[i] * label[i], p.d);
      row = row * static_cast<std::size_t>(p.d) +
            static_cast<std::size_t>(mod_reduce(label[i] + p.shift[i], p.d));
    }
    m.at(row, col) = root_of_unity(exp, p.d);
    // Lexicographic odometer, last factor fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++label[i] < p.d) break;
      label[i] = 0;
    }
  }
  return m;
}

bool dense_close(const DenseOperator& a, const DenseOperator& b, double tol) {
  if (a.dim != b.dim) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i)
    if (std::abs(a.a[i] - b.a[i]) > tol) return false;
  return true;
}

DenseOperator dense_multiply(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim != b.dim) throw Error("dense dimension mismatch");
  std::size_t dim = a.dim;
  DenseOperator r{dim, std::vector<std::complex<double>>(dim * dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      std::complex<double> v = a.at(i, k);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < dim; ++j) r.at(i, j) += v * b.at(k, j);
    }
  return r;
}

bool dense_unitary(const DenseOperator& a, double tol) {
  std::size_t dim = a.dim;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        acc += std::conj(a.at(k, i)) * a.at(k, j);
      std::complex<double> want = i == j ? 1.0 : 0.0;
      if (std::abs(acc - want) > tol) return false;
    }
  return true;
}

std::string pauli_string(const WeylOperator& p) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += ' ';
    out += s;
  };
  if (p.phase != 0) append("w^" + std::to_string(p.phase));
  for (std::size_t i = 0; i < p.shift.size(); ++i) {
    std::string idx = std::to_string(i + 1);
    if (p.shift[i] != 0)
      append("X" + idx + (p.shift[i] == 1 ? "" : "^" + std::to_string(p.shift[i])));
    if (p.clock[i] != 0)
      append("Z" + idx + (p.clock[i] == 1 ? "" : "^" + std::to_string(p.clock[i])));
  }
  return out.empty() ? "1" : out;
}

namespace {

// Product column check exploiting one nonzero per column of b's dense
// form: column c of a*b is column row_b(c) of a times val_b(c).
bool dense_product_matches(const DenseOperator& a, const DenseOperator& b,
                           const DenseOperator& prod, double tol) {
  std::size_t dim = a.dim;
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t rb = dim;
    std::complex<double> vb = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
      if (b.at(r, c) != std::complex<double>(0.0, 0.0)) {
        rb = r;
        vb = b.at(r, c);
        break;
      }
    if (rb == dim) return false;
    for (std::size_t r = 0; r < dim; ++r)
      if (std::abs(a.at(r, rb) * vb - prod.at(r, c)) > tol) return false;
  }
  return true;
}

std::string element_text(const GroupElement& g) {
  std::string s = "(" + std::to_string(g.phase) + "; ";
  for (std::size_t i = 0; i < g.vec.size(); ++i)
    s += (i ? "," : "") + std::to_string(g.vec[i]);
  return s + ")";
}

}  // namespace

RepresentationReport verify_representation(const CommutatorMatrix& mu,
                                           VerifyMode mode, std::size_t samples,
                                           std::uint64_t rng_seed) {
  RepresentationReport rep{true, true, true, ""};
  auto ctx = std::make_shared<const GroupContext>(mu);
  std::vector<GroupElement> all = ctx->enumerate();

  for (long long k = 0; k < mu.d(); ++k) {
    WeylOperator w = represent(ctx->scalar(k), mu);
    bool scalar_ok = w.phase == k &&
                     std::all_of(w.shift.begin(), w.shift.end(),
                                 [](long long v) { return v == 0; }) &&
                     std::all_of(w.clock.begin(), w.clock.end(),
                                 [](long long v) { return v == 0; });
    if (!scalar_ok) {
      rep.scalars = false;
      rep.failure = "scalar " + std::to_string(k);
      return rep;
    }
  }

  std::vector<WeylOperator> images;
  images.reserve(all.size());
  for (const auto& g : all) images.push_back(represent(g, mu));
  for (std::size_t i = 0; i < images.size() && rep.injective; ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] == images[j]) {
        rep.injective = false;
        rep.failure = element_text(all[i]) + " vs " + element_text(all[j]);
        break;
      }
  if (!rep.injective) return rep;

  std::size_t dim_ok = 1;
  bool dense = true;
  for (std::size_t i = 0; i < mu.n(); ++i) {
    dim_ok *= static_cast<std::size_t>(mu.d());
    if (dim_ok > 64) {
      dense = false;
      break;
    }
  }
  std::vector<DenseOperator> dense_images;
  if (dense)
    for (const auto& w : images) dense_images.push_back(to_dense(w));

  auto check_pair = [&](std::size_t i, std::size_t j) {
    WeylOperator lhs = compose_weyl(images[i], images[j]);
    GroupElement gh = ctx->multiply(all[i], all[j]);
    WeylOperator rhs = represent(gh, mu);
    if (!(lhs == rhs)) return false;
    if (dense) {
      DenseOperator dp = to_dense(rhs);
      if (!dense_product_matches(dense_images[i], dense_images[j], dp, 1e-9))
        return false;
    }
    return true;
  };

  if (mode == VerifyMode::Exhaustive) {
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (!check_pair(i, j)) {
          rep.homomorphism = false;
          rep.failure = element_text(all[i]) + " vs " + element_text(all[j]);
          return rep;
        }
  } else {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (std::size_t t = 0; t < samples; ++t) {
      std::size_t i = pick(rng), j = pick(rng);
      if (!check_pair(i, j)) {
        rep.homomorphism = false;
        rep.failure = element_text(all[i]) + " vs " + element_text(all[j]);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace cg
