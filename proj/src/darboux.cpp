#include "cg/darboux.hpp"

#include <functional>
#include <numeric>

namespace cg {

long long det_mod(const std::vector<std::vector<long long>>& m, long long d) {
  std::size_t n = m.size();
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = mod_reduce(m[i][j], d);
  // Bareiss fraction-free elimination, reducing mod d*|prev| is unsafe;
  // keep exact and reduce at the end. Entries stay bounded for the small
  // n this library targets.
  __int128 prev = 1;
  long long sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) {
        // Whole column zero below: determinant has a zero factor only in
        // the integer sense; fall back to full expansion mod d.
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        long long acc = 0;
        // Permutation expansion; n is small whenever this path triggers.
        std::vector<bool> used(n, false);
        std::vector<std::size_t> perm;
        std::function<void(long long, long long)> rec = [&](long long s,
                                                            long long prod) {
          std::size_t r = perm.size();
          if (r == n) {
            acc = mod_reduce(acc + s * prod, d);
            return;
          }
          for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            long long e = mod_reduce(static_cast<long long>(a[r][c]), d);
            if (e == 0) continue;
            used[c] = true;
            perm.push_back(c);
            long long flips = 0;
            for (std::size_t q = 0; q + 1 < perm.size(); ++q)
              if (perm[q] > c) ++flips;
            rec(flips % 2 ? -s : s, mod_reduce(prod * e, d));
            perm.pop_back();
            used[c] = false;
          }
        };
        rec(1, 1);
        return mod_reduce(acc, d);
      }
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  long long det = n == 0 ? 1 : static_cast<long long>(a[n - 1][n - 1] % d);
  return mod_reduce(sign * det, d);
}

bool is_unit(long long v, long long d) {
  return std::gcd(mod_reduce(v, d), d) == 1;
}

bool cogredient_holds(const CommutatorMatrix& mu, const BaseChange& u,
                      const CommutatorMatrix& result) {
  std::size_t n = mu.n();
  long long d = mu.d();
  if (u.u.size() != n || result.n() != n || result.d() != d) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          acc = mod_reduce(acc + u.u[k][i] * mu.at(k, l) % d * u.u[l][j], d);
      if (acc != result.at(i, j)) return false;
    }
  return true;
}

namespace {

// Mutable state of a reduction: the form and the accumulated base
// change, kept reduced mod d throughout.
struct Reduction {
  long long d;
  std::size_t n;
  std::vector<std::vector<long long>> a;
  std::vector<std::vector<long long>> u;

  explicit Reduction(const CommutatorMatrix& mu)
      : d(mu.d()), n(mu.n()), a(n, std::vector<long long>(n)),
        u(n, std::vector<long long>(n, 0)) {
    for (std::size_t i = 0; i < n; ++i) {
      u[i][i] = 1;
      for (std::size_t j = 0; j < n; ++j) a[i][j] = mu.at(i, j);
    }
  }

  void swap_op(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    std::swap(a[i], a[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(u[r][i], u[r][j]);
  }

  // Column i += c * column j, row i += c * row j; diagonal stays zero
  // by skew symmetry.
  void add_op(std::size_t i, std::size_t j, long long c) {
    if (i == j) throw Error("cogredient add needs distinct indices");
    c = mod_reduce(c, d);
    if (c == 0) return;
    for (std::size_t r = 0; r < n; ++r)
      a[r][i] = mod_reduce(a[r][i] + c * a[r][j], d);
    for (std::size_t cc = 0; cc < n; ++cc)
      a[i][cc] = mod_reduce(a[i][cc] + c * a[j][cc], d);
    for (std::size_t r = 0; r < n; ++r)
      u[r][i] = mod_reduce(u[r][i] + c * u[r][j], d);
  }

  // Euclid on integer representatives: zeroes a[row][target] into
  // a[row][pivot]; row must differ from both columns.
  void clear_entry(std::size_t row, std::size_t target, std::size_t pivot) {
    while (a[row][target] != 0) {
      if (a[row][pivot] == 0) {
        swap_op(pivot, target);
        continue;
      }
      long long q = a[row][target] / a[row][pivot];
      add_op(target, pivot, -q);
      if (a[row][target] != 0) swap_op(pivot, target);
    }
  }

  // Clear everything below the subdiagonal, bottom row first. Rows
  // already cleared are untouched because the operations only involve
  // columns left of the working row.
  void standardize() {
    if (n < 3) return;
    for (std::size_t r = n - 1; r >= 2; --r)
      for (std::size_t t = 0; t + 1 < r; ++t) clear_entry(r, t, r - 1);
  }

  CogredientResult finish(const CommutatorMatrix& mu) const {
    CommutatorMatrix res(a, Modulus(d), mu.labels());
    return CogredientResult{BaseChange{u}, res};
  }
};

}  // namespace

CogredientResult swap_cogredient(const CommutatorMatrix& mu, std::size_t i,
                                 std::size_t j) {
  if (i >= mu.n() || j >= mu.n())
    throw Error("cogredient index out of range");
  Reduction red(mu);
  red.swap_op(i, j);
  return red.finish(mu);
}

CogredientResult add_cogredient(const CommutatorMatrix& mu, std::size_t i,
                                std::size_t j, long long alpha) {
  if (i >= mu.n() || j >= mu.n())
    throw Error("cogredient index out of range");
  if (i == j) throw Error("cogredient add needs distinct indices");
  Reduction red(mu);
  red.add_op(i, j, alpha);
  return red.finish(mu);
}

CogredientResult standard_form(const CommutatorMatrix& mu) {
  Reduction red(mu);
  red.standardize();
  return red.finish(mu);
}

namespace {

// Inverse of a mod m by the extended Euclid; requires gcd(a, m) == 1.
long long inv_mod(long long a, long long m) {
  if (m == 1) return 0;
  long long r0 = mod_reduce(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw Error("inverse of a non-unit requested");
  return mod_reduce(s0, m);
}

}  // namespace

CogredientResult darboux_form(const CommutatorMatrix& mu) {
  Reduction red(mu);
  std::size_t n = red.n;
  long long d = red.d;
  for (std::size_t p = 0; p + 1 < n; p += 2) {
    // Bring a nonzero entry of the trailing submatrix to the block
    // position (p, p+1); a fully zero submatrix means we are done.
    std::size_t bi = n, bj = n;
    for (std::size_t i = p; i < n && bi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (red.a[i][j] != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == n) break;
    red.swap_op(p, bi);
    red.swap_op(p + 1, bj);
    // Pull the gcd into the block until it divides the two bordering
    // rows. Each pull strictly shrinks gcd(block, d), so this ends.
    for (;;) {
      long long g = std::gcd(red.a[p][p + 1], d);
      std::size_t bad_row = n, bad_col = n;
      for (std::size_t j = p + 2; j < n && bad_row == n; ++j) {
        if (red.a[p][j] % g != 0) {
          bad_row = p;
          bad_col = j;
        } else if (red.a[p + 1][j] % g != 0) {
          bad_row = p + 1;
          bad_col = j;
        }
      }
      if (bad_row == n) break;
      red.clear_entry(bad_row, bad_col, bad_row == p ? p + 1 : p);
    }
    // Exact clears: c * lambda = entry (mod d) is solvable now, and the
    // operations leave the block and the other bordering row untouched.
    long long lam = red.a[p][p + 1];
    long long g = std::gcd(lam, d);
    long long inv = inv_mod(lam / g, d / g);
    auto solve = [&](long long e) { return mod_reduce(e / g * inv, d / g); };
    for (std::size_t j = p + 2; j < n; ++j)
      if (red.a[p][j] != 0) red.add_op(j, p + 1, -solve(red.a[p][j]));
    for (std::size_t j = p + 2; j < n; ++j)
      if (red.a[p + 1][j] != 0) red.add_op(j, p, solve(red.a[p + 1][j]));
  }
  return red.finish(mu);
}

bool is_darboux(const CommutatorMatrix& mu) {
  for (std::size_t i = 0; i < mu.n(); ++i)
    for (std::size_t j = 0; j < mu.n(); ++j) {
      if (mu.at(i, j) == 0) continue;
      bool block = (j == i + 1 && i % 2 == 0) || (i == j + 1 && j % 2 == 0);
      if (!block) return false;
    }
  return true;
}

RelativeParity relative_parity(long long lambda, long long d) {
  if (d % 2 != 0) throw Error("relative parity needs an even modulus");
  lambda = mod_reduce(lambda, d);
  if (lambda == 0) throw Error("relative parity needs a nonzero entry");
  long long n = d / 2;
  RelativeParity rp{0, 0, false};
  while (lambda % 2 == 0) {
    lambda /= 2;
    ++rp.valuation_of_entry;
  }
  while (n % 2 == 0) {
    n /= 2;
    ++rp.valuation_of_n;
  }
  rp.odd_relative = rp.valuation_of_entry <= rp.valuation_of_n;
  return rp;
}

namespace {

// Right-nested power block g^e; null when e == 0.
BracketingPtr power_block(std::size_t g, long long e) {
  BracketingPtr b;
  for (long long t = 0; t < e; ++t) b = b ? bpair(bleaf(g), b) : bleaf(g);
  return b;
}

}  // namespace

DarbouxDecision decide_darboux(const CommutatorMatrix& mu) {
  for (std::size_t i = 0; i < mu.n(); ++i)
    for (std::size_t j = 0; j < mu.n(); ++j) {
      if (mu.at(i, j) == 0) continue;
      bool block = (j == i + 1 && i % 2 == 0) || (i == j + 1 && j % 2 == 0);
      if (!block)
        throw Error("matrix is not in block-diagonal form",
                    "nonzero entry at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
    }
  DarbouxDecision dec{false, std::nullopt, {}};
  if (mu.d() % 2 != 0) return dec;
  for (std::size_t i = 0; 2 * i + 1 < mu.n(); ++i) {
    long long lam = mu.at(2 * i, 2 * i + 1);
    if (lam != 0 && relative_parity(lam, mu.d()).odd_relative)
      dec.odd_blocks.push_back(i);
  }
  if (dec.odd_blocks.size() < 2) return dec;
  dec.contextual = true;

  // Word from the first two odd-relative blocks (a, b) and (c, d):
  // ((a^ka c^kc)(bd)) ((a^ka d)(b c^kc)) a^{2n-2ka} b^{2n-2} c^{2n-2kc}
  // d^{2n-2}, left-nested at the top; it normalizes to the scalar n.
  long long half = mu.d() / 2;
  std::size_t ga = 2 * dec.odd_blocks[0], gb = ga + 1;
  std::size_t gc = 2 * dec.odd_blocks[1], gd = gc + 1;
  RelativeParity pn = relative_parity(mu.at(ga, gb), mu.d());
  RelativeParity pc = relative_parity(mu.at(gc, gd), mu.d());
  long long m_odd = half >> pn.valuation_of_n;
  long long ka = m_odd << (pn.valuation_of_n - pn.valuation_of_entry);
  long long kc = m_odd << (pn.valuation_of_n - pc.valuation_of_entry);

  BracketingPtr f1 = bpair(bpair(power_block(ga, ka), power_block(gc, kc)),
                           bpair(bleaf(gb), bleaf(gd)));
  BracketingPtr f2 = bpair(bpair(power_block(ga, ka), bleaf(gd)),
                           bpair(bleaf(gb), power_block(gc, kc)));
  BracketingPtr whole = bpair(f1, f2);
  long long pads[4][2] = {{static_cast<long long>(ga), 2 * half - 2 * ka},
                          {static_cast<long long>(gb), 2 * half - 2},
                          {static_cast<long long>(gc), 2 * half - 2 * kc},
                          {static_cast<long long>(gd), 2 * half - 2}};
  for (auto& pad : pads) {
    BracketingPtr block = power_block(static_cast<std::size_t>(pad[0]), pad[1]);
    if (block) whole = bpair(whole, block);
  }
  Word w = flatten(*whole);
  VerifyResult v = verify_contextual_word(w, *whole, mu);
  if (!v.phase)
    throw Error("decision word failed verification", v.failure);
  if (*v.phase != half)
    throw Error("decision word has unexpected phase",
                std::to_string(*v.phase) + " vs " + std::to_string(half));
  dec.word = ContextualWord{std::move(w), std::move(whole), *v.phase};
  return dec;
}

}  // namespace cg
