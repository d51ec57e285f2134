#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cg/error.hpp"

namespace cg {

/// Validated modulus d >= 2. d = 1 collapses every phase to zero and is
/// rejected at construction.
class Modulus {
 public:
  explicit Modulus(long long d) : d_(d) {
    if (d < 2) throw Error("modulus must be at least 2", "d=" + std::to_string(d));
  }
  long long get() const { return d_; }
  bool operator==(const Modulus& o) const { return d_ == o.d_; }

 private:
  long long d_;
};

/// Canonical representative of v mod d in [0, d).
inline long long mod_reduce(long long v, long long d) {
  long long r = v % d;
  return r < 0 ? r + d : r;
}

/// Element of Z_d, always stored reduced.
class Zd {
 public:
  Zd(long long raw, Modulus m) : v_(mod_reduce(raw, m.get())), d_(m.get()) {}

  long long value() const { return v_; }
  long long modulus() const { return d_; }

  Zd operator+(const Zd& o) const { return Zd(v_ + check(o), Modulus(d_)); }
  Zd operator-(const Zd& o) const { return Zd(v_ - check(o), Modulus(d_)); }
  Zd operator*(const Zd& o) const { return Zd(v_ * check(o), Modulus(d_)); }
  Zd operator-() const { return Zd(-v_, Modulus(d_)); }
  bool operator==(const Zd& o) const { return d_ == o.d_ && v_ == o.v_; }
  bool is_zero() const { return v_ == 0; }

 private:
  long long check(const Zd& o) const {
    if (o.d_ != d_)
      throw Error("modulus mismatch",
                  std::to_string(d_) + " vs " + std::to_string(o.d_));
    return o.v_;
  }
  long long v_;
  long long d_;
};

/// Exponent vector over Z_d^n. All entries share one modulus and are
/// stored reduced.
class Vec {
 public:
  Vec(std::vector<long long> raw, Modulus m) : e_(std::move(raw)), d_(m.get()) {
    for (auto& x : e_) x = mod_reduce(x, d_);
  }

  static Vec zero(std::size_t n, Modulus m) {
    return Vec(std::vector<long long>(n, 0), m);
  }
  static Vec unit(std::size_t n, std::size_t i, Modulus m) {
    std::vector<long long> e(n, 0);
    if (i >= n) throw Error("unit vector index out of range", std::to_string(i));
    e[i] = 1;
    return Vec(std::move(e), m);
  }

  std::size_t size() const { return e_.size(); }
  long long modulus() const { return d_; }
  long long operator[](std::size_t i) const { return e_[i]; }
  const std::vector<long long>& entries() const { return e_; }

  Vec operator+(const Vec& o) const {
    check(o);
    std::vector<long long> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = e_[i] + o.e_[i];
    return Vec(std::move(r), Modulus(d_));
  }
  Vec operator-() const {
    std::vector<long long> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = -e_[i];
    return Vec(std::move(r), Modulus(d_));
  }
  Vec scaled(long long c) const {
    std::vector<long long> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) r[i] = e_[i] * mod_reduce(c, d_);
    return Vec(std::move(r), Modulus(d_));
  }
  bool operator==(const Vec& o) const { return d_ == o.d_ && e_ == o.e_; }
  bool is_zero() const {
    for (auto x : e_)
      if (x != 0) return false;
    return true;
  }

 private:
  void check(const Vec& o) const {
    if (o.d_ != d_ || o.e_.size() != e_.size())
      throw Error("vector dimension or modulus mismatch");
  }
  std::vector<long long> e_;
  long long d_;
};

}  // namespace cg
