#include "cg/group.hpp"

namespace cg {

GroupContext::GroupContext(CommutatorMatrix mu)
    : mu_(std::move(mu)), lower_(mu_) {}

GroupElement GroupContext::identity() const {
  return GroupElement{0, std::vector<long long>(n(), 0)};
}

GroupElement GroupContext::generator(std::size_t i) const {
  GroupElement g = identity();
  g.vec.at(i) = 1;
  return g;
}

GroupElement GroupContext::scalar(long long k) const {
  GroupElement g = identity();
  g.phase = mod_reduce(k, d());
  return g;
}

namespace {

long long lower_form(const LowerPart& low, const std::vector<long long>& k,
                     const std::vector<long long>& l) {
  long long acc = 0;
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j)
      acc = mod_reduce(acc + k[i] * low.at(i, j) % low.d() * l[j], low.d());
  }
  return acc;
}

}  // namespace

long long GroupContext::mu_check(const GroupElement& g, const GroupElement& h) const {
  if (g.vec.size() != n() || h.vec.size() != n())
    throw Error("group element context mismatch");
  return d();
}

GroupElement GroupContext::multiply(const GroupElement& g, const GroupElement& h) const {
  long long dd = mu_check(g, h);
  GroupElement r;
  r.phase = mod_reduce(g.phase + h.phase + lower_form(lower_, g.vec, h.vec), dd);
  r.vec.resize(n());
  for (std::size_t i = 0; i < n(); ++i) r.vec[i] = mod_reduce(g.vec[i] + h.vec[i], dd);
  return r;
}

GroupElement GroupContext::inverse(const GroupElement& g) const {
  long long dd = d();
  GroupElement r;
  r.vec.resize(n());
  for (std::size_t i = 0; i < n(); ++i) r.vec[i] = mod_reduce(-g.vec[i], dd);
  r.phase = mod_reduce(-g.phase - lower_form(lower_, g.vec, r.vec), dd);
  return r;
}

GroupElement GroupContext::commutator(const GroupElement& g, const GroupElement& h) const {
  long long dd = mu_check(g, h);
  GroupElement r = identity();
  r.phase = mod_reduce(lower_form(lower_, g.vec, h.vec) - lower_form(lower_, h.vec, g.vec), dd);
  return r;
}

bool GroupContext::commutes(const GroupElement& g, const GroupElement& h) const {
  return commutator(g, h).phase == 0;
}

long long GroupContext::order(const GroupElement& g) const {
  GroupElement acc = g;
  GroupElement id = identity();
  long long bound = d() * d();
  for (long long m = 1; m <= bound; ++m) {
    if (acc == id) return m;
    acc = multiply(acc, g);
  }
  throw Error("order search exceeded d*d bound");
}

GroupElement GroupContext::from_normal_form(const NormalForm& nf) const {
  if (nf.exponents.size() != n()) throw Error("normal form context mismatch");
  GroupElement g;
  g.phase = mod_reduce(nf.phase, d());
  g.vec.resize(n());
  for (std::size_t i = 0; i < n(); ++i) g.vec[i] = mod_reduce(nf.exponents[i], d());
  return g;
}

NormalForm GroupContext::to_normal_form(const GroupElement& g) const {
  return NormalForm{g.phase, g.vec};
}

std::vector<GroupElement> GroupContext::enumerate(std::size_t cap) const {
  double total = static_cast<double>(d());
  for (std::size_t i = 0; i < n(); ++i) total *= static_cast<double>(d());
  if (total > static_cast<double>(cap))
    throw Error("enumeration cap exceeded",
                "d^(n+1) > " + std::to_string(cap));
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(total));
  GroupElement cur = identity();
  for (;;) {
    out.push_back(cur);
    // Odometer: phase fastest, then vec entries.
    if (++cur.phase < d()) continue;
    cur.phase = 0;
    std::size_t i = 0;
    for (; i < n(); ++i) {
      if (++cur.vec[i] < d()) break;
      cur.vec[i] = 0;
    }
    if (i == n()) break;
  }
  return out;
}

std::vector<GroupElement> GroupContext::centre(const std::vector<GroupElement>& s) const {
  std::vector<GroupElement> out;
  for (const auto& a : s) {
    bool central = true;
    for (const auto& b : s) {
      if (!commutes(a, b)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(a);
  }
  return out;
}

std::uint64_t GroupContext::vec_key(const std::vector<long long>& vec) const {
  std::uint64_t k = 0;
  for (std::size_t i = n(); i-- > 0;)
    k = k * static_cast<std::uint64_t>(d()) + static_cast<std::uint64_t>(vec[i]);
  return k;
}

std::uint64_t GroupContext::key(const GroupElement& g) const {
  return vec_key(g.vec) * static_cast<std::uint64_t>(d()) +
         static_cast<std::uint64_t>(g.phase);
}

}  // namespace cg
