#include "cg/matrix.hpp"

#include <nlohmann/json.hpp>

namespace cg {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return labels;
}

std::string pair_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

CommutatorMatrix::CommutatorMatrix(const std::vector<std::vector<long long>>& raw,
                                   Modulus d, std::vector<std::string> labels)
    : d_(d.get()), n_(raw.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (raw[i].size() != n_)
      throw Error("matrix is not square",
                  "row " + std::to_string(i) + " has " +
                      std::to_string(raw[i].size()) + " entries, expected " +
                      std::to_string(n_));
  }
  a_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] = mod_reduce(raw[i][j], d_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a_[i * n_ + i] != 0)
      throw Error("diagonal entry is nonzero", pair_str(i, i));
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (mod_reduce(a_[i * n_ + j] + a_[j * n_ + i], d_) != 0)
        throw Error("matrix is not skew-symmetric mod d", pair_str(i, j));
    }
  }
  if (labels.empty()) labels = default_labels(n_);
  if (labels.size() != n_)
    throw Error("label count does not match matrix size",
                std::to_string(labels.size()) + " labels for n=" + std::to_string(n_));
  labels_ = std::move(labels);
}

std::optional<std::size_t> CommutatorMatrix::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

CommutatorMatrix CommutatorMatrix::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid matrix JSON", e.what());
  }
  if (!j.is_object() || !j.contains("d") || !j.contains("mu"))
    throw Error("matrix JSON must be an object with \"d\" and \"mu\"");
  long long d = j.at("d").get<long long>();
  auto mu = j.at("mu").get<std::vector<std::vector<long long>>>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return CommutatorMatrix(mu, Modulus(d), std::move(labels));
}

std::string CommutatorMatrix::to_json() const {
  nlohmann::json j;
  j["d"] = d_;
  j["labels"] = labels_;
  std::vector<std::vector<long long>> rows(n_, std::vector<long long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t jj = 0; jj < n_; ++jj) rows[i][jj] = at(i, jj);
  j["mu"] = rows;
  return j.dump();
}

LowerPart::LowerPart(const CommutatorMatrix& mu)
    : d_(mu.d()), n_(mu.n()), a_(n_ * n_, 0) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) a_[i * n_ + j] = mu.at(i, j);
}

LowerPart lower_part(const CommutatorMatrix& mu) { return LowerPart(mu); }

namespace {

template <typename M>
Zd bilinear_impl(const M& m, const Vec& k, const Vec& l) {
  if (k.size() != m.n() || l.size() != m.n() || k.modulus() != m.d() ||
      l.modulus() != m.d())
    throw Error("bilinear form dimension mismatch");
  long long acc = 0;
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (k[i] == 0) continue;
    for (std::size_t j = 0; j < m.n(); ++j)
      acc = mod_reduce(acc + k[i] * m.at(i, j) % m.d() * l[j], m.d());
  }
  return Zd(acc, Modulus(m.d()));
}

}  // namespace

Zd bilinear(const LowerPart& m, const Vec& k, const Vec& l) {
  return bilinear_impl(m, k, l);
}
Zd bilinear(const CommutatorMatrix& m, const Vec& k, const Vec& l) {
  return bilinear_impl(m, k, l);
}

Zd commutator_value(const CommutatorMatrix& mu, const Vec& k, const Vec& l) {
  LowerPart low(mu);
  return bilinear(low, k, l) - bilinear(low, l, k);
}

CommutatorMatrix tensor_double(const CommutatorMatrix& mu) {
  std::size_t n = mu.n();
  std::vector<std::vector<long long>> rows(2 * n, std::vector<long long>(2 * n, 0));
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rows[copy * n + i][copy * n + j] = mu.at(i, j);
  std::vector<std::string> labels;
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (std::size_t i = 0; i < n; ++i)
      labels.push_back(mu.label(i) + std::to_string(copy + 1));
  return CommutatorMatrix(rows, mu.modulus(), std::move(labels));
}

CommutatorMatrix embed_scale(const CommutatorMatrix& mu, long long k) {
  if (mu.d() != 2) throw Error("embed_scale requires a matrix over Z_2");
  if (k < 1) throw Error("embed_scale requires k >= 1", "k=" + std::to_string(k));
  std::vector<std::vector<long long>> rows(mu.n(), std::vector<long long>(mu.n()));
  for (std::size_t i = 0; i < mu.n(); ++i)
    for (std::size_t j = 0; j < mu.n(); ++j) rows[i][j] = mu.at(i, j) * k;
  return CommutatorMatrix(rows, Modulus(2 * k), mu.labels());
}

}  // namespace cg
