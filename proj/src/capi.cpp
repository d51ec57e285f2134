#include "commutation.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "cg/contextuality.hpp"
#include "cg/darboux.hpp"
#include "cg/weyl.hpp"

using nlohmann::json;

struct cg_matrix {
  cg::CommutatorMatrix mu;
};

namespace {

thread_local std::string g_last_error = "{}";

void set_error(const std::string& error, const std::string& detail) {
  json j;
  j["error"] = error;
  j["detail"] = detail;
  g_last_error = j.dump();
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
cg_status wrap(char** out_json, F&& body) {
  if (out_json) *out_json = nullptr;
  try {
    return body();
  } catch (const cg::Error& e) {
    set_error(e.what(), e.detail());
    return CG_INVALID;
  } catch (const std::exception& e) {
    set_error(e.what(), "");
    return CG_INVALID;
  }
}

cg::ContextPtr context_of(const cg_matrix* m) {
  if (!m) throw cg::Error("null matrix handle");
  return std::make_shared<const cg::GroupContext>(m->mu);
}

json normal_form_json(const cg::NormalForm& nf, const cg::CommutatorMatrix& mu) {
  json j;
  j["phase"] = nf.phase;
  j["exponents"] = nf.exponents;
  std::string text = cg::format_word(cg::word_of_normal_form(nf, mu), mu);
  j["word"] = text.empty() ? "1" : text;
  return j;
}

json element_json(const cg::GroupElement& g) {
  json j;
  j["k"] = g.phase;
  j["vec"] = g.vec;
  return j;
}

json certificate_json(const cg::ContextualWord& c, const cg::CommutatorMatrix& mu) {
  json j;
  j["word"] = cg::format_word(c.word, mu);
  j["bracketing"] = cg::format_bracketing(*c.bracketing, mu);
  j["phase"] = c.phase;
  return j;
}

json assignment_json(const cg::ValueAssignment& va, const cg::CommutatorMatrix& mu) {
  json list = json::array();
  for (std::size_t i = 0; i < va.domain.elements.size(); ++i) {
    json row;
    row["element"] = element_json(va.domain.elements[i]);
    cg::NormalForm nf{va.domain.elements[i].phase, va.domain.elements[i].vec};
    std::string text = cg::format_word(cg::word_of_normal_form(nf, mu), mu);
    row["word"] = text.empty() ? "1" : text;
    row["value"] = va.values[i];
    list.push_back(std::move(row));
  }
  return list;
}

json matrix_json(const cg::CommutatorMatrix& mu) { return json::parse(mu.to_json()); }

cg_status reduction_result(const cg::CogredientResult& r, int emit_basis,
                           char** out_json) {
  json j;
  j["matrix"] = matrix_json(r.result);
  if (emit_basis) j["basis"] = r.u.u;
  *out_json = dup_string(j.dump());
  return CG_OK;
}

std::string vertex_label(const cg::GroupElement& g, const cg::CommutatorMatrix& mu) {
  cg::NormalForm nf{g.phase, g.vec};
  std::string text = cg::format_word(cg::word_of_normal_form(nf, mu), mu);
  return text.empty() ? "1" : text;
}

}  // namespace

extern "C" {

const char* cg_last_error(void) { return g_last_error.c_str(); }

cg_status cg_matrix_parse(const char* text, cg_matrix** out) {
  if (out) *out = nullptr;
  return wrap(nullptr, [&]() -> cg_status {
    if (!text || !out) throw cg::Error("null argument");
    *out = new cg_matrix{cg::CommutatorMatrix::from_json(text)};
    return CG_OK;
  });
}

void cg_matrix_free(cg_matrix* m) { delete m; }

void cg_string_free(char* s) { std::free(s); }

cg_status cg_normalize(const cg_matrix* m, const char* word, int trace,
                       char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !word || !out_json) throw cg::Error("null argument");
    cg::Word w = cg::parse_word(word, m->mu);
    json j;
    if (trace) {
      std::vector<std::string> lines;
      cg::NormalForm nf = cg::normalize_traced(w, m->mu, &lines);
      j = normal_form_json(nf, m->mu);
      j["trace"] = lines;
    } else {
      j = normal_form_json(cg::normalize(w, m->mu), m->mu);
    }
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_words_equal(const cg_matrix* m, const char* word_a,
                         const char* word_b, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !word_a || !word_b || !out_json) throw cg::Error("null argument");
    cg::NormalForm a = cg::normalize(cg::parse_word(word_a, m->mu), m->mu);
    cg::NormalForm b = cg::normalize(cg::parse_word(word_b, m->mu), m->mu);
    json j;
    j["equal"] = a == b;
    j["left"] = normal_form_json(a, m->mu);
    j["right"] = normal_form_json(b, m->mu);
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_check_word(const cg_matrix* m, const char* bracketing,
                        char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !bracketing || !out_json) throw cg::Error("null argument");
    cg::BracketingPtr b = cg::parse_bracketing(bracketing, m->mu);
    cg::Word w = cg::flatten(*b);
    cg::VerifyResult v = cg::verify_contextual_word(w, *b, m->mu);
    json j;
    j["word"] = cg::format_word(w, m->mu);
    j["contextual"] = v.phase.has_value();
    if (v.phase)
      j["phase"] = *v.phase;
    else
      j["reason"] = v.failure;
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_search(const cg_matrix* m, unsigned max_len, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    auto r = cg::search_contextual_word(context_of(m), max_len);
    json j;
    if (std::holds_alternative<cg::ContextualWord>(r)) {
      j["status"] = "found";
      j["certificate"] = certificate_json(std::get<cg::ContextualWord>(r), m->mu);
      *out_json = dup_string(j.dump());
      return CG_OK;
    }
    j["status"] = "exhausted";
    j["max_len"] = max_len;
    *out_json = dup_string(j.dump());
    return CG_EXHAUSTED;
  });
}

cg_status cg_assign(const cg_matrix* m, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    auto r = cg::value_assignment(context_of(m));
    json j;
    if (std::holds_alternative<cg::ContextualWord>(r)) {
      j["status"] = "contextual";
      j["certificate"] = certificate_json(std::get<cg::ContextualWord>(r), m->mu);
    } else {
      j["status"] = "assignment";
      j["assignment"] = assignment_json(std::get<cg::ValueAssignment>(r), m->mu);
    }
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_classify(const cg_matrix* m, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    auto r = cg::classify_z2(context_of(m));
    json j;
    if (std::holds_alternative<cg::ContextualWord>(r)) {
      j["status"] = "contextual";
      j["certificate"] = certificate_json(std::get<cg::ContextualWord>(r), m->mu);
    } else {
      j["status"] = "assignment";
      j["assignment"] = assignment_json(std::get<cg::ValueAssignment>(r), m->mu);
    }
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_standard_form(const cg_matrix* m, int emit_basis, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    return reduction_result(cg::standard_form(m->mu), emit_basis, out_json);
  });
}

cg_status cg_darboux(const cg_matrix* m, int emit_basis, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    return reduction_result(cg::darboux_form(m->mu), emit_basis, out_json);
  });
}

cg_status cg_decide(const cg_matrix* m, int reduce, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    json j;
    const cg::CommutatorMatrix* target = &m->mu;
    cg::CommutatorMatrix reduced = m->mu;
    if (!cg::is_darboux(m->mu)) {
      if (!reduce)
        throw cg::Error("matrix is not in block-diagonal form",
                        "reduce first or pass the reduce flag");
      cg::CogredientResult r = cg::darboux_form(m->mu);
      reduced = r.result;
      target = &reduced;
      j["reduced"] = matrix_json(reduced);
      j["basis"] = r.u.u;
      j["warning"] =
          "reduction does not preserve the generators; the certificate refers "
          "to the reduced generators";
    }
    cg::DarbouxDecision dec = cg::decide_darboux(*target);
    j["contextual"] = dec.contextual;
    j["odd_blocks"] = dec.odd_blocks;
    if (dec.word) j["certificate"] = certificate_json(*dec.word, *target);
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_represent(const cg_matrix* m, const char* word, int dense,
                       unsigned dense_cap, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !word || !out_json) throw cg::Error("null argument");
    auto ctx = context_of(m);
    cg::NormalForm nf = cg::normalize(cg::parse_word(word, m->mu), m->mu);
    cg::WeylOperator w = cg::represent(ctx->from_normal_form(nf), m->mu);
    json j;
    j["phase"] = w.phase;
    j["shift"] = w.shift;
    j["clock"] = w.clock;
    j["pauli"] = cg::pauli_string(w);
    if (dense) {
      cg::DenseOperator op = cg::to_dense(w, dense_cap == 0 ? 1024 : dense_cap);
      json rows = json::array();
      for (std::size_t r = 0; r < op.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < op.dim; ++c)
          row.push_back({op.at(r, c).real(), op.at(r, c).imag()});
        rows.push_back(std::move(row));
      }
      j["dense"] = std::move(rows);
    }
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

cg_status cg_graph(const cg_matrix* m, int dot_format, char** out_json) {
  return wrap(out_json, [&]() -> cg_status {
    if (!m || !out_json) throw cg::Error("null argument");
    cg::CompatibilityGraph g = cg::compatibility_graph(context_of(m));
    if (dot_format) {
      std::string dot = "graph compatibility {\n";
      for (std::size_t i = 0; i < g.vertices.size(); ++i)
        dot += "  v" + std::to_string(i) + " [label=\"" +
               vertex_label(g.vertices[i], m->mu) + "\"];\n";
      for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t k = i + 1; k < g.vertices.size(); ++k)
          if (g.adj[i][k])
            dot += "  v" + std::to_string(i) + " -- v" + std::to_string(k) + ";\n";
      dot += "}\n";
      *out_json = dup_string(dot);
      return CG_OK;
    }
    json j;
    json verts = json::array();
    for (const auto& v : g.vertices) {
      json row;
      row["element"] = element_json(v);
      row["word"] = vertex_label(v, m->mu);
      verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      for (std::size_t k = i + 1; k < g.vertices.size(); ++k)
        if (g.adj[i][k]) edges.push_back({i, k});
    j["edges"] = std::move(edges);
    j["cluster"] = cg::is_cluster_graph(g);
    *out_json = dup_string(j.dump());
    return CG_OK;
  });
}

}  // extern "C"
