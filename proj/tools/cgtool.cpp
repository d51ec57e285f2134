#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commutation.h"

namespace {

int fail_invalid() {
  std::cout << cg_last_error() << "\n";
  std::cerr << "error: " << cg_last_error() << "\n";
  return 2;
}

// Prints the result JSON and maps the status to the exit code.
int emit(cg_status st, char* out) {
  if (st == CG_INVALID) return fail_invalid();
  if (out) {
    std::cout << out << "\n";
    cg_string_free(out);
  }
  return st == CG_EXHAUSTED ? 3 : 0;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ok = true;
  return buf.str();
}

struct MatrixHandle {
  cg_matrix* m = nullptr;
  ~MatrixHandle() { cg_matrix_free(m); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for commutation groups over Z_d"};
  app.require_subcommand(1);

  std::string matrix_path, word, word2, bracketing, format = "json";
  unsigned max_len = 10;
  unsigned dense_cap = 1024;
  bool reduce = false, emit_basis = false, dense = false, trace = false;

  auto add_matrix = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", matrix_path, "Path to matrix JSON")->required();
  };

  auto* c_norm = app.add_subcommand("normalize", "Normal form of a word");
  add_matrix(c_norm);
  c_norm->add_option("--word", word, "Word text")->required();
  c_norm->add_flag("--trace", trace, "Log each rewrite step to stderr");

  auto* c_eq = app.add_subcommand("equal", "Word problem for two words");
  add_matrix(c_eq);
  c_eq->add_option("--word", word, "First word")->required();
  c_eq->add_option("--word2", word2, "Second word")->required();

  auto* c_check = app.add_subcommand("check-word", "Verify a contextual word");
  add_matrix(c_check);
  c_check->add_option("--bracketing", bracketing, "Bracketing text")->required();

  auto* c_search = app.add_subcommand("search", "Search for a contextual word");
  add_matrix(c_search);
  c_search->add_option("--max-len", max_len, "Length bound");

  auto* c_assign = app.add_subcommand("assign", "Value assignment or obstruction");
  add_matrix(c_assign);

  auto* c_classify = app.add_subcommand("classify", "Complete d = 2 decision");
  add_matrix(c_classify);

  auto* c_darboux = app.add_subcommand("darboux", "Block-diagonal reduction");
  add_matrix(c_darboux);
  c_darboux->add_flag("--emit-basis", emit_basis, "Include the base change");

  auto* c_decide = app.add_subcommand("decide", "Block-form contextuality decision");
  add_matrix(c_decide);
  c_decide->add_flag("--reduce", reduce,
                     "Reduce non-block input first (changes the generators)");

  auto* c_rep = app.add_subcommand("represent", "Clock/shift operator of a word");
  add_matrix(c_rep);
  c_rep->add_option("--word", word, "Word text")->required();
  c_rep->add_flag("--dense", dense, "Include the dense matrix");
  c_rep->add_option("--dense-cap", dense_cap, "Dense dimension cap");

  auto* c_graph = app.add_subcommand("graph", "Commuting-pair graph");
  add_matrix(c_graph);
  c_graph->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));

  CLI11_PARSE(app, argc, argv);

  bool ok = false;
  std::string matrix_text = read_file(matrix_path, ok);
  if (!ok) {
    nlohmann::json err;
    err["error"] = "cannot read matrix file";
    err["detail"] = matrix_path;
    std::cout << err.dump() << "\n";
    std::cerr << "error: cannot read " << matrix_path << "\n";
    return 2;
  }
  MatrixHandle h;
  if (cg_matrix_parse(matrix_text.c_str(), &h.m) != CG_OK) return fail_invalid();

  char* out = nullptr;
  if (c_norm->parsed()) {
    cg_status st = cg_normalize(h.m, word.c_str(), trace ? 1 : 0, &out);
    if (st == CG_OK && trace) {
      auto j = nlohmann::json::parse(out);
      for (const auto& line : j.at("trace"))
        std::cerr << line.get<std::string>() << "\n";
    }
    return emit(st, out);
  }
  // The status must be computed before emit reads `out`.
  cg_status st = CG_INVALID;
  if (c_eq->parsed())
    st = cg_words_equal(h.m, word.c_str(), word2.c_str(), &out);
  else if (c_check->parsed())
    st = cg_check_word(h.m, bracketing.c_str(), &out);
  else if (c_search->parsed())
    st = cg_search(h.m, max_len, &out);
  else if (c_assign->parsed())
    st = cg_assign(h.m, &out);
  else if (c_classify->parsed())
    st = cg_classify(h.m, &out);
  else if (c_darboux->parsed())
    st = cg_darboux(h.m, emit_basis ? 1 : 0, &out);
  else if (c_decide->parsed())
    st = cg_decide(h.m, reduce ? 1 : 0, &out);
  else if (c_rep->parsed())
    st = cg_represent(h.m, word.c_str(), dense ? 1 : 0, dense_cap, &out);
  else if (c_graph->parsed())
    st = cg_graph(h.m, format == "dot" ? 1 : 0, &out);
  else
    return 2;
  return emit(st, out);
}
