#pragma once

#ifdef __cplusplus
extern "C" {
#endif

/* Shared-library interface. All structured results are returned as
 * heap-allocated JSON strings owned by the caller; release them with
 * cg_string_free. Matrices are opaque handles parsed from the JSON form
 * {"d": modulus, "mu": rows, "labels": optional names}. */

typedef enum {
  CG_OK = 0,
  CG_INVALID = 2,   /* bad input or domain error; see cg_last_error */
  CG_EXHAUSTED = 3  /* search bound reached without an answer */
} cg_status;

typedef struct cg_matrix cg_matrix;

/* JSON {"error": ..., "detail": ...} describing the most recent failure
 * on this thread; valid until the next library call. */
const char* cg_last_error(void);

cg_status cg_matrix_parse(const char* json, cg_matrix** out);
void cg_matrix_free(cg_matrix* m);
void cg_string_free(char* s);

/* Normal form of a word; with trace != 0 the result includes one line
 * per rewrite step. */
cg_status cg_normalize(const cg_matrix* m, const char* word, int trace,
                       char** out_json);

/* Word problem for two words. */
cg_status cg_words_equal(const cg_matrix* m, const char* word_a,
                         const char* word_b, char** out_json);

/* Contextual-word check of a bracketing (the word is its flattening). */
cg_status cg_check_word(const cg_matrix* m, const char* bracketing,
                        char** out_json);

/* Breadth-first contextual-word search up to max_len letters. Returns
 * CG_EXHAUSTED when the bound is hit without a witness. */
cg_status cg_search(const cg_matrix* m, unsigned max_len, char** out_json);

/* Value assignment on the compatible monoid, or the contextual word
 * obstructing it. */
cg_status cg_assign(const cg_matrix* m, char** out_json);

/* Complete d = 2 classification: contextual word or value assignment. */
cg_status cg_classify(const cg_matrix* m, char** out_json);

/* Tridiagonal reduction; emit_basis != 0 includes the base change. */
cg_status cg_standard_form(const cg_matrix* m, int emit_basis, char** out_json);

/* Block-diagonal reduction; emit_basis as above. */
cg_status cg_darboux(const cg_matrix* m, int emit_basis, char** out_json);

/* Block-form contextuality decision. Requires block-diagonal input
 * unless reduce != 0, which first reduces and flags in the output that
 * the certificate refers to the new generators. */
cg_status cg_decide(const cg_matrix* m, int reduce, char** out_json);

/* Clock/shift operator of a word's group element; dense != 0 adds the
 * matrix as [re, im] pairs, subject to dense_cap on the dimension. */
cg_status cg_represent(const cg_matrix* m, const char* word, int dense,
                       unsigned dense_cap, char** out_json);

/* Commuting-pair graph on the non-central compatible elements. Output
 * is JSON, or DOT text when dot_format != 0. */
cg_status cg_graph(const cg_matrix* m, int dot_format, char** out_json);

#ifdef __cplusplus
}
#endif
