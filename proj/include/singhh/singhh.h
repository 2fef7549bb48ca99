#pragma once

/* C interface to the singularity cohomology toolkit. All computations run
 * behind an opaque session holding the ambient configuration; results come
 * back as JSON strings allocated with malloc, released with shh_string_free.
 * Every entry point returns SHH_OK or an error code; the message for the most
 * recent failure on a session is available through shh_last_error. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct shh_session shh_session;

enum {
  SHH_OK = 0,
  SHH_ERROR_MATH = 1,     /* well formed input with no defined answer */
  SHH_ERROR_INPUT = 2,    /* malformed input or bad arguments */
  SHH_ERROR_BUDGET = 3,   /* a size guard tripped */
  SHH_ERROR_IO = 4,       /* filesystem trouble */
  SHH_ERROR_INTERNAL = 5, /* unexpected failure; a bug if it ever happens */
};

shh_session* shh_session_new(void);
void shh_session_free(shh_session* s);

/* Message of the last failed call on this session; owned by the session and
 * valid until the next call on it. Empty string when nothing failed yet. */
const char* shh_last_error(const shh_session* s);

void shh_string_free(char* text);

/* Ambient configuration. Keys: "field" ("rationals" or "gf <prime>"),
 * "order" ("grevlex", "gradedlex", "lex"), "depth-cap" (positive int),
 * "budget" (positive long, matrix entry guard), "threads" (positive int). */
int shh_configure(shh_session* s, const char* key, const char* value);

/* Hypersurface singularities. poly is parsed in the session field over the
 * comma separated variable list. */
int shh_milnor(shh_session* s, const char* poly, const char* vars, char** out_json);
int shh_tyurina(shh_session* s, const char* poly, const char* vars, char** out_json);
int shh_fingerprint(shh_session* s, const char* poly, const char* vars, char** out_json);
int shh_compare(shh_session* s, const char* poly_a, const char* poly_b, const char* vars,
                char** out_json);
/* Stable cohomology dimensions of the hypersurface ring over the window
 * [n_min, n_max], localized at the origin. */
int shh_stable_hh(shh_session* s, const char* poly, const char* vars, int n_min, int n_max,
                  char** out_json);

/* Hochschild cohomology of a finite dimensional algebra file, degrees
 * 0..n_max. */
int shh_hochschild(shh_session* s, const char* algebra_path, int n_max, char** out_json);

/* Singular Hochschild cohomology over [n_min, n_max] with truncation depth up
 * to q_max. resolution_path may be NULL: a bar resolution of the needed length
 * is built. A loaded resolution with a declared period is extended as needed.
 * Degrees whose scan ends without a verdict are reported with a null value. */
int shh_hochschild_sg(shh_session* s, const char* algebra_path, const char* resolution_path,
                      int n_min, int n_max, int q_max, char** out_json);

/* Composition products of entire cohomology group bases in degrees degree_f
 * and degree_g, with coordinates in the degree-sum group. Stabilization depths
 * are found by scanning up to q_max; an inconclusive scan is a math error. */
int shh_hochschild_sg_product(shh_session* s, const char* algebra_path,
                              const char* resolution_path, int degree_f, int degree_g,
                              int q_max, char** out_json);

/* Compares the two descriptions of each syzygy of a bar resolution for
 * q = 0..q_max. */
int shh_syzygy_check(shh_session* s, const char* algebra_path, int q_max, char** out_json);

/* Cohomology dimensions of the morphism complex between two matrix
 * factorization files sharing one potential. */
int shh_mf_hom(shh_session* s, const char* mf_path_e, const char* mf_path_f, char** out_json);

/* Parses and fully validates an algebra, resolution, or matrix factorization
 * file, detected from its leading marker. Resolution files validate against
 * the algebra file given as algebra_path (NULL otherwise). */
int shh_validate(shh_session* s, const char* path, const char* algebra_path, char** out_json);

#ifdef __cplusplus
}
#endif
