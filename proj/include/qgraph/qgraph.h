/*
 * qgraph C interface.
 *
 * Every call returns a qg_status; QG_OK is zero. On failure a human-readable
 * message for the calling thread is available from qg_last_error(). Objects
 * are opaque handles created by qg_*_create / qg_*_from_* calls and released
 * with the matching qg_*_free, which accepts NULL.
 *
 * Matrices are exchanged as row-major arrays of n*n qg_complex values.
 * Edge and eigenvector labels are 1-based as in the physics literature;
 * eigenphase arrays are indexed by the Fourier index m = 0..n-1.
 */
#ifndef QGRAPH_QGRAPH_H
#define QGRAPH_QGRAPH_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QGRAPH_BUILDING)
#    define QG_API __declspec(dllexport)
#  else
#    define QG_API __declspec(dllimport)
#  endif
#else
#  define QG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qg_status {
    QG_OK = 0,
    QG_ERR_INVALID_ARGUMENT = 1,
    QG_ERR_DIMENSION = 2,
    QG_ERR_SINGULAR = 3,
    QG_ERR_NOT_UNITARY = 4,
    QG_ERR_NOT_CIRCULANT = 5,
    QG_ERR_EMPTY_CONTOUR = 6,
    QG_ERR_NUMERICAL = 7,
    QG_ERR_BUFFER_TOO_SMALL = 8,
    QG_ERR_INTERNAL = 9
} qg_status;

typedef struct qg_complex {
    double re;
    double im;
} qg_complex;

typedef enum qg_branch { QG_BRANCH_POSITIVE = 0, QG_BRANCH_NEGATIVE = 1 } qg_branch;

typedef enum qg_edge_kind { QG_EDGE_CENTER = 0, QG_EDGE_CORNER = 1, QG_EDGE_RANGE = 2 } qg_edge_kind;

typedef enum qg_membership_status {
    QG_IN_BAND = 0,
    QG_GAP = 1,
    QG_FLAT_BAND = 2,
    QG_EXCLUDED_LATTICE_POINT = 3
} qg_membership_status;

typedef enum qg_limit { QG_LIMIT_ZERO = 0, QG_LIMIT_INFINITY = 1 } qg_limit;

typedef struct qg_circulant qg_circulant;
typedef struct qg_lattice qg_lattice;
typedef struct qg_bandset qg_bandset;
typedef struct qg_fermi qg_fermi;
typedef struct qg_dirac_list qg_dirac_list;

typedef struct qg_symmetry {
    int time_reversal;
    int pt_symmetric;
    size_t fixed_edge_count; /* 1 or 2 */
    size_t fixed_edges[2];   /* 1-based */
} qg_symmetry;

typedef struct qg_dnr {
    size_t dirichlet;
    size_t neumann;
    size_t robin;
} qg_dnr;

typedef struct qg_membership {
    qg_membership_status status;
    int has_q_star;
    double q_star;
} qg_membership;

typedef struct qg_band {
    double lo;
    double hi;
    qg_edge_kind edge_lo;
    qg_edge_kind edge_hi;
} qg_band;

typedef struct qg_dirac_point {
    double mu;
    double k;
    qg_edge_kind location;
} qg_dirac_point;

QG_API const char* qg_version(void);
QG_API const char* qg_status_string(qg_status status);
QG_API const char* qg_last_error(void);

/* ---- circulant couplings ---------------------------------------------- */

QG_API qg_status qg_circulant_from_first_row(const qg_complex* row, size_t n, qg_circulant** out);
QG_API qg_status qg_circulant_from_eigenphases(const double* phases, size_t n, qg_circulant** out);
QG_API qg_status qg_circulant_from_json(const char* json, qg_circulant** out);
/* factor * R, R the cyclic shift. */
QG_API qg_status qg_circulant_shift(size_t n, qg_complex factor, qg_circulant** out);
QG_API qg_status qg_circulant_delta(size_t n, double alpha, qg_circulant** out);
QG_API qg_status qg_circulant_permutation_invariant(size_t n, qg_complex u, qg_complex v, qg_circulant** out);
QG_API void qg_circulant_free(qg_circulant* u);

QG_API size_t qg_circulant_size(const qg_circulant* u);
QG_API qg_status qg_circulant_first_row(const qg_circulant* u, qg_complex* out, size_t len);
QG_API qg_status qg_circulant_matrix(const qg_circulant* u, qg_complex* out, size_t len);
QG_API qg_status qg_circulant_eigenphases(const qg_circulant* u, double* out, size_t len);
/* Writes the JSON form into buf (NUL-terminated). *needed receives the
 * required size including the terminator, also on QG_ERR_BUFFER_TOO_SMALL. */
QG_API qg_status qg_circulant_to_json(const qg_circulant* u, char* buf, size_t len, size_t* needed);
QG_API qg_status qg_circulant_symmetry(const qg_circulant* u, qg_symmetry* out);
QG_API qg_status qg_circulant_dnr(const qg_circulant* u, double tol, qg_dnr* out);

QG_API qg_status qg_eigenvector(size_t n, size_t j, qg_complex* out, size_t len);
QG_API qg_status qg_parity_operator(size_t n, double* out, size_t len);

/* ---- star graph -------------------------------------------------------- */

QG_API qg_status qg_boundary_residual(const qg_circulant* u, double ell, const qg_complex* psi,
                                      const qg_complex* dpsi, size_t n, qg_complex* out);
QG_API qg_status qg_s_matrix(const qg_circulant* u, double ell, double k, qg_complex* out, size_t len);
/* Generic dense unitary coupling; always the linear solve. */
QG_API qg_status qg_s_matrix_dense(const qg_complex* u, size_t n, double ell, double k, qg_complex* out);
QG_API qg_status qg_s_matrix_limit(const qg_circulant* u, qg_limit end, qg_complex* out, size_t len);
QG_API qg_status qg_s_matrix_shift_closed_form(size_t n, double mu, double ell, double k, qg_complex* out,
                                               size_t len);
/* kappas / antibound arrays need room for n values each. */
QG_API qg_status qg_bound_states(const qg_circulant* u, double ell, double* kappas, size_t* n_bound,
                                 double* antibound, size_t* n_antibound, size_t len);

/* ---- square lattice ---------------------------------------------------- */

QG_API qg_status qg_lattice_create(double mu, double ell, qg_lattice** out);
QG_API void qg_lattice_free(qg_lattice* m);

QG_API qg_status qg_lattice_secular_determinant(const qg_lattice* m, qg_complex k, double theta1, double theta2,
                                                qg_complex* out);
/* c[0..4] of the positive (x = k) or negative (x = kappa) quartic. */
QG_API qg_status qg_lattice_coefficients(const qg_lattice* m, qg_branch branch, double x, double theta1,
                                         double theta2, double* c);
QG_API qg_status qg_lattice_reduced_fg(const qg_lattice* m, qg_branch branch, double x, double* f, double* g);
QG_API qg_status qg_lattice_membership(const qg_lattice* m, qg_branch branch, double x, qg_membership* out);
QG_API qg_status qg_lattice_bands(const qg_lattice* m, qg_branch branch, double lo, double hi, int grid, double tol,
                                  qg_bandset** out);
QG_API qg_status qg_lattice_p_sigma(const qg_lattice* m, double k_max, int grid, double* out);
QG_API qg_status qg_lattice_band_width_bound(const qg_lattice* m, int n, double* out);
QG_API qg_status qg_flat_band_mu(double ell, double* out);
QG_API qg_status qg_negative_asymptotic_roots(double mu, double* kappa1, double* kappa2);

QG_API size_t qg_bandset_count(const qg_bandset* b);
QG_API qg_status qg_bandset_get(const qg_bandset* b, size_t i, qg_band* out);
QG_API size_t qg_bandset_flat_count(const qg_bandset* b);
QG_API qg_status qg_bandset_flat_point(const qg_bandset* b, size_t i, double* out);
QG_API void qg_bandset_free(qg_bandset* b);

/* Returns QG_ERR_EMPTY_CONTOUR when k lies in a gap. */
QG_API qg_status qg_lattice_fermi_surface(const qg_lattice* m, double k, int grid, qg_fermi** out);
QG_API double qg_fermi_q_star(const qg_fermi* f);
QG_API size_t qg_fermi_point_count(const qg_fermi* f);
QG_API qg_status qg_fermi_point(const qg_fermi* f, size_t i, double* theta1, double* theta2);
QG_API size_t qg_fermi_segment_count(const qg_fermi* f);
QG_API qg_status qg_fermi_segment(const qg_fermi* f, size_t i, size_t* a, size_t* b);
QG_API void qg_fermi_free(qg_fermi* f);

/* threads = 0 uses the hardware concurrency. */
QG_API qg_status qg_dirac_points(double ell, double mu_lo, double mu_hi, int grid, double k_lo, double k_hi,
                                 unsigned threads, qg_dirac_list** out);
QG_API size_t qg_dirac_count(const qg_dirac_list* d);
QG_API qg_status qg_dirac_get(const qg_dirac_list* d, size_t i, qg_dirac_point* out);
QG_API void qg_dirac_free(qg_dirac_list* d);

#ifdef __cplusplus
}
#endif

#endif /* QGRAPH_QGRAPH_H */
