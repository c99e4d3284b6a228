#ifndef QLINK_QLINK_H
#define QLINK_QLINK_H

#include <stddef.h>
#include <stdint.h>

#if defined(QLINK_BUILDING)
#define QLINK_API __attribute__((visibility("default")))
#else
#define QLINK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QLINK_OK = 0,
  QLINK_ERR_INVALID_ARGUMENT = 1,
  QLINK_ERR_CAPACITY = 2,
  QLINK_ERR_VALIDATION = 3,
  QLINK_ERR_NUMERICAL = 4,
  QLINK_ERR_IO = 5,
  QLINK_ERR_INTERNAL = 6
} qlink_status;

typedef struct qlink_lattice qlink_lattice;
typedef struct qlink_basis qlink_basis;
typedef struct qlink_operator qlink_operator;

/* Message of the last failed call on this thread; never NULL. */
QLINK_API const char* qlink_last_error(void);
QLINK_API const char* qlink_status_name(qlink_status s);
QLINK_API const char* qlink_version(void);

/* lattices */
QLINK_API qlink_status qlink_lattice_chain(int n, qlink_lattice** out);
QLINK_API qlink_status qlink_lattice_from_json(const char* text, qlink_lattice** out);
QLINK_API void qlink_lattice_free(qlink_lattice* lat);
QLINK_API qlink_status qlink_lattice_counts(const qlink_lattice* lat, int* links, int* vertices, int* plaquettes);
QLINK_API qlink_status qlink_lattice_flux_sign(const qlink_lattice* lat, int link, int* sign);
/* Writes at most cap bytes including the terminator; *needed gets the full size. */
QLINK_API qlink_status qlink_lattice_to_json(const qlink_lattice* lat, char* buf, size_t cap, size_t* needed);

/* bases; charges has one entry per vertex */
QLINK_API qlink_status qlink_basis_full(const qlink_lattice* lat, qlink_basis** out);
QLINK_API qlink_status qlink_basis_sector(const qlink_lattice* lat, const double* charges, int n_charges,
                                          qlink_basis** out);
QLINK_API void qlink_basis_free(qlink_basis* b);
QLINK_API qlink_status qlink_basis_dim(const qlink_basis* b, int* dim);
QLINK_API qlink_status qlink_basis_state(const qlink_basis* b, int index, uint32_t* state);

/* operators */
QLINK_API qlink_status qlink_hamiltonian_microscopic(const qlink_basis* b, double epsilon, double Omega,
                                                     double Omega_prime, double mu, double mu_plus,
                                                     qlink_operator** out);
QLINK_API qlink_status qlink_hamiltonian_effective(const qlink_basis* b, double J, double V, double W,
                                                   qlink_operator** out);
QLINK_API qlink_status qlink_gauss_generator(const qlink_basis* b, int vertex, qlink_operator** out);
QLINK_API void qlink_operator_free(qlink_operator* op);
QLINK_API qlink_status qlink_operator_dim(const qlink_operator* op, int* dim, int* nnz, int* hermitian);
/* Sorted (row, col) coordinate list; arrays must hold nnz entries. */
QLINK_API qlink_status qlink_operator_triplets(const qlink_operator* op, int* rows, int* cols, double* re,
                                               double* im);
/* Lowest eigenpair; re/im may be NULL, otherwise they hold dim entries. */
QLINK_API qlink_status qlink_ground_state(const qlink_operator* op, double* energy, double* re, double* im);

/* circuit compilation */
QLINK_API qlink_status qlink_derive_transmon(double E_J, double E_C, double* epsilon, double* U,
                                             int* transmon_regime);
QLINK_API qlink_status qlink_derive_coupling(double epsilon, double U, double E_JQ_ratio, double C_ratio,
                                             double flux, double* mu, double* omega_like);

/* protocol runner used by the command-line tool */
typedef struct {
  const char* out_dir;    /* NULL: value from the config, else "out" */
  int has_seed;
  uint64_t seed;
  int threads;            /* <= 0: hardware default */
  int trajectories;       /* > 0 switches evolve to quantum trajectories */
  int dump_basis;
  int dump_operator;
} qlink_run_options;

QLINK_API void qlink_run_options_init(qlink_run_options* opts);
/* command: params | spectrum | spectroscopy | evolve | sweep | disorder | groundstate */
QLINK_API qlink_status qlink_run(const char* command, const char* config_path, const qlink_run_options* opts);

#ifdef __cplusplus
}
#endif

#endif
