#include "qlink/qlink.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "config.hpp"
#include "dynamics.hpp"
#include "hamiltonian.hpp"
#include "hilbert.hpp"
#include "lattice.hpp"
#include "protocols.hpp"

struct qlink_lattice {
  qlink::LatticePtr p;
};
struct qlink_basis {
  qlink::BasisPtr p;
};
struct qlink_operator {
  qlink::SparseOperator op;
};

namespace {

thread_local std::string last_error;

qlink_status to_status(qlink::ErrorCode c) {
  switch (c) {
    case qlink::ErrorCode::invalid_argument: return QLINK_ERR_INVALID_ARGUMENT;
    case qlink::ErrorCode::capacity: return QLINK_ERR_CAPACITY;
    case qlink::ErrorCode::validation: return QLINK_ERR_VALIDATION;
    case qlink::ErrorCode::numerical: return QLINK_ERR_NUMERICAL;
    case qlink::ErrorCode::io: return QLINK_ERR_IO;
  }
  return QLINK_ERR_INTERNAL;
}

template <class F>
qlink_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return QLINK_OK;
  } catch (const qlink::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QLINK_ERR_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QLINK_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QLINK_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) qlink::fail(qlink::ErrorCode::invalid_argument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* qlink_last_error(void) { return last_error.c_str(); }

const char* qlink_status_name(qlink_status s) {
  switch (s) {
    case QLINK_OK: return "ok";
    case QLINK_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QLINK_ERR_CAPACITY: return "capacity";
    case QLINK_ERR_VALIDATION: return "validation";
    case QLINK_ERR_NUMERICAL: return "numerical";
    case QLINK_ERR_IO: return "io";
    case QLINK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qlink_version(void) { return "1.0.0"; }

qlink_status qlink_lattice_chain(int n, qlink_lattice** out) {
  return guard([&] {
    need(out, "out");
    *out = new qlink_lattice{std::make_shared<qlink::Lattice>(qlink::build_plaquette_chain(n))};
  });
}

qlink_status qlink_lattice_from_json(const char* text, qlink_lattice** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new qlink_lattice{std::make_shared<qlink::Lattice>(qlink::lattice_from_json(text))};
  });
}

void qlink_lattice_free(qlink_lattice* lat) { delete lat; }

qlink_status qlink_lattice_counts(const qlink_lattice* lat, int* links, int* vertices, int* plaquettes) {
  return guard([&] {
    need(lat, "lattice");
    if (links) *links = lat->p->n_links();
    if (vertices) *vertices = lat->p->n_vertices();
    if (plaquettes) *plaquettes = lat->p->n_plaquettes();
  });
}

qlink_status qlink_lattice_flux_sign(const qlink_lattice* lat, int link, int* sign) {
  return guard([&] {
    need(lat, "lattice");
    need(sign, "sign");
    *sign = qlink::flux_sign(*lat->p, link);
  });
}

qlink_status qlink_lattice_to_json(const qlink_lattice* lat, char* buf, size_t cap, size_t* needed) {
  return guard([&] {
    need(lat, "lattice");
    std::string s = qlink::lattice_to_json(*lat->p);
    if (needed) *needed = s.size() + 1;
    if (buf && cap > 0) {
      std::size_t n = std::min(cap - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
    if (buf && cap < s.size() + 1) qlink::fail(qlink::ErrorCode::capacity, "buffer too small");
  });
}

qlink_status qlink_basis_full(const qlink_lattice* lat, qlink_basis** out) {
  return guard([&] {
    need(lat, "lattice");
    need(out, "out");
    *out = new qlink_basis{qlink::full_basis(lat->p)};
  });
}

qlink_status qlink_basis_sector(const qlink_lattice* lat, const double* charges, int n_charges, qlink_basis** out) {
  return guard([&] {
    need(lat, "lattice");
    need(charges, "charges");
    need(out, "out");
    if (n_charges != lat->p->n_vertices())
      qlink::fail(qlink::ErrorCode::invalid_argument, "need one charge per vertex");
    std::string warning;
    auto b = qlink::enumerate_sector(lat->p, std::vector<double>(charges, charges + n_charges), &warning);
    *out = new qlink_basis{b};
  });
}

void qlink_basis_free(qlink_basis* b) { delete b; }

qlink_status qlink_basis_dim(const qlink_basis* b, int* dim) {
  return guard([&] {
    need(b, "basis");
    need(dim, "dim");
    *dim = b->p->dim();
  });
}

qlink_status qlink_basis_state(const qlink_basis* b, int index, uint32_t* state) {
  return guard([&] {
    need(b, "basis");
    need(state, "state");
    if (index < 0 || index >= b->p->dim()) qlink::fail(qlink::ErrorCode::invalid_argument, "index out of range");
    *state = b->p->states[index];
  });
}

qlink_status qlink_hamiltonian_microscopic(const qlink_basis* b, double epsilon, double Omega, double Omega_prime,
                                           double mu, double mu_plus, qlink_operator** out) {
  return guard([&] {
    need(b, "basis");
    need(out, "out");
    qlink::ModelParams p;
    p.epsilon = epsilon;
    p.Omega = Omega;
    p.Omega_prime = Omega_prime;
    p.mu_sq = mu;
    p.mu_plus = mu_plus;
    p.Vprime = Omega - Omega_prime;
    *out = new qlink_operator{qlink::build_microscopic(b->p, p)};
  });
}

qlink_status qlink_hamiltonian_effective(const qlink_basis* b, double J, double V, double W, qlink_operator** out) {
  return guard([&] {
    need(b, "basis");
    need(out, "out");
    *out = new qlink_operator{qlink::build_effective(b->p, J, V, W)};
  });
}

qlink_status qlink_gauss_generator(const qlink_basis* b, int vertex, qlink_operator** out) {
  return guard([&] {
    need(b, "basis");
    need(out, "out");
    *out = new qlink_operator{qlink::gauss_generator(b->p, vertex)};
  });
}

void qlink_operator_free(qlink_operator* op) { delete op; }

qlink_status qlink_operator_dim(const qlink_operator* op, int* dim, int* nnz, int* hermitian) {
  return guard([&] {
    need(op, "operator");
    if (dim) *dim = op->op.dim();
    if (nnz) *nnz = static_cast<int>(op->op.mat.nonZeros());
    if (hermitian) *hermitian = op->op.hermitian ? 1 : 0;
  });
}

qlink_status qlink_operator_triplets(const qlink_operator* op, int* rows, int* cols, double* re, double* im) {
  return guard([&] {
    need(op, "operator");
    need(rows, "rows");
    need(cols, "cols");
    need(re, "re");
    need(im, "im");
    std::vector<qlink::Triplet> t;
    for (int k = 0; k < op->op.mat.outerSize(); ++k)
      for (qlink::SpMat::InnerIterator it(op->op.mat, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
      return a.row() != b.row() ? a.row() < b.row() : a.col() < b.col();
    });
    for (std::size_t i = 0; i < t.size(); ++i) {
      rows[i] = t[i].row();
      cols[i] = t[i].col();
      re[i] = t[i].value().real();
      im[i] = t[i].value().imag();
    }
  });
}

qlink_status qlink_ground_state(const qlink_operator* op, double* energy, double* re, double* im) {
  return guard([&] {
    need(op, "operator");
    need(energy, "energy");
    auto gs = qlink::ground_state(op->op.mat);
    *energy = gs.energy;
    for (int i = 0; i < gs.state.size(); ++i) {
      if (re) re[i] = gs.state(i).real();
      if (im) im[i] = gs.state(i).imag();
    }
  });
}

qlink_status qlink_derive_transmon(double E_J, double E_C, double* epsilon, double* U, int* transmon_regime) {
  return guard([&] {
    auto r = qlink::derive_transmon({E_J, E_C});
    if (epsilon) *epsilon = r.epsilon;
    if (U) *U = r.U;
    if (transmon_regime) *transmon_regime = r.transmon_regime ? 1 : 0;
  });
}

qlink_status qlink_derive_coupling(double epsilon, double U, double E_JQ_ratio, double C_ratio, double flux,
                                   double* mu, double* omega_like) {
  return guard([&] {
    auto r = qlink::derive_coupling(epsilon, U, {E_JQ_ratio, C_ratio, flux, qlink::CouplerKind::vertex});
    if (mu) *mu = r.mu;
    if (omega_like) *omega_like = r.omega_like;
  });
}

void qlink_run_options_init(qlink_run_options* opts) {
  if (!opts) return;
  *opts = qlink_run_options{};
}

qlink_status qlink_run(const char* command, const char* config_path, const qlink_run_options* opts) {
  qlink_run_options o;
  qlink_run_options_init(&o);
  if (opts) o = *opts;
  std::string out = o.out_dir ? o.out_dir : "";
  qlink_status s = guard([&] {
    need(command, "command");
    need(config_path, "config path");
    auto cfg = qlink::RunConfig::from_file(config_path);
    if (out.empty()) out = cfg.str("output.dir", "out");
    qlink::RunOptions ro;
    ro.out_dir = out;
    if (o.has_seed) ro.seed = o.seed;
    ro.threads = o.threads;
    ro.trajectories = o.trajectories;
    ro.dump_basis = o.dump_basis != 0;
    ro.dump_operator = o.dump_operator != 0;
    qlink::run_protocol(command, cfg, ro);
  });
  if (s != QLINK_OK) {
    std::string msg = last_error;
    try {
      qlink::write_error(out.empty() ? "out" : out, qlink_status_name(s), msg);
    } catch (...) {
    }
    last_error = msg;
  }
  return s;
}

}  // extern "C"
