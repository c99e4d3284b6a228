#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseLU>

#include "hamiltonian.hpp"
#include "parallel.hpp"

namespace qlink {

namespace {

const cplx I1(0.0, 1.0);

// ---- exponentials ----

using Apply = std::function<Vec(const Vec&)>;

// exp(-i * tau * A) psi by a truncated Taylor series, split into substeps so
// that each has |A| tau <= 1.
Vec expmv(const Apply& A, double a_norm, double tau, const Vec& psi) {
  int sub = std::max(1, static_cast<int>(std::ceil(a_norm * std::abs(tau))));
  double h = tau / sub;
  Vec out = psi;
  for (int s = 0; s < sub; ++s) {
    Vec term = out;
    Vec acc = out;
    double scale = acc.norm();
    for (int k = 1; k < 80; ++k) {
      term = (-I1 * h / static_cast<double>(k)) * A(term);
      acc += term;
      if (term.norm() <= 1e-17 * std::max(scale, 1e-300)) break;
    }
    out = std::move(acc);
  }
  return out;
}

struct Combination {
  const TDHamiltonian* H;
  std::vector<double> w;
  const Eigen::VectorXd* loss = nullptr;  // non-Hermitian part -i/2 * loss

  Vec operator()(const Vec& x) const {
    Vec y = Vec::Zero(x.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] != 0.0) y += w[k] * (H->terms[k] * x);
    if (loss) y.array() -= 0.5 * I1 * loss->array() * x.array();
    return y;
  }
};

double combination_norm(const TDHamiltonian& H, const std::vector<double>& w, const Eigen::VectorXd* loss) {
  double n = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) n += std::abs(w[k]) * norm_bound(H.terms[k]);
  if (loss && loss->size()) n += 0.5 * loss->cwiseAbs().maxCoeff();
  return n;
}

// One CF4 step (two exponentials with Gauss-point weights).
Vec magnus_step(const TDHamiltonian& H, double t, double dt, const Vec& psi,
                const Eigen::VectorXd* loss = nullptr) {
  const double r3 = std::sqrt(3.0);
  const double a1 = (3.0 - 2.0 * r3) / 12.0, a2 = (3.0 + 2.0 * r3) / 12.0;
  auto c1 = H.coefficients(t + (0.5 - r3 / 6.0) * dt);
  auto c2 = H.coefficients(t + (0.5 + r3 / 6.0) * dt);
  std::vector<double> wa(c1.size()), wb(c1.size());
  for (std::size_t k = 0; k < c1.size(); ++k) {
    wa[k] = a2 * c1[k] + a1 * c2[k];  // applied first
    wb[k] = a1 * c1[k] + a2 * c2[k];
  }
  // each factor carries half of the loss so the pair integrates it once
  Combination A{&H, wa, loss}, B{&H, wb, loss};
  double tau = two_pi * dt;
  Eigen::VectorXd half;
  if (loss) {
    half = 0.5 * (*loss);
    A.loss = &half;
    B.loss = &half;
  }
  Vec x = expmv(A, combination_norm(H, wa, A.loss), tau, psi);
  return expmv(B, combination_norm(H, wb, B.loss), tau, x);
}

// ---- master equation ----

class LindbladRhs {
 public:
  LindbladRhs(const TDHamiltonian& H, const Jumps& jumps) : H_(H), jumps_(jumps) {
    const int d = H.dim();
    tmp_.resize(d, d);
    k1_.resize(d, d);
    k2_.resize(d, d);
    k3_.resize(d, d);
    k4_.resize(d, d);
    stage_.resize(d, d);
  }

  void eval(const std::vector<double>& c, const Mat& rho, Mat& out) {
    const int d = static_cast<int>(rho.rows());
    out.setZero();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      tmp_.noalias() = H_.terms[k] * rho;
      out.noalias() += (-I1 * two_pi * c[k]) * tmp_;
      tmp_.noalias() = rho * H_.terms[k];
      out.noalias() += (I1 * two_pi * c[k]) * tmp_;
    }
    for (std::size_t l = 0; l < jumps_.source.size(); ++l) {
      const auto& src = jumps_.source[l];
      const double g = two_pi * jumps_.rates[l];
      for (int j = 0; j < d; ++j) {
        if (src[j] < 0) continue;
        for (int i = 0; i < d; ++i)
          if (src[i] >= 0) out(i, j) += g * rho(src[i], src[j]);
      }
    }
    if (jumps_.loss.size()) {
      const auto& L = jumps_.loss;
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) out(i, j) -= (0.5 * two_pi) * (L(i) + L(j)) * rho(i, j);
    }
  }

  void rk4(double t, double h, const Mat& rho, Mat& out) {
    eval(H_.coefficients(t), rho, k1_);
    auto cm = H_.coefficients(t + 0.5 * h);
    stage_ = rho + (0.5 * h) * k1_;
    eval(cm, stage_, k2_);
    stage_ = rho + (0.5 * h) * k2_;
    eval(cm, stage_, k3_);
    stage_ = rho + h * k3_;
    eval(H_.coefficients(t + h), stage_, k4_);
    out = rho + (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  const TDHamiltonian& H_;
  const Jumps& jumps_;
  Mat tmp_, k1_, k2_, k3_, k4_, stage_;
};

double min_eig(const Mat& rho) {
  Mat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<char> checkpoint_mask(std::size_t n, int count) {
  std::vector<char> mask(n, 0);
  if (n == 0 || count <= 0) return mask;
  for (int k = 0; k < count; ++k) {
    std::size_t i = count == 1 ? 0 : static_cast<std::size_t>(std::llround(double(k) * (n - 1) / (count - 1)));
    mask[std::min(i, n - 1)] = 1;
  }
  return mask;
}

void check_grid(const std::vector<double>& t_grid, double dt) {
  if (t_grid.empty()) fail(ErrorCode::invalid_argument, "empty time grid");
  if (!(dt > 0.0)) fail(ErrorCode::invalid_argument, "dt must be positive");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1]) fail(ErrorCode::invalid_argument, "time grid must be ascending");
}

int substeps(double span, double dt) {
  return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9)));
}

SpMat kron(const SpMat& A, const SpMat& B) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros() * B.nonZeros()));
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator a(A, ka); a; ++a)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator b(B, kb); b; ++b)
          t.emplace_back(a.row() * B.rows() + b.row(), a.col() * B.cols() + b.col(), a.value() * b.value());
  SpMat m(A.rows() * B.rows(), A.cols() * B.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SpMat identity(int n) {
  SpMat m(n, n);
  m.setIdentity();
  return m;
}

}  // namespace

// ---- eigensolvers ----

double norm_bound(const SpMat& H) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(H.rows());
  for (int k = 0; k < H.outerSize(); ++k)
    for (SpMat::InnerIterator it(H, k); it; ++it) rows(it.row()) += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

GroundState lanczos_ground_state(const SpMat& H, int max_krylov, int max_restarts) {
  const int n = static_cast<int>(H.rows());
  const double hn = std::max(norm_bound(H), 1e-300);
  const double tol = 1e-10 * hn;
  std::mt19937_64 rng(0x51a7e);
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  v.normalize();

  GroundState out;
  out.iterative = true;
  const int m_max = std::min(n, max_krylov);
  for (int restart = 0; restart <= max_restarts; ++restart) {
    Mat V(n, m_max);
    std::vector<double> alpha, beta;
    V.col(0) = v;
    Eigen::VectorXd ritz;
    Eigen::MatrixXd y;
    int m = 0;
    for (int j = 0; j < m_max; ++j) {
      Vec w = H * V.col(j);
      double a = V.col(j).dot(w).real();
      alpha.push_back(a);
      // full reorthogonalization, applied twice
      for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
      double b = w.norm();
      m = j + 1;
      bool last = (b < 1e-14 * hn) || (j + 1 == m_max);
      if (last || (m % 10 == 0)) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
          T(i, i) = alpha[i];
          if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        ritz = es.eigenvalues();
        y = es.eigenvectors();
        if (last || b * std::abs(y(m - 1, 0)) < tol) break;
      }
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    Vec x = V.leftCols(m) * y.col(0).cast<cplx>();
    x.normalize();
    double e = (x.dot(H * x)).real();
    double res = (H * x - e * x).norm();
    out.energy = e;
    out.state = x;
    out.residual = res;
    out.gap = m > 1 ? ritz(1) - ritz(0) : INFINITY;
    if (res <= 1e-9 * hn) break;
    v = x;
  }
  out.degenerate = out.gap < 1e-8 * hn;
  return out;
}

GroundState ground_state(const SpMat& H) {
  if (H.rows() == 0 || H.rows() != H.cols()) fail(ErrorCode::invalid_argument, "empty or non-square operator");
  const double hn = norm_bound(H);
  if (hermiticity_defect(H) > 1e-12 * std::max(1.0, hn)) fail(ErrorCode::invalid_argument, "operator is not Hermitian");
  if (H.rows() > dense_limit) return lanczos_ground_state(H);
  Mat Hd = Mat(H);
  Eigen::SelfAdjointEigenSolver<Mat> es(Hd);
  GroundState out;
  out.energy = es.eigenvalues()(0);
  out.state = es.eigenvectors().col(0);
  out.gap = H.rows() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : INFINITY;
  out.degenerate = out.gap < 1e-8 * std::max(hn, 1e-300);
  out.residual = (H * out.state - out.energy * out.state).norm();
  return out;
}

// ---- Hamiltonian containers ----

TDHamiltonian TDHamiltonian::constant(SpMat h) {
  TDHamiltonian H;
  H.terms.push_back(std::move(h));
  return H;
}

std::vector<double> TDHamiltonian::coefficients(double t) const {
  if (coeffs) return coeffs(t);
  return std::vector<double>(terms.size(), 1.0);
}

SpMat TDHamiltonian::at(double t) const {
  auto c = coefficients(t);
  SpMat h(dim(), dim());
  for (std::size_t k = 0; k < terms.size(); ++k) h += c[k] * terms[k];
  return h;
}

bool DecayModel::any() const {
  return std::any_of(gamma.begin(), gamma.end(), [](double g) { return g != 0.0; });
}

Jumps make_jumps(const SectorBasis& basis, const DecayModel& decay) {
  Jumps j;
  j.loss = Eigen::VectorXd::Zero(basis.dim());
  if (!decay.any()) return j;
  if (!basis.full()) fail(ErrorCode::invalid_argument, "decay leaves the Gauss sector; use the full basis");
  const int n = basis.lattice->n_links();
  if (static_cast<int>(decay.gamma.size()) != n) fail(ErrorCode::invalid_argument, "decay needs one rate per link");
  auto self = std::shared_ptr<const SectorBasis>(&basis, [](const SectorBasis*) {});
  for (int l = 0; l < n; ++l) {
    if (decay.gamma[l] < 0.0) fail(ErrorCode::invalid_argument, "negative decay rate");
    if (decay.gamma[l] == 0.0) continue;
    j.ops.push_back(op_sminus(self, l).mat);
    j.rates.push_back(decay.gamma[l]);
    std::vector<int> src(basis.dim(), -1);
    for (int i = 0; i < basis.dim(); ++i) {
      State s = basis.states[i];
      if ((s >> l) & 1u)
        j.loss(i) += decay.gamma[l];
      else if (auto k = basis.index(s | (State{1} << l)))
        src[i] = *k;
    }
    j.source.push_back(std::move(src));
  }
  return j;
}

// ---- propagation ----

EvolutionResult evolve_unitary(const TDHamiltonian& H, const Vec& psi0, const std::vector<double>& t_grid,
                               const StepOptions& opt, const PureObserver& observe) {
  check_grid(t_grid, opt.dt);
  if (psi0.size() != H.dim()) fail(ErrorCode::invalid_argument, "state dimension does not match Hamiltonian");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) fail(ErrorCode::invalid_argument, "initial state is not normalized");

  EvolutionResult r;
  double nu = norm_bound(H.at(t_grid.front()));
  // exponentials are exact for constant H; only time dependence needs resolving
  if (H.coeffs && opt.dt > 0.05 / std::max(nu, 1e-300))
    r.warnings.push_back("dt is coarse compared with the spectral range");
  auto mask = checkpoint_mask(t_grid.size(), opt.richardson ? opt.checkpoints : 0);

  Vec psi = psi0;
  double t = t_grid.front();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double target = t_grid[i];
    if (target > t) {
      int n = substeps(target - t, opt.dt);
      double h = (target - t) / n;
      for (int s = 0; s < n; ++s) {
        psi = magnus_step(H, t, h, psi);
        t += h;
      }
      t = target;
    }
    r.max_norm_error = std::max(r.max_norm_error, std::abs(psi.norm() - 1.0));
    if (mask[i] && i + 1 < t_grid.size()) {
      double h = std::min(opt.dt, 0.5 * (t_grid.back() - t));
      if (h > 0.0) {
        Vec two = magnus_step(H, t + h, h, magnus_step(H, t, h, psi));
        Vec one = magnus_step(H, t, 2.0 * h, psi);
        r.richardson_error = std::max(r.richardson_error, (two - one).cwiseAbs().maxCoeff());
      }
    }
    r.times.push_back(target);
    if (observe) r.values.push_back(observe(target, psi));
  }
  if (r.richardson_error > opt.richardson_tol) r.warnings.push_back("Richardson check exceeds tolerance; reduce dt");
  r.final_state = psi;
  return r;
}

EvolutionResult evolve_lindblad(const TDHamiltonian& H, const Jumps& jumps, const Mat& rho0,
                                const std::vector<double>& t_grid, const StepOptions& opt,
                                const MixedObserver& observe) {
  check_grid(t_grid, opt.dt);
  if (H.dim() > lindblad_dense_limit)
    fail(ErrorCode::capacity, "dimension exceeds the dense master-equation limit; use trajectory mode");
  if (rho0.rows() != H.dim() || rho0.cols() != H.dim())
    fail(ErrorCode::invalid_argument, "density matrix dimension does not match Hamiltonian");
  if (std::abs(rho0.trace() - 1.0) > 1e-10) fail(ErrorCode::invalid_argument, "initial density matrix has trace != 1");

  EvolutionResult r;
  auto mask = checkpoint_mask(t_grid.size(), opt.checkpoints);
  r.min_eigenvalue = min_eig(rho0);

  Mat rho = rho0, next(rho0.rows(), rho0.cols());
  LindbladRhs rhs(H, jumps);
  double t = t_grid.front();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double target = t_grid[i];
    if (target > t) {
      int n = substeps(target - t, opt.dt);
      double h = (target - t) / n;
      for (int s = 0; s < n; ++s) {
        rhs.rk4(t, h, rho, next);
        rho.swap(next);
        t += h;
        r.max_trace_error = std::max(r.max_trace_error, std::abs(rho.trace() - 1.0));
      }
      t = target;
    }
    if (mask[i]) {
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(rho));
      double h = std::min(opt.dt, 0.5 * (t_grid.back() - t));
      if (opt.richardson && h > 0.0) {
        Mat mid(rho.rows(), rho.cols()), two(rho.rows(), rho.cols()), one(rho.rows(), rho.cols());
        rhs.rk4(t, h, rho, mid);
        rhs.rk4(t + h, h, mid, two);
        rhs.rk4(t, 2.0 * h, rho, one);
        r.richardson_error = std::max(r.richardson_error, (two - one).cwiseAbs().maxCoeff());
      }
    }
    r.times.push_back(target);
    if (observe) r.values.push_back(observe(target, rho));
  }
  if (r.max_trace_error > 1e-8) r.warnings.push_back("trace drift above 1e-8");
  if (r.min_eigenvalue < -1e-7) r.warnings.push_back("density matrix lost positivity beyond -1e-7");
  if (r.richardson_error > opt.richardson_tol) r.warnings.push_back("Richardson check exceeds tolerance; reduce dt");
  r.final_rho = rho;
  return r;
}

EvolutionResult evolve_trajectories(const TDHamiltonian& H, const Jumps& jumps, const Vec& psi0,
                                    const std::vector<double>& t_grid, const StepOptions& opt,
                                    const PureObserver& observe, int n_traj, std::uint64_t base_seed) {
  check_grid(t_grid, opt.dt);
  if (H.dim() > trajectory_limit) fail(ErrorCode::capacity, "dimension exceeds the trajectory limit");
  if (n_traj < 1) fail(ErrorCode::invalid_argument, "need at least one trajectory");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) fail(ErrorCode::invalid_argument, "initial state is not normalized");
  const std::size_t nt = t_grid.size();
  std::vector<std::vector<std::vector<double>>> per(n_traj);
  const Eigen::VectorXd* loss = jumps.loss.size() ? &jumps.loss : nullptr;

  parallel_for(n_traj, [&](int k) {
    std::mt19937_64 rng(base_seed + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec psi = psi0;
    double thresh = u(rng);
    double t = t_grid.front();
    auto& rows = per[k];
    rows.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      double target = t_grid[i];
      if (target > t) {
        int n = substeps(target - t, opt.dt);
        double h = (target - t) / n;
        for (int s = 0; s < n; ++s) {
          psi = magnus_step(H, t, h, psi, loss);
          t += h;
          if (psi.squaredNorm() < thresh) {
            std::vector<double> w(jumps.ops.size());
            double tot = 0.0;
            for (std::size_t l = 0; l < w.size(); ++l) tot += (w[l] = jumps.rates[l] * (jumps.ops[l] * psi).squaredNorm());
            if (tot > 0.0) {
              double pick = u(rng) * tot;
              std::size_t l = 0;
              while (l + 1 < w.size() && pick > w[l]) pick -= w[l++];
              psi = jumps.ops[l] * psi;
            }
            psi.normalize();
            thresh = u(rng);
          }
        }
        t = target;
      }
      Vec nrm = psi.normalized();
      rows.push_back(observe ? observe(target, nrm) : std::vector<double>{});
    }
  });

  EvolutionResult r;
  r.times = t_grid;
  for (std::size_t i = 0; i < nt; ++i) {
    std::size_t m = per[0][i].size();
    std::vector<double> mean(m, 0.0), se(m, 0.0);
    for (int k = 0; k < n_traj; ++k)
      for (std::size_t c = 0; c < m; ++c) mean[c] += per[k][i][c];
    for (auto& x : mean) x /= n_traj;
    if (n_traj > 1) {
      for (int k = 0; k < n_traj; ++k)
        for (std::size_t c = 0; c < m; ++c) se[c] += std::pow(per[k][i][c] - mean[c], 2);
      for (auto& x : se) x = std::sqrt(x / (n_traj - 1) / n_traj);
    }
    r.values.push_back(mean);
    r.errors.push_back(se);
  }
  return r;
}

// ---- steady state ----

SpMat liouvillian(const SpMat& H, const Jumps& jumps) {
  const int d = static_cast<int>(H.rows());
  SpMat Id = identity(d);
  SpMat L = (-I1 * two_pi) * (kron(Id, H) - kron(SpMat(H.transpose()), Id));
  for (std::size_t l = 0; l < jumps.ops.size(); ++l) {
    const SpMat& c = jumps.ops[l];
    L += (two_pi * jumps.rates[l]) * kron(SpMat(c.conjugate()), c);
  }
  if (jumps.loss.size()) {
    std::vector<Triplet> t;
    for (int i = 0; i < d; ++i) t.emplace_back(i, i, jumps.loss(i));
    SpMat K(d, d);
    K.setFromTriplets(t.begin(), t.end());
    L -= (0.5 * two_pi) * (kron(Id, K) + kron(K, Id));
  }
  L.makeCompressed();
  return L;
}

SteadyState steady_state(const SpMat& H_rot, const Jumps& jumps) {
  if (jumps.ops.empty())
    fail(ErrorCode::invalid_argument, "no decay: the steady state is not unique, use evolve_lindblad");
  const int d = static_cast<int>(H_rot.rows());
  SpMat L = liouvillian(H_rot, jumps);
  std::vector<Triplet> t;
  for (int k = 0; k < L.outerSize(); ++k)
    for (SpMat::InnerIterator it(L, k); it; ++it)
      if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < d; ++i) t.emplace_back(0, i * d + i, 1.0);
  SpMat A(d * d, d * d);
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::numerical, "steady-state system is singular; the stationary state is not unique");
  Vec b = Vec::Zero(d * d);
  b(0) = 1.0;
  Vec x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) fail(ErrorCode::numerical, "steady-state solve failed");
  SteadyState s;
  s.rho = Eigen::Map<Mat>(x.data(), d, d);
  s.rho = 0.5 * (s.rho + s.rho.adjoint()).eval();
  Vec v = Eigen::Map<const Vec>(s.rho.data(), d * d);
  s.residual = (L * v).cwiseAbs().maxCoeff();
  return s;
}

// ---- sweep ----

double Schedule::J(double t) const {
  double s = std::sin(two_pi * v * t);
  return J0 * s * s;
}

double Schedule::V(double t) const {
  double c = std::cos(two_pi * v * t);
  return V0 * c * c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(std::max(n, 0));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  if (n > 1) out.back() = b;
  return out;
}

SweepResult adiabatic_sweep(const SweepSpec& spec) {
  const SectorBasis& basis = *spec.basis;
  const SectorBasis& sector = *spec.sector;
  if (spec.psi0.size() != basis.dim()) fail(ErrorCode::invalid_argument, "initial state dimension mismatch");
  if (spec.mag_link < 0 || spec.mag_link >= basis.lattice->n_links())
    fail(ErrorCode::invalid_argument, "unknown magnetization link");
  const Schedule sch = spec.schedule;

  auto terms = effective_terms(basis, 0.0, spec.deps);
  TDHamiltonian H;
  H.terms = {terms.ring, terms.ising, terms.zeeman};
  H.coeffs = [sch](double t) { return std::vector<double>{sch.J(t), sch.V(t), 1.0}; };

  auto sterms = effective_terms(sector, 0.0, spec.deps);
  std::vector<int> where(sector.dim());
  for (int i = 0; i < sector.dim(); ++i) {
    auto j = basis.index(sector.states[i]);
    if (!j) fail(ErrorCode::invalid_argument, "sector is not contained in the evolution basis");
    where[i] = *j;
  }
  auto gs_at = [&](double t) {
    SpMat h = sch.J(t) * sterms.ring + sch.V(t) * sterms.ising + sterms.zeeman;
    return ground_state(h).state;
  };
  std::vector<double> mz(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) mz[i] = spin(basis.states[i], spec.mag_link);

  auto grid = linspace(0.0, sch.t_max, spec.n_records);
  SweepResult out;
  if (sch.v * sch.t_max > 0.25 + 1e-12)
    out.raw.warnings.push_back("sweep runs past the quarter period where J(t) stops increasing");

  if (spec.decay.any()) {
    Jumps jumps = make_jumps(basis, spec.decay);
    Mat rho0 = spec.psi0 * spec.psi0.adjoint();
    auto obs = [&](double t, const Mat& rho) {
      double m = 0.0;
      for (int i = 0; i < basis.dim(); ++i) m += rho(i, i).real() * mz[i];
      Vec g = gs_at(t);
      cplx f = 0.0;
      for (int a = 0; a < sector.dim(); ++a)
        for (int b = 0; b < sector.dim(); ++b) f += std::conj(g(a)) * rho(where[a], where[b]) * g(b);
      return std::vector<double>{m, std::abs(f)};
    };
    auto w = out.raw.warnings;
    out.raw = evolve_lindblad(H, jumps, rho0, grid, spec.step, obs);
    out.raw.warnings.insert(out.raw.warnings.begin(), w.begin(), w.end());
  } else {
    auto obs = [&](double t, const Vec& psi) {
      double m = 0.0;
      for (int i = 0; i < basis.dim(); ++i) m += std::norm(psi(i)) * mz[i];
      Vec g = gs_at(t);
      cplx f = 0.0;
      for (int a = 0; a < sector.dim(); ++a) f += std::conj(g(a)) * psi(where[a]);
      return std::vector<double>{m, std::norm(f)};
    };
    auto w = out.raw.warnings;
    out.raw = evolve_unitary(H, spec.psi0, grid, spec.step, obs);
    out.raw.warnings.insert(out.raw.warnings.begin(), w.begin(), w.end());
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.t.push_back(grid[i]);
    double J = sch.J(grid[i]), V = sch.V(grid[i]);
    out.J_over_V.push_back(V != 0.0 ? J / V : INFINITY);
    out.M.push_back(out.raw.values[i][0]);
    out.fidelity.push_back(out.raw.values[i][1]);
  }
  return out;
}

}  // namespace qlink
