#include "protocols.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "ensemble.hpp"
#include "hamiltonian.hpp"
#include "observables.hpp"
#include "parallel.hpp"

namespace qlink {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* version_string = "1.0.0";

std::string qubit_col(const char* prefix, int q) { return std::string(prefix) + "_q" + std::to_string(q); }

struct Context {
  const RunConfig& cfg;
  const RunOptions& opts;
  fs::path out;
  json results = json::object();
  json warnings = json::array();
  json outputs = json::array();

  std::string path(const std::string& name) {
    outputs.push_back(name);
    return (out / name).string();
  }
  void warn(const std::string& w) { warnings.push_back(w); }
  void warn_all(const std::vector<std::string>& ws) {
    for (const auto& w : ws) warn(w);
  }
};

std::vector<double> grid_from(const RunConfig& cfg, const std::string& lo, const std::string& hi,
                              const std::string& n, double dlo, double dhi, long long dn) {
  long long points = cfg.integer(n, dn);
  if (points < 1) fail(ErrorCode::validation, "config: " + n + ": need at least one point");
  return linspace(cfg.num(lo, dlo), cfg.num(hi, dhi), static_cast<int>(points));
}

void maybe_dump(Context& c, const SectorBasis& basis, const SparseOperator* op) {
  if (c.opts.dump_basis) {
    std::ofstream(c.path("basis.txt")) << dump_basis(basis);
  }
  if (c.opts.dump_operator && op) {
    std::ofstream(c.path("operator.txt")) << export_operator(*op);
  }
}

// ---- params ----

void cmd_params(Context& c) {
  CircuitSet set = circuit_from_config(c.cfg);
  auto grid = grid_from(c.cfg, "protocol.flux_min", "protocol.flux_max", "protocol.flux_points", 0.0, 0.45, 91);
  auto rows = tuning_curve(set, grid);
  CsvWriter w(c.path("tuning.csv"), {"flux", "mu_over_Omega", "J_over_Omega", "V_over_Omega", "J_over_V"});
  for (const auto& r : rows) w.row({r.flux, r.mu_over_Omega, r.J_over_Omega, r.V_over_Omega, r.J_over_V});
  auto zero = compile_circuit(set, 0.0);
  c.results["Omega_at_zero_flux"] = zero.Omega;
  c.results["mu_plus_at_zero_flux"] = zero.mu_plus;
  c.results["mu_sq_at_zero_flux"] = zero.mu_sq;
  c.results["V_at_zero_flux"] = zero.V;
  if (auto f = v_zero_crossing(set, grid.front(), grid.back())) {
    c.results["V_zero_crossing_flux"] = *f;
    c.results["J_at_crossing"] = compile_circuit(set, *f).J;
  } else {
    c.results["V_zero_crossing_flux"] = nullptr;
  }
  bool pert = true;
  for (const auto& r : rows) pert &= std::abs(r.mu_over_Omega) <= 0.5;
  if (!pert) c.warn("mu/Omega exceeds 0.5 on part of the grid; effective couplings are outside perturbation theory");
}

// ---- spectrum ----

void cmd_spectrum(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  auto basis = basis_from_config(lat, c.cfg);
  auto p = model_from_config(c.cfg);
  std::string kind = c.cfg.str("protocol.hamiltonian", "microscopic");
  if (kind != "effective" && kind != "microscopic" && kind != "rk")
    fail(ErrorCode::validation, "config: protocol.hamiltonian: expected microscopic, effective or rk");
  SparseOperator H = kind == "effective" ? build_effective(basis, p.J, p.V, p.W.value_or(0.0), p.epsilon)
                     : kind == "rk"      ? build_rk_effective(basis, p.J, c.cfg.num("model.lambda", 1.0))
                                         : build_microscopic(basis, p);
  if (basis->dim() > dense_limit) fail(ErrorCode::capacity, "spectrum needs dimension <= 512");
  maybe_dump(c, *basis, &H);

  // H conserves the number of up spins: diagonalize block by block
  struct Level {
    double e;
    int excitations;
  };
  std::vector<Level> levels;
  Mat Hd = Mat(H.mat);
  for (int k = 0; k <= lat->n_links(); ++k) {
    std::vector<int> idx;
    for (int i = 0; i < basis->dim(); ++i)
      if (std::popcount(basis->states[i]) == k) idx.push_back(i);
    if (idx.empty()) continue;
    Mat blk(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) blk(a, b) = Hd(idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Mat> es(blk, Eigen::EigenvaluesOnly);
    for (int i = 0; i < es.eigenvalues().size(); ++i) levels.push_back({es.eigenvalues()(i), k});
  }
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.e < b.e; });
  CsvWriter w(c.path("spectrum.csv"), {"index", "energy", "excitations", "degeneracy"});
  std::map<int, int> per_excitation;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    int deg = 0;
    for (const auto& l : levels) deg += std::abs(l.e - levels[i].e) <= 1e-9 * std::max(1.0, std::abs(levels[i].e));
    w.row({double(i), levels[i].e, double(levels[i].excitations), double(deg)});
    ++per_excitation[levels[i].excitations];
  }
  json groups = json::object();
  for (auto [k, n] : per_excitation) groups[std::to_string(k)] = n;
  c.results["levels_per_excitation_number"] = groups;
  c.results["ground_energy"] = levels.front().e;
  c.results["dimension"] = basis->dim();
}

// ---- spectroscopy ----

void cmd_spectroscopy(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  auto basis = full_basis(lat);
  auto p = model_from_config(c.cfg);
  const double gamma = c.cfg.num("decay.Gamma", 0.03);
  const auto qubits = lat->qubit_order();
  const int nq = static_cast<int>(qubits.size());
  int drive_q = static_cast<int>(c.cfg.integer("protocol.drive_qubit", 2));
  if (drive_q < 1 || drive_q > nq) fail(ErrorCode::validation, "config: protocol.drive_qubit: out of range");
  double amp = c.cfg.num("protocol.drive_amplitude", 0.1);
  auto grid = grid_from(c.cfg, "protocol.detuning_min", "protocol.detuning_max", "protocol.points",
                        p.Omega - 3.0 * p.mu_sq, p.Omega + 3.0 * p.mu_sq, 400);

  std::vector<std::pair<int, int>> pairs;
  for (const auto& item : split(c.cfg.str("protocol.pairs", "1-3,1-4"), ',')) {
    auto ab = split(item, '-');
    if (ab.size() != 2) fail(ErrorCode::validation, "config: protocol.pairs: expected a-b items");
    int a = std::stoi(ab[0]), b = std::stoi(ab[1]);
    if (a < 1 || b < 1 || a > nq || b > nq) fail(ErrorCode::validation, "config: protocol.pairs: qubit out of range");
    pairs.emplace_back(a, b);
  }
  Drive drive;
  drive.amplitude.assign(lat->n_links(), 0.0);
  drive.amplitude[qubits[drive_q - 1]] = amp;
  std::vector<std::pair<int, int>> link_pairs;
  for (auto [a, b] : pairs) link_pairs.emplace_back(qubits[a - 1], qubits[b - 1]);
  auto scan = spectroscopy_scan(basis, p, drive, gamma, grid, link_pairs);

  std::vector<std::vector<double>> rows;
  std::vector<double> residual;
  for (const auto& pt : scan) {
    std::vector<double> r{pt.detuning, p.epsilon + pt.detuning};
    for (int q = 0; q < nq; ++q) r.push_back(pt.population[qubits[q]]);
    r.insert(r.end(), pt.correlation.begin(), pt.correlation.end());
    rows.push_back(std::move(r));
    residual.push_back(pt.residual);
  }
  std::vector<std::string> header{"detuning", "omega_d"};
  for (int q = 1; q <= nq; ++q) header.push_back(qubit_col("pop", q));
  for (auto [a, b] : pairs) header.push_back("corr_q" + std::to_string(a) + "_q" + std::to_string(b));
  CsvWriter w(c.path("spectroscopy.csv"), header);
  for (const auto& r : rows) w.row(r);

  std::vector<double> pop1;
  for (const auto& r : rows) pop1.push_back(r[2]);
  json peaks = json::array();
  for (int i : local_maxima(pop1)) peaks.push_back(grid[i]);
  c.results["pop_q1_peak_detunings"] = peaks;
  c.results["max_steady_state_residual"] = *std::max_element(residual.begin(), residual.end());
  c.results["drive_link"] = qubits[drive_q - 1];
}

// ---- evolve ----

void cmd_evolve(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  auto p = model_from_config(c.cfg);
  const double gamma = c.cfg.num("decay.Gamma", 0.0);
  std::string kind = c.cfg.str("protocol.hamiltonian", "effective");
  if (kind != "effective" && kind != "microscopic")
    fail(ErrorCode::validation, "config: protocol.hamiltonian: expected microscopic or effective");
  BasisPtr basis = gamma > 0.0 ? full_basis(lat) : basis_from_config(lat, c.cfg);
  // Total S^z is conserved, so the frame rotating at epsilon leaves every
  // population unchanged; the fast epsilon phase is dropped.
  ModelParams q = p;
  q.epsilon = 0.0;
  SparseOperator H = kind == "effective" ? build_effective(basis, q.J, q.V, q.W.value_or(0.0))
                                         : build_microscopic(basis, q);
  maybe_dump(c, *basis, &H);
  State s0 = parse_bitstring(c.cfg.str("protocol.initial"), lat->n_links());
  Vec psi0 = basis_vector(*basis, s0);
  auto t = grid_from(c.cfg, "protocol.t_min", "protocol.t_max", "protocol.points", 0.0, 0.6, 601);
  StepOptions step;
  step.dt = c.cfg.num("numerics.dt", 1e-4);
  const auto qubits = lat->qubit_order();
  const int i0 = *basis->index(s0);

  auto pure_obs = [&](double, const Vec& psi) {
    auto probs = probabilities(psi);
    std::vector<double> r{probs(i0)};
    for (int l : qubits) r.push_back(excited_population(*basis, probs, l));
    return r;
  };
  EvolutionResult r;
  TDHamiltonian td = TDHamiltonian::constant(H.mat);
  auto jumps = make_jumps(*basis, DecayModel::uniform(lat->n_links(), gamma));
  if (c.opts.trajectories > 0) {
    std::uint64_t seed = c.opts.seed.value_or(static_cast<std::uint64_t>(c.cfg.integer("disorder.seed", 1)));
    r = evolve_trajectories(td, jumps, psi0, t, step, pure_obs, c.opts.trajectories, seed);
    c.results["trajectories"] = c.opts.trajectories;
    c.results["seed"] = seed;
  } else if (gamma > 0.0) {
    Mat rho0 = psi0 * psi0.adjoint();
    r = evolve_lindblad(td, jumps, rho0, t, step, [&](double, const Mat& rho) {
      auto probs = probabilities(rho);
      std::vector<double> row{probs(i0)};
      for (int l : qubits) row.push_back(excited_population(*basis, probs, l));
      return row;
    });
    c.results["max_trace_error"] = r.max_trace_error;
    c.results["min_eigenvalue"] = r.min_eigenvalue;
  } else {
    r = evolve_unitary(td, psi0, t, step, pure_obs);
    c.results["max_norm_error"] = r.max_norm_error;
  }
  c.warn_all(r.warnings);

  std::vector<std::string> header{"t", "p_initial"};
  for (std::size_t q = 1; q <= qubits.size(); ++q) header.push_back(qubit_col("pop", static_cast<int>(q)));
  if (!r.errors.empty()) {
    header.push_back("p_initial_se");
  }
  CsvWriter w(c.path("evolution.csv"), header);
  std::vector<double> pinit;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<double> row{r.times[i]};
    row.insert(row.end(), r.values[i].begin(), r.values[i].end());
    if (!r.errors.empty()) row.push_back(r.errors[i][0]);
    w.row(row);
    pinit.push_back(r.values[i][0]);
  }
  if (auto rev = first_revival(r.times, pinit)) {
    c.results["first_minimum_time"] = rev->t_min;
    c.results["first_revival_time"] = rev->t_revival;
    c.results["first_revival_population"] = rev->p_revival;
  }
  c.results["frame"] = "rotating at epsilon";
}

// ---- sweeps ----

SweepSpec sweep_from_config(const RunConfig& cfg, const LatticePtr& lat, bool decaying) {
  SweepSpec s;
  s.sector = basis_from_config(lat, cfg);
  if (s.sector->full()) fail(ErrorCode::validation, "config: protocol.charges: a sweep needs a Gauss sector");
  s.basis = decaying ? full_basis(lat) : s.sector;
  s.schedule.J0 = cfg.num("protocol.J0", 30.0);
  s.schedule.V0 = cfg.num("protocol.V0", 30.0);
  s.schedule.v = cfg.num("protocol.v", 2.0);
  if (!(s.schedule.v > 0.0)) fail(ErrorCode::validation, "config: protocol.v: must be positive");
  s.schedule.t_max = cfg.num("protocol.t_max", 0.25 / s.schedule.v);
  State s0 = parse_bitstring(cfg.str("protocol.initial"), lat->n_links());
  s.psi0 = basis_vector(*s.basis, s0);
  auto shared = lat->shared_links();
  s.mag_link = static_cast<int>(cfg.integer("protocol.mag_link", shared.empty() ? 0 : shared[shared.size() / 2]));
  s.n_records = static_cast<int>(cfg.integer("protocol.points", 21));
  s.step.dt = cfg.num("numerics.dt", 1e-4);
  s.step.richardson = cfg.integer("numerics.richardson", 1) != 0;
  return s;
}

void cmd_sweep(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  const double gamma = c.cfg.num("decay.Gamma", 0.0);
  SweepSpec closed = sweep_from_config(c.cfg, lat, false);
  auto r0 = adiabatic_sweep(closed);
  c.warn_all(r0.raw.warnings);
  maybe_dump(c, *closed.sector, nullptr);
  SweepResult r = r0;
  if (gamma > 0.0) {
    SweepSpec open = sweep_from_config(c.cfg, lat, true);
    open.decay = DecayModel::uniform(lat->n_links(), gamma);
    r = adiabatic_sweep(open);
    c.warn_all(r.raw.warnings);
    c.results["max_trace_error"] = r.raw.max_trace_error;
    c.results["min_eigenvalue"] = r.raw.min_eigenvalue;
  }
  auto dP = error_probability(r0.fidelity, r.fidelity);
  CsvWriter w(c.path("sweep.csv"), {"t", "J_over_V", "M", "fidelity", "fidelity_closed", "delta_P"});
  for (std::size_t i = 0; i < r.t.size(); ++i)
    w.row({r.t[i], r.J_over_V[i], r.M[i], r.fidelity[i], r0.fidelity[i], dP[i]});
  c.results["M_start"] = r.M.front();
  c.results["M_end"] = r.M.back();
  c.results["M_max"] = *std::max_element(r.M.begin(), r.M.end());
  c.results["delta_P_end"] = dP.back();
  c.results["mag_link"] = closed.mag_link;
  c.results["sector_dimension"] = closed.sector->dim();
}

void cmd_disorder(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  SweepSpec s = sweep_from_config(c.cfg, lat, false);
  DisorderSpec d;
  d.delta_eps = c.cfg.num("disorder.delta_eps", 15.0);
  d.n_realizations = static_cast<int>(c.cfg.integer("disorder.n", 1000));
  d.base_seed = c.opts.seed.value_or(static_cast<std::uint64_t>(c.cfg.integer("disorder.seed", 1)));
  auto r = run_disorder_sweep(s, d);
  CsvWriter w(c.path("disorder.csv"), {"t", "J_over_V", "mean_M", "std_M", "n"});
  for (std::size_t i = 0; i < r.t.size(); ++i) w.row({r.t[i], r.J_over_V[i], r.mean_M[i], r.std_M[i], double(r.n)});
  c.results["seed"] = d.base_seed;
  c.results["mean_M_start"] = r.mean_M.front();
  c.results["mean_M_max"] = *std::max_element(r.mean_M.begin(), r.mean_M.end());
}

// ---- ground states ----

void cmd_groundstate(Context& c) {
  auto lat = lattice_from_config(c.cfg);
  auto basis = basis_from_config(lat, c.cfg);
  auto p = model_from_config(c.cfg);
  double J = p.J, V = p.V;
  if (c.cfg.has("protocol.J_over_V")) {
    double ratio = c.cfg.num("protocol.J_over_V");
    if (ratio == 0.0) {
      J = 0.0;
      V = std::abs(c.cfg.num("model.V", 1.0));
    } else {
      J = c.cfg.num("model.J", 1.0);
      V = J / ratio;
    }
  }
  double field = c.cfg.num("protocol.field", 1e-4 * std::max(std::abs(J), std::abs(V)));
  SparseOperator H = build_effective(basis, J, V, p.W.value_or(0.0), field);
  maybe_dump(c, *basis, &H);
  auto gs = ground_state(H.mat);
  auto fm = flux_map(*basis, gs.state);
  CsvWriter w(c.path("groundstate.csv"), {"link", "x", "y", "orientation", "sz", "flux", "abs_flux"});
  for (int l = 0; l < lat->n_links(); ++l) {
    const Link& k = lat->links[l];
    w.line({std::to_string(l), std::to_string(k.x), std::to_string(k.y),
            k.orientation == Orientation::horizontal ? "h" : "v", format_double(fm.sz[l]), format_double(fm.flux[l]),
            format_double(std::abs(fm.flux[l]))});
  }
  std::vector<int> center, edge;
  if (c.cfg.has("protocol.center_links"))
    for (double x : c.cfg.list("protocol.center_links")) center.push_back(static_cast<int>(x));
  else
    center = lat->shared_links();
  if (c.cfg.has("protocol.edge_links"))
    for (double x : c.cfg.list("protocol.edge_links")) edge.push_back(static_cast<int>(x));
  else
    edge = lat->boundary_links();
  CsvWriter wb(c.path("groundstate_weights.csv"), {"state", "weight"});
  for (int i = 0; i < basis->dim(); ++i)
    wb.line({bitstring(basis->states[i], lat->n_links()), format_double(std::norm(gs.state(i)))});
  c.results["energy"] = gs.energy;
  c.results["degenerate"] = gs.degenerate;
  c.results["J"] = J;
  c.results["V"] = V;
  c.results["symmetry_breaking_field"] = field;
  c.results["mean_abs_flux_center"] = mean_abs_flux(fm, center);
  c.results["mean_abs_flux_edge"] = mean_abs_flux(fm, edge);
  c.results["dimension"] = basis->dim();
}

}  // namespace

SpectroscopyPoint spectroscopy_point(const BasisPtr& basis, const ModelParams& p, const Drive& drive,
                                     const Jumps& jumps, double detuning,
                                     const std::vector<std::pair<int, int>>& pairs) {
  Drive d = drive;
  d.omega_d = p.epsilon + detuning;
  auto ss = steady_state(build_rotating_frame(basis, p, d).mat, jumps);
  auto probs = probabilities(ss.rho);
  SpectroscopyPoint pt;
  pt.detuning = detuning;
  pt.residual = ss.residual;
  for (int l = 0; l < basis->lattice->n_links(); ++l) pt.population.push_back(excited_population(*basis, probs, l));
  for (auto [a, b] : pairs) pt.correlation.push_back(pair_correlation(*basis, probs, a, b));
  return pt;
}

std::vector<SpectroscopyPoint> spectroscopy_scan(const BasisPtr& basis, const ModelParams& p, const Drive& drive,
                                                 double gamma, const std::vector<double>& detunings,
                                                 const std::vector<std::pair<int, int>>& pairs) {
  auto jumps = make_jumps(*basis, DecayModel::uniform(basis->lattice->n_links(), gamma));
  std::vector<SpectroscopyPoint> out(detunings.size());
  parallel_for(static_cast<int>(detunings.size()),
               [&](int i) { out[i] = spectroscopy_point(basis, p, drive, jumps, detunings[i], pairs); });
  return out;
}

const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names = {"params", "spectrum", "spectroscopy", "evolve",
                                                 "sweep",  "disorder", "groundstate"};
  return names;
}

LatticePtr lattice_from_config(const RunConfig& cfg) {
  std::string type = cfg.str("lattice.type", "chain");
  if (type == "chain") {
    long long n = cfg.integer("lattice.n", 1);
    if (n < 1 || n > 7) fail(ErrorCode::validation, "config: lattice.n: must be between 1 and 7");
    return std::make_shared<Lattice>(build_plaquette_chain(static_cast<int>(n)));
  }
  if (type == "plaquettes") {
    std::vector<std::pair<int, int>> corners;
    for (const auto& item : split(cfg.str("lattice.plaquettes"), ';')) {
      auto xy = split(item, ',');
      if (xy.size() != 2) fail(ErrorCode::validation, "config: lattice.plaquettes: expected 'x,y; x,y; ...'");
      corners.emplace_back(std::stoi(xy[0]), std::stoi(xy[1]));
    }
    return std::make_shared<Lattice>(build_from_plaquettes(corners));
  }
  if (type == "custom") {
    fs::path f = cfg.str("lattice.file");
    if (f.is_relative() && !cfg.directory().empty()) f = fs::path(cfg.directory()) / f;
    std::ifstream in(f);
    if (!in) fail(ErrorCode::io, "config: lattice.file: cannot open " + f.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return std::make_shared<Lattice>(lattice_from_json(ss.str()));
  }
  fail(ErrorCode::validation, "config: lattice.type: expected chain, plaquettes or custom");
}

CircuitSet circuit_from_config(const RunConfig& cfg) {
  CircuitSet s;
  if (cfg.has("model.E_J") || cfg.has("model.E_C")) {
    auto t = derive_transmon({cfg.num("model.E_J"), cfg.num("model.E_C")});
    s.epsilon = t.epsilon;
    s.U = t.U;
  } else {
    s.epsilon = cfg.num("model.epsilon", 6000.0);
    s.U = cfg.num("model.U", 300.0);
  }
  s.vertex = {cfg.num("model.vertex_EJ_ratio", 0.2), cfg.num("model.vertex_C_ratio", 0.16), 0.0, CouplerKind::vertex};
  s.plaquette = {cfg.num("model.plaquette_EJ_ratio", 0.2), cfg.num("model.plaquette_C_ratio", 0.16), 0.0,
                 CouplerKind::plaquette};
  return s;
}

ModelParams model_from_config(const RunConfig& cfg) {
  std::string source = cfg.str("model.source", "direct");
  ModelParams p;
  if (source == "circuit") {
    p = compile_circuit(circuit_from_config(cfg), cfg.num("model.flux", 0.0));
  } else if (source == "direct") {
    p.epsilon = cfg.num("model.epsilon", 0.0);
    p.U = cfg.num("model.U", 0.0);
    p.Omega = cfg.num("model.Omega", 0.0);
    p.Omega_prime = cfg.num("model.Omega_prime", p.Omega);
    p.mu_sq = cfg.num("model.mu", 0.0);
    p.mu_plus = cfg.num("model.mu_plus", 0.0);
    p.Vprime = cfg.num("model.Vprime", p.Omega - p.Omega_prime);
    if (p.Omega > 0.0) p = derive_effective(p);
  } else {
    fail(ErrorCode::validation, "config: model.source: expected direct or circuit");
  }
  if (cfg.has("model.J")) p.J = cfg.num("model.J");
  if (cfg.has("model.V")) p.V = cfg.num("model.V");
  if (cfg.has("model.W")) p.W = cfg.num("model.W");
  return p;
}

BasisPtr basis_from_config(const LatticePtr& lat, const RunConfig& cfg) {
  std::string ch = cfg.str("protocol.charges", "full");
  if (ch == "full") return full_basis(lat);
  auto q = cfg.list("protocol.charges");
  if (static_cast<int>(q.size()) != lat->n_vertices())
    fail(ErrorCode::validation, "config: protocol.charges: need one charge per vertex (" +
                                    std::to_string(lat->n_vertices()) + ")");
  std::string warning;
  auto b = enumerate_sector(lat, q, &warning);
  if (b->dim() == 0) fail(ErrorCode::validation, "config: protocol.charges: " + warning);
  return b;
}

State parse_bitstring(const std::string& bits, int n_links) {
  std::string s = trim(bits);
  if (static_cast<int>(s.size()) != n_links)
    fail(ErrorCode::validation, "initial state needs one bit per link (" + std::to_string(n_links) + ")");
  State st = 0;
  for (int l = 0; l < n_links; ++l) {
    if (s[l] == '1') st |= State{1} << l;
    else if (s[l] != '0') fail(ErrorCode::validation, "initial state must be a 0/1 string");
  }
  return st;
}

std::optional<Revival> first_revival(const std::vector<double>& t, const std::vector<double>& p) {
  std::size_t i = 0;
  while (i < p.size() && p[i] >= 0.5) ++i;
  if (i == p.size()) return std::nullopt;
  std::size_t j = i;
  // hysteresis: fast wiggles around 0.5 do not end the dip
  while (j < p.size() && p[j] < 0.75) ++j;
  std::size_t imin = i;
  for (std::size_t k = i; k < j; ++k)
    if (p[k] < p[imin]) imin = k;
  Revival r;
  r.t_min = t[imin];
  r.p_min = p[imin];
  bool found = false;
  for (std::size_t k = imin + 1; k < p.size() && t[k] < 3.0 * r.t_min; ++k)
    if (!found || p[k] > r.p_revival) {
      r.p_revival = p[k];
      r.t_revival = t[k];
      found = true;
    }
  if (!found) return std::nullopt;
  return r;
}

std::vector<int> local_maxima(const std::vector<double>& y) {
  std::vector<int> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(static_cast<int>(i));
  return out;
}

void write_error(const std::string& out_dir, const std::string& status, const std::string& message) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream(fs::path(out_dir) / "error.json") << json{{"status", status}, {"message", message}}.dump(2) << '\n';
}

json run_protocol(const std::string& command, const RunConfig& cfg, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  cfg.validate();
  if (std::find(protocol_names().begin(), protocol_names().end(), command) == protocol_names().end())
    fail(ErrorCode::invalid_argument, "unknown protocol '" + command + "'");
  if (cfg.has("protocol.name") && cfg.str("protocol.name") != command)
    fail(ErrorCode::validation, "config: protocol.name: '" + cfg.str("protocol.name") + "' does not match command '" +
                                    command + "'");
  std::string out = !opts.out_dir.empty() ? opts.out_dir : cfg.str("output.dir", "out");
  fs::create_directories(out);
  set_max_threads(opts.threads);

  Context c{cfg, opts, out};
  if (command == "params") cmd_params(c);
  else if (command == "spectrum") cmd_spectrum(c);
  else if (command == "spectroscopy") cmd_spectroscopy(c);
  else if (command == "evolve") cmd_evolve(c);
  else if (command == "sweep") cmd_sweep(c);
  else if (command == "disorder") cmd_disorder(c);
  else cmd_groundstate(c);

  json manifest;
  manifest["command"] = command;
  manifest["version"] = version_string;
  manifest["config"] = cfg.entries();
  manifest["seed"] = opts.seed ? json(*opts.seed) : json(nullptr);
  manifest["threads"] = max_threads();
  manifest["trajectories"] = opts.trajectories;
  manifest["outputs"] = c.outputs;
  manifest["results"] = c.results;
  manifest["warnings"] = c.warnings;
  if (cfg.str("lattice.type", "chain") == "chain" && cfg.integer("lattice.n", 1) == 5)
    manifest["lattice_note"] = "five-plaquette geometry taken as a 1x5 chain (assumed)";
  manifest["units"] = {{"energy", "MHz"}, {"time", "us"}};
  manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream(fs::path(out) / "manifest.json") << manifest.dump(2) << '\n';
  return manifest;
}

}  // namespace qlink
