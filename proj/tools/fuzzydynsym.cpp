// Command-line front end: identity verification, Coulomb spectra and
// symmetry reports, Zwanziger tables and field evaluations.  Emits
// machine-readable JSON (default) or CSV; exit codes: 0 all checks pass,
// 1 check failure, 2 usage/config error, 3 environment (cache/IO) error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fuzzydynsym/hamiltonians.hpp"
#include "fuzzydynsym/parser.hpp"
#include "fuzzydynsym/report.hpp"
#include "fuzzydynsym/symmetry.hpp"
#include "fuzzydynsym/zwanziger.hpp"

namespace fds = fuzzydynsym;
using fds::report::format_number;
using Json = fds::report::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct RunConfig {
  double lambda = 0.5;
  double q = 1.0;
  int n_max = 10;
  double mu = 0.0;
  double gamma = 1.0;
  double j = 0.0;
  int k = 5;
  int grid_points = 4000;
  double rmin = 1e-6;
  double rmax = 80.0;
  std::string format = "json";
  std::string cache_dir;
  bool sweep = false;
  // zwanziger reduce inputs
  double e1 = 0, e2 = 0, g1 = 0, g2 = 0, m1 = 1, m2 = 1;
  // fields inputs
  double g = fds::zw::kFourPi;
  std::string points_file;
  std::vector<std::string> expressions;

  Json echo() const {
    Json c;
    c["lambda"] = format_number(lambda);
    c["q"] = format_number(q);
    c["nmax"] = n_max;
    c["mu"] = format_number(mu);
    c["gamma"] = format_number(gamma);
    c["j"] = format_number(j);
    c["k"] = k;
    c["grid_points"] = grid_points;
    c["rmin"] = format_number(rmin);
    c["rmax"] = format_number(rmax);
    c["format"] = format;
    c["cache_dir"] = cache_dir;
    c["sweep"] = sweep;
    return c;
  }
};

/// All numeric/config options live on the root app (flat key=value config
/// file); subcommands use fallthrough so flags may follow the subcommand.
void add_common_flags(CLI::App& app, RunConfig& cfg) {
  app.add_option("--lambda", cfg.lambda, "length parameter lambda > 0");
  app.add_option("--q", cfg.q, "Coulomb coupling (q > 0 binds)");
  app.add_option("--nmax", cfg.n_max, "Fock truncation level");
  app.add_option("--mu", cfg.mu, "monopole coupling (half-integer)");
  app.add_option("--gamma", cfg.gamma, "dyon Coulomb coupling");
  app.add_option("--j", cfg.j, "angular momentum channel");
  app.add_option("-k,--k", cfg.k, "number of levels / eigenpairs");
  app.add_option("--grid-points", cfg.grid_points, "radial grid point count");
  app.add_option("--rmin", cfg.rmin, "radial grid inner wall");
  app.add_option("--rmax", cfg.rmax, "radial grid outer wall");
  app.add_option("--format", cfg.format, "output format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", cfg.cache_dir, "SuperMatrix cache directory");
  app.add_flag("--sweep", cfg.sweep, "emit the parameter-sweep table");
  app.add_option("--g", cfg.g, "monopole charge (fields)");
  app.add_option("--points", cfg.points_file, "CSV point list with header x,y,z (fields)");
  app.add_option("--e1", cfg.e1, "electric charge 1 (reduce)");
  app.add_option("--e2", cfg.e2, "electric charge 2 (reduce)");
  app.add_option("--g1", cfg.g1, "magnetic charge 1 (reduce)");
  app.add_option("--g2", cfg.g2, "magnetic charge 2 (reduce)");
  app.add_option("--m1", cfg.m1, "mass 1 (reduce)");
  app.add_option("--m2", cfg.m2, "mass 2 (reduce)");
}

int emit(const fds::report::Report& rep, const RunConfig& cfg, double wall,
         const std::string& csv = "") {
  if (cfg.format == "csv" && !csv.empty()) {
    std::cout << csv;
  } else {
    std::cout << rep.to_json(wall).dump(2) << "\n";
  }
  return rep.all_pass() ? kExitPass : kExitCheckFail;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("verify", cfg.echo());
  for (const auto& r : fds::ncalg::identity_suite())
    rep.add_exact_check(r.name, r.pass,
                        r.pass ? "" : "difference: " + r.difference.to_string());
  for (const std::string& e : cfg.expressions) {
    fds::parser::ExprParser p(e);
    auto eq = p.parse_equation();
    if (!eq) throw std::invalid_argument("expression must be an equation 'lhs == rhs': " + e);
    auto r = fds::ncalg::verify_identity(eq->first, eq->second, e);
    rep.add_exact_check(e, r.pass, r.pass ? "" : "difference: " + r.difference.to_string());
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall);
}

// ---------------------------------------------------------------------------
// spectrum / symmetry
// ---------------------------------------------------------------------------

std::string cache_path(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.cache_dir << "/H_phys_l" << format_number(cfg.lambda) << "_q"
     << format_number(cfg.q) << "_n" << cfg.n_max << ".fdsm";
  return os.str();
}

/// Writes H to the cache (first run) or validates the cached copy.  Missing
/// file is not an error; any malformed cache is (exit 3).
void sync_cache(const fds::sym::CoulombWorkspace& ws, const RunConfig& cfg, Json& cache_info) {
  if (cfg.cache_dir.empty()) return;
  fds::fock::SuperMatrix M;
  M.lambda = cfg.lambda;
  M.n_max = cfg.n_max;
  M.basis_hash = ws.basis().hash();
  M.mat = ws.hamiltonian();
  M.overflow_cols.assign(ws.dim(), 0);
  std::string path = cache_path(cfg);
  fds::fock::SuperMatrix cached;
  std::string tag;
  fds::fock::CacheStatus st = fds::fock::cache_read(path, ws.basis(), cached, &tag);
  if (st == fds::fock::CacheStatus::ok) {
    cache_info["cache"] = "hit";
    if (tag != "physical" || fds::fock::SparseC(cached.mat - M.mat).norm() != 0.0)
      throw std::ios_base::failure("cache content does not match the rebuilt Hamiltonian");
    return;
  }
  if (st != fds::fock::CacheStatus::io_error)  // exists but unusable
    throw std::ios_base::failure("cache file unusable: " + path);
  if (fds::fock::cache_write(M, path, "physical") != fds::fock::CacheStatus::ok)
    throw std::ios_base::failure("cannot write cache file: " + path);
  cache_info["cache"] = "written";
}

Json cluster_table(const fds::sym::CoulombWorkspace& ws, const fds::fock::EigenSolution& sol) {
  Json rows = Json::array();
  for (std::size_t ci = 0; ci < sol.clusters.size(); ++ci) {
    double esum = 0.0, rmax = 0.0;
    for (int idx : sol.clusters[ci]) {
      esum += sol.pairs[idx].value;
      rmax = std::max(rmax, sol.pairs[idx].residual);
    }
    double E = esum / sol.clusters[ci].size();
    Json row;
    row["cluster"] = static_cast<int>(ci);
    row["energy"] = format_number(E);
    row["multiplicity"] = static_cast<int>(sol.clusters[ci].size());
    row["max_residual"] = format_number(rmax);
    // closest principal number under the exact formula
    int best_n = 1;
    double best = 1e300;
    for (int n = 1; n <= 40; ++n) {
      double d = std::abs(E - fds::sym::energy_formula(n, ws.params().lambda, ws.params().q));
      if (d < best) {
        best = d;
        best_n = n;
      }
    }
    double fE = fds::sym::energy_formula(best_n, ws.params().lambda, ws.params().q);
    row["formula_n"] = best_n;
    row["formula_energy"] = format_number(fE);
    row["formula_rel_error"] = format_number(std::abs(E - fE) / std::abs(fE));
    rows.push_back(row);
  }
  return rows;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("spectrum", cfg.echo());
  fds::ham::Tolerances tol;

  fds::ham::ModelParams params{cfg.lambda, cfg.q, cfg.n_max};
  fds::sym::CoulombWorkspace ws(params);
  Json cache_info = Json::object();
  sync_cache(ws, cfg, cache_info);

  fds::fock::EigenOpts opts;
  opts.k = cfg.k;
  opts.residual_tol = tol.eig_residual;
  opts.cluster_window = tol.cluster_window;
  fds::fock::EigenSolution sol = ws.solve(opts);

  double worst = 0.0;
  for (const auto& p : sol.pairs) worst = std::max(worst, p.residual);
  rep.add_check("eigensolve residual", worst <= tol.eig_residual, worst, tol.eig_residual);
  if (cfg.q == 0.0 && !sol.pairs.empty())
    rep.add_check("q=0 spectrum non-negative", sol.pairs.front().value >= -1e-10,
                  sol.pairs.front().value, -1e-10);
  Json clusters = cluster_table(ws, sol);
  rep.add_table("clusters", clusters);
  if (!cache_info.empty()) rep.add_table("cache", cache_info);

  std::ostringstream csv;
  csv << "cluster,energy,multiplicity,max_residual,formula_n,formula_energy,formula_rel_error\n";
  for (const auto& row : clusters)
    csv << row["cluster"] << "," << row["energy"].get<std::string>() << ","
        << row["multiplicity"] << "," << row["max_residual"].get<std::string>() << ","
        << row["formula_n"] << "," << row["formula_energy"].get<std::string>() << ","
        << row["formula_rel_error"].get<std::string>() << "\n";

  if (cfg.sweep) {
    Json ladder = Json::array();
    for (int nm : {std::max(8, cfg.n_max - 20), std::max(10, cfg.n_max - 10), cfg.n_max}) {
      fds::sym::CoulombWorkspace w2({cfg.lambda, cfg.q, nm});
      fds::fock::EigenOpts o2 = opts;
      o2.k = 1;
      fds::fock::EigenSolution s2 = w2.solve(o2);
      Json row;
      row["nmax"] = nm;
      row["ground_energy"] = format_number(s2.pairs.front().value);
      row["formula_rel_error"] = format_number(
          std::abs(s2.pairs.front().value - fds::sym::energy_formula(1, cfg.lambda, cfg.q)) /
          std::abs(fds::sym::energy_formula(1, cfg.lambda, cfg.q)));
      ladder.push_back(row);
    }
    rep.add_table("convergence_ladder", ladder);
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

int cmd_symmetry(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("symmetry", cfg.echo());
  fds::ham::Tolerances tol;

  fds::ham::ModelParams params{cfg.lambda, cfg.q, cfg.n_max};
  fds::sym::CoulombWorkspace ws(params);
  Json cache_info = Json::object();
  sync_cache(ws, cfg, cache_info);

  int margin = 8;  // combined ladder degree of [A, H]
  for (int k = 1; k <= 3; ++k) {
    double r = fds::sym::conservation_check(ws, k, margin);
    rep.add_check("conservation [A_" + std::to_string(k) + ", H]", r <= tol.conservation, r,
                  tol.conservation);
  }

  fds::fock::EigenOpts opts;
  opts.k = cfg.k;
  opts.cluster_window = tol.cluster_window;
  fds::fock::EigenSolution sol = ws.solve(opts);
  double eps_E = tol.regime_band_rel * 2.0 / (cfg.lambda * cfg.lambda);

  Json rows = Json::array();
  for (std::size_t ci = 0; ci < sol.clusters.size(); ++ci) {
    const auto& cl = sol.clusters[ci];
    Eigen::MatrixXcd Psi(ws.dim(), cl.size());
    double E = 0.0;
    for (std::size_t c = 0; c < cl.size(); ++c) {
      Psi.col(c) = sol.pairs[cl[c]].vec;
      E += sol.pairs[cl[c]].value;
    }
    E /= cl.size();
    fds::sym::Regime regime = fds::sym::classify_regime(E, cfg.lambda, eps_E);
    Json row;
    row["cluster"] = static_cast<int>(ci);
    row["energy"] = format_number(E);
    row["multiplicity"] = static_cast<int>(cl.size());
    row["regime"] = fds::sym::regime_name(regime);
    fds::sym::LenzCheckResult lc = fds::sym::lenz_commutator_check(ws, Psi, E);
    row["lenz_coefficient_expected"] = format_number(lc.coefficient_expected);
    row["lenz_coefficient_fitted"] = format_number(lc.coefficient_fitted);
    row["lenz_projected_residual"] = format_number(lc.projected_residual);
    row["lenz_interior_residual"] = format_number(lc.interior_residual);
    row["near_boundary"] = lc.near_boundary;
    if (regime != fds::sym::Regime::E3) {
      fds::sym::CasimirValues cv = fds::sym::casimirs(ws, Psi, E);
      row["casimir_c1"] = format_number(cv.c1);
      row["casimir_c2"] = format_number(cv.c2);
      row["casimir_c2_unnormalized"] = format_number(cv.c2_unnorm);
      row["inferred_n"] = cv.inferred_n;
      if (regime == fds::sym::Regime::SO4) {
        fds::sym::Su2Decomposition dec = fds::sym::su2_decompose(ws, Psi, E);
        row["su2_p_closure"] = format_number(dec.p_closure);
        row["su2_q_closure"] = format_number(dec.q_closure);
        row["su2_cross_residual"] = format_number(dec.cross_residual);
      }
    }
    rows.push_back(row);
  }
  rep.add_table("clusters", rows);
  if (!cache_info.empty()) rep.add_table("cache", cache_info);

  // Lenz closure as checks on the bound (SO(4)) clusters
  for (std::size_t ci = 0; ci < sol.clusters.size() && ci < 2; ++ci) {
    double v = std::stod(rows[ci]["lenz_projected_residual"].get<std::string>());
    rep.add_check("lenz closure cluster " + std::to_string(ci), v <= tol.lenz_closure_bound, v,
                  tol.lenz_closure_bound);
  }

  std::ostringstream csv;
  csv << "cluster,energy,multiplicity,regime,lenz_projected_residual,lenz_interior_residual\n";
  for (const auto& row : rows)
    csv << row["cluster"] << "," << row["energy"].get<std::string>() << ","
        << row["multiplicity"] << "," << row["regime"].get<std::string>() << ","
        << row["lenz_projected_residual"].get<std::string>() << ","
        << row["lenz_interior_residual"].get<std::string>() << "\n";

  if (cfg.sweep) {
    std::vector<double> lambdas;
    for (double l = 0.5; l >= 0.05 - 1e-12; l *= 0.5) lambdas.push_back(l);
    fds::sym::HydrogenLimitStudy st = fds::sym::hydrogen_limit_study(cfg.q, 1, lambdas);
    Json sweep = Json::array();
    for (const auto& r : st.rows) {
      Json row;
      row["lambda"] = format_number(r.lambda);
      row["formula_energy"] = format_number(r.formula_E);
      row["deviation"] = format_number(r.deviation);
      sweep.push_back(row);
    }
    rep.add_table("hydrogen_limit", sweep);
    rep.add_check("hydrogen-limit power", std::abs(st.fitted_power - 2.0) <= 0.1,
                  st.fitted_power, 2.0);
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

// ---------------------------------------------------------------------------
// zwanziger
// ---------------------------------------------------------------------------

int cmd_zw_levels(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("zwanziger levels", cfg.echo());
  fds::zw::LevelTable t = fds::zw::level_table(cfg.mu, cfg.gamma, cfg.k);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,energy,gamma_prime,j_plus,j_minus,degeneracy\n";
  bool ids_ok = true;
  fds::Rational mu_abs = t.mu < 0 ? fds::Rational(-t.mu) : t.mu;
  for (const auto& r : t.rows) {
    if (r.j_plus - r.j_minus != mu_abs || r.j_plus + r.j_minus + 1 != r.gamma_prime ||
        r.degeneracy != r.n * r.n - t.mu * t.mu)
      ids_ok = false;
    Json row;
    row["n"] = r.n.str();
    row["energy"] = format_number(r.energy);
    row["gamma_prime"] = r.gamma_prime.str();
    row["j_plus"] = r.j_plus.str();
    row["j_minus"] = r.j_minus.str();
    row["degeneracy"] = r.degeneracy.str();
    rows.push_back(row);
    csv << r.n.str() << "," << format_number(r.energy) << "," << r.gamma_prime.str() << ","
        << r.j_plus.str() << "," << r.j_minus.str() << "," << r.degeneracy.str() << "\n";
  }
  rep.add_table("levels", rows);
  rep.add_exact_check("row identities (j+ - j- = |mu|, j+ + j- + 1 = gamma', deg = n^2 - mu^2)",
                      ids_ok);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

int cmd_zw_oracle(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("zwanziger oracle", cfg.echo());
  fds::ham::Tolerances tol;
  fds::zw::RadialGrid grid{cfg.rmin, cfg.rmax, cfg.grid_points};
  std::vector<double> energies =
      fds::zw::radial_oracle_refined(cfg.mu, cfg.gamma, cfg.j, grid, cfg.k);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "level,energy,reference,rel_error\n";
  for (std::size_t i = 0; i < energies.size(); ++i) {
    double n = cfg.j + 1 + static_cast<double>(i);
    double ref = -cfg.gamma * cfg.gamma / (2.0 * n * n);
    double rel = std::abs(energies[i] - ref) / std::abs(ref);
    Json row;
    row["level"] = static_cast<int>(i);
    row["energy"] = format_number(energies[i]);
    row["reference"] = format_number(ref);
    row["rel_error"] = format_number(rel);
    rows.push_back(row);
    csv << i << "," << format_number(energies[i]) << "," << format_number(ref) << ","
        << format_number(rel) << "\n";
    rep.add_check("level " + std::to_string(i) + " vs -gamma^2/(2n^2)", rel <= tol.oracle_rel,
                  rel, tol.oracle_rel);
  }
  rep.add_table("oracle", rows);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

std::vector<fds::zw::Vec3> read_points_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open points file: " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::ios_base::failure("empty points file: " + path);
  // tolerate whitespace around the header
  std::string h;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) h += c;
  if (h != "x,y,z") throw std::ios_base::failure("points file must have header x,y,z");
  std::vector<fds::zw::Vec3> pts;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    fds::zw::Vec3 p;
    char comma;
    if (!(ls >> p[0] >> comma >> p[1] >> comma >> p[2]))
      throw std::ios_base::failure("malformed points row: " + line);
    pts.push_back(p);
  }
  return pts;
}

int cmd_zw_fields(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("zwanziger fields", cfg.echo());
  if (cfg.points_file.empty())
    throw std::invalid_argument("fields requires --points <csv with header x,y,z>");
  std::vector<fds::zw::Vec3> pts = read_points_csv(cfg.points_file);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "x,y,z,Bx,By,Bz,Bnorm\n";
  bool mag_ok = true;
  for (const auto& p : pts) {
    fds::zw::Vec3 B = fds::zw::monopole_field(cfg.g, p);
    double r = fds::zw::norm(p);
    double expect = std::abs(cfg.g) / (fds::zw::kFourPi * r * r);
    if (std::abs(fds::zw::norm(B) - expect) > 1e-12 * expect) mag_ok = false;
    Json row;
    row["x"] = format_number(p[0]);
    row["y"] = format_number(p[1]);
    row["z"] = format_number(p[2]);
    row["Bx"] = format_number(B[0]);
    row["By"] = format_number(B[1]);
    row["Bz"] = format_number(B[2]);
    row["Bnorm"] = format_number(fds::zw::norm(B));
    rows.push_back(row);
    csv << format_number(p[0]) << "," << format_number(p[1]) << "," << format_number(p[2]) << ","
        << format_number(B[0]) << "," << format_number(B[1]) << "," << format_number(B[2]) << ","
        << format_number(fds::zw::norm(B)) << "\n";
  }
  rep.add_table("field", rows);
  rep.add_exact_check("|B| = g / (4 pi r^2) at every point", mag_ok);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

int cmd_zw_reduce(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  fds::report::Report rep("zwanziger reduce", cfg.echo());
  fds::zw::DyonSystem s{cfg.e1, cfg.e2, cfg.g1, cfg.g2, cfg.m1, cfg.m2};
  fds::zw::ReducedDyon r = fds::zw::reduce_two_body(s);
  Json row;
  row["m"] = format_number(r.m);
  row["mu"] = format_number(r.mu);
  row["gamma"] = format_number(r.gamma);
  row["dirac_quantized"] = fds::zw::dirac_check(r.mu);
  row["binding"] = r.gamma > 0;
  rep.add_table("reduced", row);
  rep.add_exact_check("Dirac quantization (2 mu integer)", fds::zw::dirac_check(r.mu));
  std::ostringstream csv;
  csv << "m,mu,gamma,dirac_quantized,binding\n"
      << format_number(r.m) << "," << format_number(r.mu) << "," << format_number(r.gamma) << ","
      << (fds::zw::dirac_check(r.mu) ? 1 : 0) << "," << (r.gamma > 0 ? 1 : 0) << "\n";
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(rep, cfg, wall, csv.str());
}

int cmd_schema() {
  std::cout << fds::report::schema_text();
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy-space dynamical-symmetry verification toolkit"};
  app.require_subcommand(1);
  app.set_config("--config")->description("flat key=value config file (flags win)");
  RunConfig cfg;
  add_common_flags(app, cfg);

  CLI::App* verify = app.add_subcommand("verify", "run the symbolic identity suite");
  verify->add_option("expression", cfg.expressions, "extra equations 'lhs == rhs'");
  CLI::App* spectrum = app.add_subcommand("spectrum", "NC Coulomb spectrum vs the exact formula");
  CLI::App* symmetry = app.add_subcommand("symmetry", "SO(4)/SO(3,1)/E(3) symmetry report");
  CLI::App* zw = app.add_subcommand("zwanziger", "charge-dyon problem");
  zw->require_subcommand(1);
  CLI::App* levels = zw->add_subcommand("levels", "algebraic bound-level table");
  CLI::App* oracle = zw->add_subcommand("oracle", "radial finite-difference oracle");
  CLI::App* fields = zw->add_subcommand("fields", "monopole field at sample points");
  CLI::App* reduce = zw->add_subcommand("reduce", "two-body parameter reduction");
  CLI::App* schema = app.add_subcommand("schema", "print the report JSON schema");
  for (CLI::App* sub : {verify, spectrum, symmetry, zw, levels, oracle, fields, reduce, schema})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  if (const char* env = std::getenv("FUZZYDYNSYM_CACHE"); env && *env) cfg.cache_dir = env;

  try {
    if (app.got_subcommand("verify")) return cmd_verify(cfg);
    if (app.got_subcommand("spectrum")) return cmd_spectrum(cfg);
    if (app.got_subcommand("symmetry")) return cmd_symmetry(cfg);
    if (app.got_subcommand("schema")) return cmd_schema();
    CLI::App* z = app.get_subcommand("zwanziger");
    if (z->got_subcommand("levels")) return cmd_zw_levels(cfg);
    if (z->got_subcommand("oracle")) return cmd_zw_oracle(cfg);
    if (z->got_subcommand("fields")) return cmd_zw_fields(cfg);
    if (z->got_subcommand("reduce")) return cmd_zw_reduce(cfg);
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const fds::parser::ParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFail;
  }
}
