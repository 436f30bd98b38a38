#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "scatter/config.hpp"
#include "scatter/specfun.hpp"
#include "scatter/duality.hpp"
#include "scatter/io.hpp"
#include "scatter/oracles.hpp"
#include "scatter/synth.hpp"

namespace {

using scatter::config::ConfigError;
using scatter::config::RunConfig;
namespace duality = scatter::duality;
namespace forward = scatter::forward;
namespace geometry = scatter::geometry;
namespace io = scatter::io;
namespace nearfield = scatter::nearfield;
namespace potentials = scatter::potentials;

struct EvalCounters {
  std::atomic<long> hits{0};
  std::atomic<long> solves{0};
};

nearfield::NearFieldMatrix assemble(const RunConfig& cfg, double lambda) {
  potentials::WaveContext ctx(lambda);
  if (cfg.route == "factorized")
    return nearfield::assemble_FS_factorized(cfg.problem(), cfg.disk(),
                                             cfg.source_curve(), ctx);
  if (cfg.obstacle_shape == "disk")
    return nearfield::assemble_FS_direct(cfg.problem(), cfg.disk(),
                                         cfg.source_curve(), ctx,
                                         cfg.truncation > 0 ? cfg.truncation : -1);
  if (cfg.problem_kind != "dirichlet")
    throw ConfigError("non-disk obstacles support problem.kind = dirichlet only");
  return nearfield::assemble_FS_nystrom(cfg.obstacle_curve(), cfg.source_curve(),
                                        ctx);
}

duality::FormEvaluator make_evaluator(const RunConfig& cfg,
                                      EvalCounters& counters) {
  const auto source = cfg.source_curve();
  const int sigma = cfg.problem().sigma();
  const std::string hash = cfg.hash();
  const auto route = cfg.route == "factorized" ? nearfield::Route::Factorized
                                               : nearfield::Route::Direct;
  // disk scenes sweep in the multipole frame (see form_matrix_modal); the
  // cache holds the per-lambda form matrix either way
  const bool modal =
      cfg.obstacle_shape == "disk" && route == nearfield::Route::Direct;
  return [&cfg, &counters, source, sigma, hash, route, modal](double lambda) {
    std::string path;
    if (!cfg.cache_dir.empty()) {
      path = cfg.cache_dir + "/" + io::cache_file_name(hash, lambda, route);
      if (auto nf = io::read_matrix_cache(path, lambda, route)) {
        ++counters.hits;
        return nf->F;
      }
    }
    potentials::WaveContext ctx(lambda);
    Eigen::MatrixXcd m =
        modal ? nearfield::form_matrix_modal(cfg.problem(), cfg.disk(), ctx,
                                             cfg.truncation > 0 ? cfg.truncation
                                                                : -1)
              : nearfield::form_matrix(assemble(cfg, lambda), source, sigma);
    ++counters.solves;
    if (!path.empty())
      io::write_matrix_cache(path, {m, route, lambda});
    return m;
  };
}

duality::RangeOptions range_options(const RunConfig& cfg) {
  duality::RangeOptions r;
  r.delta_rel = cfg.delta_rel;
  return r;
}

duality::PhaseCurve run_sweep(const RunConfig& cfg, EvalCounters& counters) {
  auto eval = make_evaluator(cfg, counters);
  return duality::sweep(eval, cfg.problem().sigma(), cfg.lambda_lo,
                        cfg.lambda_hi, cfg.step, cfg.parallelism,
                        range_options(cfg));
}

std::vector<duality::Detection> run_detect(const RunConfig& cfg,
                                           const duality::PhaseCurve& curve,
                                           EvalCounters& counters) {
  auto eval = make_evaluator(cfg, counters);
  duality::DetectOptions d;
  d.tau_dip = cfg.tau_dip;
  d.tau_jump = cfg.tau_jump;
  d.refine_width = cfg.refine_width;
  return duality::detect(curve, cfg.problem().kind, eval, d, range_options(cfg));
}

void log_counters(const EvalCounters& c) {
  std::cerr << "cache: " << c.hits.load() << " hits, " << c.solves.load()
            << " solves\n";
}

int cmd_sweep(const RunConfig& cfg, const std::string& out, bool no_plot) {
  EvalCounters counters;
  auto curve = run_sweep(cfg, counters);
  io::write_sweep_csv(out, curve, cfg.hash());
  if (!no_plot) io::write_sweep_svg(out + ".svg", curve, {});
  log_counters(counters);
  return 0;
}

int cmd_detect(const RunConfig& cfg, const std::string& out, bool no_plot) {
  EvalCounters counters;
  auto curve = run_sweep(cfg, counters);
  auto dets = run_detect(cfg, curve, counters);
  io::write_detections_json(out, dets, cfg.hash());
  if (!no_plot) io::write_sweep_svg(out + ".svg", curve, dets);
  log_counters(counters);
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "PASS " : "FAIL ") << name
              << (note.empty() ? "" : "  (" + note + ")") << "\n";
    if (!ok) all_ok = false;
  };
  const bool is_disk = cfg.obstacle_shape == "disk";
  const bool break_sign = std::getenv("SCATTER_BREAK_SIGN") != nullptr;
  auto source = cfg.source_curve();
  auto problem = cfg.problem();
  const double k = problem.kind == forward::ProblemKind::Dirichlet ? 1.5
                   : problem.kind == forward::ProblemKind::Neumann ? 2.0
                                                                   : 1.2;
  potentials::WaveContext ctx(k * k);

  if (is_disk) {
    auto direct = nearfield::assemble_FS_direct(problem, cfg.disk(), source, ctx);
    auto fact = nearfield::assemble_FS_factorized(problem, cfg.disk(), source, ctx);
    if (break_sign) fact.F = -fact.F;
    double rel = (direct.F - fact.F).norm() / direct.F.norm();
    report("factorization", rel <= 1e-8, "rel Frobenius " + io::format_double(rel));
  } else {
    std::cout << "SKIP factorization  (non-disk obstacle)\n";
  }

  {
    // single-layer jump: exterior minus interior normal derivative is -mu;
    // a fine fixed circle keeps the near-curve quadrature accurate
    auto curve = geometry::make_circle({0.0, 0.0}, 1.0, 1024);
    Eigen::VectorXcd mu(curve.x.size());
    for (size_t q = 0; q < curve.x.size(); ++q)
      mu[q] = 1.0 + 0.3 * std::cos(curve.t[q]);
    const size_t q0 = curve.x.size() / 5;
    auto dnu = [&](double off) {
      const double h = 1e-4;
      std::vector<geometry::Vec2> pts{
          curve.x[q0] + curve.normal[q0] * (off - h),
          curve.x[q0] + curve.normal[q0] * (off + h)};
      auto v = potentials::eval_single_layer(curve, mu, ctx, pts);
      return (v[1] - v[0]) / (2.0 * h);
    };
    std::complex<double> jump = dnu(2e-2) - dnu(-2e-2);
    double rel = std::abs(jump + mu[q0]) / std::abs(mu[q0]);
    report("jump_relation", rel < 5e-2, "rel " + io::format_double(rel));
  }

  if (is_disk) {
    for (double kk : {1.5, 2.5}) {
      potentials::WaveContext c2(kk * kk);
      auto rep = duality::farfield_phase_check(problem, cfg.disk(), source, c2);
      report("farfield_phase_k" + io::format_double(kk),
             rep.pass_hausdorff && rep.pass_unitarity,
             "hausdorff " + io::format_double(rep.hausdorff) + ", unitarity " +
                 io::format_double(rep.unitarity_residual) + ", |gamma| " +
                 io::format_double(std::abs(rep.gamma)));
    }
  } else {
    std::cout << "SKIP farfield_phase  (non-disk obstacle)\n";
  }

  {
    // quadrature convergence: circle single-layer symbol
    auto sym_err = [&](int n) {
      auto circ = geometry::make_circle({0.0, 0.0}, 1.0, n);
      auto ops = potentials::assemble_singular_ops(circ, ctx);
      double worst = 0.0;
      for (int m = 0; m <= 3; ++m) {
        Eigen::VectorXcd e(n);
        for (int q = 0; q < n; ++q)
          e[q] = std::exp(std::complex<double>(0, m * circ.t[q]));
        std::complex<double> exact = std::complex<double>(0, 0.5) *
                                     std::numbers::pi *
                                     scatter::specfun::bessel_j(m, ctx.k) *
                                     scatter::specfun::hankel1(m, ctx.k);
        worst = std::max(worst, ((ops.S * e) - exact * e).norm() / e.norm());
      }
      return worst;
    };
    double coarse = sym_err(32), fine = sym_err(64);
    report("quadrature_convergence", fine <= 1e-10 && fine < coarse,
           "err(64) " + io::format_double(fine));
  }

  return all_ok ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const std::string& out) {
  std::vector<scatter::oracles::OracleEigenvalue> eigs;
  if (cfg.problem_kind == "dirichlet")
    eigs = scatter::oracles::dirichlet_disk_eigs(cfg.obstacle_radius,
                                                 cfg.lambda_lo, cfg.lambda_hi);
  else if (cfg.problem_kind == "neumann")
    eigs = scatter::oracles::neumann_disk_eigs(cfg.obstacle_radius,
                                               cfg.lambda_lo, cfg.lambda_hi);
  else
    eigs = scatter::oracles::ite_disk_eigs(cfg.obstacle_radius, cfg.index_n,
                                           cfg.lambda_lo, cfg.lambda_hi);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : eigs) {
    nlohmann::ordered_json j;
    j["lambda"] = e.lambda;
    j["m"] = e.m;
    j["radial_index"] = e.radial_index;
    j["multiplicity"] = e.multiplicity;
    j["kind"] = e.kind == scatter::oracles::EigKind::Dirichlet ? "dirichlet"
                : e.kind == scatter::oracles::EigKind::Neumann ? "neumann"
                                                               : "ite";
    j["possibly_invisible"] = e.possibly_invisible;
    arr.push_back(j);
  }
  std::cout << arr.dump(2) << "\n";
  if (!out.empty()) {
    std::ofstream f(out);
    f << arr.dump(2) << "\n";
  }
  return 0;
}

int cmd_synthesize(const RunConfig& cfg, const std::string& out,
                   const std::string& phi_path) {
  auto source = cfg.source_curve();
  const int ns = static_cast<int>(source.x.size());
  potentials::DensityVec phi(ns);
  {
    std::ifstream in(phi_path);
    if (!in) throw ConfigError("cannot open phi file: " + phi_path);
    std::string line;
    int i = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      double re = 0, im = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) < 1)
        throw ConfigError("phi file: bad line: " + line);
      if (i >= ns) throw ConfigError("phi file: more rows than source nodes");
      phi[i++] = {re, im};
    }
    if (i != ns) throw ConfigError("phi file: expected " + std::to_string(ns) +
                                   " rows, got " + std::to_string(i));
  }
  scatter::synth::SynthesisGeometry geom;
  geom.outer_radius = cfg.presumed_region_radius;
  geom.ball_center = cfg.source_center;
  geom.ball_radius = cfg.source_radius + 0.05;
  potentials::WaveContext ctx(cfg.lambda_lo);
  auto res = scatter::synth::synthesize_sources(cfg.problem(), cfg.disk(),
                                                source, ctx, phi, geom);
  io::write_residual_csv(out, res.alphas, res.surrogate_residuals,
                         res.data_residuals, cfg.hash());
  io::write_density_table(out + ".psis.csv", res.alphas, res.psis, cfg.hash());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interior-eigenvalue detection from near-field scattering data"};
  app.require_subcommand(1);

  std::string config_path, out, cache_dir, phi_path;
  int parallel = 0;
  bool no_plot = false;
  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--out", out, "output path");
  app.add_option("--parallel", parallel, "worker count for the lambda sweep");
  app.add_option("--cache", cache_dir, "near-field matrix cache directory");
  app.add_flag("--no-plot", no_plot, "skip the SVG plot");

  auto* sc_sweep = app.add_subcommand("sweep", "phase-curve sweep to CSV");
  auto* sc_detect = app.add_subcommand("detect", "eigenvalue detections to JSON");
  auto* sc_validate = app.add_subcommand("validate", "internal consistency checks");
  auto* sc_oracle = app.add_subcommand("oracle", "analytic disk eigenvalues");
  auto* sc_synth = app.add_subcommand("synthesize", "emitted-source synthesis");
  for (auto* s : {sc_sweep, sc_detect, sc_validate, sc_oracle, sc_synth})
    s->fallthrough();
  sc_synth->add_option("--phi", phi_path, "probing density CSV (re,im per node)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = scatter::config::load_config(config_path);
    if (parallel > 0) cfg.parallelism = parallel;
    if (!cache_dir.empty()) {
      std::filesystem::create_directories(cache_dir);
      cfg.cache_dir = cache_dir;
    }
    cfg.validate();
    if (!sc_oracle->parsed())
      geometry::validate_scene(cfg.obstacle_curve(), cfg.source_curve());

    if (sc_sweep->parsed())
      return cmd_sweep(cfg, out.empty() ? "sweep.csv" : out, no_plot);
    if (sc_detect->parsed())
      return cmd_detect(cfg, out.empty() ? "detections.json" : out, no_plot);
    if (sc_validate->parsed()) return cmd_validate(cfg);
    if (sc_oracle->parsed()) return cmd_oracle(cfg, out);
    if (sc_synth->parsed())
      return cmd_synthesize(cfg, out.empty() ? "synthesis.csv" : out, phi_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const scatter::geometry::OverlapError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
