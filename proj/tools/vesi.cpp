// Command-line front end: run, besov, verify-lemmas, diagnose.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "vesicle/diagnostics.hpp"
#include "vesicle/io.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

namespace {

using namespace vesicle;

// Lp norm of the velocity-gradient tensor (pointwise Frobenius magnitude),
// quadrature on a 2x-refined grid.
double grad_lp_norm(const SpectralVector& u, double p) {
  const GridSpec& g = u.grid();
  const GridSpec fine{2 * g.n1, 2 * g.n2, 2 * g.n3};
  std::vector<RealVec> comps;
  comps.reserve(9);
  for (int j = 0; j < 3; ++j)
    for (int axis = 1; axis <= 3; ++axis)
      comps.push_back(samples_on_grid(derivative(u[j], axis, 1), fine));
  double acc = 0.0;
  for (std::size_t i = 0; i < comps[0].size(); ++i) {
    double sq = 0.0;
    for (const RealVec& c : comps) sq += c[i] * c[i];
    acc += std::pow(std::sqrt(sq), p);
  }
  return std::pow(acc / double(comps[0].size()), 1.0 / p);
}

double integrand_for(const CriterionAccumulator& acc, const DiagnosticsRecord& rec,
                     const State& state) {
  switch (acc.kind) {
    case CriterionKind::Bkm: return integrand_bkm(rec.besov.linf);
    case CriterionKind::Besov0: return rec.besov.b0_inf;
    case CriterionKind::LogBesov0: return integrand_log_besov0(rec.besov.b0_inf);
    case CriterionKind::LogBesovM1: return integrand_log_besov_m1(rec.besov.bm1_inf);
    case CriterionKind::SerrinU: return integrand_serrin(lp_norm(state.u, acc.p), acc.q);
    case CriterionKind::SerrinGrad: return integrand_serrin(grad_lp_norm(state.u, acc.p), acc.q);
  }
  return 0.0;
}

int cmd_run(const std::string& config_path) {
  RunConfig cfg = load_config(config_path);
  State state = make_initial_state(cfg.initial, cfg.grid);
  const ModelParams params =
      resolve_targets(cfg.params, state.phi, cfg.alpha_override, cfg.beta_override);

  // Fixed leading accumulators, then any further configured criteria.
  std::vector<CriterionAccumulator> accs = {
      CriterionAccumulator::make(CriterionKind::Bkm),
      CriterionAccumulator::make(CriterionKind::LogBesov0),
      CriterionAccumulator::make(CriterionKind::LogBesovM1),
  };
  for (CriterionAccumulator& extra : make_accumulators(cfg.criteria)) {
    bool dup = false;
    for (std::size_t i = 0; i < 3; ++i)
      if (accs[i].kind == extra.kind) {
        accs[i].threshold = extra.threshold;
        dup = true;
      }
    if (!dup) accs.push_back(std::move(extra));
  }

  const DyadicCutoffs cutoffs = build_cutoffs(cfg.grid);
  DiagnosticsCollector collector(params, cutoffs, cfg.eta_hat, cfg.stepper.dealias);

  std::ofstream ts_file;
  std::vector<std::string> labels;
  for (const CriterionAccumulator& a : accs) labels.push_back(a.label());
  std::unique_ptr<TimeseriesWriter> writer;
  if (!cfg.outputs.timeseries_path.empty()) {
    ts_file.open(cfg.outputs.timeseries_path);
    if (!ts_file) throw std::runtime_error("cannot open " + cfg.outputs.timeseries_path);
    writer = std::make_unique<TimeseriesWriter>(ts_file, labels);
  }

  int outputs_seen = 0;
  const Observer observer = [&](const State& s, const StepAux&, bool is_final) {
    DiagnosticsRecord rec = collector.collect(s);
    std::vector<double> integrals;
    integrals.reserve(accs.size());
    for (CriterionAccumulator& acc : accs) {
      accumulate(acc, s.t, integrand_for(acc, rec, s));
      integrals.push_back(acc.integral);
    }
    if (writer) writer->emit(rec, integrals);
    ++outputs_seen;
    if (!cfg.outputs.checkpoint_path.empty() &&
        (is_final || (cfg.outputs.checkpoint_every > 0 &&
                      outputs_seen % cfg.outputs.checkpoint_every == 0)))
      save_checkpoint(s, params, cfg.outputs.checkpoint_path);
  };

  const std::vector<Observer> observers = {observer};
  RunResult result = run(state, params, cfg.stepper, nullptr, observers);

  std::printf("status: %s\n", result.status == RunStatus::Completed ? "completed" : "blow-up");
  std::printf("final_time: %.17g\nsteps: %d\n", result.final_time, result.steps);
  for (const CriterionRow& row : report(accs).rows)
    std::printf("%s: integral %.17g  sup %.17g%s\n", row.name.c_str(), row.integral,
                row.sup_integrand, row.alarm ? "  ALARM" : "");
  return result.status == RunStatus::BlowUp ? 2 : 0;
}

int cmd_besov(const std::string& checkpoint_path, const std::vector<double>& s_values) {
  CheckpointData ck = load_checkpoint(checkpoint_path);
  const DyadicCutoffs cutoffs = build_cutoffs(ck.state.u.grid());
  const SpectralVector omega = curl(ck.state.u);
  std::printf("t: %.17g\n", ck.state.t);
  for (const auto& [name, field] : {std::pair<const char*, const SpectralVector&>{"omega", omega},
                                    {"u", ck.state.u}}) {
    std::printf("%s: linf %.17g  b0 %.17g  bm1 %.17g\n", name, linf_norm(field, 2),
                besov_norm(field, 0.0, cutoffs), besov_norm(field, -1.0, cutoffs));
    for (double s : s_values)
      std::printf("%s: B^%g %.17g  H^%g %.17g\n", name, s, besov_norm(field, s, cutoffs), s,
                  sobolev_norm(field, s, /*homogeneous=*/false));
  }
  return 0;
}

int cmd_verify_lemmas(int corpus_size, std::uint64_t seed) {
  const GridSpec grid = GridSpec::cubic(32);
  const DyadicCutoffs cutoffs = build_cutoffs(grid);
  double max_log_sobolev = 0.0, max_interp = 0.0, max_comm = 0.0, max_embed = 0.0;
  for (int i = 0; i < corpus_size; ++i) {
    const std::uint64_t s = seed + std::uint64_t(i);
    SpectralScalar f = random_band_limited(grid, 4, s);
    f.coeffs[0] = 0.0;
    SpectralScalar g = random_band_limited(grid, 4, s + 7919);
    g.coeffs[0] = 0.0;
    max_log_sobolev = std::max(max_log_sobolev, log_sobolev_ratio(f, 3.0, cutoffs));
    max_interp = std::max(max_interp, interpolation_ratio(f, cutoffs));
    max_comm = std::max(max_comm, commutator_ratio(f, g, 1.5));
    const double linf = linf_norm(f, 2);
    if (linf > 0.0) max_embed = std::max(max_embed, besov_norm(f, 0.0, cutoffs) / linf);
  }
  std::printf("corpus_size: %d\nseed: %" PRIu64 "\n", corpus_size, seed);
  std::printf("log_sobolev_max_ratio: %.17g\n", max_log_sobolev);
  std::printf("interpolation_max_ratio: %.17g\n", max_interp);
  std::printf("commutator_max_ratio: %.17g\n", max_comm);
  std::printf("embedding_max_ratio: %.17g\n", max_embed);
  return 0;
}

int cmd_diagnose(const std::string& checkpoint_path) {
  CheckpointData ck = load_checkpoint(checkpoint_path);
  const DyadicCutoffs cutoffs = build_cutoffs(ck.state.u.grid());
  const DiagnosticsRecord rec = collect(ck.state, ck.params, cutoffs);
  std::printf("t: %.17g\n", rec.t);
  std::printf("kinetic: %.17g\n", rec.kinetic);
  std::printf("e_eps: %.17g\na: %.17g\nb: %.17g\n", rec.energy.e_eps, rec.energy.a, rec.energy.b);
  std::printf("pen_vol: %.17g\npen_area: %.17g\ntotal_energy: %.17g\n", rec.energy.pen_vol,
              rec.energy.pen_area, rec.energy.total);
  std::printf("dissipation_u: %.17g\ndissipation_phi: %.17g\n", rec.dissipation_u,
              rec.dissipation_phi);
  std::printf("norm_u_l2: %.17g\nnorm_phi_h2: %.17g\n", rec.norm_u_l2, rec.norm_phi_h2);
  std::printf("norm_grad_lap_phi: %.17g\nnorm_grad_phi_linf: %.17g\n", rec.norm_grad_lap_phi,
              rec.norm_grad_phi_linf);
  std::printf("omega_linf: %.17g\nomega_b0: %.17g\nomega_bm1: %.17g\n", rec.besov.linf,
              rec.besov.b0_inf, rec.besov.bm1_inf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral vesicle-fluid solver with blow-up criterion diagnostics"};
  app.require_subcommand(1);

  std::string config_path, checkpoint_path;
  std::vector<double> s_values;
  int corpus_size = 50;
  std::uint64_t seed = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate from a JSON config");
  run_cmd->add_option("config", config_path, "config file")->required();

  CLI::App* besov_cmd = app.add_subcommand("besov", "Besov/Sobolev norms of a checkpoint");
  besov_cmd->add_option("checkpoint", checkpoint_path, "checkpoint file")->required();
  besov_cmd->add_option("--s", s_values, "additional norm orders");

  CLI::App* lemmas_cmd = app.add_subcommand("verify-lemmas", "inequality ratio sweeps");
  lemmas_cmd->add_option("--corpus-size", corpus_size, "number of random fields");
  lemmas_cmd->add_option("--seed", seed, "base seed");

  CLI::App* diag_cmd = app.add_subcommand("diagnose", "one diagnostics record of a checkpoint");
  diag_cmd->add_option("checkpoint", checkpoint_path, "checkpoint file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path);
    if (besov_cmd->parsed()) return cmd_besov(checkpoint_path, s_values);
    if (lemmas_cmd->parsed()) return cmd_verify_lemmas(corpus_size, seed);
    if (diag_cmd->parsed()) return cmd_diagnose(checkpoint_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
