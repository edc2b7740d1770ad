#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vesicle/criteria.hpp"
#include "vesicle/diagnostics.hpp"
#include "vesicle/dynamics.hpp"

namespace vesicle {

/// Builtin initial conditions selectable from a config file.
struct InitialSpec {
  std::string builtin;            // empty when resuming from a checkpoint
  std::string checkpoint_path;
  double amplitude = 0.1;
  double phi_amplitude = -1.0;    // defaults to amplitude
  double phi_mean = 0.0;
  double radius = 0.25;           // vesicle_sphere only
  double width = 0.05;            // vesicle_sphere interface width
  std::uint64_t seed = 0;
};

struct CriterionSpec {
  CriterionKind kind;
  double p = 0.0;
  double q = 0.0;
  std::optional<double> threshold;
};

struct OutputSpec {
  std::string timeseries_path;
  std::string checkpoint_path;
  int checkpoint_every = 0;  // in outputs; 0 = only at the end
};

struct RunConfig {
  GridSpec grid;
  ModelParams params;
  std::optional<double> alpha_override;
  std::optional<double> beta_override;
  StepperConfig stepper;
  InitialSpec initial;
  std::vector<CriterionSpec> criteria;
  OutputSpec outputs;
  double eta_hat = 1.0;
};

/// Parse and validate a JSON config.  Unknown keys are rejected; error
/// messages carry the offending key path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Instantiate accumulators (Serrin specs validate their scaling here).
std::vector<CriterionAccumulator> make_accumulators(const std::vector<CriterionSpec>& specs);

/// Build the initial state from a spec (builtin or checkpoint).
State make_initial_state(const InitialSpec& init, const GridSpec& grid);

/// Resolve alpha/beta from phi0 unless overridden.
ModelParams resolve_targets(ModelParams params, const SpectralScalar& phi0,
                            std::optional<double> alpha_override,
                            std::optional<double> beta_override);

/// Binary checkpoint: magic "VESI", version, grid, time, params, then the
/// real-space f64 arrays u1,u2,u3,phi (row-major, third index fastest),
/// little-endian throughout.  Round trips are bit-identical.
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const State& state, const ModelParams& params, const std::string& path);

struct CheckpointData {
  State state;
  ModelParams params;
};
CheckpointData load_checkpoint(const std::string& path);

/// CSV time-series sink with the fixed column order; floats at 17
/// significant digits.  Serrin (and the derived u-norm) columns appear in
/// the order the accumulators were registered.
class TimeseriesWriter {
 public:
  TimeseriesWriter(std::ostream& out, std::vector<std::string> criterion_labels);

  void emit(const DiagnosticsRecord& rec, const std::vector<double>& criterion_integrals);

  const std::vector<std::string>& criterion_labels() const { return labels_; }

 private:
  std::ostream& out_;
  std::vector<std::string> labels_;
  bool header_written_ = false;
};

}  // namespace vesicle
