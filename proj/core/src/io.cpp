#include "vesicle/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vesicle/fft.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace vesicle {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback,
                  bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing required key");
    return fallback;
  }
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback,
            bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing required key");
    return fallback;
  }
  if (!obj[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing required key");
    return fallback;
  }
  if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

GridSpec parse_grid(const json& g) {
  reject_unknown(g, "grid", {"n", "n1", "n2", "n3"});
  GridSpec spec;
  if (g.contains("n")) {
    if (g.contains("n1") || g.contains("n2") || g.contains("n3"))
      fail("grid", "give either n or n1/n2/n3, not both");
    spec = GridSpec::cubic(get_int(g, "grid", "n", 0, true));
  } else {
    spec.n1 = get_int(g, "grid", "n1", 0, true);
    spec.n2 = get_int(g, "grid", "n2", 0, true);
    spec.n3 = get_int(g, "grid", "n3", 0, true);
  }
  spec.validate();
  return spec;
}

DealiasRule parse_dealias(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "two_thirds") return DealiasRule::two_thirds();
    if (s == "padded") return DealiasRule::padded(3);
    fail("stepper.dealias", "expected \"two_thirds\", \"padded\", or {\"padded\": p}");
  }
  if (v.is_object()) {
    reject_unknown(v, "stepper.dealias", {"padded"});
    if (!v.contains("padded") || !v["padded"].is_number_integer())
      fail("stepper.dealias.padded", "expected an integer pad factor");
    return DealiasRule::padded(v["padded"].get<int>());
  }
  fail("stepper.dealias", "expected a string or object");
}

StepperConfig parse_stepper(const json& s) {
  reject_unknown(s, "stepper",
                 {"dt_max", "cfl", "integrator", "end_time", "output_every", "dealias",
                  "blowup_cap"});
  StepperConfig cfg;
  cfg.dt_max = get_number(s, "stepper", "dt_max", 0.0, true);
  cfg.cfl = get_number(s, "stepper", "cfl", 0.5);
  cfg.end_time = get_number(s, "stepper", "end_time", 0.0, true);
  cfg.output_every = get_int(s, "stepper", "output_every", 1);
  cfg.blowup_cap = get_number(s, "stepper", "blowup_cap", 1e12);
  const std::string integ = get_string(s, "stepper", "integrator", "if_heun");
  if (integ == "if_heun")
    cfg.integrator = Integrator::IfHeun;
  else if (integ == "if_euler")
    cfg.integrator = Integrator::IfEuler;
  else
    fail("stepper.integrator", "expected \"if_heun\" or \"if_euler\"");
  if (s.contains("dealias")) cfg.dealias = parse_dealias(s["dealias"]);
  cfg.validate();
  return cfg;
}

ModelParams parse_params(const json& p, std::optional<double>& alpha_override,
                         std::optional<double>& beta_override) {
  reject_unknown(p, "params", {"mu", "k", "gamma", "eps", "M1", "M2", "alpha", "beta"});
  ModelParams params;
  params.mu = get_number(p, "params", "mu", 0.0, true);
  params.k = get_number(p, "params", "k", 0.0, true);
  params.gamma = get_number(p, "params", "gamma", 0.0, true);
  params.eps = get_number(p, "params", "eps", 0.0, true);
  params.M1 = get_number(p, "params", "M1", 0.0);
  params.M2 = get_number(p, "params", "M2", 0.0);
  if (p.contains("alpha")) alpha_override = get_number(p, "params", "alpha", 0.0);
  if (p.contains("beta")) beta_override = get_number(p, "params", "beta", 0.0);
  params.validate();
  return params;
}

InitialSpec parse_initial(const json& i) {
  reject_unknown(i, "initial",
                 {"builtin", "checkpoint", "amplitude", "phi_amplitude", "phi_mean", "radius",
                  "width", "seed"});
  InitialSpec init;
  init.builtin = get_string(i, "initial", "builtin", "");
  init.checkpoint_path = get_string(i, "initial", "checkpoint", "");
  if (init.builtin.empty() == init.checkpoint_path.empty())
    fail("initial", "give exactly one of builtin or checkpoint");
  init.amplitude = get_number(i, "initial", "amplitude", init.amplitude);
  init.phi_amplitude = get_number(i, "initial", "phi_amplitude", -1.0);
  init.phi_mean = get_number(i, "initial", "phi_mean", init.phi_mean);
  init.radius = get_number(i, "initial", "radius", init.radius);
  init.width = get_number(i, "initial", "width", init.width);
  if (i.contains("seed")) {
    if (!i["seed"].is_number_integer()) fail("initial.seed", "expected an integer");
    init.seed = i["seed"].get<std::uint64_t>();
  }
  return init;
}

CriterionSpec parse_criterion(const json& c, const std::string& path) {
  reject_unknown(c, path, {"kind", "p", "q", "threshold"});
  CriterionSpec spec;
  const std::string kind = get_string(c, path, "kind", "", true);
  if (kind == "serrin_u")
    spec.kind = CriterionKind::SerrinU;
  else if (kind == "serrin_grad")
    spec.kind = CriterionKind::SerrinGrad;
  else if (kind == "bkm")
    spec.kind = CriterionKind::Bkm;
  else if (kind == "besov0")
    spec.kind = CriterionKind::Besov0;
  else if (kind == "log_besov0")
    spec.kind = CriterionKind::LogBesov0;
  else if (kind == "log_besov_m1")
    spec.kind = CriterionKind::LogBesovM1;
  else
    fail(path + ".kind", "unknown criterion kind \"" + kind + "\"");
  const bool serrin =
      spec.kind == CriterionKind::SerrinU || spec.kind == CriterionKind::SerrinGrad;
  if (serrin) {
    spec.p = get_number(c, path, "p", 0.0, true);
    spec.q = get_number(c, path, "q", 0.0, true);
  } else if (c.contains("p") || c.contains("q")) {
    fail(path, "p/q only apply to serrin criteria");
  }
  if (c.contains("threshold")) spec.threshold = get_number(c, path, "threshold", 0.0);
  return spec;
}

OutputSpec parse_outputs(const json& o) {
  reject_unknown(o, "outputs", {"timeseries", "checkpoint", "checkpoint_every"});
  OutputSpec out;
  out.timeseries_path = get_string(o, "outputs", "timeseries", "");
  out.checkpoint_path = get_string(o, "outputs", "checkpoint", "");
  out.checkpoint_every = get_int(o, "outputs", "checkpoint_every", 0);
  if (out.checkpoint_every < 0) fail("outputs.checkpoint_every", "must be >= 0");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(root, "(top)",
                 {"grid", "params", "stepper", "initial", "criteria", "outputs", "eta_hat"});
  for (const char* key : {"grid", "params", "stepper", "initial"})
    if (!root.contains(key)) fail(key, "missing required section");

  RunConfig cfg;
  cfg.grid = parse_grid(root["grid"]);
  cfg.params = parse_params(root["params"], cfg.alpha_override, cfg.beta_override);
  cfg.stepper = parse_stepper(root["stepper"]);
  cfg.initial = parse_initial(root["initial"]);
  if (root.contains("criteria")) {
    if (!root["criteria"].is_array()) fail("criteria", "expected an array");
    int idx = 0;
    for (const json& c : root["criteria"])
      cfg.criteria.push_back(parse_criterion(c, "criteria[" + std::to_string(idx++) + "]"));
  }
  if (root.contains("outputs")) cfg.outputs = parse_outputs(root["outputs"]);
  cfg.eta_hat = get_number(root, "(top)", "eta_hat", 1.0);
  if (cfg.eta_hat <= 0.0) fail("eta_hat", "must be > 0");
  make_accumulators(cfg.criteria);  // validate serrin scalings up front
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<CriterionAccumulator> make_accumulators(const std::vector<CriterionSpec>& specs) {
  std::vector<CriterionAccumulator> accs;
  accs.reserve(specs.size());
  for (const CriterionSpec& s : specs) {
    switch (s.kind) {
      case CriterionKind::SerrinU:
        accs.push_back(CriterionAccumulator::serrin_u(s.p, s.q, s.threshold));
        break;
      case CriterionKind::SerrinGrad:
        accs.push_back(CriterionAccumulator::serrin_grad(s.p, s.q, s.threshold));
        break;
      default:
        accs.push_back(CriterionAccumulator::make(s.kind, s.threshold));
        break;
    }
  }
  return accs;
}

namespace {

SpectralScalar sampled_scalar(const GridSpec& g,
                              const std::function<double(double, double, double)>& fn) {
  RealVec samples(g.size());
  for (int i1 = 0; i1 < g.n1; ++i1)
    for (int i2 = 0; i2 < g.n2; ++i2)
      for (int i3 = 0; i3 < g.n3; ++i3)
        samples[g.index(i1, i2, i3)] =
            fn(double(i1) / g.n1, double(i2) / g.n2, double(i3) / g.n3);
  return forward_transform(samples, g);
}

}  // namespace

State make_initial_state(const InitialSpec& init, const GridSpec& grid) {
  if (!init.checkpoint_path.empty()) {
    CheckpointData ck = load_checkpoint(init.checkpoint_path);
    if (!(ck.state.u.grid() == grid))
      throw std::invalid_argument("initial: checkpoint grid does not match config grid");
    return std::move(ck.state);
  }

  State s = State::zero(grid);
  const double phi_amp = init.phi_amplitude >= 0.0 ? init.phi_amplitude : init.amplitude;

  if (init.builtin == "equilibrium") {
    s.phi = SpectralScalar::constant(grid, init.phi_mean);
  } else if (init.builtin == "random_smooth") {
    s.u = random_divergence_free(grid, /*band=*/3, init.seed, init.amplitude);
    s.phi = random_band_limited(grid, /*band=*/3, init.seed + 1, phi_amp);
    s.phi.coeffs[0] = init.phi_mean;
  } else if (init.builtin == "cosine_vorticity") {
    // u = (0, a/(2pi) sin(2pi x1), 0), so curl u = (0, 0, a cos(2pi x1)).
    const Complex c{0.0, -init.amplitude / (2.0 * kTwoPi)};
    s.u[1].mode(1, 0, 0) = c;
    s.u[1].mode(-1, 0, 0) = std::conj(c);
    s.u.divergence_free = true;
    s.phi = SpectralScalar::constant(grid, init.phi_mean);
  } else if (init.builtin == "taylor_green") {
    const double a = init.amplitude;
    s.u[0] = sampled_scalar(grid, [a](double x, double y, double z) {
      return a * std::sin(kTwoPi * x) * std::cos(kTwoPi * y) * std::cos(kTwoPi * z);
    });
    s.u[1] = sampled_scalar(grid, [a](double x, double y, double z) {
      return -a * std::cos(kTwoPi * x) * std::sin(kTwoPi * y) * std::cos(kTwoPi * z);
    });
    s.u.divergence_free = true;
    s.phi = SpectralScalar::constant(grid, init.phi_mean);
  } else if (init.builtin == "vesicle_sphere") {
    const double r = init.radius, w = init.width;
    s.phi = sampled_scalar(grid, [r, w](double x, double y, double z) {
      const double d = std::sqrt((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) +
                                 (z - 0.5) * (z - 0.5));
      return std::tanh((r - d) / (std::sqrt(2.0) * w));
    });
  } else {
    throw std::invalid_argument("initial: unknown builtin \"" + init.builtin + "\"");
  }
  return s;
}

ModelParams resolve_targets(ModelParams params, const SpectralScalar& phi0,
                            std::optional<double> alpha_override,
                            std::optional<double> beta_override) {
  params.alpha = alpha_override ? *alpha_override : volume(phi0);
  params.beta = beta_override ? *beta_override : area(phi0, params.eps);
  return params;
}

namespace {

constexpr char kMagic[4] = {'V', 'E', 'S', 'I'};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

void write_field(std::ostream& out, const SpectralScalar& f) {
  const RealVec samples = inverse_transform(f);
  out.write(reinterpret_cast<const char*>(samples.data()),
            std::streamsize(samples.size() * sizeof(double)));
}

SpectralScalar read_field(std::istream& in, const GridSpec& g) {
  RealVec samples(g.size());
  in.read(reinterpret_cast<char*>(samples.data()),
          std::streamsize(samples.size() * sizeof(double)));
  return forward_transform(samples, g);
}

}  // namespace

void save_checkpoint(const State& state, const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  out.write(kMagic, 4);
  write_pod(out, kCheckpointVersion);
  write_pod(out, std::uint32_t(state.u.grid().n1));
  write_pod(out, std::uint32_t(state.u.grid().n2));
  write_pod(out, std::uint32_t(state.u.grid().n3));
  write_pod(out, state.t);
  write_pod(out, params.mu);
  write_pod(out, params.k);
  write_pod(out, params.gamma);
  write_pod(out, params.eps);
  write_pod(out, params.M1);
  write_pod(out, params.M2);
  write_pod(out, params.alpha);
  write_pod(out, params.beta);
  for (int j = 0; j < 3; ++j) write_field(out, state.u[j]);
  write_field(out, state.phi);
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

CheckpointData load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  std::uint32_t version = 0;
  read_pod(in, version);
  if (version != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  std::uint32_t n1 = 0, n2 = 0, n3 = 0;
  read_pod(in, n1);
  read_pod(in, n2);
  read_pod(in, n3);
  GridSpec grid{int(n1), int(n2), int(n3)};
  grid.validate();

  CheckpointData ck;
  read_pod(in, ck.state.t);
  read_pod(in, ck.params.mu);
  read_pod(in, ck.params.k);
  read_pod(in, ck.params.gamma);
  read_pod(in, ck.params.eps);
  read_pod(in, ck.params.M1);
  read_pod(in, ck.params.M2);
  read_pod(in, ck.params.alpha);
  read_pod(in, ck.params.beta);
  if (!in) throw std::runtime_error("checkpoint: truncated header in " + path);
  ck.params.validate();
  for (int j = 0; j < 3; ++j) ck.state.u[j] = read_field(in, grid);
  ck.state.phi = read_field(in, grid);
  if (!in) throw std::runtime_error("checkpoint: truncated field data in " + path);
  in.peek();
  if (!in.eof()) throw std::runtime_error("checkpoint: trailing bytes in " + path);
  // Samples of a divergence-free field transform back divergence-free to
  // rounding; tagging (instead of re-projecting) keeps save/load/save
  // byte-identical.
  ck.state.u.divergence_free = divergence_rel(ck.state.u) < 1e-8;
  return ck;
}

TimeseriesWriter::TimeseriesWriter(std::ostream& out, std::vector<std::string> criterion_labels)
    : out_(out), labels_(std::move(criterion_labels)) {}

void TimeseriesWriter::emit(const DiagnosticsRecord& rec,
                            const std::vector<double>& criterion_integrals) {
  if (criterion_integrals.size() != labels_.size())
    throw std::invalid_argument("TimeseriesWriter: integral count does not match labels");
  if (!header_written_) {
    out_ << "t,kinetic,e_eps,a,b,pen_vol,pen_area,total_energy,dissipation_u,dissipation_phi,"
            "energy_residual,norm_u_l2,norm_phi_h2,norm_grad_lap_phi,norm_grad_phi_linf,"
            "omega_linf,omega_b0,omega_bm1";
    for (const std::string& label : labels_) out_ << ',' << label;
    out_ << ",h_t\n";
    header_written_ = true;
  }
  char buf[32];
  auto put = [&](double v, bool lead_comma = true) {
    if (lead_comma) out_ << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ << buf;
  };
  put(rec.t, false);
  put(rec.kinetic);
  put(rec.energy.e_eps);
  put(rec.energy.a);
  put(rec.energy.b);
  put(rec.energy.pen_vol);
  put(rec.energy.pen_area);
  put(rec.energy.total);
  put(rec.dissipation_u);
  put(rec.dissipation_phi);
  put(rec.energy_residual);
  put(rec.norm_u_l2);
  put(rec.norm_phi_h2);
  put(rec.norm_grad_lap_phi);
  put(rec.norm_grad_phi_linf);
  put(rec.besov.linf);
  put(rec.besov.b0_inf);
  put(rec.besov.bm1_inf);
  for (double v : criterion_integrals) put(v);
  put(rec.h_t);
  out_ << '\n';
}

}  // namespace vesicle
