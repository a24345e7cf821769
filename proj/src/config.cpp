#include "cqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cqed {

using json = nlohmann::ordered_json;

namespace {

class Reader {
 public:
  Reader(const json& node, std::string path, const std::string& source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (!node_.is_object()) fail("", "expected an object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(source_ + ": field '" + join(key) + "': " + what);
  }

  bool has(const std::string& key) const {
    return node_.contains(key) && !node_.at(key).is_null();
  }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) fail(key, "missing");
    return node_.at(key);
  }

  double number(const std::string& key) {
    const json& v = get(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "must be finite");
    return d;
  }

  std::optional<double> opt_number(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  int integer(const std::string& key) {
    const json& v = get(key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }

  std::optional<int> opt_integer(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return std::nullopt;
    return integer(key);
  }

  std::string string(const std::string& key) {
    const json& v = get(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = get(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Reader child(const std::string& key) {
    return Reader(get(key), join(key), source_);
  }
  bool has_child(const std::string& key) const { return node_.contains(key); }

  void finish() const {
    for (const auto& [key, value] : node_.items())
      if (!seen_.contains(key)) fail(key, "unknown field");
  }

  std::string join(const std::string& key) const {
    if (path_.empty()) return key;
    if (key.empty()) return path_;
    return path_ + "." + key;
  }

 private:
  const json& node_;
  std::string path_;
  const std::string& source_;
  std::set<std::string> seen_;
};

std::string line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + byte, '\n');
  const auto last = text.rfind('\n', byte == 0 ? 0 : byte - 1);
  const auto col = last == std::string::npos ? byte : byte - last - 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": syntax error at " + line_of(text, e.byte) +
                      ": " + e.what());
  }

  RunConfig c;
  Reader top(root, "", source);
  c.schema_version = top.integer("schema_version");
  if (c.schema_version != kSchemaVersion)
    top.fail("schema_version", "unsupported version " +
                                   std::to_string(c.schema_version) +
                                   " (expected " +
                                   std::to_string(kSchemaVersion) + ")");
  c.frequency_unit = top.string("frequency_unit");
  if (c.frequency_unit != "g" && c.frequency_unit != "hz")
    top.fail("frequency_unit", "expected \"g\" or \"hz\"");

  try {
    c.family = parse_family(top.string("family"));
  } catch (const std::invalid_argument& e) {
    top.fail("family", e.what());
  }

  const std::vector<double> energies = top.numbers("energies");
  if (energies.size() != 4) top.fail("energies", "expected four values");
  std::copy(energies.begin(), energies.end(), c.energies.begin());
  for (int l = 0; l < 3; ++l)
    if (!(c.energies[l] < c.energies[l + 1]))
      top.fail("energies", "must satisfy E0 < E1 < E2 < E3");

  {
    Reader cp = top.child("coupling");
    c.g = cp.number("g");
    c.delta_c = cp.number("delta_c");
    c.delta_prime = cp.number("delta_prime");
    c.omega_tilde = cp.number("omega_tilde");
    c.omega_ref = cp.number("omega_ref");
    cp.finish();
    if (!(c.g > 0.0)) cp.fail("g", "must be positive");
    if (c.frequency_unit == "g" && c.g != 1.0)
      cp.fail("g", "must be 1 when frequency_unit is \"g\"");
    if (!(c.delta_c > 0.0)) cp.fail("delta_c", "must be positive");
    if (!(c.omega_tilde > 0.0)) cp.fail("omega_tilde", "must be positive");
    if (!(c.omega_ref > 0.0)) cp.fail("omega_ref", "must be positive");
  }

  {
    Reader gt = top.child("gate");
    c.n_targets = gt.integer("n_targets");
    if (c.n_targets < 1) gt.fail("n_targets", "must be at least 1");
    c.qft = gt.boolean("qft", false);
    if (c.qft) {
      if (gt.has("theta")) gt.fail("theta", "not allowed together with qft");
    } else {
      c.theta = gt.numbers("theta");
      if (static_cast<int>(c.theta.size()) != c.n_targets)
        gt.fail("theta", "expected " + std::to_string(c.n_targets) +
                             " phases, got " + std::to_string(c.theta.size()));
      for (double t : c.theta)
        if (!(t >= 0.0 && t < 2.0 * kPi))
          gt.fail("theta", "phases must lie in [0, 2 pi)");
    }
    gt.finish();
  }

  c.m = top.opt_integer("m");
  if (c.m && *c.m < 1) top.fail("m", "must be a positive integer");

  if (top.has_child("decoherence")) {
    Reader dc = top.child("decoherence");
    c.g_over_2pi_hz = dc.opt_number("g_over_2pi_hz");
    c.gamma2_inv_s = dc.opt_number("gamma2_inv_s");
    c.quality_factor = dc.opt_number("quality_factor");
    c.nu_c_hz = dc.opt_number("nu_c_hz");
    dc.finish();
    if (c.g_over_2pi_hz && c.frequency_unit == "hz")
      dc.fail("g_over_2pi_hz",
              "mixed units: coupling.g already sets the scale in hz files");
    for (const auto& [key, value] :
         {std::pair{"g_over_2pi_hz", c.g_over_2pi_hz},
          std::pair{"gamma2_inv_s", c.gamma2_inv_s},
          std::pair{"quality_factor", c.quality_factor},
          std::pair{"nu_c_hz", c.nu_c_hz}})
      if (value && !(*value > 0.0)) dc.fail(key, "must be positive");
  }

  if (top.has_child("simulation")) {
    Reader sim = top.child("simulation");
    try {
      c.mode = parse_mode(sim.string("mode"));
    } catch (const std::invalid_argument& e) {
      sim.fail("mode", e.what());
    }
    c.fock_cutoff = sim.integer("fock_cutoff");
    c.tolerance = sim.number("tolerance");
    sim.finish();
    if (c.fock_cutoff < 1) sim.fail("fock_cutoff", "must be at least 1");
    if (!(c.tolerance > 0.0)) sim.fail("tolerance", "must be positive");
  }

  if (top.has_child("output")) {
    Reader out = top.child("output");
    c.out_dir = out.string("dir");
    out.finish();
  }
  top.finish();
  return c;
}

RunConfig qft_reference_config() {
  RunConfig c;
  c.family = Family::phase;
  c.energies = {0.0, 100.0, 140.0, 165.0};
  c.n_targets = 5;
  c.qft = true;
  c.g_over_2pi_hz = 220e6;
  c.gamma2_inv_s = 1e-6;
  c.quality_factor = 1e5;
  c.nu_c_hz = 3e9;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const RunConfig& c) {
  json root;
  root["schema_version"] = c.schema_version;
  root["frequency_unit"] = c.frequency_unit;
  root["family"] = to_string(c.family);
  root["energies"] = c.energies;
  root["coupling"] = {{"g", c.g},
                      {"delta_c", c.delta_c},
                      {"delta_prime", c.delta_prime},
                      {"omega_tilde", c.omega_tilde},
                      {"omega_ref", c.omega_ref}};
  json gate;
  gate["n_targets"] = c.n_targets;
  if (c.qft)
    gate["qft"] = true;
  else
    gate["theta"] = c.theta;
  root["gate"] = gate;
  if (c.m) root["m"] = *c.m;
  json dc = json::object();
  if (c.g_over_2pi_hz) dc["g_over_2pi_hz"] = *c.g_over_2pi_hz;
  if (c.gamma2_inv_s) dc["gamma2_inv_s"] = *c.gamma2_inv_s;
  if (c.quality_factor) dc["quality_factor"] = *c.quality_factor;
  if (c.nu_c_hz) dc["nu_c_hz"] = *c.nu_c_hz;
  if (!dc.empty()) root["decoherence"] = dc;
  root["simulation"] = {{"mode", to_string(c.mode)},
                        {"fock_cutoff", c.fock_cutoff},
                        {"tolerance", c.tolerance}};
  root["output"] = {{"dir", c.out_dir}};
  return root.dump(2) + "\n";
}

RunConfig RunConfig::in_g_units() const {
  if (frequency_unit == "g") return *this;
  RunConfig c = *this;
  const double scale = g;
  for (double& e : c.energies) e /= scale;
  c.g = 1.0;
  c.delta_c /= scale;
  c.delta_prime /= scale;
  c.omega_tilde /= scale;
  c.omega_ref /= scale;
  c.g_over_2pi_hz = scale;
  c.frequency_unit = "g";
  return c;
}

std::optional<double> RunConfig::g_hz() const {
  if (frequency_unit == "hz") return g;
  return g_over_2pi_hz;
}

GateSpec RunConfig::gate() const {
  if (qft) return qft_phase_layer(n_targets);
  GateSpec spec{n_targets, theta};
  spec.validate();
  return spec;
}

ScheduleOptions RunConfig::schedule_options() const {
  ScheduleOptions o;
  o.m = m;
  return o;
}

ScheduleParams RunConfig::schedule() const {
  const RunConfig c = in_g_units();
  const std::vector<double> rabis{c.omega_ref};
  const DerivedCouplings couplings =
      couplings_from_detunings(c.g, c.delta_c, c.delta_prime, rabis);
  return solve_schedule(gate(), c.g, couplings, c.omega_ref, c.omega_tilde,
                        schedule_options());
}

ProtocolOptions RunConfig::protocol_options() const {
  ProtocolOptions o;
  o.fock_cutoff = fock_cutoff;
  return o;
}

}  // namespace cqed
