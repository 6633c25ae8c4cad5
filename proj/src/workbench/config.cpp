#include "fopa/workbench/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fopa/errors.hpp"

namespace fopa::workbench {

namespace pt = boost::property_tree;

namespace {

struct UnitDef {
  const char* kind;
  const char* name;
  double factor;  // SI = value * factor
};

// First entry of each kind is the SI unit.
const UnitDef kUnits[] = {
    {"length", "m", 1.0},
    {"length", "km", 1e3},
    {"length", "cm", 1e-2},
    {"length", "mm", 1e-3},
    {"length", "um", 1e-6},
    {"length", "nm", 1e-9},
    {"power", "W", 1.0},
    {"power", "mW", 1e-3},
    {"frequency", "Hz", 1.0},
    {"frequency", "kHz", 1e3},
    {"frequency", "MHz", 1e6},
    {"frequency", "GHz", 1e9},
    {"frequency", "THz", 1e12},
    {"attenuation", "1/m", 1.0},
    {"attenuation", "dB/km", 0.0},  // see factor_of
    {"gamma", "1/(W m)", 1.0},
    {"gamma", "1/(W km)", 1e-3},
    {"slope", "s/m^3", 1.0},
    {"slope", "ps/(nm^2 km)", units::ps_per_nm2_km},
    {"wavenumber", "1/m", 1.0},
    {"wavenumber", "1/km", 1e-3},
    {"temperature", "K", 1.0},
    {"angle", "rad", 1.0},
    {"angle", "", 1.0},
    {"number", "", 1.0},
};

double factor_of(const UnitDef& u) {
  return std::string(u.name) == "dB/km" ? units::db_per_km_to_per_m(1.0) : u.factor;
}

std::string squash(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '*' && ch != '\t') out += ch;
  return out;
}

const UnitDef* find_unit(const std::string& unit, const std::string& kind) {
  const std::string key = squash(unit);
  for (const auto& u : kUnits)
    if (kind == u.kind && squash(u.name) == key) return &u;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Reads the ptree, remembering which keys were consumed so leftovers can be
// reported as unknown.
class Reader {
 public:
  Reader(const pt::ptree& tree, std::vector<EchoEntry>& echo) : tree_(tree), echo_(echo) {}

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto v = tree_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    std::string t = trim(*v);
    echo_.push_back({key, t, 0.0, ""});
    return t;
  }

  std::string required_text(const std::string& key) {
    auto t = text(key);
    if (!t) throw ParseError(key + ": missing required key");
    return *t;
  }

  std::optional<double> quantity(const std::string& key, const std::string& kind) {
    used_.insert(key);
    auto v = tree_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    const std::string t = trim(*v);
    std::istringstream in(t);
    in.imbue(std::locale::classic());
    double value = 0.0;
    if (!(in >> value)) throw ParseError(key + ": expected a number, got '" + t + "'");
    std::string unit;
    std::getline(in, unit);
    unit = trim(unit);
    const double si = to_si(value, unit, kind);
    if (!std::isfinite(si)) throw ParseError(key + ": value is not finite");
    echo_.push_back({key, t, si, si_unit(kind)});
    return si;
  }

  double required(const std::string& key, const std::string& kind) {
    auto q = quantity(key, kind);
    if (!q) throw ParseError(key + ": missing required key");
    return *q;
  }

  void reject_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (body.empty() && !body.data().empty())
        throw ParseError(section + ": key outside of a section");
      for (const auto& [name, value] : body) {
        (void)value;
        const std::string key = section + "." + name;
        if (!used_.count(key)) throw ParseError(key + ": unknown key");
      }
    }
  }

 private:
  const pt::ptree& tree_;
  std::vector<EchoEntry>& echo_;
  std::set<std::string> used_;
};

template <class E>
E pick(const std::string& key, const std::string& value, const std::map<std::string, E>& options) {
  auto it = options.find(lower(value));
  if (it == options.end()) {
    std::string names;
    for (const auto& [n, e] : options) names += (names.empty() ? "" : ", ") + n;
    throw ParseError(key + ": '" + value + "' is not one of " + names);
  }
  return it->second;
}

const std::map<std::string, Axis> kAxes{{"detuning", Axis::Detuning},
                                        {"length", Axis::Length},
                                        {"pump_power", Axis::PumpPower},
                                        {"phi_nl", Axis::PhiNl},
                                        {"gain", Axis::Gain}};
const std::map<std::string, Output> kOutputs{{"classical_gain", Output::ClassicalGain},
                                             {"psd_gain", Output::PsdGain},
                                             {"nf", Output::NoiseFigure},
                                             {"squeezing", Output::Squeezing},
                                             {"transfer_coeffs", Output::TransferCoeffs}};
const std::map<std::string, InputMode> kInputs{{"optimal", InputMode::Optimal},
                                               {"equal_split", InputMode::EqualSplit},
                                               {"nf_optimal", InputMode::NfOptimal}};

std::string axis_kind(Axis axis) {
  switch (axis) {
    case Axis::Detuning: return "frequency";
    case Axis::Length:
    case Axis::Gain: return "length";
    case Axis::PumpPower: return "power";
    case Axis::PhiNl: return "angle";
  }
  return "number";
}

}  // namespace

double to_si(double value, const std::string& unit, const std::string& kind) {
  const UnitDef* u = find_unit(unit, kind);
  if (!u) throw ParseError("unit '" + unit + "' is not a valid " + kind + " unit");
  return value * factor_of(*u);
}

double from_si(double si, const std::string& unit, const std::string& kind) {
  const UnitDef* u = find_unit(unit, kind);
  if (!u) throw ParseError("unit '" + unit + "' is not a valid " + kind + " unit");
  return si / factor_of(*u);
}

std::string si_unit(const std::string& kind) {
  for (const auto& u : kUnits)
    if (kind == u.kind) return u.name;
  throw ParseError("unknown quantity kind '" + kind + "'");
}

std::string to_string(Axis axis) {
  for (const auto& [n, a] : kAxes)
    if (a == axis) return n;
  return "?";
}
std::string to_string(Output out) {
  for (const auto& [n, o] : kOutputs)
    if (o == out) return n;
  return "?";
}
std::string to_string(InputMode mode) {
  for (const auto& [n, m] : kInputs)
    if (m == mode) return n;
  return "?";
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(buf.str(), dir.empty() ? "." : dir.string());
}

SweepConfig parse_config(const std::string& text, const std::string& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("line " + std::to_string(e.line()) + ": " + e.message());
  }

  SweepConfig cfg;
  Reader r(tree, cfg.echo);
  Amplifier& amp = cfg.amp;

  amp.fiber.length_m = r.required("fiber.length", "length");
  const double loss = r.quantity("fiber.loss", "attenuation").value_or(0.0);
  amp.fiber.alpha_p = r.quantity("fiber.loss_pump", "attenuation").value_or(loss);
  amp.fiber.alpha_a = r.quantity("fiber.loss_anti_stokes", "attenuation").value_or(loss);
  amp.fiber.alpha_s = r.quantity("fiber.loss_stokes", "attenuation").value_or(loss);
  amp.fiber.zero_dispersion_wavelength_m =
      r.quantity("fiber.zero_dispersion_wavelength", "length").value_or(0.0);
  amp.fiber.dispersion_slope = r.quantity("fiber.dispersion_slope", "slope").value_or(0.0);

  amp.pump.power_w = r.required("pump.power", "power");
  amp.pump.wavelength_m = r.required("pump.wavelength", "length");

  const double gamma0 = r.required("raman.gamma0", "gamma");
  const std::string model = lower(r.text("raman.model").value_or("silica"));
  const auto peak = r.quantity("raman.peak_imag", "gamma");
  const auto slope_const = r.quantity("raman.slope_constant", "number");
  const auto table = r.text("raman.table");
  const auto table_slope = r.quantity("raman.table_slope_at_zero", "number");

  amp.env.temperature_k = r.quantity("environment.temperature", "temperature").value_or(300.0);

  if (model == "silica") {
    if (peak.has_value() == slope_const.has_value())
      throw ValidationError("raman: silica model needs exactly one of peak_imag, slope_constant");
    amp.raman = peak ? RamanProfile::silica(gamma0, *peak)
                     : RamanProfile::silica_with_slope_constant(gamma0, *slope_const, amp.env.temperature_k);
  } else if (model == "none") {
    amp.raman = RamanProfile::instantaneous(gamma0);
  } else if (model == "table") {
    if (!table) throw ValidationError("raman: table model needs raman.table");
    std::filesystem::path p(*table);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    amp.raman = RamanProfile::from_table(gamma0, load_raman_table(p.string()), table_slope);
  } else {
    throw ParseError("raman.model: '" + model + "' is not one of none, silica, table");
  }

  const std::string mm = lower(r.text("mismatch.mode").value_or("dispersion"));
  if (mm == "dispersion") {
    amp.mismatch = PhaseMismatch::dispersion();
  } else if (mm == "fixed") {
    amp.mismatch = PhaseMismatch::fixed(r.quantity("mismatch.delta_k", "wavenumber").value_or(0.0));
  } else if (mm == "input_matched") {
    amp.mismatch = PhaseMismatch::input_matched(r.quantity("mismatch.fraction", "number").value_or(1.0));
  } else {
    throw ParseError("mismatch.mode: '" + mm + "' is not one of dispersion, fixed, input_matched");
  }

  cfg.axis = pick("sweep.axis", r.required_text("sweep.axis"), kAxes);
  const std::string kind = axis_kind(cfg.axis);
  cfg.start = r.required("sweep.start", kind);
  cfg.stop = r.required("sweep.stop", kind);
  if (cfg.axis == Axis::Detuning) {
    cfg.start = units::hz_to_angular(cfg.start);
    cfg.stop = units::hz_to_angular(cfg.stop);
  }
  const double points = r.required("sweep.points", "number");
  if (points != std::floor(points) || std::abs(points) > 1e7)
    throw ValidationError("sweep.points must be an integer");
  cfg.points = static_cast<int>(points);
  if (auto d = r.quantity("sweep.detuning", "frequency")) cfg.detuning = units::hz_to_angular(*d);

  std::set<Output> outs;
  const std::string list = r.text("sweep.outputs").value_or("classical_gain, psd_gain, nf");
  std::stringstream items(list);
  for (std::string item; std::getline(items, item, ',');)
    if (!trim(item).empty()) outs.insert(pick("sweep.outputs", trim(item), kOutputs));
  if (cfg.axis == Axis::Gain) outs.insert({Output::ClassicalGain, Output::NoiseFigure});
  cfg.outputs.assign(outs.begin(), outs.end());
  cfg.input = pick("sweep.input", r.text("sweep.input").value_or("optimal"), kInputs);

  if (auto v = r.quantity("numerics.quad_rel_tolerance", "number")) cfg.quad.rel_tolerance = *v;
  if (auto v = r.quantity("numerics.quad_max_evaluations", "number")) cfg.quad.max_evaluations = static_cast<int>(*v);
  if (auto v = r.quantity("numerics.series_max_terms", "number")) cfg.series.max_terms = static_cast<int>(*v);
  if (auto v = r.quantity("numerics.series_rel_tolerance", "number")) cfg.series.rel_tolerance = *v;
  if (auto v = r.quantity("numerics.threads", "number")) cfg.threads = static_cast<int>(*v);

  r.reject_unknown();
  validate(cfg);
  return cfg;
}

void validate(const SweepConfig& cfg) {
  // The swept quantity may be unset in the fixed bundle; check a representative point.
  Amplifier probe = cfg.amp;
  if (cfg.axis == Axis::Length || cfg.axis == Axis::Gain || cfg.axis == Axis::PhiNl)
    probe.fiber.length_m = probe.fiber.length_m > 0.0 ? probe.fiber.length_m : 1.0;
  validate(probe);
  if (cfg.points < 2) throw ValidationError("sweep.points must be >= 2");
  if (!(cfg.start < cfg.stop)) throw ValidationError("sweep.start must be < sweep.stop");
  if (cfg.axis == Axis::Detuning && !(cfg.start > 0.0))
    throw ValidationError("detuning sweep must start above 0");
  if (cfg.axis != Axis::Detuning && !(cfg.detuning > 0.0))
    throw ValidationError("sweep.detuning must be > 0 unless the axis is detuning");
  if ((cfg.axis == Axis::Length || cfg.axis == Axis::Gain || cfg.axis == Axis::PhiNl) && !(cfg.start > 0.0))
    throw ValidationError("length-like sweep must start above 0");
  if (cfg.axis == Axis::PumpPower && !(cfg.start >= 0.0))
    throw ValidationError("pump power sweep must start at >= 0");
  if (cfg.axis == Axis::PhiNl) {
    // phi = gamma0 P L_eff saturates at gamma0 P / alpha_p.
    const double cap = cfg.amp.fiber.alpha_p > 0.0
                           ? cfg.amp.raman.gamma0() * cfg.amp.pump.power_w / cfg.amp.fiber.alpha_p
                           : HUGE_VAL;
    if (!(cfg.stop < cap)) throw ValidationError("sweep.stop exceeds the reachable nonlinear phase");
    if (!(cfg.amp.raman.gamma0() * cfg.amp.pump.power_w > 0.0))
      throw ValidationError("phi_nl sweep needs gamma0 * pump power > 0");
  }
  if (cfg.amp.mismatch.kind == PhaseMismatch::Kind::Dispersion &&
      !(cfg.amp.fiber.zero_dispersion_wavelength_m > 0.0))
    throw ValidationError("dispersion mismatch needs fiber.zero_dispersion_wavelength");
  if (cfg.outputs.empty()) throw ValidationError("sweep.outputs must not be empty");
  if (!(cfg.quad.rel_tolerance > 0.0) || cfg.quad.max_evaluations < 15)
    throw ValidationError("numerics: quadrature tolerance must be > 0 and budget >= 15");
  validate(cfg.series);
  if (cfg.threads < 1) throw ValidationError("numerics.threads must be >= 1");
}

std::string config_hash(const SweepConfig& cfg) {
  std::vector<std::string> lines;
  for (const auto& e : cfg.echo) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", e.si);
    lines.push_back(e.key + "=" + (e.si_unit.empty() ? e.text : std::string(buf) + " " + e.si_unit));
  }
  std::sort(lines.begin(), lines.end());
  std::string canonical;
  for (const auto& line : lines) canonical += line + "\n";
  return hash_text(canonical);
}

std::string hash_text(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace fopa::workbench
