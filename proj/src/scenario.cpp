#include "vlcsim/scenario.hpp"

#include <fstream>

#include "vlcsim/mathutil.hpp"

namespace vlcsim {

Json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path + ": read failed");
  return parse_json_text(text, path);
}

Json parse_json_text(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

JsonObject::JsonObject(const Json& j, std::string context) : j_(j), ctx_(std::move(context)) {
  if (!j_.is_object()) throw ConfigError(ctx_ + ": expected a JSON object");
}

bool JsonObject::has(const std::string& name) const { return j_.contains(name); }

const Json* JsonObject::optional(const std::string& name) {
  seen_.insert(name);
  auto it = j_.find(name);
  return it == j_.end() ? nullptr : &*it;
}

const Json& JsonObject::require(const std::string& name, const char* type_name) {
  const Json* v = optional(name);
  if (!v)
    throw ConfigError(ctx_ + ": missing required field '" + name + "' (" + type_name + ")");
  return *v;
}

void JsonObject::type_error(const std::string& name, const char* type_name) const {
  throw ConfigError(ctx_ + ": field '" + name + "' must be " + type_name);
}

double JsonObject::number(const std::string& name) {
  const Json& v = require(name, "a number");
  if (!v.is_number()) type_error(name, "a number");
  return v.get<double>();
}

double JsonObject::number_or(const std::string& name, double def) {
  const Json* v = optional(name);
  if (!v) return def;
  if (!v->is_number()) type_error(name, "a number");
  return v->get<double>();
}

int64_t JsonObject::integer(const std::string& name) {
  const Json& v = require(name, "an integer");
  if (!v.is_number_integer()) type_error(name, "an integer");
  return v.get<int64_t>();
}

int64_t JsonObject::integer_or(const std::string& name, int64_t def) {
  const Json* v = optional(name);
  if (!v) return def;
  if (!v->is_number_integer()) type_error(name, "an integer");
  return v->get<int64_t>();
}

uint64_t JsonObject::uinteger(const std::string& name) {
  const Json& v = require(name, "a non-negative integer");
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0))
    type_error(name, "a non-negative integer");
  return v.get<uint64_t>();
}

uint64_t JsonObject::uinteger_or(const std::string& name, uint64_t def) {
  const Json* v = optional(name);
  if (!v) return def;
  if (!v->is_number_integer() || v->get<int64_t>() < 0)
    type_error(name, "a non-negative integer");
  return v->get<uint64_t>();
}

bool JsonObject::boolean(const std::string& name) {
  const Json& v = require(name, "a boolean");
  if (!v.is_boolean()) type_error(name, "a boolean");
  return v.get<bool>();
}

bool JsonObject::boolean_or(const std::string& name, bool def) {
  const Json* v = optional(name);
  if (!v) return def;
  if (!v->is_boolean()) type_error(name, "a boolean");
  return v->get<bool>();
}

std::string JsonObject::text(const std::string& name) {
  const Json& v = require(name, "a string");
  if (!v.is_string()) type_error(name, "a string");
  return v.get<std::string>();
}

std::string JsonObject::text_or(const std::string& name, const std::string& def) {
  const Json* v = optional(name);
  if (!v) return def;
  if (!v->is_string()) type_error(name, "a string");
  return v->get<std::string>();
}

const Json& JsonObject::array(const std::string& name) {
  const Json& v = require(name, "an array");
  if (!v.is_array()) type_error(name, "an array");
  return v;
}

const Json* JsonObject::array_or_null(const std::string& name) {
  const Json* v = optional(name);
  if (v && !v->is_array()) type_error(name, "an array");
  return v;
}

const Json& JsonObject::object(const std::string& name) {
  const Json& v = require(name, "an object");
  if (!v.is_object()) type_error(name, "an object");
  return v;
}

const Json* JsonObject::object_or_null(const std::string& name) {
  const Json* v = optional(name);
  if (v && !v->is_object()) type_error(name, "an object");
  return v;
}

void JsonObject::finish() const {
  for (const auto& item : j_.items())
    if (!seen_.count(item.key()))
      throw ConfigError(ctx_ + ": unknown field '" + item.key() + "'");
}

}  // namespace vlcsim

namespace vlcsim::harness {

phy::OfdmConfig load_ofdm_config(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  phy::OfdmConfig cfg;
  cfg.n_fft = static_cast<unsigned>(o.uinteger_or("n_fft", cfg.n_fft));
  cfg.n_pilot = static_cast<unsigned>(o.uinteger_or("n_pilot", cfg.n_pilot));
  cfg.modulation_order =
      static_cast<unsigned>(o.uinteger_or("modulation_order", cfg.modulation_order));
  cfg.iq_rate_hz = o.number_or("iq_rate_hz", cfg.iq_rate_hz);
  cfg.cp_len = static_cast<unsigned>(o.uinteger_or("cp_len", cfg.cp_len));
  cfg.hermitian_mode = o.boolean_or("hermitian_mode", cfg.hermitian_mode);
  cfg.dc_bias_db = o.number_or("dc_bias_db", cfg.dc_bias_db);
  cfg.preamble_len = static_cast<unsigned>(o.uinteger_or("preamble_len", cfg.preamble_len));
  if (const Json* arr = o.array_or_null("pilot_pattern")) {
    for (size_t i = 0; i < arr->size(); ++i) {
      JsonObject po((*arr)[i], context + ".pilot_pattern[" + std::to_string(i) + "]");
      phy::PilotTone tone;
      tone.index = static_cast<unsigned>(po.uinteger("index"));
      const double ph = deg_to_rad(po.number_or("phase_deg", 0.0));
      tone.value = cplx(std::cos(ph), std::sin(ph));
      po.finish();
      cfg.pilot_pattern.push_back(tone);
    }
  }
  o.finish();
  phy::resolve_layout(cfg);  // surface invalid combinations at load time
  return cfg;
}

phy::OfdmConfig load_ofdm_config_file(const std::string& path) {
  return load_ofdm_config(parse_json_file(path), path);
}

namespace {

optics::LinkGeometry load_geometry_leg(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  optics::LinkGeometry geo;
  geo.distance_m = o.number("distance_m");
  geo.emit_angle_deg = o.number_or("emit_angle_deg", 0.0);
  geo.incidence_angle_deg = o.number_or("incidence_angle_deg", 0.0);
  o.finish();
  return geo;
}

}  // namespace

ChannelScenario load_channel_scenario(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  ChannelScenario sc;

  if (const Json* led = o.object_or_null("led")) {
    JsonObject lo(*led, context + ".led");
    sc.led.half_power_semi_angle_deg =
        lo.number_or("half_power_semi_angle_deg", sc.led.half_power_semi_angle_deg);
    sc.led.optical_power_w = lo.number_or("optical_power_w", sc.led.optical_power_w);
    lo.finish();
  }
  if (!(sc.led.optical_power_w > 0.0))
    throw ConfigError(context + ".led: field 'optical_power_w' must be positive");

  if (const Json* det = o.object_or_null("detector")) {
    JsonObject d(*det, context + ".detector");
    sc.detector.active_area_m2 = d.number_or("active_area_m2", sc.detector.active_area_m2);
    sc.detector.fov_semi_angle_deg =
        d.number_or("fov_semi_angle_deg", sc.detector.fov_semi_angle_deg);
    sc.detector.responsivity_a_per_w =
        d.number_or("responsivity_a_per_w", sc.detector.responsivity_a_per_w);
    sc.detector.optical_filter_gain =
        d.number_or("optical_filter_gain", sc.detector.optical_filter_gain);
    sc.detector.concentrator_gain =
        d.number_or("concentrator_gain", sc.detector.concentrator_gain);
    d.finish();
  }
  if (!(sc.detector.active_area_m2 > 0.0))
    throw ConfigError(context + ".detector: field 'active_area_m2' must be positive");
  if (!(sc.detector.fov_semi_angle_deg > 0.0) || sc.detector.fov_semi_angle_deg > 90.0)
    throw ConfigError(context + ".detector: field 'fov_semi_angle_deg' must lie in (0, 90]");
  if (!(sc.detector.responsivity_a_per_w > 0.0))
    throw ConfigError(context + ".detector: field 'responsivity_a_per_w' must be positive");
  if (!(sc.detector.optical_filter_gain > 0.0) || sc.detector.optical_filter_gain > 1.0)
    throw ConfigError(context + ".detector: field 'optical_filter_gain' must lie in (0, 1]");
  if (sc.detector.concentrator_gain < 1.0)
    throw ConfigError(context + ".detector: field 'concentrator_gain' must be at least 1");

  JsonObject g(o.object("geometry"), context + ".geometry");
  const std::string kind = g.text("kind");
  if (kind == "los") {
    sc.kind = ChannelScenario::Kind::Los;
    sc.los.distance_m = g.number("distance_m");
    sc.los.emit_angle_deg = g.number_or("emit_angle_deg", 0.0);
    sc.los.incidence_angle_deg = g.number_or("incidence_angle_deg", 0.0);
  } else if (kind == "dlos") {
    sc.kind = ChannelScenario::Kind::Dlos;
    sc.wall_reflectance = g.number("wall_reflectance");
    sc.wall_patch_area_m2 = g.number("wall_patch_area_m2");
    sc.leg1 = load_geometry_leg(g.object("leg1"), context + ".geometry.leg1");
    sc.leg2 = load_geometry_leg(g.object("leg2"), context + ".geometry.leg2");
    if (const Json* partial = g.object_or_null("partial_los")) {
      sc.has_partial_los = true;
      sc.partial_los = load_geometry_leg(*partial, context + ".geometry.partial_los");
    }
  } else {
    throw ConfigError(context + ".geometry: field 'kind' must be \"los\" or \"dlos\"");
  }
  g.finish();

  JsonObject n(o.object("noise"), context + ".noise");
  const std::string mode = n.text("mode");
  if (mode == "fixed_snr_db") {
    sc.noise.mode = optics::NoiseMode::FixedElectricalSnrDb;
  } else if (mode == "noise_power_w") {
    sc.noise.mode = optics::NoiseMode::NoisePowerW;
  } else {
    throw ConfigError(context +
                      ".noise: field 'mode' must be \"fixed_snr_db\" or \"noise_power_w\"");
  }
  sc.noise.value = n.number("value");
  if (sc.noise.mode == optics::NoiseMode::NoisePowerW && sc.noise.value < 0.0)
    throw ConfigError(context + ".noise: field 'value' must be non-negative in noise_power_w mode");
  if (!std::isfinite(sc.noise.value))
    throw ConfigError(context + ".noise: field 'value' must be finite");
  o.finish();
  return sc;
}

double scenario_link_gain(const ChannelScenario& sc) {
  if (sc.kind == ChannelScenario::Kind::Los) return optics::los_gain(sc.led, sc.detector, sc.los);
  double h = optics::dlos_gain(sc.led, sc.detector, sc.wall_reflectance, sc.leg1, sc.leg2,
                               sc.wall_patch_area_m2);
  if (sc.has_partial_los) h += optics::los_gain(sc.led, sc.detector, sc.partial_los);
  return h;
}

SweepDocument load_sweep_document(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  SweepDocument doc;
  doc.modem = load_ofdm_config(o.object("modem"), context + ".modem");

  // The channel sections live at the top level next to "modem" and "sweep".
  Json channel = j;
  channel.erase("modem");
  channel.erase("sweep");
  o.object_or_null("led");
  o.object_or_null("detector");
  o.object_or_null("geometry");
  o.object_or_null("noise");
  doc.scenario = load_channel_scenario(channel, context);

  JsonObject s(o.object("sweep"), context + ".sweep");
  const std::string axis = s.text("axis");
  if (axis == "snr_db") {
    doc.sweep.axis = SweepAxis::SnrDb;
  } else if (axis == "distance_m") {
    doc.sweep.axis = SweepAxis::DistanceM;
  } else if (axis == "incidence_angle_deg") {
    doc.sweep.axis = SweepAxis::IncidenceAngleDeg;
  } else {
    throw ConfigError(context +
                      ".sweep: field 'axis' must be \"snr_db\", \"distance_m\" or "
                      "\"incidence_angle_deg\"");
  }
  for (const Json& v : s.array("values")) {
    if (!v.is_number()) throw ConfigError(context + ".sweep: field 'values' must hold numbers");
    doc.sweep.values.push_back(v.get<double>());
  }
  if (doc.sweep.values.empty())
    throw ConfigError(context + ".sweep: field 'values' must be non-empty");
  for (size_t i = 1; i < doc.sweep.values.size(); ++i) {
    const bool up = doc.sweep.values[1] > doc.sweep.values[0];
    if ((up && doc.sweep.values[i] <= doc.sweep.values[i - 1]) ||
        (!up && doc.sweep.values[i] >= doc.sweep.values[i - 1]))
      throw ConfigError(context + ".sweep: field 'values' must be strictly monotone");
  }
  doc.sweep.policy.min_bits = s.uinteger_or("min_bits", doc.sweep.policy.min_bits);
  doc.sweep.policy.min_errors = s.uinteger_or("min_errors", doc.sweep.policy.min_errors);
  doc.sweep.policy.max_bits = s.uinteger_or("max_bits", doc.sweep.policy.max_bits);
  doc.sweep.policy.frame_payload_bits =
      s.uinteger_or("frame_payload_bits", doc.sweep.policy.frame_payload_bits);
  if (doc.sweep.policy.min_bits < 100000)
    throw ConfigError(context + ".sweep: field 'min_bits' must be at least 100000");
  if (doc.sweep.policy.max_bits < doc.sweep.policy.min_bits)
    throw ConfigError(context + ".sweep: field 'max_bits' must be at least min_bits");
  if (doc.sweep.policy.frame_payload_bits == 0 ||
      doc.sweep.policy.frame_payload_bits > phy::OfdmModem::kMaxPayloadBits)
    throw ConfigError(context + ".sweep: field 'frame_payload_bits' out of range");
  s.finish();
  o.finish();
  return doc;
}

SweepDocument load_sweep_document_file(const std::string& path) {
  return load_sweep_document(parse_json_file(path), path);
}

}  // namespace vlcsim::harness
