#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace qla {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Times in microseconds except memory_lifetime_s.
struct TechnologyParams {
  double single_gate_us = 1.0;
  double double_gate_us = 10.0;
  double measure_us = 100.0;
  double move_per_cell_us = 0.01;
  double split_us = 10.0;
  double cooling_us = 1.0;
  double memory_lifetime_s = 10.0;
  double p_single = 1e-8;
  double p_double = 1e-7;
  double p_measure = 1e-8;
  double p_move_per_cell = 1e-6;
  double cell_pitch_um = 20.0;

  bool operator==(const TechnologyParams&) const = default;
};

enum class ProfileName { current, expected, custom };

inline std::string_view to_string(ProfileName n) {
  switch (n) {
    case ProfileName::current: return "current";
    case ProfileName::expected: return "expected";
    case ProfileName::custom: return "custom";
  }
  return "custom";
}

struct ParameterProfile {
  ProfileName name = ProfileName::expected;
  TechnologyParams params;
};

inline void validate(const TechnologyParams& t) {
  const std::array<std::pair<const char*, double>, 7> durations{{
      {"single_gate_us", t.single_gate_us},
      {"double_gate_us", t.double_gate_us},
      {"measure_us", t.measure_us},
      {"move_per_cell_us", t.move_per_cell_us},
      {"split_us", t.split_us},
      {"cooling_us", t.cooling_us},
      {"memory_lifetime_s", t.memory_lifetime_s},
  }};
  for (auto [key, v] : durations) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("non-positive duration: ") + key);
  }
  const std::array<std::pair<const char*, double>, 4> probs{{
      {"p_single", t.p_single},
      {"p_double", t.p_double},
      {"p_measure", t.p_measure},
      {"p_move_per_cell", t.p_move_per_cell},
  }};
  for (auto [key, v] : probs) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(std::string("probability out of range: ") + key);
  }
  if (!(t.cell_pitch_um > 0.0) || !std::isfinite(t.cell_pitch_um))
    throw ValidationError("non-positive length: cell_pitch_um");
  if (t.memory_lifetime_s * 1e6 < 1e4 * t.double_gate_us)
    throw ValidationError("memory_lifetime_s below 1e4 x double_gate_us");
}

inline ParameterProfile expected_profile() {
  return {ProfileName::expected, TechnologyParams{}};
}

inline ParameterProfile current_profile() {
  TechnologyParams t;
  t.p_single = 1e-4;
  t.p_double = 0.03;
  t.p_measure = 0.01;
  t.p_move_per_cell = 0.005 * t.cell_pitch_um;  // given per um
  return {ProfileName::current, t};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ValidationError("malformed number for key: " + std::string(key));
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct KeySpec {
  const char* section;
  const char* key;
  double TechnologyParams::*field;
};

inline const std::array<KeySpec, 12>& key_table() {
  static const std::array<KeySpec, 12> table{{
      {"times", "single_gate_us", &TechnologyParams::single_gate_us},
      {"times", "double_gate_us", &TechnologyParams::double_gate_us},
      {"times", "measure_us", &TechnologyParams::measure_us},
      {"times", "move_per_cell_us", &TechnologyParams::move_per_cell_us},
      {"times", "split_us", &TechnologyParams::split_us},
      {"times", "cooling_us", &TechnologyParams::cooling_us},
      {"times", "memory_lifetime_s", &TechnologyParams::memory_lifetime_s},
      {"failures", "p_single", &TechnologyParams::p_single},
      {"failures", "p_double", &TechnologyParams::p_double},
      {"failures", "p_measure", &TechnologyParams::p_measure},
      {"failures", "p_move_per_cell", &TechnologyParams::p_move_per_cell},
      {"geometry", "cell_pitch_um", &TechnologyParams::cell_pitch_um},
  }};
  return table;
}

}  // namespace detail

// INI-style text: [profile] name, [times], [failures], [geometry].
// p_move_per_um may replace p_move_per_cell; it is scaled by cell_pitch_um.
inline ParameterProfile parse_profile(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::string section;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
      line = line.substr(0, c);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("malformed section header at line " + std::to_string(lineno));
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("expected key = value at line " + std::to_string(lineno));
    std::string key = section + "." + std::string(detail::trim(line.substr(0, eq)));
    if (kv.count(key)) throw ValidationError("duplicate key: " + key);
    kv[key] = std::string(detail::trim(line.substr(eq + 1)));
  }

  ParameterProfile out;
  out.name = ProfileName::custom;
  if (auto it = kv.find("profile.name"); it != kv.end()) {
    if (it->second == "current") out.name = ProfileName::current;
    else if (it->second == "expected") out.name = ProfileName::expected;
    else if (it->second == "custom") out.name = ProfileName::custom;
    else throw ValidationError("unknown profile name: " + it->second);
    kv.erase(it);
  }

  TechnologyParams& t = out.params;
  bool have_cell = false;
  for (const auto& spec : detail::key_table()) {
    std::string key = std::string(spec.section) + "." + spec.key;
    auto it = kv.find(key);
    const bool is_move = std::string_view(spec.key) == "p_move_per_cell";
    if (it == kv.end() && is_move) continue;
    if (it == kv.end()) throw ValidationError("missing key: " + key);
    t.*spec.field = detail::parse_double(key, it->second);
    if (is_move) have_cell = true;
    kv.erase(it);
  }
  auto um = kv.find("failures.p_move_per_um");
  if (um != kv.end()) {
    if (have_cell) throw ValidationError("both p_move_per_cell and p_move_per_um given");
    const double v = detail::parse_double("failures.p_move_per_um", um->second);
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("probability out of range: p_move_per_um");
    t.p_move_per_cell = v * t.cell_pitch_um;
    kv.erase(um);
  } else if (!have_cell) {
    throw ValidationError("missing key: failures.p_move_per_cell");
  }
  if (!kv.empty()) throw ValidationError("unknown key: " + kv.begin()->first);
  validate(t);
  return out;
}

inline std::string serialize_profile(const ParameterProfile& p) {
  std::ostringstream os;
  os << "[profile]\nname = " << to_string(p.name) << "\n";
  std::string section;
  for (const auto& spec : detail::key_table()) {
    if (section != spec.section) {
      section = spec.section;
      os << "\n[" << section << "]\n";
    }
    os << spec.key << " = " << detail::format_double(p.params.*spec.field) << "\n";
  }
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Built-in name, or a path to a profile file.
inline ParameterProfile load_profile(std::string_view source) {
  if (source == "expected") return expected_profile();
  if (source == "current") return current_profile();
  return parse_profile(read_text_file(std::string(source)));
}

inline double ballistic_latency_us(double distance_cells, int turns, const TechnologyParams& t) {
  return t.split_us + t.move_per_cell_us * distance_cells + t.split_us * turns;
}

inline double channel_bandwidth_qps(const TechnologyParams& t) {
  return 1e6 / t.move_per_cell_us;
}

// Arithmetic mean of the four component failure columns.
inline double mean_component_failure(const TechnologyParams& t) {
  return (t.p_single + t.p_double + t.p_measure + t.p_move_per_cell) / 4.0;
}

}  // namespace qla
