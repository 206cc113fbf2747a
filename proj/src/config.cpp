#include "dropletmc/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "dropletmc/errors.hpp"

namespace dropletmc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw MalformedConfig(line, std::string(key) + ": expected a number, got '" +
                                    std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw MalformedConfig(line, std::string(key) + ": expected an integer, got '" +
                                    std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw MalformedConfig(line, std::string(key) + ": expected true or false");
}

struct Entry {
  std::string value;
  int line;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig load_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> fields;
  std::vector<std::pair<DropletClass, int>> classes;
  bool classes_in_um = false;
  bool classes_in_m = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw MalformedConfig(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw MalformedConfig(line_no, "empty key");
    if (value.empty()) throw MalformedConfig(line_no, std::string(key) + ": empty value");

    if (key == "droplet_class" || key == "droplet_class_m") {
      const auto comma = value.find(',');
      if (comma == std::string_view::npos) {
        throw MalformedConfig(line_no, std::string(key) + ": expected '<diameter>, <count>'");
      }
      double d = parse_double(value.substr(0, comma), line_no, key);
      const auto count = parse_int<std::uint64_t>(value.substr(comma + 1), line_no, key);
      if (key == "droplet_class") {
        classes_in_um = true;
        d /= 1e6;
      } else {
        classes_in_m = true;
      }
      if (!(d > 0.0)) throw ValidationError(std::string(key), "diameter must be > 0");
      classes.emplace_back(DropletClass(d, count), line_no);
      continue;
    }

    auto [it, inserted] = fields.emplace(std::string(key), Entry{std::string(value), line_no});
    if (!inserted) {
      throw MalformedConfig(line_no, "duplicate key '" + std::string(key) + "' (first on line " +
                                         std::to_string(it->second.line) + ")");
    }
  }
  if (classes_in_um && classes_in_m) {
    throw ValidationError("droplet_class", "mixing droplet_class and droplet_class_m entries");
  }

  ScenarioConfig cfg = default_scenario(Sex::average);
  std::set<std::string, std::less<>> used;

  auto take = [&](std::string_view key) -> std::optional<Entry> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    used.emplace(key);
    return it->second;
  };
  auto take_double = [&](std::string_view key, double& out) {
    if (auto e = take(key)) out = parse_double(e->value, e->line, key);
  };
  auto exclusive = [&](std::string_view a, std::string_view b) {
    if (fields.contains(a) && fields.contains(b)) {
      throw ValidationError(std::string(a), "conflicts with " + std::string(b));
    }
  };

  auto& env = cfg.environment;
  take_double("environment.rho_a", env.rho_a);
  take_double("environment.rho_f", env.rho_f);
  take_double("environment.rho_d", env.rho_d);
  take_double("environment.mu_a", env.mu_a);
  take_double("environment.g", env.g);

  auto& tx = cfg.transmitter;
  take_double("transmitter.x", tx.position.x);
  take_double("transmitter.y", tx.position.y);
  take_double("transmitter.z", tx.position.z);
  take_double("transmitter.I0", tx.I0);
  take_double("transmitter.F0", tx.F0);
  take_double("transmitter.v_c0", tx.v_c0);
  take_double("transmitter.alpha_e", tx.alpha_e);
  take_double("transmitter.eta", tx.eta);
  exclusive("transmitter.theta0_deg", "transmitter.theta0_rad");
  if (auto e = take("transmitter.theta0_deg")) {
    tx.theta0 = parse_double(e->value, e->line, "transmitter.theta0_deg") * std::numbers::pi / 180.0;
  }
  take_double("transmitter.theta0_rad", tx.theta0);

  Vec3 rx_pos = cfg.receiver.position();
  take_double("receiver.x_R", rx_pos.x);
  take_double("receiver.y_R", rx_pos.y);
  take_double("receiver.z_R", rx_pos.z);
  Sex sex = Sex::average;
  if (auto e = take("receiver.sex")) sex = parse_sex(e->value);
  auto face = face_dimensions(sex);
  exclusive("receiver.beta_bb_cm", "receiver.beta_bb_m");
  exclusive("receiver.beta_ss_cm", "receiver.beta_ss_m");
  if (auto e = take("receiver.beta_bb_cm")) {
    face.beta_bb = parse_double(e->value, e->line, "receiver.beta_bb_cm") / 100.0;
  }
  if (auto e = take("receiver.beta_ss_cm")) {
    face.beta_ss = parse_double(e->value, e->line, "receiver.beta_ss_cm") / 100.0;
  }
  take_double("receiver.beta_bb_m", face.beta_bb);
  take_double("receiver.beta_ss_m", face.beta_ss);
  cfg.receiver = ReceiverGeometry(rx_pos, face.beta_bb, face.beta_ss);

  auto& ctl = cfg.controls;
  take_double("controls.dt", ctl.dt);
  take_double("controls.t_s", ctl.t_s);
  if (auto e = take("controls.gamma")) ctl.gamma = parse_int<std::int64_t>(e->value, e->line, "controls.gamma");
  if (auto e = take("controls.seed")) ctl.seed = parse_int<std::uint64_t>(e->value, e->line, "controls.seed");
  if (auto e = take("controls.settling_law")) ctl.settling_law = parse_settling_law(e->value);
  if (auto e = take("controls.probability_form")) {
    ctl.probability_form = parse_probability_form(e->value);
  }
  if (auto e = take("controls.stochastic")) ctl.stochastic = parse_bool(e->value, e->line, "controls.stochastic");

  for (const auto& [key, entry] : fields) {
    if (!used.contains(key)) throw MalformedConfig(entry.line, "unknown key '" + key + "'");
  }

  if (!classes.empty()) {
    cfg.classes.clear();
    for (const auto& [c, line] : classes) cfg.classes.push_back(c);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string to_config_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  auto kv = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](std::string_view key, double v) { kv(key, format_double(v)); };

  const auto& env = cfg.environment;
  num("environment.rho_a", env.rho_a);
  num("environment.rho_f", env.rho_f);
  num("environment.rho_d", env.rho_d);
  num("environment.mu_a", env.mu_a);
  num("environment.g", env.g);

  const auto& tx = cfg.transmitter;
  num("transmitter.x", tx.position.x);
  num("transmitter.y", tx.position.y);
  num("transmitter.z", tx.position.z);
  num("transmitter.I0", tx.I0);
  num("transmitter.F0", tx.F0);
  out << "# theta0 = " << format_double(tx.theta0 * 180.0 / std::numbers::pi) << " deg\n";
  num("transmitter.theta0_rad", tx.theta0);
  num("transmitter.v_c0", tx.v_c0);
  num("transmitter.alpha_e", tx.alpha_e);
  num("transmitter.eta", tx.eta);

  const auto& rx = cfg.receiver;
  num("receiver.x_R", rx.position().x);
  num("receiver.y_R", rx.position().y);
  num("receiver.z_R", rx.position().z);
  num("receiver.beta_bb_m", rx.beta_bb());
  num("receiver.beta_ss_m", rx.beta_ss());

  const auto& ctl = cfg.controls;
  num("controls.dt", ctl.dt);
  num("controls.t_s", ctl.t_s);
  kv("controls.gamma", std::to_string(ctl.gamma));
  kv("controls.seed", std::to_string(ctl.seed));
  kv("controls.settling_law", std::string(to_string(ctl.settling_law)));
  kv("controls.probability_form", std::string(to_string(ctl.probability_form)));
  kv("controls.stochastic", ctl.stochastic ? "true" : "false");

  for (const auto& c : cfg.classes) {
    kv("droplet_class_m", format_double(c.diameter()) + ", " + std::to_string(c.initial_count()));
  }
  return out.str();
}

}  // namespace dropletmc
