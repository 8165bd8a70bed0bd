#include "kantorovich/config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"
#include "kantorovich/signal.hpp"

namespace kantorovich {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<double> parse_list(const std::string& where, const std::string& value) {
  std::string body = trim(value);
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::vector<double> out;
  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) config_error(where + ": empty list entry");
    out.push_back(parse_real(item));
  }
  if (out.empty()) config_error(where + ": empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"kernel", {"name", "truncation_radius", "tail_budget"}},
      {"nonlin", {"name"}},
      {"scheme", {"name", "window", "probe_window"}},
      {"signal", {"name"}},
      {"experiment",
       {"p", "w", "alpha", "domain", "grid", "lambda0", "phi", "eta", "c_lambda", "shift_count", "seed",
        "reconstruct_w", "certify_beta", "certify_nu", "certify_w"}},
      {"output", {"csv", "json"}},
  };
  return keys;
}

void apply(ExperimentConfig& c, const std::string& section, const std::string& key, const std::string& value,
           const std::string& where) {
  auto real = [&] { return parse_real(value); };
  auto integer = [&] {
    const double v = parse_real(value);
    if (v != std::floor(v)) config_error(where + ": expected an integer");
    return v;
  };
  if (section == "kernel") {
    if (key == "name") c.kernel = value;
    else if (key == "truncation_radius") c.truncation_radius = real();
    else if (key == "tail_budget") c.tail_budget = real();
  } else if (section == "nonlin") {
    c.nonlin = value;
  } else if (section == "scheme") {
    if (key == "name") c.scheme = value;
    else if (key == "window") c.window = static_cast<long>(integer());
    else if (key == "probe_window") c.probe_window = real();
  } else if (section == "signal") {
    c.signal = value;
  } else if (section == "experiment") {
    if (key == "p") c.p = real();
    else if (key == "w") c.w = parse_list(where, value);
    else if (key == "alpha") c.alpha = real();
    else if (key == "domain") {
      const auto d = parse_list(where, value);
      if (d.size() != 2) config_error(where + ": domain needs two numbers");
      c.domain = Interval{d[0], d[1]};
    } else if (key == "grid") {
      const double g = integer();
      if (g < 0) config_error(where + ": grid must be positive");
      c.grid = static_cast<std::size_t>(g);
    } else if (key == "lambda0") c.lambda0 = real();
    else if (key == "phi") c.phi = value;
    else if (key == "eta") c.eta = value;
    else if (key == "c_lambda") c.c_lambda = value;
    else if (key == "shift_count") c.shift_count = static_cast<int>(integer());
    else if (key == "seed") {
      const double s = integer();
      if (s < 0) config_error(where + ": seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "reconstruct_w") c.reconstruct_w = real();
    else if (key == "certify_beta") c.certify_beta = parse_list(where, value);
    else if (key == "certify_nu") c.certify_nu = parse_list(where, value);
    else if (key == "certify_w") c.certify_w = parse_list(where, value);
  } else if (section == "output") {
    if (key == "csv") c.csv = value;
    else c.json = value;
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (w.size() < 4) config_error("experiment.w needs at least 4 values");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0)) config_error("experiment.w entries must be positive");
    if (i > 0 && !(w[i] > w[i - 1])) config_error("experiment.w must be strictly increasing");
  }
  if (grid < 257) config_error("experiment.grid must be >= 257");
  if (!(p >= 1.0)) config_error("experiment.p must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) config_error("experiment.alpha must be in (0, 1)");
  if (!(lambda0 > 0.0)) config_error("experiment.lambda0 must be positive");
  if (!(tail_budget > 0.0)) config_error("kernel.tail_budget must be positive");
  if (truncation_radius && !(*truncation_radius > 0.0)) config_error("kernel.truncation_radius must be positive");
  if (window && *window < 1) config_error("scheme.window must be >= 1");
  if (!(probe_window > 0.0)) config_error("scheme.probe_window must be positive");
  if (domain && !(domain->hi > domain->lo)) config_error("experiment.domain must be increasing");
  if (shift_count != 1 && (shift_count < 9 || shift_count % 2 == 0))
    config_error("experiment.shift_count must be odd and >= 9");
  if (reconstruct_w && !(*reconstruct_w > 0.0)) config_error("experiment.reconstruct_w must be positive");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "config line " + std::to_string(line_no);
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) config_error(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(where + ": expected key = value");
    if (section.empty()) config_error(where + ": key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().at(section).count(key)) config_error(where + ": unknown key '" + section + "." + key + "'");
    if (value.empty()) config_error(where + ": empty value for '" + key + "'");
    if (!seen.insert(section + "." + key).second) config_error(where + ": duplicate key '" + section + "." + key + "'");
    apply(c, section, key, value, where);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config_text(buffer.str(), dir.empty() ? "." : dir.string());
}

std::string canonical_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
  line("kernel.name", c.kernel);
  line("kernel.truncation_radius", c.truncation_radius ? format_real(*c.truncation_radius) : "default");
  line("kernel.tail_budget", format_real(c.tail_budget));
  line("nonlin.name", c.nonlin);
  line("scheme.name", c.scheme);
  line("scheme.window", c.window ? std::to_string(*c.window) : "auto");
  line("scheme.probe_window", format_real(c.probe_window));
  line("signal.name", c.signal);
  line("experiment.p", format_real(c.p));
  line("experiment.w", join(c.w));
  line("experiment.alpha", format_real(c.alpha));
  line("experiment.domain", c.domain ? format_real(c.domain->lo) + "," + format_real(c.domain->hi) : "auto");
  line("experiment.grid", std::to_string(c.grid));
  line("experiment.lambda0", format_real(c.lambda0));
  line("experiment.phi", c.phi);
  line("experiment.eta", c.eta);
  line("experiment.c_lambda", c.c_lambda);
  line("experiment.shift_count", std::to_string(c.shift_count));
  line("experiment.seed", std::to_string(c.seed));
  line("experiment.reconstruct_w", c.reconstruct_w ? format_real(*c.reconstruct_w) : "auto");
  line("experiment.certify_beta", join(c.certify_beta));
  line("experiment.certify_nu", join(c.certify_nu));
  line("experiment.certify_w", join(c.certify_w));
  line("output.csv", c.csv.empty() ? "default" : c.csv);
  line("output.json", c.json.empty() ? "default" : c.json);
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
  return out;
}

}  // namespace kantorovich
