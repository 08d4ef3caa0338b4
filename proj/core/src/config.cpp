#include "pcity/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pcity {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return parse_number(key, trim(text.substr(0, slash))) / parse_number(key, trim(text.substr(slash + 1)));
  }
  double value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError("config key '" + key + "': not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

CityParams parse_config(std::istream& in) {
  static const char* const kKeys[] = {"n", "T", "g", "Y", "a", "alpha", "beta", "gamma", "K", "Lambda", "mu"};
  std::map<std::string, double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) eq = line.find(':');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ValidationError("config: unknown key '" + key + "'");
    if (values.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
    values[key] = parse_number(key, value);
  }

  auto get = [&](const char* key) {
    auto it = values.find(key);
    if (it == values.end()) throw ValidationError(std::string("config: missing required key '") + key + "'");
    return it->second;
  };

  CityParams p;
  const double n = get("n");
  if (n != static_cast<int>(n)) throw ValidationError("config key 'n': must be an integer");
  p.n = static_cast<int>(n);
  p.T = get("T");
  p.g = get("g");
  p.Y = get("Y");
  p.a = get("a");
  p.alpha = get("alpha");
  p.beta = get("beta");
  p.gamma = get("gamma");
  p.K = get("K");
  if (values.count("Lambda")) p.Lambda = values["Lambda"];
  p.mu = values.count("mu") ? values["mu"] : 1.0;
  p.validate();
  return p;
}

CityParams parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

CityParams load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  return parse_config(in);
}

std::string format_config(const CityParams& p) {
  std::ostringstream out;
  auto put = [&](const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << key << " = " << buf << '\n';
  };
  out << "n = " << p.n << '\n';
  put("T", p.T);
  put("g", p.g);
  put("Y", p.Y);
  put("a", p.a);
  put("alpha", p.alpha);
  put("beta", p.beta);
  put("gamma", p.gamma);
  put("K", p.K);
  if (p.Lambda) put("Lambda", *p.Lambda);
  put("mu", p.mu);
  return out.str();
}

}  // namespace pcity
