#include "bicomb/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bicomb {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, int line) {
  std::size_t used = 0;
  double x = std::stod(v, &used);
  if (used != v.size())
    throw std::invalid_argument("config line " + std::to_string(line) +
                                ": bad number '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& v, int line) {
  std::size_t used = 0;
  unsigned long long x = std::stoull(v, &used);
  if (used != v.size())
    throw std::invalid_argument("config line " + std::to_string(line) +
                                ": bad integer '" + v + "'");
  return x;
}

bool to_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config line " + std::to_string(line) +
                              ": bad boolean '" + v + "'");
}

void apply_check_key(CheckSpec& c, const std::string& key,
                     const std::string& val, int line) {
  if (key == "check") c.check = val;
  else if (key == "space") c.space = val;
  else if (key == "n") c.n = to_u64(val, line);
  else if (key == "seed") { c.seed = to_u64(val, line); c.seed_set = true; }
  else if (key == "tol") c.tol = to_double(val, line);
  else if (key == "scale") c.scale = to_double(val, line);
  else if (key == "keep_values") c.keep_values = to_bool(val, line);
  else if (key == "modulus") c.modulus = val;
  else if (key == "length") c.length = val;
  else if (key == "action") c.action = val;
  else if (key == "k") c.k = static_cast<int>(to_u64(val, line));
  else if (key == "delta") c.delta = to_double(val, line);
  else if (key == "beta") c.beta = to_double(val, line);
  else if (key == "L") c.L = to_double(val, line);
  else if (key == "r_prime") c.r_prime = to_double(val, line);
  else if (key == "r_double_prime") c.r_double_prime = to_double(val, line);
  else if (key == "R") c.R = to_double(val, line);
  else if (key == "grid") c.grid = static_cast<int>(to_u64(val, line));
  else if (key == "deltas") c.deltas = val;
  else
    throw std::invalid_argument("config line " + std::to_string(line) +
                                ": unknown check key '" + key + "'");
}

}  // namespace

SuiteConfig parse_config(const std::string& text) {
  SuiteConfig cfg;
  cfg.raw = text;
  std::istringstream in(text);
  std::string raw_line;
  std::string section;
  int line = 0;
  bool in_check = false;
  while (std::getline(in, raw_line)) {
    ++line;
    std::string s = raw_line;
    std::size_t cut = s.find_first_of("#;");
    if (cut != std::string::npos) s = s.substr(0, cut);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section == "check") {
        cfg.checks.emplace_back();
        in_check = true;
      } else if (section == "suite") {
        in_check = false;
      } else {
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": unknown section [" + section + "]");
      }
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line) +
                                  ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(line) +
                                  ": key outside any section");
    if (in_check) {
      apply_check_key(cfg.checks.back(), key, val, line);
    } else {
      if (key == "out") cfg.out = val;
      else if (key == "threads") cfg.threads = static_cast<int>(to_u64(val, line));
      else if (key == "seed") cfg.seed = to_u64(val, line);
      else
        throw std::invalid_argument("config line " + std::to_string(line) +
                                    ": unknown suite key '" + key + "'");
    }
  }
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    CheckSpec& c = cfg.checks[i];
    if (c.check.empty())
      throw std::invalid_argument("check " + std::to_string(i + 1) +
                                  ": missing 'check' key");
    if (!c.seed_set) c.seed = cfg.seed;
  }
  return cfg;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace bicomb
