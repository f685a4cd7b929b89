#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cli {

void RunConfig::set(const std::string& key, const std::string& value) {
  for (auto& kv : entries_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunConfig::set_double(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  set(key, buf);
}

void RunConfig::set_int(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

bool RunConfig::has(const std::string& key) const {
  for (const auto& kv : entries_)
    if (kv.first == key) return true;
  return false;
}

const std::string& RunConfig::get(const std::string& key) const {
  for (const auto& kv : entries_)
    if (kv.first == key) return kv.second;
  throw std::out_of_range("config key '" + key + "' not set");
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& kv : entries_) {
    out += kv.first;
    out += '=';
    out += kv.second;
    out += '\n';
  }
  return out;
}

std::string RunConfig::hash() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    if (line[a] == '#') continue;
    size_t eq = line.find('=', a);
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
    std::string key = line.substr(a, eq - a);
    size_t ke = key.find_last_not_of(" \t");
    key = key.substr(0, ke + 1);
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    std::string value = line.substr(eq + 1);
    size_t va = value.find_first_not_of(" \t");
    value = va == std::string::npos ? "" : value.substr(va);
    size_t ve = value.find_last_not_of(" \t");
    if (ve != std::string::npos) value = value.substr(0, ve + 1);
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config '" + path + "'");
  out << serialize();
}

std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args;
  // argv[0] plus (possibly) a subcommand stay in front; file-derived flags
  // are inserted right after the subcommand so later user flags override
  // them under CLI11's take-last policy.
  std::vector<std::string> file_flags;
  std::vector<std::string> rest;
  int i = 1;
  if (i < argc && argv[i][0] != '-') {
    args.push_back(argv[0]);
    args.push_back(argv[i]);
    ++i;
  } else {
    args.push_back(argv[0]);
  }
  for (; i < argc; ++i) {
    std::string a = argv[i];
    std::string path;
    if (a == "--config") {
      if (i + 1 >= argc) throw std::runtime_error("--config needs a file path");
      path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else {
      rest.push_back(a);
      continue;
    }
    RunConfig cfg = RunConfig::load(path);
    for (const auto& kv : cfg.entries()) {
      file_flags.push_back("--" + kv.first);
      if (!kv.second.empty()) file_flags.push_back(kv.second);
    }
  }
  // A key given on the command line wins: drop the file's copy entirely
  // (options reject duplicates).
  auto user_has = [&rest](const std::string& key) {
    for (const auto& a : rest) {
      if (a.rfind("--", 0) != 0) continue;
      std::string name = a.substr(2);
      size_t eq = name.find('=');
      if (eq != std::string::npos) name = name.substr(0, eq);
      if (name == key) return true;
    }
    return false;
  };
  for (size_t j = 0; j < file_flags.size();) {
    const std::string& f = file_flags[j];
    size_t width = 1;
    if (j + 1 < file_flags.size() && file_flags[j + 1].rfind("--", 0) != 0)
      width = 2;
    if (user_has(f.substr(2)))
      file_flags.erase(file_flags.begin() + j, file_flags.begin() + j + width);
    else
      j += width;
  }
  args.insert(args.end(), file_flags.begin(), file_flags.end());
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

}  // namespace cli
