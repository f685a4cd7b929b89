#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cli {

// Flat key=value run configuration.  Keys keep insertion order so that a
// serialize/parse round trip is byte identical and the hash is stable.
class RunConfig {
 public:
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, long long value);
  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  // One "key=value" line per entry, in insertion order.
  std::string serialize() const;
  // FNV-1a over the serialized form, hex without prefix.
  std::string hash() const;

  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Expands --config files into argv before CLI11 sees it: each key=value in
// the file becomes --key value placed *before* the user's own flags, so the
// command line wins on conflicts.  --config itself is consumed here.
std::vector<std::string> expand_config_args(int argc, char** argv);

}  // namespace cli
