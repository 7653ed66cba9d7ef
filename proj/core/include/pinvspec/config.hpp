#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinvspec {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value configuration: one pair per line, '#' starts a comment,
// arrays comma-separated. Serializes back to sorted key=value lines so runs
// can be reproduced from their echoed configuration.
class Config {
 public:
  Config() = default;

  static Config from_string(const std::string& text);
  static Config from_file(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  void erase(const std::string& key) { kv_.erase(key); }
  void set_double(const std::string& key, double value);
  void set_u64(const std::string& key, std::uint64_t value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  std::string serialize() const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace pinvspec
