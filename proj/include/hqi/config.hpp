#ifndef HQI_CONFIG_HPP
#define HQI_CONFIG_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` text. Blank lines and `#` comments are ignored, values
/// may be double-quoted. Later assignments override earlier ones.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// Applies a `key=value` override from the command line.
  void set_assignment(const std::string& assignment);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Keys in first-assignment order.
  const std::vector<std::string>& keys() const { return order_; }
  /// Keys never read by a getter.
  std::vector<std::string> unused() const;

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
  mutable std::set<std::string> used_;
};

}  // namespace hqi

#endif  // HQI_CONFIG_HPP
