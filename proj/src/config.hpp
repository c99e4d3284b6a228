#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "types.hpp"

namespace qlink {

// Flat INI-style configuration: [section] blocks of key = value lines.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  bool has(const std::string& key) const;  // key is "section.name"
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  std::vector<double> list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::string directory() const { return dir_; }  // for resolving relative paths

  // Rejects keys outside the documented schema, naming the offending path.
  void validate() const;

 private:
  std::map<std::string, std::string> entries_;
  std::string dir_;
};

std::string format_double(double x);
std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace qlink
