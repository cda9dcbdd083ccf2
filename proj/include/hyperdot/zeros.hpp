// Process-wide table of Bessel and Neumann zeros with optional persistence.
//
// Zeros are computed sequentially (each one bracketed from its predecessor),
// so a key always holds the contiguous run j_1, ..., j_N.  Readers may run
// concurrently; misses are computed outside the lock and merged afterwards.
#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

namespace hyperdot {

enum class ZeroKind { Bessel, Neumann };

class ZeroTable {
 public:
  static ZeroTable& global();

  // First n zeros for the key, computing any missing ones.
  std::vector<double> first(ZeroKind kind, const std::string& key, int n);
  // All zeros strictly below zmax.
  std::vector<double> below(ZeroKind kind, const std::string& key, double zmax);

  // Returns false (and leaves the table untouched) when the file is missing,
  // has the wrong header, or contains a malformed or inaccurate record.
  bool load(const std::string& path);
  void save(const std::string& path) const;

  std::size_t size() const;
  void clear();

  static std::string bessel_key(double nu);
  static std::string neumann_key(int d, int l);
  static constexpr const char* kHeader = "hyperdot-zeros v1";

 private:
  using Key = std::pair<int, std::string>;
  void extend(ZeroKind kind, const std::string& key, std::vector<double>& run, int n) const;

  mutable std::shared_mutex mu_;
  std::map<Key, std::vector<double>> runs_;
};

// Environment variable naming the default cache directory for the CLI.
inline constexpr const char* kCacheDirEnv = "HYPERDOT_CACHE_DIR";

}  // namespace hyperdot
