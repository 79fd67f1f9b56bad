#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbim/scalars.hpp"
#include "sbim/serialize.hpp"

namespace sbim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string group = "PGL2";
  bool group_is_file = false;  // group holds a datum file path
  FieldSpec field = FieldSpec::rationals();
  int box_radius = 2;
  std::optional<int> wall;  // 0-based index into the positive coroots; unset = all
  std::vector<int> word;    // 0-based simple indices
  bool json = false;
  std::string cache_dir;
};

struct CheckLine {
  std::string name;
  bool pass = true;
  std::string detail;
  double ms = 0;
  Json data;  // optional structured payload (per-pair verdicts, witnesses)
};

struct Report {
  std::string command;
  std::string config_echo;
  std::vector<CheckLine> checks;
  bool pass = true;
  std::string version;

  std::string to_text(bool with_timing = true) const;
  std::string to_json_text() const;  // timing-free, byte-stable per config
};

Report run(const RunConfig& cfg);
inline int exit_code(const Report& r) { return r.pass ? 0 : 1; }

/// Full command-line entry point; returns the process exit code
/// (0 = all green, 1 = a check failed, 2 = invalid input).
int run_cli(int argc, char** argv);

std::string fnv1a_hex(const std::string& s);
std::string cache_file_name(const std::string& dir, const std::string& datum, const FieldSpec& field,
                            const std::string& recipe);
void atomic_write(const std::string& path, const std::string& contents);

/// Write-then-rename store plus reload of a bimodule, keyed by
/// (datum, field, recipe).
template <class K>
void cache_store(const std::string& dir, const PlainBimodule<K>& m) {
  atomic_write(cache_file_name(dir, m.sys->datum.name, m.field, m.recipe), bimodule_to_json(m).dump(1));
}

/// Load a cached bimodule when present and valid; nullopt otherwise
/// (corrupt entries are ignored).
template <class K>
std::optional<PlainBimodule<K>> cache_lookup(const std::string& dir, SystemPtr sys, const FieldSpec& field,
                                             const std::string& recipe);

template <class K>
bool bimodule_equal(const PlainBimodule<K>& a, const PlainBimodule<K>& b) {
  if (a.rank != b.rank || !(a.field == b.field) || a.recipe != b.recipe) return false;
  if (a.sys->datum.name != b.sys->datum.name) return false;
  for (std::size_t i = 0; i < a.left.size(); ++i)
    if (!(a.left[i] == b.left[i]) || !(a.left_inv[i] == b.left_inv[i]) || !(a.gen_det[i] == b.gen_det[i]))
      return false;
  return true;
}

bool cache_read_text(const std::string& path, std::string& out);

template <class K>
std::optional<PlainBimodule<K>> cache_lookup(const std::string& dir, SystemPtr sys, const FieldSpec& field,
                                             const std::string& recipe) {
  std::string text;
  if (!cache_read_text(cache_file_name(dir, sys->datum.name, field, recipe), text)) return std::nullopt;
  try {
    Json j = Json::parse(text);
    PlainBimodule<K> m = bimodule_from_json<K>(sys, j);
    if (!(m.field == field) || m.recipe != recipe) return std::nullopt;
    return m;
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt entry: recompute
  }
}

/// Serialize, reload, and require exact equality.
template <class K>
PlainBimodule<K> cache_roundtrip(const std::string& dir, const PlainBimodule<K>& m) {
  cache_store(dir, m);
  auto back = cache_lookup<K>(dir, m.sys, m.field, m.recipe);
  if (!back || !bimodule_equal(*back, m)) throw std::logic_error("cache_roundtrip: reloaded value differs");
  return *back;
}

}  // namespace sbim
