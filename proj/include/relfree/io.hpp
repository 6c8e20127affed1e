#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "relfree/tspace.hpp"

namespace relfree {

// Engine identity; participates in every cache key so stale entries from
// older builds are never reused.
inline constexpr const char* kEngineVersion = "relfree-1.0";

// Stable fingerprint of a generator spec: field, ambient, generator text and
// closure kinds.
std::string spec_fingerprint(const GeneratorSpec& spec);

nlohmann::json to_json(const MultiDegree& d);
nlohmann::json to_json(const NormalPoly& a);   // term list, text form
nlohmann::json to_json(const ComponentBasis& cb);

// Component cache: a JSON container keyed by (engine version, p, n, spec
// fingerprint, multidegree). Every entry carries a checksum; entries that
// fail it are treated as absent, as is an unreadable file.
class ComponentCache {
 public:
  explicit ComponentCache(std::string path);

  std::optional<ComponentBasis> load(const GeneratorSpec& spec,
                                     const MultiDegree& d) const;
  void store(const GeneratorSpec& spec, const ComponentBasis& cb);

  // Read-through wrapper around component_basis.
  ComponentBasis get(const GeneratorSpec& spec, const MultiDegree& d,
                     const Budget& budget, int jobs);

 private:
  void read_file();
  void write_file() const;

  std::string path_;
  nlohmann::json entries_;  // array
};

}  // namespace relfree
