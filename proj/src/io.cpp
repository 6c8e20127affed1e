#include "relfree/io.hpp"

#include <fstream>
#include <sstream>

#include "relfree/printer.hpp"

namespace relfree {

namespace {

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

std::string spec_fingerprint(const GeneratorSpec& spec) {
  std::ostringstream os;
  os << kEngineVersion << "|p=" << spec.field.p() << "|n=" << spec.n_vars;
  for (const auto& [gen, closure] : spec.generators)
    os << "|" << (closure == Closure::TSpace ? "ts:" : "ti:")
       << to_string(gen);
  return hex64(fnv64(os.str()));
}

nlohmann::json to_json(const MultiDegree& d) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < d.size(); ++i) a.push_back(d[i]);
  return a;
}

nlohmann::json to_json(const NormalPoly& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : a.terms())
    terms.push_back({{"monomial", to_string(m)}, {"coeff", c}});
  return terms;
}

nlohmann::json to_json(const ComponentBasis& cb) {
  nlohmann::json j;
  j["d"] = to_json(cb.multidegree());
  j["frame_size"] = cb.frame().size();
  nlohmann::json frame = nlohmann::json::array();
  for (const auto& m : cb.frame()) frame.push_back(to_string(m));
  j["frame"] = frame;
  j["rank"] = cb.rank();
  j["rows"] = cb.rows().rows();
  return j;
}

ComponentCache::ComponentCache(std::string path) : path_(std::move(path)) {
  entries_ = nlohmann::json::array();
  read_file();
}

namespace {

std::string entry_checksum(const nlohmann::json& e) {
  nlohmann::json copy = e;
  copy.erase("checksum");
  return hex64(fnv64(copy.dump()));
}

}  // namespace

void ComponentCache::read_file() {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return;  // unreadable; treat as empty
  }
  if (!j.is_object() || j.value("format", "") != kEngineVersion) return;
  if (!j.contains("entries") || !j["entries"].is_array()) return;
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("checksum")) continue;
    if (entry_checksum(e) != e["checksum"].get<std::string>()) continue;
    entries_.push_back(e);
  }
}

void ComponentCache::write_file() const {
  nlohmann::json j;
  j["format"] = kEngineVersion;
  j["entries"] = entries_;
  std::ofstream out(path_);
  out << j.dump(1) << "\n";
}

std::optional<ComponentBasis> ComponentCache::load(const GeneratorSpec& spec,
                                                   const MultiDegree& d) const {
  std::string fp = spec_fingerprint(spec);
  nlohmann::json dj = to_json(d);
  for (const auto& e : entries_) {
    if (e.value("p", 0u) != spec.field.p()) continue;
    if (e.value("n", -1) != spec.n_vars) continue;
    if (e.value("spec", "") != fp) continue;
    if (e["d"] != dj) continue;
    std::vector<NormalMonomial> fr = frame(d, spec.n_vars);
    if (e.value("frame_size", std::size_t{0}) != fr.size()) continue;
    Echelon ech(spec.field, fr.size());
    for (const auto& row : e["rows"])
      ech.insert(row.get<std::vector<std::uint32_t>>());
    return ComponentBasis(d, std::move(fr), std::move(ech));
  }
  return std::nullopt;
}

void ComponentCache::store(const GeneratorSpec& spec,
                           const ComponentBasis& cb) {
  nlohmann::json e;
  e["p"] = spec.field.p();
  e["n"] = spec.n_vars;
  e["spec"] = spec_fingerprint(spec);
  e["d"] = to_json(cb.multidegree());
  e["frame_size"] = cb.frame().size();
  e["rows"] = cb.rows().rows();
  e["checksum"] = entry_checksum(e);
  entries_.push_back(e);
  write_file();
}

ComponentBasis ComponentCache::get(const GeneratorSpec& spec,
                                   const MultiDegree& d, const Budget& budget,
                                   int jobs) {
  if (auto hit = load(spec, d)) return *hit;
  ComponentBasis cb = component_basis(spec, d, budget, jobs);
  store(spec, cb);
  return cb;
}

}  // namespace relfree
