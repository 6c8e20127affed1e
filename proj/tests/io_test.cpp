#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "relfree/io.hpp"

using namespace relfree;

namespace {
const PrimeField F3{3};

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("/tmp/relfree_test_" + name + "_" +
             std::to_string(::getpid()) + ".json") {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("fingerprints separate specs and track configuration") {
  GeneratorSpec a = spec_Q(F3, 1, 1);
  GeneratorSpec b = spec_Q(F3, 1, 2);
  CHECK(spec_fingerprint(a) != spec_fingerprint(b));
  CHECK(spec_fingerprint(a) == spec_fingerprint(spec_Q(F3, 1, 1)));

  GeneratorSpec wider = spec_Q(F3, 1, 1, 3);
  CHECK(spec_fingerprint(a) != spec_fingerprint(wider));

  GeneratorSpec p5 = spec_Q(PrimeField(5), 1, 1);
  CHECK(spec_fingerprint(a) != spec_fingerprint(p5));
}

TEST_CASE("cache stores and restores component bases") {
  TempFile tmp("cache");
  GeneratorSpec spec = spec_Q(F3, 1, 1, 2);
  MultiDegree d{{3, 3}};

  ComponentBasis direct = component_basis(spec, d);
  {
    ComponentCache cache(tmp.path);
    CHECK_FALSE(cache.load(spec, d).has_value());
    ComponentBasis first = cache.get(spec, d, {}, 0);
    CHECK(first == direct);
  }
  {
    ComponentCache cache(tmp.path);
    auto hit = cache.load(spec, d);
    REQUIRE(hit.has_value());
    CHECK(*hit == direct);

    // a different multidegree misses
    CHECK_FALSE(cache.load(spec, MultiDegree{{1, 1}}).has_value());
  }
}

TEST_CASE("corrupted cache entries are treated as absent") {
  TempFile tmp("corrupt");
  GeneratorSpec spec = spec_Q(F3, 1, 1, 2);
  MultiDegree d{{1, 1}};
  {
    ComponentCache cache(tmp.path);
    cache.get(spec, d, {}, 0);
  }
  {
    // flip a row entry without fixing the checksum
    std::ifstream in(tmp.path);
    nlohmann::json j;
    in >> j;
    in.close();
    j["entries"][0]["rows"][0][0] = 2;
    std::ofstream out(tmp.path);
    out << j.dump();
  }
  {
    ComponentCache cache(tmp.path);
    CHECK_FALSE(cache.load(spec, d).has_value());
  }
  {
    // unparsable file: also absent
    std::ofstream out(tmp.path);
    out << "not json at all {";
    out.close();
    ComponentCache cache(tmp.path);
    CHECK_FALSE(cache.load(spec, d).has_value());
  }
}

TEST_CASE("component basis serialization shape") {
  GeneratorSpec spec = spec_Q(F3, 1, 1, 2);
  ComponentBasis cb = component_basis(spec, MultiDegree{{1, 1}});
  nlohmann::json j = to_json(cb);
  CHECK(j["d"] == nlohmann::json({1, 1}));
  CHECK(j["frame_size"] == 2);
  CHECK(j["rank"] == cb.rank());
  CHECK(j["rows"].is_array());
}
