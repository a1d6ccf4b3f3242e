// Copyright 2026 The c3m Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "profile.hpp"
#include "weights.hpp"

using namespace c3m;

namespace {

bool tensors_equal(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) return false;
  for (int64_t i = 0; i < a.size(); ++i) {
    if (a.at_flat(i) != b.at_flat(i)) return false;
  }
  return true;
}

bool stores_equal(const ModelWeights& a, const ModelWeights& b) {
  if (a.all().size() != b.all().size()) return false;
  for (const auto& [path, t] : a.all()) {
    if (!b.has(path)) return false;
    if (!tensors_equal(t, b.get(path))) return false;
  }
  return true;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TEST_CASE("the tiny inventory pins the expected parameter shapes") {
  const Profile& p = Profile::tiny();
  const auto inv = parameter_inventory(p);

  std::set<std::string> paths;
  for (const ParamSpec& spec : inv) CHECK(paths.insert(spec.path).second);

  const ModelWeights w = ModelWeights::seeded(p, 1);
  CHECK(w.all().size() == inv.size());
  int64_t expect_total = 0;
  for (const ParamSpec& spec : inv) {
    REQUIRE(w.has(spec.path));
    CHECK(w.get(spec.path).shape() == spec.shape);
    int64_t n = 1;
    for (int d : spec.shape) n *= d;
    expect_total += n;
  }
  CHECK(w.total_values() == expect_total);

  CHECK(w.get("g_a.down0.w").shape() == std::vector<int>{32, 3, 3, 3});
  CHECK(w.get("g_a.down3.w").shape() == std::vector<int>{48, 48, 3, 3});
  CHECK(w.get("g_a.s3.b0.attn.w_q").shape() == std::vector<int>{48, 48});
  CHECK(w.get("g_a.s2.b1.attn.gbias3").shape() == std::vector<int>{15, 15});
  CHECK(w.get("g_s.up3.w").shape() == std::vector<int>{3, 32, 3, 3});
  CHECK(w.get("h_a.down0.w").shape() == std::vector<int>{32, 48, 3, 3});
  CHECK(w.get("h_s.up1.w").shape() == std::vector<int>{96, 32, 3, 3});
  CHECK(w.get("ctx.embed.w").shape() == std::vector<int>{48, 49});
  CHECK(w.get("ctx.l1.attn.hbias2").shape() == std::vector<int>{15, 15});
  CHECK(w.get("ctx.out.w").shape() == std::vector<int>{96, 48});
  CHECK(w.get("cconv.w").shape() == std::vector<int>{96, 48, 3, 3});
  CHECK(w.get("cconv.b").shape() == std::vector<int>{96});
  CHECK(w.get("g_ep.fc0.w").shape() == std::vector<int>{96, 192});
  CHECK(w.get("g_ep.fc1.w").shape() == std::vector<int>{96, 96});
  CHECK(w.get("hyper_sigma.raw").shape() == std::vector<int>{32});

  CHECK(!w.has("ctx.l2.ln1.gain"));  // tiny context depth is 2
  CHECK(!w.has("g_a.s0.b1.ln1.gain"));  // stage 0 depth is 1
}

TEST_CASE("paper profile inventory scales with its configuration") {
  const Profile& p = Profile::paper();
  const auto inv = parameter_inventory(p);
  std::set<std::string> paths;
  for (const ParamSpec& spec : inv) paths.insert(spec.path);
  CHECK(paths.size() == inv.size());
  CHECK(paths.count("g_a.s2.b5.attn.w_o") == 1);  // stage 2 depth 6
  CHECK(paths.count("ctx.l5.mlp.fc2.b") == 1);    // context depth 6
  CHECK(paths.count("ctx.l0.attn.hbias5") == 1);  // six heads
  CHECK(paths.count("ctx.l0.attn.hbias6") == 0);
}

TEST_CASE("seeded stores are deterministic in the seed") {
  const Profile& p = Profile::tiny();
  const ModelWeights a = ModelWeights::seeded(p, 7);
  const ModelWeights b = ModelWeights::seeded(p, 7);
  CHECK(stores_equal(a, b));
  const ModelWeights c = ModelWeights::seeded(p, 8);
  CHECK(!stores_equal(a, c));
}

TEST_CASE("distinct parameters draw from distinct streams") {
  const Profile& p = Profile::tiny();
  const ModelWeights w = ModelWeights::seeded(p, 3);
  CHECK(!tensors_equal(w.get("g_a.s3.b0.attn.w_q"), w.get("g_a.s3.b0.attn.w_k")));
  CHECK(!tensors_equal(w.get("g_a.down3.w"), w.get("g_s.up0.w")));
}

TEST_CASE("initialization follows the per-kind rules") {
  const Profile& p = Profile::tiny();
  const ModelWeights w = ModelWeights::seeded(p, 11);
  for (const auto& [path, t] : w.all()) {
    if (ends_with(path, ".b") || ends_with(path, ".shift")) {
      for (int64_t i = 0; i < t.size(); ++i) CHECK(t.at_flat(i) == 0.0);
    } else if (ends_with(path, ".gain")) {
      for (int64_t i = 0; i < t.size(); ++i) CHECK(t.at_flat(i) == 1.0);
    } else if (path.find("bias") != std::string::npos) {
      double mx = 0.0;
      for (int64_t i = 0; i < t.size(); ++i)
        mx = std::max(mx, std::abs(t.at_flat(i)));
      CHECK(mx <= 0.5);
      CHECK(mx > 0.0);
    } else if (path == "hyper_sigma.raw") {
      for (int64_t i = 0; i < t.size(); ++i) CHECK(std::abs(t.at_flat(i)) <= 1.5);
    } else {
      int64_t fan_in = 1;
      for (int i = 1; i < t.rank(); ++i) fan_in *= t.dim(i);
      const double bound = std::sqrt(3.0 / static_cast<double>(fan_in));
      double mx = 0.0;
      for (int64_t i = 0; i < t.size(); ++i)
        mx = std::max(mx, std::abs(t.at_flat(i)));
      CHECK(mx <= bound);
      CHECK(mx > 0.25 * bound);  // degenerate all-zero init would be a bug
    }
  }
}

TEST_CASE("serialize and deserialize round trip bit for bit") {
  const Profile& p = Profile::tiny();
  const ModelWeights w = ModelWeights::seeded(p, 21);
  const std::vector<uint8_t> bytes = w.serialize(p);
  const ModelWeights back = ModelWeights::deserialize(bytes.data(), bytes.size(), p);
  CHECK(stores_equal(w, back));
}

TEST_CASE("save and load round trip through a file") {
  const Profile& p = Profile::tiny();
  const ModelWeights w = ModelWeights::seeded(p, 33);
  const std::string path = "/tmp/c3m_test_weights.bin";
  w.save(path, p);
  const ModelWeights back = ModelWeights::load(path, p);
  CHECK(stores_equal(w, back));
  std::remove(path.c_str());
  CHECK_THROWS_AS(ModelWeights::load(path, p), IoError);
}

TEST_CASE("malformed weight data is rejected") {
  const Profile& p = Profile::tiny();
  const ModelWeights w = ModelWeights::seeded(p, 2);
  std::vector<uint8_t> bytes = w.serialize(p);

  SUBCASE("bad magic") {
    bytes[0] = 'X';
    CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size(), p),
                    FormatError);
  }
  SUBCASE("unsupported version") {
    bytes[4] = 9;
    CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size(), p),
                    FormatError);
  }
  SUBCASE("profile byte mismatch") {
    CHECK_THROWS_AS(
        ModelWeights::deserialize(bytes.data(), bytes.size(), Profile::paper()),
        FormatError);
  }
  SUBCASE("truncation anywhere fails cleanly") {
    for (size_t keep : {0u, 3u, 5u, 6u, 9u, 40u, 1000u}) {
      if (keep >= bytes.size()) continue;
      CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), keep, p),
                      FormatError);
    }
    CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size() - 1, p),
                    FormatError);
  }
}

TEST_CASE("an unknown parameter path is rejected") {
  const Profile& p = Profile::tiny();
  ModelWeights doctored;
  for (const ParamSpec& spec : parameter_inventory(p)) {
    const std::string path =
        spec.path == "hyper_sigma.raw" ? "hyper_sigma.xxx" : spec.path;
    doctored.add(path, spec.shape);
  }
  const std::vector<uint8_t> bytes = doctored.serialize(p);
  CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size(), p),
                  FormatError);
}

TEST_CASE("a wrong parameter shape is rejected") {
  const Profile& p = Profile::tiny();
  ModelWeights doctored;
  for (const ParamSpec& spec : parameter_inventory(p)) {
    std::vector<int> shape = spec.shape;
    if (spec.path == "cconv.b") shape = {95};
    doctored.add(spec.path, shape);
  }
  const std::vector<uint8_t> bytes = doctored.serialize(p);
  CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size(), p),
                  FormatError);
}

TEST_CASE("a missing parameter is rejected") {
  const Profile& p = Profile::tiny();
  ModelWeights doctored;
  for (const ParamSpec& spec : parameter_inventory(p)) {
    if (spec.path == "g_ep.fc1.b") continue;
    doctored.add(spec.path, spec.shape);
  }
  const std::vector<uint8_t> bytes = doctored.serialize(p);
  CHECK_THROWS_AS(ModelWeights::deserialize(bytes.data(), bytes.size(), p),
                  FormatError);
}

TEST_CASE("store accessors enforce presence and uniqueness") {
  const Profile& p = Profile::tiny();
  ModelWeights w = ModelWeights::seeded(p, 1);
  CHECK(w.has("cconv.w"));
  CHECK(!w.has("nope"));
  CHECK_THROWS_AS(w.get("nope"), ConfigError);
  CHECK_THROWS_AS(w.mutable_get("nope"), ConfigError);
  CHECK_THROWS_AS(w.add("cconv.w", {1}), ConfigError);
  Tensor& t = w.mutable_get("cconv.b");
  t(0) = 5.0;
  CHECK(w.get("cconv.b")(0) == 5.0);
}
