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

#include "weights.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "error.hpp"
#include "rng.hpp"

namespace c3m {

namespace {

constexpr char kMagic[4] = {'C', '3', 'M', 'W'};
constexpr uint8_t kVersion = 1;

// Number of attention channel groups and the clipped relative-offset range of
// the position-bias tables (offsets clip to [-7, 7], hence 15x15).
constexpr int kGroups = 4;
constexpr int kBiasTableExtent = 15;

void add_param(std::vector<ParamSpec>& v, std::string path, std::vector<int> shape) {
  v.push_back({std::move(path), std::move(shape)});
}

void add_conv(std::vector<ParamSpec>& v, const std::string& name, int cin, int cout) {
  add_param(v, name + ".w", {cout, cin, 3, 3});
  add_param(v, name + ".b", {cout});
}

void add_linear(std::vector<ParamSpec>& v, const std::string& name, int in, int out) {
  add_param(v, name + ".w", {out, in});
  add_param(v, name + ".b", {out});
}

void add_layer_norm(std::vector<ParamSpec>& v, const std::string& name, int d) {
  add_param(v, name + ".gain", {d});
  add_param(v, name + ".shift", {d});
}

// One windowed-attention transformer block at channel width c.
void add_attn_block(std::vector<ParamSpec>& v, const std::string& prefix, int c) {
  add_layer_norm(v, prefix + "ln1", c);
  add_param(v, prefix + "attn.w_q", {c, c});
  add_param(v, prefix + "attn.w_k", {c, c});
  add_param(v, prefix + "attn.w_v", {c, c});
  add_param(v, prefix + "attn.w_o", {c, c});
  for (int g = 0; g < kGroups; ++g)
    add_param(v, prefix + "attn.gbias" + std::to_string(g),
              {kBiasTableExtent, kBiasTableExtent});
  add_layer_norm(v, prefix + "ln2", c);
  add_linear(v, prefix + "mlp.fc1", c, 2 * c);
  add_linear(v, prefix + "mlp.fc2", 2 * c, c);
}

void add_attn_stack(std::vector<ParamSpec>& v, const std::string& prefix, int c,
                    int depth) {
  for (int i = 0; i < depth; ++i)
    add_attn_block(v, prefix + "b" + std::to_string(i) + ".", c);
}

}  // namespace

std::vector<ParamSpec> parameter_inventory(const Profile& p) {
  std::vector<ParamSpec> v;
  const auto& ch = p.stage_channels;
  const auto& dep = p.stage_depths;
  const int latent_c = p.latent_channels();
  const int hyper_c = p.hyper_channels();
  const int d = p.context_dim;

  // Analysis transform: stride-2 conv then attention blocks, four times.
  add_conv(v, "g_a.down0", 3, ch[0]);
  add_attn_stack(v, "g_a.s0.", ch[0], dep[0]);
  add_conv(v, "g_a.down1", ch[0], ch[1]);
  add_attn_stack(v, "g_a.s1.", ch[1], dep[1]);
  add_conv(v, "g_a.down2", ch[1], ch[2]);
  add_attn_stack(v, "g_a.s2.", ch[2], dep[2]);
  add_conv(v, "g_a.down3", ch[2], ch[3]);
  add_attn_stack(v, "g_a.s3.", ch[3], dep[3]);

  // Synthesis transform mirrors the analysis stages in reverse.
  add_attn_stack(v, "g_s.s0.", ch[3], dep[3]);
  add_conv(v, "g_s.up0", ch[3], ch[2]);
  add_attn_stack(v, "g_s.s1.", ch[2], dep[2]);
  add_conv(v, "g_s.up1", ch[2], ch[1]);
  add_attn_stack(v, "g_s.s2.", ch[1], dep[1]);
  add_conv(v, "g_s.up2", ch[1], ch[0]);
  add_attn_stack(v, "g_s.s3.", ch[0], dep[0]);
  add_conv(v, "g_s.up3", ch[0], 3);

  // Hyper transforms: two stride-2 stages each way.
  add_conv(v, "h_a.down0", latent_c, hyper_c);
  add_attn_stack(v, "h_a.s0.", hyper_c, p.hyper_depths[0]);
  add_conv(v, "h_a.down1", hyper_c, hyper_c);
  add_attn_stack(v, "h_a.s1.", hyper_c, p.hyper_depths[1]);

  add_attn_stack(v, "h_s.s0.", hyper_c, p.hyper_depths[1]);
  add_conv(v, "h_s.up0", hyper_c, hyper_c);
  add_attn_stack(v, "h_s.s1.", hyper_c, p.hyper_depths[0]);
  add_conv(v, "h_s.up1", hyper_c, 2 * latent_c);

  // Masked transformer context model: value+flag embedding, depth blocks with
  // per-head position-bias tables, then a projection to context features.
  add_linear(v, "ctx.embed", latent_c + 1, d);
  for (int l = 0; l < p.context_depth; ++l) {
    const std::string prefix = "ctx.l" + std::to_string(l) + ".";
    add_layer_norm(v, prefix + "ln1", d);
    add_param(v, prefix + "attn.w_q", {d, d});
    add_param(v, prefix + "attn.w_k", {d, d});
    add_param(v, prefix + "attn.w_v", {d, d});
    add_param(v, prefix + "attn.w_o", {d, d});
    for (int h = 0; h < p.context_heads; ++h)
      add_param(v, prefix + "attn.hbias" + std::to_string(h),
                {kBiasTableExtent, kBiasTableExtent});
    add_layer_norm(v, prefix + "ln2", d);
    add_linear(v, prefix + "mlp.fc1", d, 2 * d);
    add_linear(v, prefix + "mlp.fc2", 2 * d, d);
  }
  add_linear(v, "ctx.out", d, 2 * latent_c);

  // Masked 3x3 conv context model (serial schedule, final refinement pass).
  add_conv(v, "cconv", latent_c, 2 * latent_c);

  // Entropy parameter head: two 1x1 layers over concat(side, context).
  add_linear(v, "g_ep.fc0", 4 * latent_c, 2 * latent_c);
  add_linear(v, "g_ep.fc1", 2 * latent_c, 2 * latent_c);

  // Static per-channel scale parameters for the hyper latents.
  add_param(v, "hyper_sigma.raw", {hyper_c});
  return v;
}

ModelWeights ModelWeights::seeded(const Profile& profile, uint64_t seed) {
  ModelWeights w;
  for (const ParamSpec& spec : parameter_inventory(profile)) {
    Tensor& t = w.add(spec.path, spec.shape);
    UniformSource src(derive_seed(seed, spec.path));
    const std::string& path = spec.path;
    const bool is_bias = path.size() > 2 && path.compare(path.size() - 2, 2, ".b") == 0;
    const bool is_shift = path.find(".shift") != std::string::npos;
    const bool is_gain = path.find(".gain") != std::string::npos;
    const bool is_postable = path.find("bias") != std::string::npos;
    if (is_bias || is_shift) continue;  // zeros
    if (is_gain) {
      for (int64_t i = 0; i < t.size(); ++i) t.at_flat(i) = 1.0;
      continue;
    }
    if (is_postable) {
      // Position-bias tables act additively on attention logits; keep them small.
      for (int64_t i = 0; i < t.size(); ++i) t.at_flat(i) = src.next_symmetric(0.5);
      continue;
    }
    if (path == "hyper_sigma.raw") {
      // Log-scale parameters; exp of these spans roughly [0.2, 4.5].
      for (int64_t i = 0; i < t.size(); ++i) t.at_flat(i) = src.next_symmetric(1.5);
      continue;
    }
    // Weight matrix: fan_in is the product of all axes but the first.
    int64_t fan_in = 1;
    for (int i = 1; i < t.rank(); ++i) fan_in *= t.dim(i);
    if (fan_in < 1) fan_in = 1;
    // Uniform(-sqrt(3)/sqrt(fan_in), +...) has standard deviation 1/sqrt(fan_in).
    const double bound = std::sqrt(3.0 / static_cast<double>(fan_in));
    for (int64_t i = 0; i < t.size(); ++i) t.at_flat(i) = src.next_symmetric(bound);
  }
  return w;
}

const Tensor& ModelWeights::get(const std::string& path) const {
  auto it = params_.find(path);
  if (it == params_.end()) throw ConfigError("missing parameter: " + path);
  return it->second;
}

Tensor& ModelWeights::mutable_get(const std::string& path) {
  auto it = params_.find(path);
  if (it == params_.end()) throw ConfigError("missing parameter: " + path);
  return it->second;
}

Tensor& ModelWeights::add(const std::string& path, std::vector<int> shape) {
  auto [it, inserted] = params_.emplace(path, Tensor(std::move(shape)));
  if (!inserted) throw ConfigError("duplicate parameter: " + path);
  return it->second;
}

int64_t ModelWeights::total_values() const {
  int64_t n = 0;
  for (const auto& [path, t] : params_) n += t.size();
  return n;
}

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

void put_f64(std::vector<uint8_t>& out, double d) {
  uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
  uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(data_[pos_++]) << (8 * i);
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
  }
  std::string str(uint32_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return s;
  }
  bool at_end() const { return pos_ == size_; }

 private:
  void need(size_t n) {
    if (pos_ + n > size_) throw FormatError("weight data truncated");
  }
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> ModelWeights::serialize(const Profile& profile) const {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(profile.id);
  for (const auto& [path, t] : params_) {
    put_u32(out, static_cast<uint32_t>(path.size()));
    out.insert(out.end(), path.begin(), path.end());
    out.push_back(static_cast<uint8_t>(t.rank()));
    for (int i = 0; i < t.rank(); ++i) put_u32(out, static_cast<uint32_t>(t.dim(i)));
    for (int64_t i = 0; i < t.size(); ++i) put_f64(out, t.at_flat(i));
  }
  return out;
}

ModelWeights ModelWeights::deserialize(const uint8_t* data, size_t size,
                                       const Profile& profile) {
  Reader r(data, size);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad weight magic");
  if (r.u8() != kVersion) throw FormatError("unsupported weight version");
  if (r.u8() != profile.id) throw FormatError("weight profile mismatch");

  ModelWeights w;
  while (!r.at_end()) {
    const uint32_t plen = r.u32();
    if (plen == 0 || plen > 4096) throw FormatError("bad parameter path length");
    const std::string path = r.str(plen);
    const int rank = r.u8();
    if (rank < 1 || rank > 4) throw FormatError("bad parameter rank");
    std::vector<int> shape(static_cast<size_t>(rank));
    int64_t n = 1;
    for (int& d : shape) {
      const uint32_t e = r.u32();
      if (e == 0 || e > (1u << 20)) throw FormatError("bad parameter extent");
      d = static_cast<int>(e);
      n *= d;
    }
    Tensor& t = w.add(path, std::move(shape));
    for (int64_t i = 0; i < n; ++i) t.at_flat(i) = r.f64();
  }

  // The stored set must match the profile inventory exactly.
  const auto inventory = parameter_inventory(profile);
  if (w.params_.size() != inventory.size())
    throw FormatError("weight file parameter count mismatch");
  for (const ParamSpec& spec : inventory) {
    auto it = w.params_.find(spec.path);
    if (it == w.params_.end())
      throw FormatError("weight file missing parameter: " + spec.path);
    if (it->second.shape() != spec.shape)
      throw FormatError("weight shape mismatch for " + spec.path + ": got " +
                        it->second.shape_string());
  }
  return w;
}

void ModelWeights::save(const std::string& path, const Profile& profile) const {
  const std::vector<uint8_t> bytes = serialize(profile);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

ModelWeights ModelWeights::load(const std::string& path, const Profile& profile) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return deserialize(bytes.data(), bytes.size(), profile);
}

}  // namespace c3m
