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

// Command-line frontend over the C API: encode, decode, schedule inspection,
// and a latency bench. Reports print as "key: value" text or JSON.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c3m/c3m.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Fail {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail_status(c3m_status status, const std::string& what) {
  std::string detail = c3m_last_error();
  if (detail.empty()) detail = c3m_status_message(status);
  throw Fail{static_cast<int>(status), what + ": " + detail};
}

void check(c3m_status status, const std::string& what) {
  if (status != C3M_OK) fail_status(status, what);
}

int kind_code(const std::string& name) {
  if (name == "serial") return C3M_KIND_SERIAL;
  if (name == "checkerboard") return C3M_KIND_CHECKERBOARD;
  if (name == "c3m") return C3M_KIND_C3M;
  throw Fail{2, "unknown context kind '" + name + "'"};
}

const char* kind_name(int code) {
  switch (code) {
    case C3M_KIND_SERIAL: return "serial";
    case C3M_KIND_CHECKERBOARD: return "checkerboard";
    case C3M_KIND_C3M: return "c3m";
  }
  return "?";
}

// Time-complexity class per kind, in decode passes over an n x n grid.
const char* complexity_class(int code) {
  switch (code) {
    case C3M_KIND_SERIAL: return "O(n^2)";
    case C3M_KIND_CHECKERBOARD: return "Two Pass";
    case C3M_KIND_C3M: return "O(log n)";
  }
  return "?";
}

uint64_t default_seed() {
  const char* env = std::getenv("C3M_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw Fail{2, std::string("C3M_SEED is not a number: ") + env};
  }
  return v;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fail{6, "cannot open " + path};
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const uint8_t* data, size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Fail{6, "cannot create " + path};
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Fail{6, "write failed: " + path};
}

struct Freed {
  void operator()(void* p) const { c3m_free(p); }
};
template <typename T>
using CPtr = std::unique_ptr<T, Freed>;

struct CodecHandle {
  c3m_codec* ptr = nullptr;
  ~CodecHandle() { c3m_codec_release(ptr); }
};

struct ScheduleHandle {
  c3m_schedule* ptr = nullptr;
  ~ScheduleHandle() { c3m_schedule_release(ptr); }
};

// NaN (not computed) -> null, infinity (exact match) -> "inf".
json psnr_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return "inf";
  return v;
}

std::string psnr_text(double v) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void print_report(const std::string& op, const c3m_report& r, bool structured,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  if (structured) {
    json j{{"op", op},
           {"bpp", r.bpp},
           {"psnr", psnr_json(r.psnr)},
           {"pass_count", r.pass_count},
           {"zero_context_count", r.zero_context_count},
           {"elapsed_ms", r.elapsed_ms},
           {"payload_bytes", r.payload_bytes},
           {"estimated_bits", r.estimated_bits},
           {"latent_h", r.latent_h},
           {"latent_w", r.latent_w}};
    for (const auto& [k, v] : extra) j[k] = v;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "op: " << op << "\n";
  for (const auto& [k, v] : extra) std::cout << k << ": " << v << "\n";
  std::printf("latent: %dx%d\n", r.latent_h, r.latent_w);
  std::printf("pass_count: %d\n", r.pass_count);
  std::printf("zero_context_count: %d\n", r.zero_context_count);
  std::printf("payload_bytes: %" PRIu64 "\n", r.payload_bytes);
  std::printf("bpp: %.6f\n", r.bpp);
  if (r.estimated_bits > 0.0) std::printf("estimated_bits: %.1f\n", r.estimated_bits);
  std::printf("psnr: %s\n", psnr_text(r.psnr).c_str());
  std::printf("elapsed_ms: %.3f\n", r.elapsed_ms);
}

int run_encode(const std::string& input, const std::string& output,
               const std::string& kind, const std::string& profile,
               uint64_t seed, bool structured) {
  CPtr<uint8_t> rgb;
  int32_t w = 0, h = 0;
  {
    uint8_t* raw = nullptr;
    check(c3m_pnm_read(input.c_str(), &raw, &w, &h), "reading " + input);
    rgb.reset(raw);
  }
  CodecHandle codec;
  check(c3m_codec_create(profile.c_str(), seed, &codec.ptr), "creating codec");
  CPtr<uint8_t> data;
  size_t size = 0;
  c3m_report report{};
  {
    uint8_t* raw = nullptr;
    check(c3m_encode(codec.ptr, rgb.get(), w, h, kind_code(kind), &raw, &size,
                     &report),
          "encoding");
    data.reset(raw);
  }
  write_file(output, data.get(), size);
  print_report("encode", report, structured,
               {{"input", input},
                {"output", output},
                {"profile", profile},
                {"kind", kind},
                {"seed", std::to_string(seed)},
                {"image", std::to_string(w) + "x" + std::to_string(h)}});
  return 0;
}

int run_decode(const std::string& input, const std::string& output,
               const std::string& reference, bool structured) {
  const std::vector<uint8_t> container = read_file(input);
  c3m_container_info info{};
  check(c3m_container_inspect(container.data(), container.size(), &info),
        "parsing " + input);
  CPtr<uint8_t> rgb;
  int32_t w = 0, h = 0;
  c3m_report report{};
  {
    uint8_t* raw = nullptr;
    check(c3m_decode_auto(container.data(), container.size(), &raw, &w, &h,
                          &report),
          "decoding " + input);
    rgb.reset(raw);
  }
  if (!reference.empty()) {
    CPtr<uint8_t> ref;
    int32_t rw = 0, rh = 0;
    {
      uint8_t* raw = nullptr;
      check(c3m_pnm_read(reference.c_str(), &raw, &rw, &rh),
            "reading " + reference);
      ref.reset(raw);
    }
    if (rw != w || rh != h) {
      throw Fail{2, "reference size differs from decoded image"};
    }
    check(c3m_psnr(rgb.get(), ref.get(), w, h, &report.psnr), "psnr");
  }
  check(c3m_pnm_write(output.c_str(), rgb.get(), w, h), "writing " + output);
  print_report("decode", report, structured,
               {{"input", input},
                {"output", output},
                {"profile", info.profile_id == 0 ? "tiny" : "paper"},
                {"kind", kind_name(info.kind)},
                {"seed", std::to_string(info.seed)},
                {"image", std::to_string(w) + "x" + std::to_string(h)}});
  return 0;
}

int run_schedule(int h, int w, const std::string& kind, bool structured) {
  ScheduleHandle s;
  check(c3m_schedule_create(kind_code(kind), h, w, &s.ptr), "building schedule");
  CPtr<char> text;
  {
    char* raw = nullptr;
    check(c3m_schedule_format(s.ptr, structured ? 1 : 0, 1, &raw),
          "formatting schedule");
    text.reset(raw);
  }
  std::cout << text.get();
  if (structured) std::cout << "\n";
  return 0;
}

struct BenchRow {
  int latent_h, latent_w;
  std::string kind;
  int pass_count = 0;
  double mean_decode_ms = 0.0;
  double encode_ms = 0.0;
  double bpp = 0.0;
};

// Deterministic test pattern; content does not matter for latency, only that
// every run sees identical bytes.
std::vector<uint8_t> synthetic_image(int w, int h) {
  std::vector<uint8_t> rgb(static_cast<size_t>(w) * h * 3);
  size_t i = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      rgb[i++] = static_cast<uint8_t>((x * 7 + y * 3) & 0xFF);
      rgb[i++] = static_cast<uint8_t>((x + y * 11) & 0xFF);
      rgb[i++] = static_cast<uint8_t>((x * 5 ^ y * 13) & 0xFF);
    }
  }
  return rgb;
}

std::pair<int, int> parse_size(const std::string& text) {
  const size_t x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size()) {
    throw Fail{2, "size must look like HxW, got '" + text + "'"};
  }
  try {
    const int h = std::stoi(text.substr(0, x));
    const int w = std::stoi(text.substr(x + 1));
    if (h <= 0 || w <= 0) throw Fail{2, "size extents must be positive"};
    return {h, w};
  } catch (const std::exception&) {
    throw Fail{2, "size must look like HxW, got '" + text + "'"};
  }
}

int run_bench(const std::vector<std::string>& sizes,
              const std::vector<std::string>& kinds, int reps,
              const std::string& profile, uint64_t seed, bool structured) {
  if (reps <= 0) throw Fail{2, "--reps must be positive"};
  CodecHandle codec;
  check(c3m_codec_create(profile.c_str(), seed, &codec.ptr), "creating codec");

  std::vector<BenchRow> rows;
  for (const std::string& size_text : sizes) {
    const auto [lh, lw] = parse_size(size_text);
    const int w = 16 * lw;
    const int h = 16 * lh;
    const std::vector<uint8_t> rgb = synthetic_image(w, h);
    for (const std::string& kind : kinds) {
      BenchRow row;
      row.latent_h = lh;
      row.latent_w = lw;
      row.kind = kind;
      CPtr<uint8_t> data;
      size_t size = 0;
      c3m_report enc{};
      {
        uint8_t* raw = nullptr;
        check(c3m_encode(codec.ptr, rgb.data(), w, h, kind_code(kind), &raw,
                         &size, &enc),
              "encoding bench input");
        data.reset(raw);
      }
      row.pass_count = enc.pass_count;
      row.encode_ms = enc.elapsed_ms;
      row.bpp = enc.bpp;
      double total = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        CPtr<uint8_t> out;
        int32_t ow = 0, oh = 0;
        c3m_report dec{};
        uint8_t* raw = nullptr;
        check(c3m_decode(codec.ptr, data.get(), size, &raw, &ow, &oh, &dec),
              "decoding bench input");
        out.reset(raw);
        total += dec.elapsed_ms;
      }
      row.mean_decode_ms = total / reps;
      rows.push_back(row);
    }
  }

  if (structured) {
    json out = json::array();
    for (const BenchRow& r : rows) {
      out.push_back({{"latent_h", r.latent_h},
                     {"latent_w", r.latent_w},
                     {"kind", r.kind},
                     {"complexity", complexity_class(kind_code(r.kind))},
                     {"pass_count", r.pass_count},
                     {"mean_decode_ms", r.mean_decode_ms},
                     {"encode_ms", r.encode_ms},
                     {"bpp", r.bpp}});
    }
    std::cout << json{{"op", "bench"},
                      {"profile", profile},
                      {"seed", seed},
                      {"reps", reps},
                      {"rows", out}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::printf("op: bench\nprofile: %s\nseed: %" PRIu64 "\nreps: %d\n",
              profile.c_str(), seed, reps);
  std::printf("%-8s %-14s %-10s %-8s %-16s %-12s %s\n", "latent", "kind",
              "complexity", "passes", "mean_decode_ms", "encode_ms", "bpp");
  for (const BenchRow& r : rows) {
    char label[16];
    std::snprintf(label, sizeof(label), "%dx%d", r.latent_h, r.latent_w);
    std::printf("%-8s %-14s %-10s %-8d %-16.3f %-12.3f %.5f\n", label,
                r.kind.c_str(), complexity_class(kind_code(r.kind)),
                r.pass_count, r.mean_decode_ms, r.encode_ms, r.bpp);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c3m learned-image codec: encode, decode, schedules, bench"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string enc_in, enc_out = "out.c3m", enc_kind = "c3m", enc_profile = "tiny";
  uint64_t seed = 0;
  bool seed_set = false;
  auto* enc = app.add_subcommand("encode", "Compress a PPM/PGM image");
  enc->add_option("input", enc_in, "Input image (P6/P5)")->required();
  enc->add_option("-o,--output", enc_out, "Container path")->capture_default_str();
  enc->add_option("--context", enc_kind, "Decode order")
      ->check(CLI::IsMember({"serial", "checkerboard", "c3m"}))
      ->capture_default_str();
  enc->add_option("--profile", enc_profile, "Model profile")
      ->check(CLI::IsMember({"tiny", "paper"}))
      ->capture_default_str();
  enc->add_option("--seed", seed, "Weight seed (default: $C3M_SEED or 1)");

  std::string dec_in, dec_out = "out.ppm", dec_ref;
  auto* dec = app.add_subcommand("decode", "Decompress a container");
  dec->add_option("input", dec_in, "Container path")->required();
  dec->add_option("-o,--output", dec_out, "Output image (P6)")->capture_default_str();
  dec->add_option("--reference", dec_ref, "Original image for PSNR");

  int sch_h = 0, sch_w = 0;
  std::string sch_kind = "c3m";
  auto* sch = app.add_subcommand("schedule", "Dump a decode schedule");
  sch->set_help_flag("--help", "Print help");  // frees -h for the height flag
  sch->add_option("--h,-h", sch_h, "Latent grid height")->required();
  sch->add_option("--w", sch_w, "Latent grid width")->required();
  sch->add_option("--kind", sch_kind, "Decode order")
      ->check(CLI::IsMember({"serial", "checkerboard", "c3m"}))
      ->capture_default_str();

  std::vector<std::string> bench_sizes{"8x8"};
  std::vector<std::string> bench_kinds{"serial", "checkerboard", "c3m"};
  int bench_reps = 1;
  std::string bench_profile = "tiny";
  auto* bench = app.add_subcommand("bench", "Latency per kind and latent size");
  bench->add_option("--sizes", bench_sizes, "Latent sizes as HxW")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--kinds", bench_kinds, "Decode orders")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", bench_reps, "Decode repetitions")
      ->capture_default_str();
  bench->add_option("--profile", bench_profile, "Model profile")
      ->check(CLI::IsMember({"tiny", "paper"}))
      ->capture_default_str();
  bench->add_option("--seed", seed, "Weight seed (default: $C3M_SEED or 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    seed_set = enc->count("--seed") > 0 || bench->count("--seed") > 0;
    if (!seed_set) seed = default_seed();
    const bool structured = format == "structured";
    if (enc->parsed()) {
      return run_encode(enc_in, enc_out, enc_kind, enc_profile, seed, structured);
    }
    if (dec->parsed()) return run_decode(dec_in, dec_out, dec_ref, structured);
    if (sch->parsed()) return run_schedule(sch_h, sch_w, sch_kind, structured);
    if (bench->parsed()) {
      return run_bench(bench_sizes, bench_kinds, bench_reps, bench_profile,
                       seed, structured);
    }
  } catch (const Fail& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code == 0 ? 1 : f.exit_code;
  }
  return 0;
}
