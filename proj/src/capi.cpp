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

#include "c3m/c3m.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "codec.hpp"
#include "container.hpp"
#include "entropy_model.hpp"
#include "error.hpp"
#include "image.hpp"
#include "profile.hpp"
#include "schedule.hpp"
#include "weights.hpp"

namespace {

thread_local std::string g_last_error;

c3m_status fail(c3m_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
c3m_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return C3M_OK;
  } catch (const c3m::DimensionError& e) {
    return fail(C3M_ERROR_DIMENSION, e.what());
  } catch (const c3m::ConfigError& e) {
    return fail(C3M_ERROR_CONFIG, e.what());
  } catch (const c3m::FormatError& e) {
    return fail(C3M_ERROR_FORMAT, e.what());
  } catch (const c3m::DecodeError& e) {
    return fail(C3M_ERROR_DECODE, e.what());
  } catch (const c3m::IoError& e) {
    return fail(C3M_ERROR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(C3M_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(C3M_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(C3M_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(C3M_ERROR_INTERNAL, "unknown error");
  }
}

uint8_t* copy_to_c(const std::vector<uint8_t>& bytes) {
  // malloc so callers can pair any buffer with c3m_free / free.
  uint8_t* p = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (p == nullptr) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(p, bytes.data(), bytes.size());
  return p;
}

char* copy_to_c(const std::string& text) {
  char* p = static_cast<char*>(std::malloc(text.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, text.c_str(), text.size() + 1);
  return p;
}

c3m::ImageU8 make_image(const uint8_t* rgb, int32_t width, int32_t height) {
  if (rgb == nullptr) throw std::invalid_argument("null pixel buffer");
  if (width <= 0 || height <= 0) {
    throw c3m::DimensionError("image extents must be positive");
  }
  c3m::ImageU8 img;
  img.width = width;
  img.height = height;
  img.rgb.assign(rgb, rgb + static_cast<size_t>(width) * height * 3);
  return img;
}

void fill_report(const c3m::CodecReport& in, c3m_report* out) {
  if (out == nullptr) return;
  out->bpp = in.bpp;
  out->psnr = in.psnr;
  out->pass_count = in.pass_count;
  out->zero_context_count = in.zero_context_count;
  out->elapsed_ms = in.elapsed_ms;
  out->payload_bytes = in.payload_bytes;
  out->estimated_bits = in.estimated_bits;
  out->latent_h = in.latent_h;
  out->latent_w = in.latent_w;
}

c3m_status decode_common(const c3m::Codec& codec, const uint8_t* data,
                         size_t size, uint8_t** out_rgb, int32_t* out_width,
                         int32_t* out_height, c3m_report* report) {
  const c3m::DecodeResult result = codec.decode(data, size);
  *out_rgb = copy_to_c(result.image.rgb);
  *out_width = result.image.width;
  *out_height = result.image.height;
  fill_report(result.report, report);
  return C3M_OK;
}

}  // namespace

struct c3m_codec {
  c3m::Codec impl;
};

struct c3m_schedule {
  c3m::Schedule impl;
};

extern "C" {

const char* c3m_status_message(c3m_status status) {
  switch (status) {
    case C3M_OK: return "ok";
    case C3M_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case C3M_ERROR_DIMENSION: return "dimension mismatch";
    case C3M_ERROR_CONFIG: return "configuration error";
    case C3M_ERROR_FORMAT: return "malformed input format";
    case C3M_ERROR_DECODE: return "bitstream decode failure";
    case C3M_ERROR_IO: return "file I/O failure";
    case C3M_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* c3m_last_error(void) { return g_last_error.c_str(); }

void c3m_free(void* ptr) { std::free(ptr); }

c3m_status c3m_codec_create(const char* profile, uint64_t seed,
                            c3m_codec** out_codec) {
  return guarded([&] {
    if (profile == nullptr || out_codec == nullptr) {
      throw std::invalid_argument("null argument to c3m_codec_create");
    }
    *out_codec = new c3m_codec{c3m::Codec(c3m::Profile::by_name(profile), seed)};
  });
}

c3m_status c3m_codec_create_with_weights(const char* profile, uint64_t seed,
                                         const char* weights_path,
                                         c3m_codec** out_codec) {
  return guarded([&] {
    if (profile == nullptr || weights_path == nullptr || out_codec == nullptr) {
      throw std::invalid_argument("null argument to c3m_codec_create_with_weights");
    }
    const c3m::Profile p = c3m::Profile::by_name(profile);
    c3m::ModelWeights w = c3m::ModelWeights::load(weights_path, p);
    *out_codec = new c3m_codec{c3m::Codec(p, seed, std::move(w))};
  });
}

void c3m_codec_release(c3m_codec* codec) { delete codec; }

c3m_status c3m_codec_save_weights(const c3m_codec* codec, const char* path) {
  return guarded([&] {
    if (codec == nullptr || path == nullptr) {
      throw std::invalid_argument("null argument to c3m_codec_save_weights");
    }
    codec->impl.weights().save(path, codec->impl.profile());
  });
}

c3m_status c3m_encode(const c3m_codec* codec, const uint8_t* rgb,
                      int32_t width, int32_t height, int32_t kind,
                      uint8_t** out_data, size_t* out_size,
                      c3m_report* report) {
  return guarded([&] {
    if (codec == nullptr || out_data == nullptr || out_size == nullptr) {
      throw std::invalid_argument("null argument to c3m_encode");
    }
    if (kind < 0 || kind > 2) {
      throw std::invalid_argument("kind must be a C3M_KIND_* value");
    }
    const c3m::ImageU8 img = make_image(rgb, width, height);
    const c3m::EncodeResult result =
        codec->impl.encode(img, static_cast<c3m::ContextKind>(kind));
    *out_data = copy_to_c(result.container);
    *out_size = result.container.size();
    fill_report(result.report, report);
  });
}

c3m_status c3m_decode(const c3m_codec* codec, const uint8_t* data, size_t size,
                      uint8_t** out_rgb, int32_t* out_width, int32_t* out_height,
                      c3m_report* report) {
  return guarded([&] {
    if (codec == nullptr || data == nullptr || out_rgb == nullptr ||
        out_width == nullptr || out_height == nullptr) {
      throw std::invalid_argument("null argument to c3m_decode");
    }
    decode_common(codec->impl, data, size, out_rgb, out_width, out_height, report);
  });
}

c3m_status c3m_decode_auto(const uint8_t* data, size_t size,
                           uint8_t** out_rgb, int32_t* out_width,
                           int32_t* out_height, c3m_report* report) {
  return guarded([&] {
    if (data == nullptr || out_rgb == nullptr || out_width == nullptr ||
        out_height == nullptr) {
      throw std::invalid_argument("null argument to c3m_decode_auto");
    }
    const c3m::Container c = c3m::parse_container(data, size);
    const c3m::Codec codec = c3m::Codec::for_container(c);
    const c3m::DecodeResult result = codec.decode(c);
    *out_rgb = copy_to_c(result.image.rgb);
    *out_width = result.image.width;
    *out_height = result.image.height;
    fill_report(result.report, report);
  });
}

c3m_status c3m_container_inspect(const uint8_t* data, size_t size,
                                 c3m_container_info* out_info) {
  return guarded([&] {
    if (data == nullptr || out_info == nullptr) {
      throw std::invalid_argument("null argument to c3m_container_inspect");
    }
    const c3m::Container c = c3m::parse_container(data, size);
    out_info->kind = static_cast<int32_t>(c.kind);
    out_info->profile_id = c.profile_id;
    out_info->seed = c.seed;
    out_info->width = c.width;
    out_info->height = c.height;
    out_info->pass_count = static_cast<int32_t>(c.pass_streams.size());
    out_info->payload_bytes = c.payload_bytes();
  });
}

c3m_status c3m_schedule_create(int32_t kind, int32_t h, int32_t w,
                               c3m_schedule** out_schedule) {
  return guarded([&] {
    if (out_schedule == nullptr) {
      throw std::invalid_argument("null argument to c3m_schedule_create");
    }
    if (kind < 0 || kind > 2) {
      throw std::invalid_argument("kind must be a C3M_KIND_* value");
    }
    *out_schedule = new c3m_schedule{
        c3m::Schedule::make(static_cast<c3m::ContextKind>(kind), h, w)};
  });
}

void c3m_schedule_release(c3m_schedule* schedule) { delete schedule; }

int32_t c3m_schedule_pass_count(const c3m_schedule* schedule) {
  if (schedule == nullptr) return -1;
  return static_cast<int32_t>(schedule->impl.pass_count());
}

c3m_status c3m_schedule_pass(const c3m_schedule* schedule, int32_t index,
                             int64_t* out_size, int32_t* out_backbone,
                             int64_t* out_causal) {
  return guarded([&] {
    if (schedule == nullptr) {
      throw std::invalid_argument("null schedule");
    }
    if (index < 0 || static_cast<size_t>(index) >= schedule->impl.pass_count()) {
      throw std::invalid_argument("pass index out of range");
    }
    const c3m::Pass& pass = schedule->impl.pass(index);
    if (out_size != nullptr) *out_size = static_cast<int64_t>(pass.positions.size());
    if (out_backbone != nullptr) *out_backbone = static_cast<int32_t>(pass.backbone);
    if (out_causal != nullptr) *out_causal = schedule->impl.causal_count(index);
  });
}

c3m_status c3m_schedule_positions(const c3m_schedule* schedule, int32_t index,
                                  int32_t* buffer, size_t capacity,
                                  size_t* out_written) {
  return guarded([&] {
    if (schedule == nullptr || out_written == nullptr) {
      throw std::invalid_argument("null argument to c3m_schedule_positions");
    }
    if (index < 0 || static_cast<size_t>(index) >= schedule->impl.pass_count()) {
      throw std::invalid_argument("pass index out of range");
    }
    const std::vector<int>& ids = schedule->impl.pass(index).positions;
    *out_written = ids.size();
    if (buffer == nullptr) return;
    const size_t n = capacity < ids.size() ? capacity : ids.size();
    for (size_t i = 0; i < n; ++i) buffer[i] = ids[i];
  });
}

int64_t c3m_schedule_zero_context_count(const c3m_schedule* schedule) {
  if (schedule == nullptr) return -1;
  // positions decoded while the causal set is still empty
  int64_t total = 0;
  int64_t seen = 0;
  for (const c3m::Pass& pass : schedule->impl.passes()) {
    if (seen == 0) total += static_cast<int64_t>(pass.positions.size());
    seen += static_cast<int64_t>(pass.positions.size());
  }
  return total;
}

c3m_status c3m_schedule_format(const c3m_schedule* schedule, int structured,
                               int include_positions, char** out_text) {
  return guarded([&] {
    if (schedule == nullptr || out_text == nullptr) {
      throw std::invalid_argument("null argument to c3m_schedule_format");
    }
    const std::string text =
        structured != 0
            ? c3m::schedule_report_json(schedule->impl, include_positions != 0)
            : c3m::schedule_report_text(schedule->impl, include_positions != 0);
    *out_text = copy_to_c(text);
  });
}

c3m_status c3m_pnm_read(const char* path, uint8_t** out_rgb,
                        int32_t* out_width, int32_t* out_height) {
  return guarded([&] {
    if (path == nullptr || out_rgb == nullptr || out_width == nullptr ||
        out_height == nullptr) {
      throw std::invalid_argument("null argument to c3m_pnm_read");
    }
    const c3m::ImageU8 img = c3m::read_pnm(path);
    *out_rgb = copy_to_c(img.rgb);
    *out_width = img.width;
    *out_height = img.height;
  });
}

c3m_status c3m_pnm_write(const char* path, const uint8_t* rgb,
                         int32_t width, int32_t height) {
  return guarded([&] {
    if (path == nullptr) throw std::invalid_argument("null path");
    c3m::write_ppm(path, make_image(rgb, width, height));
  });
}

c3m_status c3m_psnr(const uint8_t* rgb_a, const uint8_t* rgb_b,
                    int32_t width, int32_t height, double* out_db) {
  return guarded([&] {
    if (out_db == nullptr) throw std::invalid_argument("null output");
    *out_db = c3m::psnr(make_image(rgb_a, width, height),
                        make_image(rgb_b, width, height));
  });
}

}  // extern "C"
