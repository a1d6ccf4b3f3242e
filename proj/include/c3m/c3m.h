/* Copyright 2026 The c3m Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the c3m image codec. All functions return a status code;
 * outputs go through pointer parameters. Buffers returned through uint8_t**
 * or char** are heap-allocated and must be released with c3m_free(). On
 * failure, c3m_last_error() returns a thread-local description. */

#ifndef C3M_C3M_H_
#define C3M_C3M_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum c3m_status {
  C3M_OK = 0,
  C3M_ERROR_INVALID_ARGUMENT = 1,
  C3M_ERROR_DIMENSION = 2,
  C3M_ERROR_CONFIG = 3,
  C3M_ERROR_FORMAT = 4,
  C3M_ERROR_DECODE = 5,
  C3M_ERROR_IO = 6,
  C3M_ERROR_INTERNAL = 7
} c3m_status;

/* Decode-order kinds. Values match the container's context-kind byte. */
#define C3M_KIND_SERIAL 0
#define C3M_KIND_CHECKERBOARD 1
#define C3M_KIND_C3M 2

/* Per-pass context backbones. */
#define C3M_BACKBONE_NONE 0
#define C3M_BACKBONE_CONV 1
#define C3M_BACKBONE_TRANSFORMER 2

typedef struct c3m_codec c3m_codec;
typedef struct c3m_schedule c3m_schedule;

typedef struct c3m_report {
  double bpp;
  double psnr; /* NaN when no reference was available, +inf for exact match */
  int32_t pass_count;
  int32_t zero_context_count;
  double elapsed_ms;
  uint64_t payload_bytes;
  double estimated_bits;
  int32_t latent_h;
  int32_t latent_w;
} c3m_report;

typedef struct c3m_container_info {
  int32_t kind;
  int32_t profile_id;
  uint64_t seed;
  int32_t width;
  int32_t height;
  int32_t pass_count;
  uint64_t payload_bytes;
} c3m_container_info;

/* Static description of a status code. Never fails. */
const char* c3m_status_message(c3m_status status);

/* Message of the most recent failure on this thread; empty string if none. */
const char* c3m_last_error(void);

/* Releases any buffer returned by this library. NULL is allowed. */
void c3m_free(void* ptr);

/* ---- codec ---- */

/* profile is "tiny" or "paper"; weights derive deterministically from seed. */
c3m_status c3m_codec_create(const char* profile, uint64_t seed,
                            c3m_codec** out_codec);

/* Same, but weights load from a weight file written by c3m_codec_save_weights.
 * The file's profile must match. */
c3m_status c3m_codec_create_with_weights(const char* profile, uint64_t seed,
                                         const char* weights_path,
                                         c3m_codec** out_codec);

void c3m_codec_release(c3m_codec* codec);

c3m_status c3m_codec_save_weights(const c3m_codec* codec, const char* path);

/* rgb is interleaved 8-bit RGB, 3 * width * height bytes. kind is a
 * C3M_KIND_* value. report may be NULL. */
c3m_status c3m_encode(const c3m_codec* codec, const uint8_t* rgb,
                      int32_t width, int32_t height, int32_t kind,
                      uint8_t** out_data, size_t* out_size,
                      c3m_report* report);

/* Decodes a container produced by c3m_encode. The container's profile must
 * match the codec's; its seed is not checked, so decoding with different
 * weights yields a valid but mismatched image rather than an error. */
c3m_status c3m_decode(const c3m_codec* codec, const uint8_t* data, size_t size,
                      uint8_t** out_rgb, int32_t* out_width, int32_t* out_height,
                      c3m_report* report);

/* Decodes with a codec built from the container header (profile and seed). */
c3m_status c3m_decode_auto(const uint8_t* data, size_t size,
                           uint8_t** out_rgb, int32_t* out_width,
                           int32_t* out_height, c3m_report* report);

/* Parses a container header without decoding. */
c3m_status c3m_container_inspect(const uint8_t* data, size_t size,
                                 c3m_container_info* out_info);

/* ---- schedules ---- */

c3m_status c3m_schedule_create(int32_t kind, int32_t h, int32_t w,
                               c3m_schedule** out_schedule);

void c3m_schedule_release(c3m_schedule* schedule);

int32_t c3m_schedule_pass_count(const c3m_schedule* schedule);

/* Any output pointer may be NULL. causal is the number of positions decoded
 * before this pass. */
c3m_status c3m_schedule_pass(const c3m_schedule* schedule, int32_t index,
                             int64_t* out_size, int32_t* out_backbone,
                             int64_t* out_causal);

/* Copies up to capacity flat position ids (row * w + col, row-major order)
 * of one pass into buffer. out_written receives the pass size regardless of
 * capacity, so call with capacity 0 to size the buffer. */
c3m_status c3m_schedule_positions(const c3m_schedule* schedule, int32_t index,
                                  int32_t* buffer, size_t capacity,
                                  size_t* out_written);

int64_t c3m_schedule_zero_context_count(const c3m_schedule* schedule);

/* Full schedule report. structured != 0 selects JSON, otherwise "key: value"
 * lines. include_positions != 0 lists every position of every pass. */
c3m_status c3m_schedule_format(const c3m_schedule* schedule, int structured,
                               int include_positions, char** out_text);

/* ---- images ---- */

/* Reads binary PPM (P6) or PGM (P5), maxval 255; gray expands to RGB. */
c3m_status c3m_pnm_read(const char* path, uint8_t** out_rgb,
                        int32_t* out_width, int32_t* out_height);

/* Writes binary PPM (P6). */
c3m_status c3m_pnm_write(const char* path, const uint8_t* rgb,
                         int32_t width, int32_t height);

/* Peak signal-to-noise ratio in dB over two same-sized RGB buffers;
 * +inf when the buffers are identical. */
c3m_status c3m_psnr(const uint8_t* rgb_a, const uint8_t* rgb_b,
                    int32_t width, int32_t height, double* out_db);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* C3M_C3M_H_ */
