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

#include "schedule.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "error.hpp"

namespace c3m {

const char* to_string(ContextKind k) {
  switch (k) {
    case ContextKind::kSerial: return "serial";
    case ContextKind::kCheckerboard: return "checkerboard";
    case ContextKind::kC3m: return "c3m";
  }
  return "?";
}

const char* to_string(Backbone b) {
  switch (b) {
    case Backbone::kNone: return "none";
    case Backbone::kConv3x3: return "conv3x3";
    case Backbone::kTransformer: return "transformer";
  }
  return "?";
}

ContextKind kind_from_string(const std::string& s) {
  if (s == "serial") return ContextKind::kSerial;
  if (s == "checkerboard") return ContextKind::kCheckerboard;
  if (s == "c3m") return ContextKind::kC3m;
  throw ConfigError("unknown context kind: " + s);
}

namespace {

void check_extents(int h, int w) {
  if (h < 1 || w < 1) throw DimensionError("schedule extents must be positive");
}

// Inserts the midpoint of every axis gap of length >= 2; returns false when
// the axis is already dense.
bool refine_axis(std::vector<int>& xs) {
  std::vector<int> next;
  next.reserve(xs.size() * 2);
  bool grew = false;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    next.push_back(xs[i]);
    if (xs[i + 1] - xs[i] >= 2) {
      next.push_back((xs[i] + xs[i + 1]) / 2);
      grew = true;
    }
  }
  next.push_back(xs.back());
  xs = std::move(next);
  return grew;
}

}  // namespace

Schedule Schedule::serial(int h, int w) {
  check_extents(h, w);
  Schedule s(ContextKind::kSerial, h, w);
  s.passes_.reserve(static_cast<size_t>(h) * w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      Pass p;
      p.positions = {r * w + c};
      p.backbone = Backbone::kConv3x3;
      s.passes_.push_back(std::move(p));
    }
  return s;
}

Schedule Schedule::checkerboard(int h, int w) {
  check_extents(h, w);
  Schedule s(ContextKind::kCheckerboard, h, w);
  Pass anchors, rest;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      ((r + c) % 2 == 0 ? anchors : rest).positions.push_back(r * w + c);
  anchors.backbone = Backbone::kNone;
  rest.backbone = Backbone::kConv3x3;
  s.passes_.push_back(std::move(anchors));
  s.passes_.push_back(std::move(rest));  // may be empty on a 1x1 grid
  return s;
}

Schedule Schedule::corner_to_center(int h, int w) {
  check_extents(h, w);
  Schedule s(ContextKind::kC3m, h, w);

  // Both axes start at their end points and repeatedly gain the midpoint of
  // every remaining gap; the decoded set after each step is the product of
  // the two axis sets.
  std::vector<int> xs = {0}, ys = {0};
  if (h > 1) xs.push_back(h - 1);
  if (w > 1) ys.push_back(w - 1);

  std::vector<uint8_t> in_x(static_cast<size_t>(h), 0), in_y(static_cast<size_t>(w), 0);
  std::vector<uint8_t> decoded(static_cast<size_t>(h) * w, 0);
  for (int x : xs) in_x[static_cast<size_t>(x)] = 1;
  for (int y : ys) in_y[static_cast<size_t>(y)] = 1;

  auto emit_pass = [&] {
    Pass p;
    for (int r = 0; r < h; ++r) {
      if (!in_x[static_cast<size_t>(r)]) continue;
      for (int c = 0; c < w; ++c) {
        if (!in_y[static_cast<size_t>(c)]) continue;
        const size_t id = static_cast<size_t>(r) * w + c;
        if (!decoded[id]) {
          decoded[id] = 1;
          p.positions.push_back(static_cast<int>(id));
        }
      }
    }
    s.passes_.push_back(std::move(p));
  };

  emit_pass();  // the corners
  while (true) {
    const bool gx = refine_axis(xs);
    const bool gy = refine_axis(ys);
    if (!gx && !gy) break;
    for (int x : xs) in_x[static_cast<size_t>(x)] = 1;
    for (int y : ys) in_y[static_cast<size_t>(y)] = 1;
    emit_pass();
  }

  // First pass decodes blind; the last pass has every neighbor gap closed to
  // one and runs the cheap conv; everything between uses the transformer.
  for (size_t t = 0; t < s.passes_.size(); ++t) {
    if (t == 0)
      s.passes_[t].backbone = Backbone::kNone;
    else if (t + 1 == s.passes_.size())
      s.passes_[t].backbone = Backbone::kConv3x3;
    else
      s.passes_[t].backbone = Backbone::kTransformer;
  }
  return s;
}

Schedule Schedule::make(ContextKind kind, int h, int w) {
  switch (kind) {
    case ContextKind::kSerial: return serial(h, w);
    case ContextKind::kCheckerboard: return checkerboard(h, w);
    case ContextKind::kC3m: return corner_to_center(h, w);
  }
  throw ConfigError("unknown context kind");
}

int64_t Schedule::causal_count(size_t t) const {
  int64_t n = 0;
  for (size_t i = 0; i < t; ++i) n += static_cast<int64_t>(passes_[i].positions.size());
  return n;
}

ScheduleStats schedule_stats(const Schedule& s) {
  ScheduleStats st;
  st.h = s.h();
  st.w = s.w();
  st.kind = s.kind();
  st.pass_count = s.pass_count();

  const int h = s.h(), w = s.w();
  std::vector<uint8_t> decoded(static_cast<size_t>(h) * w, 0);
  int64_t causal = 0;
  for (size_t t = 0; t < s.pass_count(); ++t) {
    const Pass& p = s.pass(t);
    PassStats ps;
    ps.index = static_cast<int>(t);
    ps.size = static_cast<int64_t>(p.positions.size());
    ps.causal = causal;
    ps.backbone = p.backbone;
    if (causal == 0) st.zero_context_count += ps.size;
    if (p.backbone == Backbone::kTransformer) {
      ps.receptive = static_cast<double>(causal);
    } else if (p.backbone == Backbone::kConv3x3 && !p.positions.empty()) {
      int64_t neighbors = 0;
      for (int id : p.positions) {
        const int r = id / w, c = id % w;
        for (int dr = -1; dr <= 1; ++dr)
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
            if (decoded[static_cast<size_t>(rr) * w + cc]) ++neighbors;
          }
      }
      ps.receptive = static_cast<double>(neighbors) /
                     static_cast<double>(p.positions.size());
    }
    for (int id : p.positions) decoded[static_cast<size_t>(id)] = 1;
    causal += ps.size;
    st.passes.push_back(ps);
  }
  return st;
}

namespace {

std::string positions_string(const Pass& p, int w) {
  std::string out;
  for (size_t i = 0; i < p.positions.size(); ++i) {
    const int id = p.positions[i];
    if (i) out += " ";
    out += "(" + std::to_string(id / w) + "," + std::to_string(id % w) + ")";
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string schedule_report_text(const Schedule& s, bool include_positions) {
  const ScheduleStats st = schedule_stats(s);
  std::ostringstream os;
  os << "h: " << st.h << "\n";
  os << "w: " << st.w << "\n";
  os << "kind: " << to_string(st.kind) << "\n";
  os << "pass_count: " << st.pass_count << "\n";
  os << "zero_context_count: " << st.zero_context_count << "\n";
  for (const PassStats& ps : st.passes) {
    const std::string key = "pass." + std::to_string(ps.index);
    os << key << ".size: " << ps.size << "\n";
    os << key << ".causal: " << ps.causal << "\n";
    os << key << ".backbone: " << to_string(ps.backbone) << "\n";
    os << key << ".receptive: " << format_double(ps.receptive) << "\n";
    if (include_positions)
      os << key << ".positions: " << positions_string(s.pass(static_cast<size_t>(ps.index)), s.w())
         << "\n";
  }
  return os.str();
}

std::string schedule_report_json(const Schedule& s, bool include_positions) {
  const ScheduleStats st = schedule_stats(s);
  nlohmann::json j;
  j["h"] = st.h;
  j["w"] = st.w;
  j["kind"] = to_string(st.kind);
  j["pass_count"] = st.pass_count;
  j["zero_context_count"] = st.zero_context_count;
  j["passes"] = nlohmann::json::array();
  for (const PassStats& ps : st.passes) {
    nlohmann::json jp;
    jp["index"] = ps.index;
    jp["size"] = ps.size;
    jp["causal"] = ps.causal;
    jp["backbone"] = to_string(ps.backbone);
    jp["receptive"] = ps.receptive;
    if (include_positions) {
      nlohmann::json pos = nlohmann::json::array();
      for (int id : s.pass(static_cast<size_t>(ps.index)).positions)
        pos.push_back({id / s.w(), id % s.w()});
      jp["positions"] = std::move(pos);
    }
    j["passes"].push_back(std::move(jp));
  }
  return j.dump(2);
}

}  // namespace c3m
