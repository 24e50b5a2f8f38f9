// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "lfgc/errors.hpp"

namespace lfgc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string index_pair(ViewIndex v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02d_%02d", v.row, v.col);
  return buf;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

// Reads one whitespace-delimited token of a PNM header, skipping comments.
std::string pnm_token(std::istream& in, const fs::path& path) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (tok.empty()) throw DataError("truncated header in " + path.string());
  return tok;
}

int pnm_int(std::istream& in, const fs::path& path) {
  const std::string tok = pnm_token(in, path);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw DataError("bad header field '" + tok + "' in " + path.string());
  }
}

void pnm_header(std::istream& in, const fs::path& path, const char* magic,
                int& w, int& h, int& maxval) {
  if (pnm_token(in, path) != magic) {
    throw DataError(path.string() + ": expected " + magic + " file");
  }
  w = pnm_int(in, path);
  h = pnm_int(in, path);
  maxval = pnm_int(in, path);
  if (w <= 0 || h <= 0) throw DataError(path.string() + ": bad dimensions");
}

}  // namespace

std::string view_file_name(ViewIndex v) {
  return "view_" + index_pair(v) + ".pgm";
}
std::string disparity_file_name(ViewIndex v) {
  return "disp_" + index_pair(v) + ".pfm";
}
std::string label_file_name(ViewIndex v) {
  return "labels_" + index_pair(v) + ".pgm";
}

ViewImage read_pgm(const fs::path& path) {
  auto in = open_in(path);
  int w, h, maxval;
  pnm_header(in, path, "P5", w, h, maxval);
  if (maxval != 255) {
    throw DataError(path.string() + ": expected 8-bit PGM, maxval " +
                    std::to_string(maxval));
  }
  ViewImage img(h, w);
  in.read(reinterpret_cast<char*>(img.data()),
          static_cast<std::streamsize>(img.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.size())) {
    throw DataError(path.string() + ": truncated pixel data");
  }
  return img;
}

void write_pgm(const fs::path& path, const ViewImage& img) {
  auto out = open_out(path);
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

Image<uint16_t> read_pgm16(const fs::path& path) {
  auto in = open_in(path);
  int w, h, maxval;
  pnm_header(in, path, "P5", w, h, maxval);
  if (maxval != 65535) {
    throw DataError(path.string() + ": expected 16-bit PGM, maxval " +
                    std::to_string(maxval));
  }
  Image<uint16_t> img(h, w);
  std::vector<uint8_t> raw(img.size() * 2);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw DataError(path.string() + ": truncated pixel data");
  }
  for (size_t i = 0; i < img.size(); ++i) {
    img.data()[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  }
  return img;
}

void write_pgm16(const fs::path& path, const Image<uint16_t>& img) {
  auto out = open_out(path);
  out << "P5\n" << img.width() << " " << img.height() << "\n65535\n";
  std::vector<uint8_t> raw(img.size() * 2);
  for (size_t i = 0; i < img.size(); ++i) {
    raw[2 * i] = static_cast<uint8_t>(img.data()[i] >> 8);
    raw[2 * i + 1] = static_cast<uint8_t>(img.data()[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

void read_ppm(const fs::path& path, Image<uint8_t>& r, Image<uint8_t>& g,
              Image<uint8_t>& b) {
  auto in = open_in(path);
  int w, h, maxval;
  pnm_header(in, path, "P6", w, h, maxval);
  if (maxval != 255) {
    throw DataError(path.string() + ": expected 8-bit PPM, maxval " +
                    std::to_string(maxval));
  }
  std::vector<uint8_t> raw(static_cast<size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw DataError(path.string() + ": truncated pixel data");
  }
  r = Image<uint8_t>(h, w);
  g = Image<uint8_t>(h, w);
  b = Image<uint8_t>(h, w);
  for (size_t i = 0; i < r.size(); ++i) {
    r.data()[i] = raw[3 * i];
    g.data()[i] = raw[3 * i + 1];
    b.data()[i] = raw[3 * i + 2];
  }
}

DisparityMap read_pfm(const fs::path& path) {
  auto in = open_in(path);
  if (pnm_token(in, path) != "Pf") {
    throw DataError(path.string() + ": expected single-channel PFM");
  }
  const int w = pnm_int(in, path);
  const int h = pnm_int(in, path);
  const double scale = std::stod(pnm_token(in, path));
  if (w <= 0 || h <= 0) throw DataError(path.string() + ": bad dimensions");
  if (scale >= 0) {
    throw DataError(path.string() + ": big-endian PFM not supported");
  }
  DisparityMap map(h, w);
  std::vector<float> row(static_cast<size_t>(w));
  for (int y = h - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (in.gcount() !=
        static_cast<std::streamsize>(row.size() * sizeof(float))) {
      throw DataError(path.string() + ": truncated pixel data");
    }
    std::memcpy(&map.at(y, 0), row.data(), row.size() * sizeof(float));
  }
  return map;
}

void write_pfm(const fs::path& path, const DisparityMap& map) {
  auto out = open_out(path);
  out << "Pf\n" << map.width() << " " << map.height() << "\n-1.0\n";
  for (int y = map.height() - 1; y >= 0; --y) {
    out.write(reinterpret_cast<const char*>(&map.at(y, 0)),
              static_cast<std::streamsize>(map.width() * sizeof(float)));
  }
  if (!out) throw DataError("write failed: " + path.string());
}

LightFieldManifest read_manifest(const fs::path& dir) {
  auto in = open_in(dir / "lf.json");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError((dir / "lf.json").string() + ": " + e.what());
  }
  LightFieldManifest m;
  try {
    m.n_rows = j.at("n_rows").get<int>();
    m.n_cols = j.at("n_cols").get<int>();
    m.height = j.at("height").get<int>();
    m.width = j.at("width").get<int>();
    m.bit_depth = j.value("bit_depth", 8);
  } catch (const json::exception& e) {
    throw DataError((dir / "lf.json").string() + ": " + e.what());
  }
  if (m.bit_depth != 8) {
    throw DataError("unsupported bit depth " + std::to_string(m.bit_depth));
  }
  return m;
}

void write_manifest(const fs::path& dir, const LightFieldManifest& m) {
  json j = {{"n_rows", m.n_rows}, {"n_cols", m.n_cols},   {"height", m.height},
            {"width", m.width},   {"bit_depth", m.bit_depth}};
  auto out = open_out(dir / "lf.json");
  out << j.dump(2) << "\n";
}

LightFieldGrid load_light_field(const fs::path& dir) {
  const LightFieldManifest m = read_manifest(dir);
  LightFieldGrid lf;
  lf.n_rows = m.n_rows;
  lf.n_cols = m.n_cols;
  lf.height = m.height;
  lf.width = m.width;
  lf.views.assign(static_cast<size_t>(m.n_rows) * m.n_cols, ViewImage());
  for (int r = 1; r <= m.n_rows; ++r) {
    for (int c = 1; c <= m.n_cols; ++c) {
      const ViewIndex v{r, c};
      const fs::path pgm = dir / view_file_name(v);
      if (fs::exists(pgm)) {
        lf.view(v) = read_pgm(pgm);
        continue;
      }
      const fs::path ppm =
          dir / ("view_" + index_pair(v) + ".ppm");
      if (fs::exists(ppm)) {
        Image<uint8_t> rr, gg, bb;
        read_ppm(ppm, rr, gg, bb);
        lf.view(v) = luminance_of(rr, gg, bb);
      }
    }
  }
  return lf;
}

void save_light_field(const fs::path& dir, const LightFieldGrid& lf) {
  fs::create_directories(dir);
  write_manifest(dir, {lf.n_rows, lf.n_cols, lf.height, lf.width, 8});
  for (int r = 1; r <= lf.n_rows; ++r) {
    for (int c = 1; c <= lf.n_cols; ++c) {
      const ViewIndex v{r, c};
      if (!lf.view(v).empty()) write_pgm(dir / view_file_name(v), lf.view(v));
    }
  }
}

std::optional<DisparityMap> load_disparity(const fs::path& dir, ViewIndex v) {
  const fs::path p = dir / disparity_file_name(v);
  if (!fs::exists(p)) return std::nullopt;
  return read_pfm(p);
}

void save_disparity(const fs::path& dir, ViewIndex v, const DisparityMap& map) {
  write_pfm(dir / disparity_file_name(v), map);
}

std::optional<LabelMap> load_label_map(const fs::path& dir, ViewIndex v) {
  const fs::path p = dir / label_file_name(v);
  if (!fs::exists(p)) return std::nullopt;
  const Image<uint16_t> raw = read_pgm16(p);
  fs::path sidecar = p;
  sidecar.replace_extension(".json");
  auto in = open_in(sidecar);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(sidecar.string() + ": " + e.what());
  }
  LabelMap map(raw.height(), raw.width(), j.at("n_labels").get<int>());
  for (size_t i = 0; i < raw.size(); ++i) {
    map.labels.data()[i] = raw.data()[i];
  }
  return map;
}

void save_label_map(const fs::path& dir, ViewIndex v, const LabelMap& map) {
  if (map.n_labels > 65536) {
    throw DataError("label map exceeds 16-bit range: " +
                    std::to_string(map.n_labels) + " labels");
  }
  Image<uint16_t> raw(map.labels.height(), map.labels.width());
  for (size_t i = 0; i < raw.size(); ++i) {
    const int32_t l = map.labels.data()[i];
    if (l < 0) throw DataError("label map contains holes, cannot serialize");
    raw.data()[i] = static_cast<uint16_t>(l);
  }
  const fs::path p = dir / label_file_name(v);
  write_pgm16(p, raw);
  fs::path sidecar = p;
  sidecar.replace_extension(".json");
  auto out = open_out(sidecar);
  out << json{{"n_labels", map.n_labels}}.dump(2) << "\n";
}

void save_superray_table(const fs::path& path, const SuperRayTable& table) {
  json entries = json::array();
  for (size_t i = 0; i < table.entries.size(); ++i) {
    const SuperRayEntry& e = table.entries[i];
    entries.push_back({{"label", i},
                       {"count", e.count},
                       {"median_disparity", e.median_disparity},
                       {"mean_disparity", e.mean_disparity}});
  }
  auto out = open_out(path);
  out << json{{"n_labels", table.entries.size()}, {"entries", entries}}.dump(2)
      << "\n";
}

SuperRayTable load_superray_table(const fs::path& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  SuperRayTable table;
  try {
    table.entries.resize(j.at("n_labels").get<size_t>());
    for (const json& e : j.at("entries")) {
      SuperRayEntry& dst = table.entries.at(e.at("label").get<size_t>());
      dst.count = e.at("count").get<int64_t>();
      dst.median_disparity = e.at("median_disparity").get<float>();
      dst.mean_disparity = e.at("mean_disparity").get<float>();
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return table;
}

std::vector<uint8_t> read_binary_file(const fs::path& path) {
  auto in = open_in(path);
  in.seekg(0, std::ios::end);
  const std::streamsize n = in.tellg();
  in.seekg(0);
  std::vector<uint8_t> bytes(static_cast<size_t>(n));
  in.read(reinterpret_cast<char*>(bytes.data()), n);
  if (in.gcount() != n) throw DataError(path.string() + ": short read");
  return bytes;
}

void write_binary_file(const fs::path& path,
                       const std::vector<uint8_t>& bytes) {
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace lfgc
