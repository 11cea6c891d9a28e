#pragma once

// Elevation rasters: GTOPO30-style raw DEMs with a text sidecar header, the
// portable ABINHF01 container, and procedural test fields.

#include "abin/types.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace abin {

inline constexpr double kMinHeight = -500.0;
inline constexpr double kMaxHeight = 9000.0;
inline constexpr double kGtopoNoData = -9999.0;

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major samples, row 0 northernmost. Samples sit on a regular grid of
/// nodes spanning lat_bounds x lon_bounds (radians), both ends included.
struct HeightField {
  int rows = 0;
  int cols = 0;
  std::vector<double> samples;
  Interval lat_bounds{};
  Interval lon_bounds{};
  double nodata = kGtopoNoData;

  [[nodiscard]] double at(int row, int col) const {
    return samples[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(col)];
  }
  [[nodiscard]] double lat_of_row(int row) const {
    if (rows == 1) return lat_bounds.hi;
    return lat_bounds.hi - lat_bounds.width() * (static_cast<double>(row) / (rows - 1));
  }
  [[nodiscard]] double lon_of_col(int col) const {
    if (cols == 1) return lon_bounds.lo;
    return lon_bounds.lo + lon_bounds.width() * (static_cast<double>(col) / (cols - 1));
  }

  void validate() const {
    if (rows <= 0 || cols <= 0) throw InvalidArgument("HeightField: rows and cols must be positive");
    if (samples.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
      throw InvalidArgument("HeightField: sample count does not match rows * cols");
    }
  }
};

namespace detail {

inline double deg2rad(double d) { return d * kPi / 180.0; }

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// Accepts "KEY value" (GTOPO30 .hdr) and "key=value" lines; keys are
/// case-insensitive.
inline std::map<std::string, std::string> parse_header(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    if (!(ls >> value)) throw IngestError("heightfield header: key '" + key + "' has no value");
    kv[lower(key)] = value;
  }
  return kv;
}

inline double header_number(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw IngestError("heightfield header: missing field '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw IngestError("heightfield header: field '" + key + "' is not a number: '" + it->second + "'");
  }
}

inline int header_count(const std::map<std::string, std::string>& kv, const std::string& key) {
  const double v = header_number(kv, key);
  if (v < 1 || v != std::floor(v) || v > 1e8) {
    throw IngestError("heightfield header: field '" + key + "' must be a positive integer");
  }
  return static_cast<int>(v);
}

inline HeightField shell_from_header(const std::map<std::string, std::string>& kv) {
  HeightField hf;
  hf.rows = header_count(kv, "nrows");
  hf.cols = header_count(kv, "ncols");
  const double ulx = header_number(kv, "ulxmap");
  const double uly = header_number(kv, "ulymap");
  const double xdim = header_number(kv, "xdim");
  const double ydim = header_number(kv, "ydim");
  if (!(xdim > 0.0)) throw IngestError("heightfield header: field 'xdim' must be positive");
  if (!(ydim > 0.0)) throw IngestError("heightfield header: field 'ydim' must be positive");
  hf.nodata = kv.contains("nodata") ? header_number(kv, "nodata") : kGtopoNoData;
  hf.lat_bounds = {deg2rad(uly - (hf.rows - 1) * ydim), deg2rad(uly)};
  hf.lon_bounds = {deg2rad(ulx), deg2rad(ulx + (hf.cols - 1) * xdim)};
  return hf;
}

inline double ingest_value(double v, double nodata) {
  if (v == nodata || !std::isfinite(v)) return 0.0;
  return std::clamp(v, kMinHeight, kMaxHeight);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace detail

inline constexpr std::string_view kPortableMagic = "ABINHF01";

/// Decodes a raw 16-bit big-endian signed payload against its sidecar header.
[[nodiscard]] inline HeightField decode_raw_dem(std::string_view header_text, std::string_view payload) {
  const auto kv = detail::parse_header(header_text);
  if (auto it = kv.find("byteorder"); it != kv.end() && detail::lower(it->second) != "m" &&
                                      detail::lower(it->second) != "msbfirst") {
    throw IngestError("raw DEM: field 'byteorder' must be M (big-endian), got '" + it->second + "'");
  }
  HeightField hf = detail::shell_from_header(kv);
  const std::size_t n = static_cast<std::size_t>(hf.rows) * static_cast<std::size_t>(hf.cols);
  if (payload.size() != 2 * n) {
    throw IngestError("raw DEM: payload holds " + std::to_string(payload.size() / 2) + " samples but header "
                      "'nrows' x 'ncols' requires " + std::to_string(n));
  }
  hf.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto hi = static_cast<std::uint8_t>(payload[2 * k]);
    const auto lo = static_cast<std::uint8_t>(payload[2 * k + 1]);
    const auto raw = static_cast<std::int16_t>(static_cast<std::uint16_t>((hi << 8) | lo));
    hf.samples[k] = detail::ingest_value(static_cast<double>(raw), hf.nodata);
  }
  return hf;
}

/// ABINHF01 | u64 LE header length | key=value header text | f64 LE samples.
[[nodiscard]] inline HeightField decode_portable(std::string_view bytes) {
  if (bytes.size() < 16 || bytes.substr(0, 8) != kPortableMagic) throw IngestError("portable heightfield: bad magic");
  std::uint64_t len = 0;
  for (int b = 0; b < 8; ++b) len |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes[8 + b])) << (8 * b);
  if (len > bytes.size() - 16) throw IngestError("portable heightfield: header length exceeds file size");
  const auto kv = detail::parse_header(bytes.substr(16, len));
  if (auto it = kv.find("byteorder"); it == kv.end() || detail::lower(it->second) != "little") {
    throw IngestError("portable heightfield: field 'byteorder' must be 'little'");
  }
  if (auto it = kv.find("dtype"); it == kv.end() || detail::lower(it->second) != "float64") {
    throw IngestError("portable heightfield: field 'dtype' must be 'float64'");
  }
  HeightField hf = detail::shell_from_header(kv);
  const std::size_t n = static_cast<std::size_t>(hf.rows) * static_cast<std::size_t>(hf.cols);
  const std::string_view payload = bytes.substr(16 + len);
  if (payload.size() != 8 * n) {
    throw IngestError("portable heightfield: payload holds " + std::to_string(payload.size() / 8) +
                      " samples but header 'nrows' x 'ncols' requires " + std::to_string(n));
  }
  hf.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t u = 0;
    for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(payload[8 * k + b])) << (8 * b);
    hf.samples[k] = detail::ingest_value(std::bit_cast<double>(u), hf.nodata);
  }
  return hf;
}

[[nodiscard]] inline std::string encode_portable(const HeightField& hf) {
  hf.validate();
  auto deg = [](double r) { return r * 180.0 / kPi; };
  std::ostringstream h;
  h.precision(17);
  h << "nrows=" << hf.rows << "\nncols=" << hf.cols << "\nulxmap=" << deg(hf.lon_bounds.lo)
    << "\nulymap=" << deg(hf.lat_bounds.hi)
    << "\nxdim=" << (hf.cols > 1 ? deg(hf.lon_bounds.width()) / (hf.cols - 1) : 1.0)
    << "\nydim=" << (hf.rows > 1 ? deg(hf.lat_bounds.width()) / (hf.rows - 1) : 1.0) << "\nnodata=" << hf.nodata
    << "\nbyteorder=little\ndtype=float64\n";
  const std::string header = h.str();
  std::string out(kPortableMagic);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((header.size() >> (8 * b)) & 0xff));
  out += header;
  for (double v : hf.samples) {
    const auto u = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
  }
  return out;
}

inline void save_portable(const HeightField& hf, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write '" + path.string() + "'");
  const std::string bytes = encode_portable(hf);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Portable files are recognized by their magic; anything else is read as a
/// raw DEM whose header sits next to it with a .hdr extension.
[[nodiscard]] inline HeightField load_heightfield(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  if (bytes.starts_with(kPortableMagic)) return decode_portable(bytes);
  std::filesystem::path hdr = path;
  hdr.replace_extension(".hdr");
  if (!std::filesystem::exists(hdr)) {
    hdr = path.string() + ".hdr";
    if (!std::filesystem::exists(hdr)) throw IngestError("raw DEM '" + path.string() + "': no sidecar .hdr header");
  }
  return decode_raw_dem(detail::read_file(hdr), bytes);
}

enum class SynthKind { Flat, SinglePeak, Sinusoidal };

struct SynthSpec {
  SynthKind kind = SynthKind::Flat;
  /// Flat level, peak height, or sinusoid amplitude (meters).
  double height = 0.0;
  double peak_lat = 0.1;
  double peak_lon = 0.1;
  double wavenumber = 8.0;
  int rows = 513;
  int cols = 1025;
  Interval lat_bounds{-kPi / 2, kPi / 2};
  Interval lon_bounds{-kPi, kPi};
};

[[nodiscard]] inline HeightField synth_heightfield(const SynthSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) throw InvalidArgument("synth_heightfield: need at least 2 rows and cols");
  if (spec.kind == SynthKind::Sinusoidal && !(spec.height >= 0.0 && spec.height <= kMaxHeight)) {
    throw InvalidArgument("synth_heightfield: sinusoid amplitude must lie in [0, 9000]");
  }
  HeightField hf;
  hf.rows = spec.rows;
  hf.cols = spec.cols;
  hf.lat_bounds = spec.lat_bounds;
  hf.lon_bounds = spec.lon_bounds;
  hf.samples.assign(static_cast<std::size_t>(hf.rows) * static_cast<std::size_t>(hf.cols), 0.0);

  int peak_row = 0, peak_col = 0;
  if (spec.kind == SynthKind::SinglePeak) {
    const double fr = (hf.lat_bounds.hi - spec.peak_lat) / hf.lat_bounds.width() * (hf.rows - 1);
    const double fc = (spec.peak_lon - hf.lon_bounds.lo) / hf.lon_bounds.width() * (hf.cols - 1);
    peak_row = std::clamp(static_cast<int>(std::lround(fr)), 0, hf.rows - 1);
    peak_col = std::clamp(static_cast<int>(std::lround(fc)), 0, hf.cols - 1);
  }
  for (int i = 0; i < hf.rows; ++i) {
    const double lat = hf.lat_of_row(i);
    for (int j = 0; j < hf.cols; ++j) {
      double v = 0.0;
      switch (spec.kind) {
        case SynthKind::Flat: v = spec.height; break;
        case SynthKind::SinglePeak: v = (i == peak_row && j == peak_col) ? spec.height : 0.0; break;
        case SynthKind::Sinusoidal:
          v = spec.height * (1.0 + std::sin(spec.wavenumber * lat) * std::cos(spec.wavenumber * hf.lon_of_col(j))) / 2;
          break;
      }
      hf.samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(hf.cols) + static_cast<std::size_t>(j)] =
          std::clamp(v, kMinHeight, kMaxHeight);
    }
  }
  return hf;
}

}  // namespace abin
