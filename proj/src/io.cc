#include "okg/io.hh"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

namespace okg {

namespace {

constexpr size_t header_size = 64;

void put_u32(std::string& buf, std::uint32_t v) {
  buf.append(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::string& buf, double v) { buf.append(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(const std::string& buf, size_t at) {
  std::uint32_t v;
  std::memcpy(&v, buf.data() + at, 4);
  return v;
}

double get_f64(const std::string& buf, size_t at) {
  double v;
  std::memcpy(&v, buf.data() + at, 8);
  return v;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!in.good() && !in.eof()) throw std::runtime_error(path + ": read failed");
  return buf;
}

std::string make_header(const char magic[4], const GridSpec& g, std::uint32_t word) {
  std::string buf;
  buf.reserve(header_size);
  buf.append(magic, 4);
  put_u32(buf, static_cast<std::uint32_t>(g.d));
  put_u32(buf, static_cast<std::uint32_t>(g.n));
  put_u32(buf, word);
  put_f64(buf, g.L);
  buf.resize(header_size, '\0');
  return buf;
}

GridSpec parse_header(const std::string& buf, const char magic[4], const std::string& path,
                      std::uint32_t* word) {
  if (buf.size() < header_size) throw std::runtime_error(path + ": truncated header");
  if (std::memcmp(buf.data(), magic, 4) != 0) throw std::runtime_error(path + ": bad magic");
  GridSpec g;
  g.d = static_cast<int>(get_u32(buf, 4));
  g.n = static_cast<int>(get_u32(buf, 8));
  *word = get_u32(buf, 12);
  g.L = get_f64(buf, 16);
  validate(g);
  return g;
}

void append_block(std::string& buf, const CArray& data) {
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    put_f64(buf, data[i].real());
    put_f64(buf, data[i].imag());
  }
}

CArray parse_block(const std::string& buf, size_t at, std::int64_t count, const std::string& path) {
  if (buf.size() < at + static_cast<size_t>(count) * 16)
    throw std::runtime_error(path + ": truncated payload");
  CArray out(count);
  for (std::int64_t i = 0; i < count; ++i)
    out[i] = cxd(get_f64(buf, at + 16 * i), get_f64(buf, at + 16 * i + 8));
  return out;
}

void write_lattice(const std::string& path, const GridSpec& g, DataDomain domain,
                   const CArray& data) {
  validate(g);
  if (data.size() != g.size()) throw std::invalid_argument(path + ": lattice size mismatch");
  std::string buf = make_header("OKG1", g, static_cast<std::uint32_t>(domain));
  buf.reserve(buf.size() + static_cast<size_t>(g.size()) * 16);
  append_block(buf, data);
  atomic_write(path, buf);
}

}  // namespace

void write_field(const std::string& path, const Field& f) {
  write_lattice(path, f.grid, DataDomain::physical, f.samples);
}

void write_spectrum(const std::string& path, const Spectrum& F) {
  write_lattice(path, F.grid, DataDomain::frequency, F.coeffs);
}

Field read_field(const std::string& path) {
  const std::string buf = read_all(path);
  std::uint32_t word;
  Field f;
  f.grid = parse_header(buf, "OKG1", path, &word);
  if (word != static_cast<std::uint32_t>(DataDomain::physical))
    throw std::runtime_error(path + ": not a physical-domain file");
  f.samples = parse_block(buf, header_size, f.grid.size(), path);
  return f;
}

Spectrum read_spectrum(const std::string& path) {
  const std::string buf = read_all(path);
  std::uint32_t word;
  Spectrum F;
  F.grid = parse_header(buf, "OKG1", path, &word);
  if (word != static_cast<std::uint32_t>(DataDomain::frequency))
    throw std::runtime_error(path + ": not a frequency-domain file");
  F.coeffs = parse_block(buf, header_size, F.grid.size(), path);
  return F;
}

void write_series(const std::string& path, const TimeSeriesField& u) {
  validate(u.grid);
  if (u.snapshots.size() != u.time.times.size())
    throw std::invalid_argument(path + ": snapshot/time count mismatch");
  std::string buf = make_header("OKGS", u.grid, static_cast<std::uint32_t>(u.snapshots.size()));
  for (size_t i = 0; i < u.snapshots.size(); ++i) {
    if (u.snapshots[i].coeffs.size() != u.grid.size())
      throw std::invalid_argument(path + ": snapshot size mismatch");
    put_f64(buf, u.time.times[i]);
    append_block(buf, u.snapshots[i].coeffs);
  }
  atomic_write(path, buf);
}

TimeSeriesField read_series(const std::string& path) {
  const std::string buf = read_all(path);
  std::uint32_t count;
  TimeSeriesField u;
  u.grid = parse_header(buf, "OKGS", path, &count);
  const size_t block = 8 + static_cast<size_t>(u.grid.size()) * 16;
  size_t at = header_size;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (buf.size() < at + block) throw std::runtime_error(path + ": truncated series");
    u.time.times.push_back(get_f64(buf, at));
    Spectrum snap;
    snap.grid = u.grid;
    snap.coeffs = parse_block(buf, at + 8, u.grid.size(), path);
    u.snapshots.push_back(std::move(snap));
    at += block;
  }
  // Rebuild trapezoid weights from the stored times.
  const size_t m = u.time.times.size();
  u.time.weights.assign(m, 0.0);
  if (m >= 2) {
    for (size_t i = 0; i < m; ++i) {
      const double left = i == 0 ? u.time.times[0] : u.time.times[i - 1];
      const double right = i + 1 == m ? u.time.times[m - 1] : u.time.times[i + 1];
      u.time.weights[i] = 0.5 * (right - left);
    }
  }
  return u;
}

void atomic_write(const std::string& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw std::runtime_error(tmp.string() + ": write failed");
  }
  fs::rename(tmp, target);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace okg
