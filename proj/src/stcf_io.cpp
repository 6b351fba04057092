#include "stlcst/stcf_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace stlcst {

static_assert(std::endian::native == std::endian::little,
              "STCF serialization assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'T', 'C', 'F'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void put_bytes(const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    buf_.insert(buf_.end(), c, c + n);
  }
  void put_u32(std::uint32_t v) { put_bytes(&v, 4); }
  void put_u8(std::uint8_t v) { put_bytes(&v, 1); }
  void put_f64(double v) { put_bytes(&v, 8); }

  void flush(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StcfError("cannot open file for writing: " + path);
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out) throw StcfError("write failed: " + path);
  }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StcfError("cannot open file for reading: " + path);
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    in.seekg(0, std::ios::beg);
    buf_.resize(static_cast<std::size_t>(size));
    in.read(buf_.data(), size);
    if (!in) throw StcfError("read failed: " + path);
  }

  void need(std::size_t n, const char* what) {
    if (off_ + n > buf_.size()) {
      throw StcfError(path_ + ": unexpected end of file at byte offset " +
                      std::to_string(buf_.size()) + " while reading " + what);
    }
  }
  void get_bytes(void* p, std::size_t n, const char* what) {
    need(n, what);
    std::memcpy(p, buf_.data() + off_, n);
    off_ += n;
  }
  std::uint32_t get_u32(const char* what) {
    std::uint32_t v;
    get_bytes(&v, 4, what);
    return v;
  }
  std::uint8_t get_u8(const char* what) {
    std::uint8_t v;
    get_bytes(&v, 1, what);
    return v;
  }
  double get_f64(const char* what) {
    double v;
    get_bytes(&v, 8, what);
    return v;
  }
  std::size_t offset() const { return off_; }
  std::size_t remaining() const { return buf_.size() - off_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::vector<char> buf_;
  std::size_t off_ = 0;
};

template <class GridT>
void write_field(const Field<GridT>& f, std::uint8_t kind, const std::string& path) {
  f.grid.validate();
  Writer w;
  w.put_bytes(kMagic, 4);
  w.put_u32(kVersion);
  w.put_u8(kind);
  w.put_u8(0);
  w.put_u8(0);
  w.put_u8(0);
  for (int k = 0; k < 4; ++k) w.put_u32(static_cast<std::uint32_t>(f.grid.n[k]));
  for (int k = 0; k < 4; ++k) w.put_f64(f.grid.spacing[k]);
  for (int k = 0; k < 4; ++k) w.put_f64(f.grid.origin[k]);
  for (const Multivector& h : f.data) {
    w.put_bytes(h.c.data(), sizeof(double) * kNumBlades);
  }
  w.flush(path);
}

template <class GridT>
Field<GridT> read_field(std::uint8_t expected_kind, const std::string& path) {
  Reader r(path);

  char magic[4];
  r.get_bytes(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw StcfError(path + ": bad magic at byte offset 0, expected \"STCF\"");
  }
  const std::uint32_t version = r.get_u32("version");
  if (version != kVersion) {
    throw StcfError(path + ": unsupported version " + std::to_string(version) +
                    ", expected 1");
  }
  const std::uint8_t kind = r.get_u8("kind");
  if (kind != expected_kind) {
    throw StcfError(path + ": kind byte is " + std::to_string(kind) + ", expected " +
                    std::to_string(expected_kind));
  }
  for (int i = 0; i < 3; ++i) {
    if (r.get_u8("reserved bytes") != 0) {
      throw StcfError(path + ": reserved bytes must be zero");
    }
  }

  Field<GridT> f{};
  for (int k = 0; k < 4; ++k) {
    const std::uint32_t d = r.get_u32("dims");
    if (d == 0 || d > (1u << 20)) {
      throw StcfError(path + ": dimension " + std::to_string(d) + " out of range");
    }
    f.grid.n[k] = static_cast<int>(d);
  }
  for (int k = 0; k < 4; ++k) f.grid.spacing[k] = r.get_f64("spacings");
  for (int k = 0; k < 4; ++k) f.grid.origin[k] = r.get_f64("origins");
  try {
    f.grid.validate();
  } catch (const std::exception& e) {
    throw StcfError(path + ": " + e.what());
  }

  const std::int64_t total = f.grid.total();
  const std::size_t payload = static_cast<std::size_t>(total) * sizeof(double) * kNumBlades;
  if (r.remaining() < payload) {
    throw StcfError(path + ": unexpected end of file at byte offset " +
                    std::to_string(r.offset() + r.remaining()) + ", need " +
                    std::to_string(r.offset() + payload) + " bytes");
  }
  if (r.remaining() > payload) {
    throw StcfError(path + ": trailing bytes after byte offset " +
                    std::to_string(r.offset() + payload));
  }
  f.data.resize(static_cast<std::size_t>(total));
  for (Multivector& h : f.data) {
    r.get_bytes(h.c.data(), sizeof(double) * kNumBlades, "coefficients");
  }
  return f;
}

template <class GridT>
void write_csv_impl(const Field<GridT>& f, const std::array<const char*, 4>& axis_names,
                    const std::string& path, const std::array<int, 4>& slice) {
  for (int k = 0; k < 4; ++k) {
    if (slice[k] >= f.grid.n[k]) {
      throw StcfError("slice index " + std::to_string(slice[k]) + " out of range on axis " +
                      axis_names[k] + " (size " + std::to_string(f.grid.n[k]) + ")");
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw StcfError("cannot open file for writing: " + path);
  for (int k = 0; k < 4; ++k) out << axis_names[k] << ",";
  const auto& names = blade_names();
  for (int i = 0; i < kNumBlades; ++i) out << names[i] << (i + 1 < kNumBlades ? "," : "\n");
  char buf[40];
  std::array<int, 4> idx{};
  std::int64_t flat = 0;
  for (idx[0] = 0; idx[0] < f.grid.n[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < f.grid.n[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < f.grid.n[2]; ++idx[2]) {
        for (idx[3] = 0; idx[3] < f.grid.n[3]; ++idx[3], ++flat) {
          bool skip = false;
          for (int k = 0; k < 4; ++k) skip = skip || (slice[k] >= 0 && idx[k] != slice[k]);
          if (skip) continue;
          for (int k = 0; k < 4; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,", f.grid.coord(k, idx[k]));
            out << buf;
          }
          const Multivector& h = f.data[static_cast<std::size_t>(flat)];
          for (int i = 0; i < kNumBlades; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g%c", h.c[i], i + 1 < kNumBlades ? ',' : '\n');
            out << buf;
          }
        }
      }
    }
  }
  if (!out) throw StcfError("write failed: " + path);
}

}  // namespace

void write_signal(const SpaceTimeSignal& f, const std::string& path) {
  write_field(f, 0, path);
}

SpaceTimeSignal read_signal(const std::string& path) {
  return read_field<SpaceTimeGrid>(0, path);
}

void write_spectrum(const Spectrum& f, const std::string& path) {
  write_field(f, 1, path);
}

Spectrum read_spectrum(const std::string& path) {
  return read_field<FrequencyGrid>(1, path);
}

int stcf_kind(const std::string& path) {
  Reader r(path);
  char magic[4];
  r.get_bytes(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw StcfError(path + ": bad magic at byte offset 0, expected \"STCF\"");
  }
  r.get_u32("version");
  return r.get_u8("kind");
}

void write_csv(const SpaceTimeSignal& f, const std::string& path,
               const std::array<int, 4>& slice) {
  write_csv_impl(f, {"t", "x1", "x2", "x3"}, path, slice);
}

void write_csv(const Spectrum& f, const std::string& path, const std::array<int, 4>& slice) {
  write_csv_impl(f, {"wt", "w1", "w2", "w3"}, path, slice);
}

}  // namespace stlcst
