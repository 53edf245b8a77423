#include "uts/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include "uts/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace uts {
namespace {

constexpr char kMagic[] = "UTSCKPT v1\n";
constexpr char kParams[] = "PARAMS\n";
constexpr char kAccums[] = "ACCUMS\n";

void put_u32(std::ostream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

uint32_t get_u32(std::istream& is) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

void write_record(std::ostream& os, const std::string& name, const Tensor& t) {
  put_u32(os, static_cast<uint32_t>(name.size()));
  os.write(name.data(), static_cast<std::streamsize>(name.size()));
  uint8_t dtype = 0;  // f64
  os.write(reinterpret_cast<const char*>(&dtype), 1);
  put_u32(os, static_cast<uint32_t>(t.shape.size()));
  for (long d : t.shape) put_u32(os, static_cast<uint32_t>(d));
  os.write(reinterpret_cast<const char*>(t.data.data()),
           static_cast<std::streamsize>(sizeof(double)) * t.size());
}

std::pair<std::string, Tensor> read_record(std::istream& is) {
  uint32_t nlen = get_u32(is);
  std::string name(nlen, '\0');
  is.read(name.data(), nlen);
  uint8_t dtype = 0;
  is.read(reinterpret_cast<char*>(&dtype), 1);
  if (dtype != 0) throw DataError("checkpoint: unsupported dtype tag");
  uint32_t rank = get_u32(is);
  std::vector<long> shape(rank);
  for (uint32_t i = 0; i < rank; ++i) shape[i] = static_cast<long>(get_u32(is));
  Tensor t = Tensor::zeros(shape);
  is.read(reinterpret_cast<char*>(t.data.data()),
          static_cast<std::streamsize>(sizeof(double)) * t.size());
  if (!is) throw DataError("checkpoint: truncated record for " + name);
  return {std::move(name), std::move(t)};
}

void expect_tag(std::istream& is, const char* tag) {
  std::string buf(std::char_traits<char>::length(tag), '\0');
  is.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!is || buf != tag) throw DataError("checkpoint: bad section tag");
}

}  // namespace

void save_checkpoint(const ParamStore& params, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw DataError("cannot open checkpoint for writing: " + path);
  os.write(kMagic, sizeof kMagic - 1);
  os.write(kParams, sizeof kParams - 1);
  put_u32(os, static_cast<uint32_t>(params.entries().size()));
  for (const auto& [name, t] : params.entries()) write_record(os, name, t);
  os.write(kAccums, sizeof kAccums - 1);
  put_u32(os, static_cast<uint32_t>(params.accumulators().size()));
  for (const auto& [name, t] : params.accumulators()) write_record(os, name, t);
  if (!os) throw DataError("checkpoint write failed: " + path);
}

ParamStore load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open checkpoint: " + path);
  expect_tag(is, kMagic);
  expect_tag(is, kParams);
  ParamStore ps;
  uint32_t n = get_u32(is);
  for (uint32_t i = 0; i < n; ++i) {
    auto [name, t] = read_record(is);
    ps.add(name, std::move(t));
  }
  expect_tag(is, kAccums);
  uint32_t m = get_u32(is);
  for (uint32_t i = 0; i < m; ++i) {
    auto [name, t] = read_record(is);
    Tensor& acc = ps.accumulator(name);
    if (acc.shape != t.shape) throw DataError("checkpoint: accumulator shape mismatch " + name);
    acc = std::move(t);
  }
  ps.check_invariants();
  return ps;
}

}  // namespace uts
