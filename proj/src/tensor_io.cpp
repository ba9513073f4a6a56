#include "radex/tensor_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "radex/csv.hpp"
#include "radex/error.hpp"
#include "radex/image.hpp"
#include "radex/png_io.hpp"

namespace radex::cam {

namespace {

constexpr char kMagic[4] = {'A', 'T', 'N', 'S'};
constexpr std::uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "tensor container I/O assumes a little-endian host");

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

TensorStack read_atns(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail(ErrorKind::BadFormat, path.string() + " is not a tensor container");
  const auto version = read_le<std::uint16_t>(in);
  if (version != kVersion)
    fail(ErrorKind::BadFormat,
         path.string() + ": unsupported container version " +
             std::to_string(version));
  const auto k = read_le<std::uint32_t>(in);
  const auto h = read_le<std::uint32_t>(in);
  const auto w = read_le<std::uint32_t>(in);
  if (!in || k < 1 || h < 1 || w < 1)
    fail(ErrorKind::BadFormat, path.string() + ": bad tensor dimensions");

  const std::size_t count =
      static_cast<std::size_t>(k) * h * w;
  std::vector<float> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (!in) fail(ErrorKind::BadFormat, path.string() + ": truncated tensor");

  TensorStack stack;
  stack.k = static_cast<int>(k);
  stack.h = static_cast<int>(h);
  stack.w = static_cast<int>(w);
  stack.data.assign(raw.begin(), raw.end());
  stack.validate();
  return stack;
}

void write_atns(const std::filesystem::path& path, const TensorStack& stack) {
  stack.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.write(kMagic, 4);
  write_le(out, kVersion);
  write_le(out, static_cast<std::uint32_t>(stack.k));
  write_le(out, static_cast<std::uint32_t>(stack.h));
  write_le(out, static_cast<std::uint32_t>(stack.w));
  for (double v : stack.data) write_le(out, static_cast<float>(v));
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

std::vector<double> read_weights_csv(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  std::vector<double> weights;
  for (const auto& row : rows) {
    if (row.size() != 1)
      fail(ErrorKind::BadFormat,
           path.string() + ": weights file must have one value per line");
    weights.push_back(csv::parse_double(row[0]));
  }
  if (weights.empty())
    fail(ErrorKind::BadFormat, path.string() + ": no weights found");
  return weights;
}

void write_saliency(const std::filesystem::path& png_path,
                    const std::filesystem::path& sidecar_path,
                    const SaliencyMap& map) {
  imaging::GrayImage2D img = imaging::GrayImage2D::filled(map.w, map.h, 0.0);
  for (std::size_t i = 0; i < map.values.size(); ++i)
    img.pixels[i] = map.values[i] * 255.0;
  imaging::write_gray_png8(png_path, img);

  TensorStack sidecar;
  sidecar.k = 1;
  sidecar.h = map.h;
  sidecar.w = map.w;
  sidecar.data = map.values;
  write_atns(sidecar_path, sidecar);
}

SaliencyMap read_saliency_sidecar(const std::filesystem::path& path) {
  const TensorStack stack = read_atns(path);
  if (stack.k != 1)
    fail(ErrorKind::BadFormat, path.string() + ": sidecar must have K = 1");
  return {stack.h, stack.w, stack.data};
}

}  // namespace radex::cam
