#include "snnlab/idx.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>

#include "snnlab/error.h"

namespace snnlab {

namespace {

constexpr std::uint8_t kUnsignedByte = 0x08;

std::uint32_t ReadBigEndian32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

}  // namespace

IdxArray ParseIdx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw FormatError("IDX header truncated: need 4 bytes, got " +
                      std::to_string(bytes.size()));
  }
  for (std::size_t offset : {0, 1}) {
    if (bytes[offset] != 0) {
      throw FormatError("IDX bad magic at byte offset " + std::to_string(offset) +
                        ": expected 0x00, got " + std::to_string(bytes[offset]));
    }
  }
  if (bytes[2] != kUnsignedByte) {
    throw FormatError("IDX bad magic at byte offset 2: unsupported data type " +
                      std::to_string(bytes[2]) + " (only 0x08 unsigned byte)");
  }
  const std::size_t ndims = bytes[3];
  if (ndims == 0) throw FormatError("IDX bad magic at byte offset 3: zero dimensions");
  const std::size_t header = 4 + 4 * ndims;
  if (bytes.size() < header) {
    throw FormatError("IDX dimension table truncated: expected " + std::to_string(header) +
                      " header bytes, got " + std::to_string(bytes.size()));
  }

  IdxArray out;
  std::uint64_t count = 1;
  for (std::size_t d = 0; d < ndims; ++d) {
    const std::uint32_t dim = ReadBigEndian32(bytes.data() + 4 + 4 * d);
    out.dims.push_back(dim);
    if (dim != 0 && count > std::numeric_limits<std::uint64_t>::max() / dim) {
      throw FormatError("IDX dimension overflow: product of sizes exceeds 64 bits");
    }
    count *= dim;
  }
  if (count > std::numeric_limits<std::size_t>::max() - header) {
    throw FormatError("IDX dimension overflow: payload size not addressable");
  }
  const std::size_t available = bytes.size() - header;
  if (available < count) {
    throw FormatError("IDX payload truncated: expected " + std::to_string(count) +
                      " bytes, got " + std::to_string(available));
  }
  out.data.assign(bytes.begin() + header, bytes.begin() + header + count);
  return out;
}

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

Dataset LoadIdx(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  const IdxArray arr = ParseIdx(bytes);
  if (arr.dims.size() != 3 && arr.dims.size() != 4) {
    throw FormatError("IDX image file '" + path + "' must have 3 or 4 dimensions, has " +
                      std::to_string(arr.dims.size()));
  }
  Dataset ds;
  ds.height = static_cast<int>(arr.dims[1]);
  ds.width = static_cast<int>(arr.dims[2]);
  ds.channels = arr.dims.size() == 4 ? static_cast<int>(arr.dims[3]) : 1;
  ds.num_classes = 1;
  ds.labels.assign(arr.dims[0], 0);
  ds.images.resize(arr.data.size());
  std::transform(arr.data.begin(), arr.data.end(), ds.images.begin(),
                 [](std::uint8_t b) { return b / 255.0; });
  return ds;
}

std::vector<int> LoadIdxLabels(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  const IdxArray arr = ParseIdx(bytes);
  if (arr.dims.size() != 1) {
    throw FormatError("IDX label file '" + path + "' must be one-dimensional");
  }
  return std::vector<int>(arr.data.begin(), arr.data.end());
}

Dataset LoadIdxDataset(const std::string& images_path, const std::string& labels_path) {
  Dataset ds = LoadIdx(images_path);
  if (!labels_path.empty()) {
    std::vector<int> labels = LoadIdxLabels(labels_path);
    if (labels.size() != ds.size()) {
      throw FormatError("IDX label count " + std::to_string(labels.size()) +
                        " does not match image count " + std::to_string(ds.size()));
    }
    ds.labels = std::move(labels);
    ds.num_classes = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
  }
  ds.Validate();
  return ds;
}

}  // namespace snnlab
