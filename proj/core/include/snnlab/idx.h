#ifndef SNNLAB_IDX_H_
#define SNNLAB_IDX_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snnlab/dataset.h"

namespace snnlab {

// Decoded IDX file restricted to unsigned-byte payloads (type 0x08).
struct IdxArray {
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;
};

// Layout: 0x00 0x00 <type> <ndims>, ndims big-endian uint32 sizes, then the
// row-major payload. Throws FormatError on a bad magic (naming the byte
// offset), a truncated payload (expected vs actual byte counts) or a
// dimension product that overflows.
IdxArray ParseIdx(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);

// Image file as a dataset: dims N x H x W or N x H x W x C. Labels are all
// zero with num_classes = 1 until labels are attached.
Dataset LoadIdx(const std::string& path);

// One-dimensional label file.
std::vector<int> LoadIdxLabels(const std::string& path);

}  // namespace snnlab

#endif  // SNNLAB_IDX_H_
