#ifndef SNNLAB_CHECKPOINT_H_
#define SNNLAB_CHECKPOINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snnlab/network.h"

namespace snnlab {

// Binary network checkpoint, all integers and floats little-endian:
//
//   offset  size  field
//   0       8     magic "SNNLABCK"
//   8       4     u32 format version (kCheckpointVersion)
//   12      8     f64 tau_m (+inf for integrate-and-fire)
//   20      8     f64 v_th
//   28      8     f64 u_rest
//   36      8     f64 epsilon
//   44      4     u32 architecture string length n
//   48      n     architecture string (FormatArchitecture)
//   ...     4     u32 layer count L
//   per layer:
//           4     u32 layer kind (0 conv3x3, 1 avgpool2x2, 2 fc, 3 output)
//           24    u32 x 6: in (channels, height, width), out (channels, height, width)
//           8     u64 weight count w
//           8w    f64 weights
//
// Loading checks that the per-layer records agree with the architecture
// string. Trailing bytes are an error.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> SerializeCheckpoint(const Network& net);
Network DeserializeCheckpoint(std::span<const std::uint8_t> bytes);

void SaveCheckpoint(const std::string& path, const Network& net);
Network LoadCheckpoint(const std::string& path);

}  // namespace snnlab

#endif  // SNNLAB_CHECKPOINT_H_
