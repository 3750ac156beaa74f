#include "snnlab/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "snnlab/error.h"
#include "snnlab/idx.h"

namespace snnlab {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'N', 'L', 'A', 'B', 'C', 'K'};

class Writer {
 public:
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F64(double v) { Le(std::bit_cast<std::uint64_t>(v), 8); }
  void Bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out.insert(out.end(), p, p + n);
  }
  std::vector<std::uint8_t> out;

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint32_t U32(const char* what) { return static_cast<std::uint32_t>(Le(4, what)); }
  std::uint64_t U64(const char* what) { return Le(8, what); }
  double F64(const char* what) { return std::bit_cast<double>(Le(8, what)); }
  std::span<const std::uint8_t> Bytes(std::size_t n, const char* what) {
    Need(n, what);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw FormatError(std::string("checkpoint truncated reading ") + what + " at offset " +
                        std::to_string(pos_));
    }
  }
  std::uint64_t Le(int n, const char* what) {
    Need(n, what);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t KindCode(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv3x3: return 0;
    case LayerKind::kAvgPool2x2: return 1;
    case LayerKind::kFullyConnected: return 2;
    case LayerKind::kOutput: return 3;
  }
  return 255;
}

}  // namespace

std::vector<std::uint8_t> SerializeCheckpoint(const Network& net) {
  Writer w;
  w.Bytes(kMagic, sizeof(kMagic));
  w.U32(kCheckpointVersion);
  const NeuronConfig& n = net.neuron();
  w.F64(n.tau_m);
  w.F64(n.v_th);
  w.F64(n.u_rest);
  w.F64(n.epsilon);
  const std::string arch = FormatArchitecture(net.architecture());
  w.U32(static_cast<std::uint32_t>(arch.size()));
  w.Bytes(arch.data(), arch.size());
  w.U32(static_cast<std::uint32_t>(net.num_layers()));
  for (const Layer& layer : net.layers()) {
    const LayerSpec& s = layer.spec;
    w.U32(KindCode(s.kind));
    for (const Shape& shape : {s.in_shape, s.out_shape}) {
      w.U32(shape.channels);
      w.U32(shape.height);
      w.U32(shape.width);
    }
    w.U64(layer.weights.size());
    for (double x : layer.weights) w.F64(x);
  }
  return std::move(w.out);
}

Network DeserializeCheckpoint(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.Bytes(sizeof(kMagic), "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a checkpoint: bad magic at offset 0");
  }
  const std::uint32_t version = r.U32("version");
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  NeuronConfig neuron;
  neuron.tau_m = r.F64("tau_m");
  neuron.v_th = r.F64("v_th");
  neuron.u_rest = r.F64("u_rest");
  neuron.epsilon = r.F64("epsilon");
  neuron.Validate();

  const std::uint32_t arch_len = r.U32("architecture length");
  const auto arch_bytes = r.Bytes(arch_len, "architecture");
  const Architecture arch =
      ParseArchitecture(std::string(arch_bytes.begin(), arch_bytes.end()));
  const std::uint32_t count = r.U32("layer count");
  if (count != arch.layers.size()) {
    throw FormatError("checkpoint lists " + std::to_string(count) +
                      " layers, architecture has " + std::to_string(arch.layers.size()));
  }
  std::vector<Layer> layers;
  layers.reserve(count);
  for (std::uint32_t l = 0; l < count; ++l) {
    const LayerSpec& spec = arch.layers[l];
    const std::size_t at = r.pos();
    const std::uint32_t kind = r.U32("layer kind");
    Shape in, out;
    for (Shape* shape : {&in, &out}) {
      shape->channels = static_cast<int>(r.U32("shape"));
      shape->height = static_cast<int>(r.U32("shape"));
      shape->width = static_cast<int>(r.U32("shape"));
    }
    if (kind != KindCode(spec.kind) || in != spec.in_shape || out != spec.out_shape) {
      throw FormatError("layer " + std::to_string(l) + " record at offset " +
                        std::to_string(at) + " disagrees with the architecture");
    }
    const std::uint64_t n = r.U64("weight count");
    if (n != spec.weight_count()) {
      throw FormatError("layer " + std::to_string(l) + " has " + std::to_string(n) +
                        " weights, expected " + std::to_string(spec.weight_count()));
    }
    if (n > r.remaining() / 8) {
      throw FormatError("checkpoint truncated: layer " + std::to_string(l) + " needs " +
                        std::to_string(n * 8) + " bytes, " + std::to_string(r.remaining()) +
                        " left");
    }
    Layer layer{spec, std::vector<double>(n)};
    for (double& x : layer.weights) x = r.F64("weights");
    layers.push_back(std::move(layer));
  }
  if (r.remaining() != 0) {
    throw FormatError(std::to_string(r.remaining()) + " trailing bytes after checkpoint");
  }
  return Network(std::move(layers), neuron);
}

void SaveCheckpoint(const std::string& path, const Network& net) {
  const auto bytes = SerializeCheckpoint(net);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write failed: " + path);
}

Network LoadCheckpoint(const std::string& path) {
  return DeserializeCheckpoint(ReadFileBytes(path));
}

}  // namespace snnlab
