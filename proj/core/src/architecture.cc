#include "snnlab/architecture.h"

#include <charconv>
#include <sstream>

#include "snnlab/error.h"

namespace snnlab {

namespace {

int ParsePositive(std::string_view digits, std::string_view token) {
  int value = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec != std::errc() || ptr != end || value <= 0) {
    throw ConfigError("bad number in architecture token '" + std::string(token) + "'");
  }
  return value;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Shape ParseInputShape(std::string token) {
  // Accept 'x', 'X' and the UTF-8 multiplication sign as separators.
  for (std::size_t pos; (pos = token.find("\xC3\x97")) != std::string::npos;) {
    token.replace(pos, 2, "x");
  }
  for (char& c : token) {
    if (c == 'X') c = 'x';
  }
  std::vector<int> dims;
  std::string_view rest = token;
  while (true) {
    const auto pos = rest.find('x');
    dims.push_back(ParsePositive(rest.substr(0, pos), token));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (dims.size() != 2 && dims.size() != 3) {
    throw ConfigError("input token must be <H>x<W> or <H>x<W>x<C>, got '" + token + "'");
  }
  return Shape{dims.size() == 3 ? dims[2] : 1, dims[0], dims[1]};
}

}  // namespace

std::string Shape::ToString() const {
  std::ostringstream os;
  os << channels << "x" << height << "x" << width;
  return os.str();
}

std::string ToString(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv3x3: return "conv3x3";
    case LayerKind::kAvgPool2x2: return "avgpool2x2";
    case LayerKind::kFullyConnected: return "fc";
    case LayerKind::kOutput: return "output";
  }
  return "?";
}

std::size_t LayerSpec::weight_count() const {
  switch (kind) {
    case LayerKind::kConv3x3:
      return static_cast<std::size_t>(out_shape.channels) * in_shape.channels * 9;
    case LayerKind::kAvgPool2x2:
      return 0;
    case LayerKind::kFullyConnected:
    case LayerKind::kOutput:
      return out_shape.size() * in_shape.size();
  }
  return 0;
}

std::size_t LayerSpec::fan_in() const {
  switch (kind) {
    case LayerKind::kConv3x3: return static_cast<std::size_t>(in_shape.channels) * 9;
    case LayerKind::kAvgPool2x2: return 4;
    default: return in_shape.size();
  }
}

void ValidateLayerChain(const std::vector<LayerSpec>& layers) {
  if (layers.empty()) throw ConfigError("network needs at least one layer");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec& spec = layers[l];
    if (l > 0 && !(layers[l - 1].out_shape == spec.in_shape)) {
      throw DimensionError("layer " + std::to_string(l) + " expects input " +
                           spec.in_shape.ToString() + " but previous layer emits " +
                           layers[l - 1].out_shape.ToString());
    }
    const bool last = l + 1 == layers.size();
    if ((spec.kind == LayerKind::kOutput) != last) {
      throw ConfigError("exactly one output layer is required, and it must be last");
    }
    switch (spec.kind) {
      case LayerKind::kConv3x3:
        if (spec.out_shape.height != spec.in_shape.height ||
            spec.out_shape.width != spec.in_shape.width) {
          throw DimensionError("conv3x3 must preserve spatial size");
        }
        break;
      case LayerKind::kAvgPool2x2:
        if (spec.in_shape.height % 2 != 0 || spec.in_shape.width % 2 != 0 ||
            spec.out_shape.height * 2 != spec.in_shape.height ||
            spec.out_shape.width * 2 != spec.in_shape.width ||
            spec.out_shape.channels != spec.in_shape.channels) {
          throw DimensionError("avgpool2x2 needs even input size " +
                               spec.in_shape.ToString());
        }
        break;
      case LayerKind::kFullyConnected:
      case LayerKind::kOutput:
        if (spec.out_shape.channels != 1 || spec.out_shape.height != 1) {
          throw DimensionError("dense layers emit flat vectors");
        }
        break;
    }
  }
}

Architecture ParseArchitecture(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (c == '-') {
      tokens.push_back(current);
      current.clear();
    } else if (c != ' ' && c != '\t') {
      current.push_back(c);
    }
  }
  tokens.push_back(current);
  if (tokens.size() < 2 || tokens.front().empty()) {
    throw ConfigError("architecture needs an input token and at least one layer: '" +
                      std::string(text) + "'");
  }

  Architecture arch;
  arch.input = ParseInputShape(tokens.front());
  Shape shape = arch.input;
  bool flat = false;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    LayerSpec spec;
    spec.in_shape = shape;
    if (tok == "2P" || tok == "2p" || tok == "2s") {
      if (flat) throw ConfigError("pooling after a dense layer: '" + std::string(tok) + "'");
      spec.kind = LayerKind::kAvgPool2x2;
      spec.out_shape = Shape{shape.channels, shape.height / 2, shape.width / 2};
    } else if (EndsWith(tok, "C3")) {
      if (flat) throw ConfigError("convolution after a dense layer: '" + std::string(tok) + "'");
      spec.kind = LayerKind::kConv3x3;
      spec.out_shape = Shape{ParsePositive(tok.substr(0, tok.size() - 2), tok),
                             shape.height, shape.width};
    } else if (EndsWith(tok, "FC")) {
      spec.kind = LayerKind::kFullyConnected;
      spec.out_shape = Shape{1, 1, ParsePositive(tok.substr(0, tok.size() - 2), tok)};
      flat = true;
    } else if (EndsWith(tok, "o")) {
      spec.kind = LayerKind::kOutput;
      spec.out_shape = Shape{1, 1, ParsePositive(tok.substr(0, tok.size() - 1), tok)};
      flat = true;
    } else {
      throw ConfigError("unknown architecture token '" + std::string(tok) + "'");
    }
    arch.layers.push_back(spec);
    shape = spec.out_shape;
  }
  ValidateLayerChain(arch.layers);
  return arch;
}

std::string FormatArchitecture(const Architecture& arch) {
  std::ostringstream os;
  os << arch.input.height << "x" << arch.input.width;
  if (arch.input.channels != 1) os << "x" << arch.input.channels;
  for (const LayerSpec& spec : arch.layers) {
    os << "-";
    switch (spec.kind) {
      case LayerKind::kConv3x3: os << spec.out_shape.channels << "C3"; break;
      case LayerKind::kAvgPool2x2: os << "2P"; break;
      case LayerKind::kFullyConnected: os << spec.out_shape.size() << "FC"; break;
      case LayerKind::kOutput: os << spec.out_shape.size() << "o"; break;
    }
  }
  return os.str();
}

}  // namespace snnlab
