#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>

#include "credal/io.hpp"

namespace credal::io {

static_assert(std::endian::native == std::endian::little, "NPY reader assumes a little-endian host");

namespace {

using detail::require;

constexpr unsigned char kMagic[] = {0x93, 'N', 'U', 'M', 'P', 'Y'};
constexpr std::size_t kPreambleSize = 10;  // magic + 2 version bytes + u16 length

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Value text following 'key': in the header dict, up to the next top-level comma.
std::string_view dict_value(std::string_view header, std::string_view key) {
  const std::string quoted_single = "'" + std::string(key) + "'";
  const std::string quoted_double = "\"" + std::string(key) + "\"";
  auto pos = header.find(quoted_single);
  std::size_t key_len = quoted_single.size();
  if (pos == std::string_view::npos) {
    pos = header.find(quoted_double);
    key_len = quoted_double.size();
  }
  require(pos != std::string_view::npos, ErrorCode::MalformedHeader,
          "header lacks key '" + std::string(key) + "'");
  auto rest = header.substr(pos + key_len);
  rest = trim(rest);
  require(!rest.empty() && rest.front() == ':', ErrorCode::MalformedHeader,
          "expected ':' after '" + std::string(key) + "'");
  rest = trim(rest.substr(1));
  int depth = 0;
  std::size_t end = 0;
  for (; end < rest.size(); ++end) {
    const char ch = rest[end];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && (ch == ',' || ch == '}')) break;
  }
  return trim(rest.substr(0, end));
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

std::vector<std::size_t> parse_shape(std::string_view text) {
  require(text.size() >= 2 && text.front() == '(' && text.back() == ')', ErrorCode::MalformedHeader,
          "shape is not a tuple");
  std::vector<std::size_t> shape;
  std::string_view body = text.substr(1, text.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = trim(body.substr(0, comma));
    if (!item.empty()) {
      std::size_t v = 0;
      for (char ch : item) {
        require(std::isdigit(static_cast<unsigned char>(ch)) != 0, ErrorCode::MalformedHeader,
                "bad shape entry '" + std::string(item) + "'");
        v = v * 10 + static_cast<std::size_t>(ch - '0');
      }
      shape.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return shape;
}

struct Header {
  std::string descr;
  std::vector<std::size_t> shape;
  std::size_t payload_offset;
};

Header parse_header(std::span<const unsigned char> bytes) {
  require(bytes.size() >= kPreambleSize &&
              std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()),
          ErrorCode::BadMagic, "missing \\x93NUMPY magic");
  require(bytes[6] == 0x01 && bytes[7] == 0x00, ErrorCode::UnsupportedVersion,
          "NPY version " + std::to_string(bytes[6]) + "." + std::to_string(bytes[7]) +
              " (only 1.0 is supported)");
  const std::size_t header_len = static_cast<std::size_t>(bytes[8]) |
                                 (static_cast<std::size_t>(bytes[9]) << 8);
  require(bytes.size() >= kPreambleSize + header_len, ErrorCode::TruncatedPayload,
          "file ends inside the header");
  const std::string_view header(reinterpret_cast<const char*>(bytes.data()) + kPreambleSize,
                                header_len);

  Header h;
  h.descr = unquote(dict_value(header, "descr"));
  const auto fortran = dict_value(header, "fortran_order");
  require(fortran == "False" || fortran == "True", ErrorCode::MalformedHeader,
          "fortran_order must be True or False");
  require(fortran == "False", ErrorCode::FortranOrderUnsupported,
          "Fortran-ordered arrays are not supported");
  h.shape = parse_shape(dict_value(header, "shape"));
  h.payload_offset = kPreambleSize + header_len;
  return h;
}

std::size_t element_count(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

template <typename T>
T load_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<unsigned char> encode(std::string_view descr, std::span<const std::size_t> shape,
                                  std::span<const unsigned char> payload) {
  std::string dict = "{'descr': '" + std::string(descr) + "', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    dict += std::to_string(shape[i]);
    if (shape.size() == 1 || i + 1 < shape.size()) dict += ",";
    if (i + 1 < shape.size()) dict += " ";
  }
  dict += "), }";
  const std::size_t unpadded = kPreambleSize + dict.size() + 1;
  const std::size_t padded = (unpadded + 63) / 64 * 64;
  dict.append(padded - unpadded, ' ');
  dict.push_back('\n');

  std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(0x01);
  out.push_back(0x00);
  out.push_back(static_cast<unsigned char>(dict.size() & 0xFF));
  out.push_back(static_cast<unsigned char>((dict.size() >> 8) & 0xFF));
  out.insert(out.end(), dict.begin(), dict.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

}  // namespace

NpyArray parse_npy(std::span<const unsigned char> bytes) {
  const Header h = parse_header(bytes);
  Dtype dtype;
  std::size_t item = 0;
  if (h.descr == "<f8") {
    dtype = Dtype::F64;
    item = 8;
  } else if (h.descr == "<f4") {
    dtype = Dtype::F32;
    item = 4;
  } else {
    throw Error(ErrorCode::UnsupportedDtype, "descr '" + h.descr + "' (expected '<f4' or '<f8')");
  }
  require(h.shape.size() == 2 || h.shape.size() == 3, ErrorCode::ShapeRankInvalid,
          "shape has rank " + std::to_string(h.shape.size()) + " (expected 2 or 3)");

  const std::size_t count = element_count(h.shape);
  require(bytes.size() - h.payload_offset >= count * item, ErrorCode::TruncatedPayload,
          "payload holds " + std::to_string(bytes.size() - h.payload_offset) + " bytes, need " +
              std::to_string(count * item));

  NpyArray out;
  out.dtype = dtype;
  out.payload_offset = h.payload_offset;
  out.shape = h.shape.size() == 2 ? std::vector<std::size_t>{1, h.shape[0], h.shape[1]} : h.shape;
  out.data.resize(count);
  const unsigned char* p = bytes.data() + h.payload_offset;
  for (std::size_t i = 0; i < count; ++i) {
    out.data[i] = dtype == Dtype::F64 ? load_le<double>(p + i * 8)
                                      : static_cast<double>(load_le<float>(p + i * 4));
  }
  return out;
}

NpyArray read_npy(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  return parse_npy(bytes);
}

std::vector<unsigned char> encode_npy(std::span<const double> data,
                                      std::span<const std::size_t> shape, Dtype dtype) {
  require(element_count(shape) == data.size(), ErrorCode::DimensionMismatch,
          "shape does not match data length");
  std::vector<unsigned char> payload;
  if (dtype == Dtype::F64) {
    payload.resize(data.size() * 8);
    std::memcpy(payload.data(), data.data(), payload.size());
    return encode("<f8", shape, payload);
  }
  payload.resize(data.size() * 4);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto f = static_cast<float>(data[i]);
    std::memcpy(payload.data() + i * 4, &f, 4);
  }
  return encode("<f4", shape, payload);
}

void write_npy(const std::filesystem::path& path, std::span<const double> data,
               std::span<const std::size_t> shape, Dtype dtype) {
  const auto bytes = encode_npy(data, shape, dtype);
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorCode::IoFailure, "write failed for " + path.string());
}

std::vector<std::size_t> read_npy_labels(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const Header h = parse_header(bytes);
  std::size_t item = 0;
  if (h.descr == "<i8") {
    item = 8;
  } else if (h.descr == "<i4") {
    item = 4;
  } else {
    throw Error(ErrorCode::UnsupportedDtype, "label descr '" + h.descr + "' (expected '<i4' or '<i8')");
  }
  require(h.shape.size() == 1, ErrorCode::ShapeRankInvalid, "labels must be a 1-D array");
  const std::size_t count = h.shape[0];
  require(bytes.size() - h.payload_offset >= count * item, ErrorCode::TruncatedPayload,
          "label payload is truncated");
  std::vector<std::size_t> labels(count);
  const unsigned char* p = bytes.data() + h.payload_offset;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t v = item == 8 ? load_le<std::int64_t>(p + i * 8)
                                     : static_cast<std::int64_t>(load_le<std::int32_t>(p + i * 4));
    require(v >= 0, ErrorCode::LabelOutOfRange, "negative label at index " + std::to_string(i));
    labels[i] = static_cast<std::size_t>(v);
  }
  return labels;
}

void write_npy_labels(const std::filesystem::path& path, std::span<const std::size_t> labels) {
  std::vector<unsigned char> payload(labels.size() * 8);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto v = static_cast<std::int64_t>(labels[i]);
    std::memcpy(payload.data() + i * 8, &v, 8);
  }
  const std::size_t shape[] = {labels.size()};
  const auto bytes = encode("<i8", shape, payload);
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

LabeledBatch batch_from_npy(const NpyArray& array, double tolerance) {
  require(array.shape.size() == 3, ErrorCode::ShapeRankInvalid, "expected a rank-3 array");
  const std::size_t instances = array.shape[0];
  const std::size_t samples = array.shape[1];
  const std::size_t classes = array.shape[2];
  const std::size_t item = array.dtype == Dtype::F64 ? 8 : 4;

  for (std::size_t i = 0; i < array.data.size(); ++i) {
    require(std::isfinite(array.data[i]), ErrorCode::InvalidProbability,
            "non-finite value at byte offset " + std::to_string(array.payload_offset + i * item));
  }

  LabeledBatch batch;
  batch.instances.reserve(instances);
  const std::size_t stride = samples * classes;
  const std::span<const double> all(array.data);
  for (std::size_t i = 0; i < instances; ++i) {
    try {
      batch.instances.push_back(
          PredictionSet::from_flat(all.subspan(i * stride, stride), samples, classes, tolerance));
    } catch (const Error& e) {
      throw Error(e.code(), "instance " + std::to_string(i) + " (byte offset " +
                                std::to_string(array.payload_offset + i * stride * item) +
                                "): " + e.what());
    }
    batch.ids.push_back(std::to_string(i));
  }
  return batch;
}

}  // namespace credal::io
