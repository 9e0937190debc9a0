#include "mofa/npy.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace mofa {

namespace {

constexpr std::array<char, 6> kMagic{'\x93', 'N', 'U', 'M', 'P', 'Y'};
constexpr std::size_t kAlign = 64;

static_assert(sizeof(float) == 4);

// Returns the text following `'key':` in a header dict, or throws.
std::string_view dict_value(std::string_view header, std::string_view key) {
  for (const char quote : {'\'', '"'}) {
    const std::string needle = std::string(1, quote) + std::string(key) + quote;
    const auto pos = header.find(needle);
    if (pos == std::string_view::npos) {
      continue;
    }
    auto rest = header.substr(pos + needle.size());
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      break;
    }
    rest = rest.substr(colon + 1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
      rest.remove_prefix(1);
    }
    return rest;
  }
  throw FormatError("header is missing '" + std::string(key) + "'");
}

std::string parse_descr(std::string_view header) {
  auto v = dict_value(header, "descr");
  if (v.empty() || (v.front() != '\'' && v.front() != '"')) {
    throw FormatError("malformed descr");
  }
  const char quote = v.front();
  const auto close = v.find(quote, 1);
  if (close == std::string_view::npos) {
    throw FormatError("malformed descr");
  }
  return std::string(v.substr(1, close - 1));
}

bool parse_fortran(std::string_view header) {
  const auto v = dict_value(header, "fortran_order");
  if (v.starts_with("False")) {
    return false;
  }
  if (v.starts_with("True")) {
    return true;
  }
  throw FormatError("malformed fortran_order");
}

std::vector<std::size_t> parse_shape(std::string_view header) {
  auto v = dict_value(header, "shape");
  if (v.empty() || v.front() != '(') {
    throw FormatError("malformed shape");
  }
  const auto close = v.find(')');
  if (close == std::string_view::npos) {
    throw FormatError("malformed shape");
  }
  std::vector<std::size_t> shape;
  std::string_view body = v.substr(1, close - 1);
  std::size_t i = 0;
  while (i < body.size()) {
    if (std::isdigit(static_cast<unsigned char>(body[i]))) {
      std::size_t value = 0;
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        value = value * 10 + static_cast<std::size_t>(body[i] - '0');
        ++i;
      }
      shape.push_back(value);
    } else if (body[i] == ',' || std::isspace(static_cast<unsigned char>(body[i])) || body[i] == 'L') {
      ++i;
    } else {
      throw FormatError("malformed shape");
    }
  }
  return shape;
}

std::uint32_t read_le(const unsigned char* p, std::size_t n) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  }
  return v;
}

}  // namespace

NpyMatrix read_npy(std::istream& in) {
  std::array<char, 8> preamble{};
  if (!in.read(preamble.data(), preamble.size())) {
    throw FormatError("bad magic");
  }
  if (std::memcmp(preamble.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError("bad magic");
  }
  const auto major = static_cast<unsigned char>(preamble[6]);
  std::size_t len_bytes = 0;
  if (major == 1) {
    len_bytes = 2;
  } else if (major == 2 || major == 3) {
    len_bytes = 4;
  } else {
    throw FormatError("unsupported format version " + std::to_string(major));
  }
  std::array<unsigned char, 4> len_buf{};
  if (!in.read(reinterpret_cast<char*>(len_buf.data()), static_cast<std::streamsize>(len_bytes))) {
    throw FormatError("truncated header");
  }
  const std::size_t header_len = read_le(len_buf.data(), len_bytes);
  std::string header(header_len, '\0');
  if (!in.read(header.data(), static_cast<std::streamsize>(header_len))) {
    throw FormatError("truncated header");
  }

  const std::string descr = parse_descr(header);
  if (descr != "<f4") {
    throw FormatError("unsupported dtype '" + descr + "', expected '<f4'");
  }
  if (parse_fortran(header)) {
    throw FormatError("unsupported order: fortran_order arrays are not accepted");
  }
  const auto shape = parse_shape(header);
  if (shape.size() != 2) {
    throw FormatError("shape rank must be 2, got " + std::to_string(shape.size()));
  }

  NpyMatrix m;
  m.rows = shape[0];
  m.cols = shape[1];
  m.data.resize(m.rows * m.cols);
  const auto bytes = static_cast<std::streamsize>(m.data.size() * sizeof(float));
  if (!in.read(reinterpret_cast<char*>(m.data.data()), bytes)) {
    throw FormatError("truncated data");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& v : m.data) {
      v = std::bit_cast<float>(__builtin_bswap32(std::bit_cast<std::uint32_t>(v)));
    }
  }
  return m;
}

NpyMatrix read_npy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_npy(in);
}

void write_npy(std::ostream& out, const NpyMatrix& m) {
  if (m.data.size() != m.rows * m.cols) {
    throw std::invalid_argument("matrix data does not match its shape");
  }
  std::string header = "{'descr': '<f4', 'fortran_order': False, 'shape': (" +
                       std::to_string(m.rows) + ", " + std::to_string(m.cols) + "), }";
  const std::size_t prefix = kMagic.size() + 2 + 2;
  const std::size_t total = (prefix + header.size() + 1 + kAlign - 1) / kAlign * kAlign;
  header.append(total - prefix - header.size() - 1, ' ');
  header.push_back('\n');
  if (header.size() > 0xFFFF) {
    throw FormatError("header too long for format version 1.0");
  }

  out.write(kMagic.data(), kMagic.size());
  const char version[2] = {1, 0};
  out.write(version, 2);
  const char len[2] = {static_cast<char>(header.size() & 0xFF), static_cast<char>(header.size() >> 8)};
  out.write(len, 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  if constexpr (std::endian::native == std::endian::big) {
    for (float v : m.data) {
      const auto swapped = __builtin_bswap32(std::bit_cast<std::uint32_t>(v));
      out.write(reinterpret_cast<const char*>(&swapped), 4);
    }
  } else {
    out.write(reinterpret_cast<const char*>(m.data.data()),
              static_cast<std::streamsize>(m.data.size() * sizeof(float)));
  }
}

void write_npy(const std::filesystem::path& path, const NpyMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_npy(out, m);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

}  // namespace mofa
