#include "ecgen/npy.hpp"

#include <cstring>
#include <string>

#include "ecgen/errors.hpp"

namespace ecgen::npy {

namespace {

constexpr char kMagic[6] = {'\x93', 'N', 'U', 'M', 'P', 'Y'};

void append_f64_le(std::vector<std::uint8_t>& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

double read_f64_le(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double value;
  std::memcpy(&value, &bits, sizeof(value));
  return value;
}

}  // namespace

std::vector<std::uint8_t> write_f64_2d(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw_error(ErrorCode::shape_mismatch, "array must be non-empty in both dimensions");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows.front().size();
  for (const auto& row : rows)
    if (row.size() != n_cols)
      throw_error(ErrorCode::shape_mismatch, "ragged rows in array");

  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                     std::to_string(n_rows) + ", " + std::to_string(n_cols) + "), }";
  // magic(6) + version(2) + header_len(2) + header must be a multiple of 64.
  const std::size_t prefix = 10;
  std::size_t header_len = dict.size() + 1;  // trailing newline
  if ((prefix + header_len) % 64 != 0) header_len += 64 - (prefix + header_len) % 64;
  if (header_len > 0xffff)
    throw_error(ErrorCode::shape_mismatch, "header too large for NPY v1.0");
  dict.append(header_len - dict.size() - 1, ' ');
  dict.push_back('\n');

  std::vector<std::uint8_t> out;
  out.reserve(prefix + header_len + n_rows * n_cols * 8);
  out.insert(out.end(), kMagic, kMagic + 6);
  out.push_back(1);
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(header_len & 0xff));
  out.push_back(static_cast<std::uint8_t>(header_len >> 8));
  out.insert(out.end(), dict.begin(), dict.end());
  for (const auto& row : rows)
    for (double v : row) append_f64_le(out, v);
  return out;
}

Array2D read_f64_2d(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, 6) != 0)
    throw_error(ErrorCode::io_error, "not an NPY file");
  if (bytes[6] != 1 || bytes[7] != 0)
    throw_error(ErrorCode::io_error, "unsupported NPY version");
  const std::size_t header_len = bytes[8] | (static_cast<std::size_t>(bytes[9]) << 8);
  if (bytes.size() < 10 + header_len)
    throw_error(ErrorCode::io_error, "truncated NPY header");
  const std::string header(bytes.begin() + 10, bytes.begin() + 10 + header_len);

  if (header.find("'<f8'") == std::string::npos)
    throw_error(ErrorCode::io_error, "NPY dtype must be '<f8'");
  if (header.find("'fortran_order': False") == std::string::npos)
    throw_error(ErrorCode::io_error, "NPY must be C-ordered");
  const std::size_t shape_pos = header.find("'shape': (");
  if (shape_pos == std::string::npos)
    throw_error(ErrorCode::io_error, "NPY header lacks shape");
  const std::size_t open = shape_pos + 9;
  const std::size_t close = header.find(')', open);
  if (close == std::string::npos)
    throw_error(ErrorCode::io_error, "NPY shape unterminated");
  const std::string shape = header.substr(open + 1, close - open - 1);
  const std::size_t comma = shape.find(',');
  if (comma == std::string::npos)
    throw_error(ErrorCode::io_error, "NPY shape must be 2-D");

  Array2D array;
  array.n_rows = static_cast<std::size_t>(std::stoull(shape.substr(0, comma)));
  array.n_cols = static_cast<std::size_t>(std::stoull(shape.substr(comma + 1)));
  const std::size_t payload = array.n_rows * array.n_cols * 8;
  if (bytes.size() != 10 + header_len + payload)
    throw_error(ErrorCode::length_mismatch,
                "NPY payload is " + std::to_string(bytes.size() - 10 - header_len) +
                    " bytes, expected " + std::to_string(payload));
  array.data.resize(array.n_rows * array.n_cols);
  const std::uint8_t* p = bytes.data() + 10 + header_len;
  for (std::size_t i = 0; i < array.data.size(); ++i) array.data[i] = read_f64_le(p + 8 * i);
  return array;
}

}  // namespace ecgen::npy
