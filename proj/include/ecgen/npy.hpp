#pragma once

#include <cstdint>
#include <vector>

namespace ecgen::npy {

// NPY format version 1.0, dtype '<f8', C order, 2-D shape.
std::vector<std::uint8_t> write_f64_2d(const std::vector<std::vector<double>>& rows);

struct Array2D {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> data;  // row-major

  double at(std::size_t r, std::size_t c) const { return data[r * n_cols + c]; }
};

Array2D read_f64_2d(const std::vector<std::uint8_t>& bytes);

}  // namespace ecgen::npy
