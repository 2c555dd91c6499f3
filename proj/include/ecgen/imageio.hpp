#pragma once

#include <cstdint>
#include <vector>

#include "ecgen/render.hpp"

namespace ecgen::imageio {

// Baseline JPEG, 4:2:0 chroma subsampling.
std::vector<std::uint8_t> encode_jpeg(const render::Image& image, int quality);
render::Image decode_jpeg(const std::vector<std::uint8_t>& bytes);

// 8-bit grayscale PNG, no alpha.
std::vector<std::uint8_t> encode_png_gray(const render::Mask& mask);
render::Mask decode_png_gray(const std::vector<std::uint8_t>& bytes);

}  // namespace ecgen::imageio
