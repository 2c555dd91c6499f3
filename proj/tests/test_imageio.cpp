#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ecgen/errors.hpp"
#include "ecgen/imageio.hpp"
#include "ecgen/render.hpp"

using namespace ecgen;
using render::Image;
using render::Mask;

namespace {

Image gradient_image(int w, int h) {
  auto image = Image::white(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t* p = image.at(x, y);
      p[0] = static_cast<std::uint8_t>((x * 7) % 256);
      p[1] = static_cast<std::uint8_t>((y * 11) % 256);
      p[2] = static_cast<std::uint8_t>(((x + y) * 3) % 256);
    }
  }
  return image;
}

}  // namespace

TEST_SUITE("imageio") {
  TEST_CASE("jpeg round-trip preserves dimensions and is visually close") {
    const auto image = gradient_image(160, 120);
    const auto bytes = imageio::encode_jpeg(image, 95);
    REQUIRE(!bytes.empty());
    // JFIF magic.
    CHECK(bytes[0] == 0xff);
    CHECK(bytes[1] == 0xd8);

    const auto decoded = imageio::decode_jpeg(bytes);
    REQUIRE(decoded.width == image.width);
    REQUIRE(decoded.height == image.height);
    REQUIRE(decoded.pixels.size() == image.pixels.size());
    double total_err = 0.0;
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
      total_err += std::abs(static_cast<int>(image.pixels[i]) - decoded.pixels[i]);
    }
    CHECK(total_err / static_cast<double>(image.pixels.size()) < 8.0);
  }

  TEST_CASE("jpeg encoding is deterministic") {
    const auto image = gradient_image(80, 60);
    CHECK(imageio::encode_jpeg(image, 95) == imageio::encode_jpeg(image, 95));
  }

  TEST_CASE("lower jpeg quality produces smaller files") {
    const auto image = gradient_image(160, 120);
    CHECK(imageio::encode_jpeg(image, 30).size() < imageio::encode_jpeg(image, 95).size());
  }

  TEST_CASE("jpeg decode rejects garbage") {
    const std::vector<std::uint8_t> garbage = {0x00, 0x01, 0x02, 0x03};
    CHECK_THROWS_AS(imageio::decode_jpeg(garbage), Error);
  }

  TEST_CASE("png gray round-trip is exact") {
    auto mask = Mask::black(321, 97);
    for (int y = 0; y < mask.height; ++y)
      for (int x = 0; x < mask.width; ++x)
        if ((x * y) % 7 == 0) mask.at(x, y) = 255;

    const auto bytes = imageio::encode_png_gray(mask);
    REQUIRE(!bytes.empty());
    CHECK(bytes[0] == 0x89);
    CHECK(bytes[1] == 'P');

    const auto decoded = imageio::decode_png_gray(bytes);
    REQUIRE(decoded.width == mask.width);
    REQUIRE(decoded.height == mask.height);
    CHECK(decoded.pixels == mask.pixels);
  }

  TEST_CASE("png encoding is deterministic") {
    auto mask = Mask::black(64, 64);
    for (int i = 0; i < 64; ++i) mask.at(i, i) = 255;
    CHECK(imageio::encode_png_gray(mask) == imageio::encode_png_gray(mask));
  }

  TEST_CASE("png decode rejects garbage") {
    const std::vector<std::uint8_t> garbage(16, 0x42);
    CHECK_THROWS_AS(imageio::decode_png_gray(garbage), Error);
  }
}
