#pragma once

#include <array>
#include <cstdint>

namespace ecgen::render {

// 5x7 fixed-metric bitmap glyphs. Each row byte holds 5 bits, bit 4 being the
// leftmost column. Covered set: A-Z a-z 0-9 space '/' ':' '.' ',' '-'.
inline constexpr int kGlyphRows = 7;
inline constexpr int kGlyphCols = 5;

struct Glyph {
  std::array<std::uint8_t, kGlyphRows> rows;
};

// nullptr when the character is outside the covered set.
const Glyph* find_glyph(char c);

// Horizontal step between characters at a given rendered height.
int glyph_advance(int height_px);

// Gap left of the next character; advance - spacing is the inked width.
int glyph_spacing(int height_px);

}  // namespace ecgen::render
