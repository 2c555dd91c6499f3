#include "ecgen/glyph_font.hpp"

#include <unordered_map>

namespace ecgen::render {

namespace {

// Row patterns written as binary literals so the shapes read directly.
const std::unordered_map<char, Glyph>& glyph_table() {
  static const std::unordered_map<char, Glyph> table = {
      {' ', {{0b00000, 0b00000, 0b00000, 0b00000, 0b00000, 0b00000, 0b00000}}},
      {'0', {{0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110}}},
      {'1', {{0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110}}},
      {'2', {{0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111}}},
      {'3', {{0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110}}},
      {'4', {{0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010}}},
      {'5', {{0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110}}},
      {'6', {{0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110}}},
      {'7', {{0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000}}},
      {'8', {{0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110}}},
      {'9', {{0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100}}},
      {'A', {{0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}}},
      {'B', {{0b11110, 0b10001, 0b10001, 0b11110, 0b10001, 0b10001, 0b11110}}},
      {'C', {{0b01110, 0b10001, 0b10000, 0b10000, 0b10000, 0b10001, 0b01110}}},
      {'D', {{0b11100, 0b10010, 0b10001, 0b10001, 0b10001, 0b10010, 0b11100}}},
      {'E', {{0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b11111}}},
      {'F', {{0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000}}},
      {'G', {{0b01110, 0b10001, 0b10000, 0b10111, 0b10001, 0b10001, 0b01111}}},
      {'H', {{0b10001, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}}},
      {'I', {{0b01110, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110}}},
      {'J', {{0b00111, 0b00010, 0b00010, 0b00010, 0b00010, 0b10010, 0b01100}}},
      {'K', {{0b10001, 0b10010, 0b10100, 0b11000, 0b10100, 0b10010, 0b10001}}},
      {'L', {{0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b11111}}},
      {'M', {{0b10001, 0b11011, 0b10101, 0b10101, 0b10001, 0b10001, 0b10001}}},
      {'N', {{0b10001, 0b10001, 0b11001, 0b10101, 0b10011, 0b10001, 0b10001}}},
      {'O', {{0b01110, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110}}},
      {'P', {{0b11110, 0b10001, 0b10001, 0b11110, 0b10000, 0b10000, 0b10000}}},
      {'Q', {{0b01110, 0b10001, 0b10001, 0b10001, 0b10101, 0b10010, 0b01101}}},
      {'R', {{0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001}}},
      {'S', {{0b01111, 0b10000, 0b10000, 0b01110, 0b00001, 0b00001, 0b11110}}},
      {'T', {{0b11111, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100}}},
      {'U', {{0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110}}},
      {'V', {{0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01010, 0b00100}}},
      {'W', {{0b10001, 0b10001, 0b10001, 0b10101, 0b10101, 0b10101, 0b01010}}},
      {'X', {{0b10001, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001, 0b10001}}},
      {'Y', {{0b10001, 0b10001, 0b10001, 0b01010, 0b00100, 0b00100, 0b00100}}},
      {'Z', {{0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000, 0b11111}}},
      {'a', {{0b00000, 0b00000, 0b01110, 0b00001, 0b01111, 0b10001, 0b01111}}},
      {'b', {{0b10000, 0b10000, 0b11110, 0b10001, 0b10001, 0b10001, 0b11110}}},
      {'c', {{0b00000, 0b00000, 0b01110, 0b10000, 0b10000, 0b10001, 0b01110}}},
      {'d', {{0b00001, 0b00001, 0b01111, 0b10001, 0b10001, 0b10001, 0b01111}}},
      {'e', {{0b00000, 0b00000, 0b01110, 0b10001, 0b11111, 0b10000, 0b01110}}},
      {'f', {{0b00110, 0b01001, 0b01000, 0b11100, 0b01000, 0b01000, 0b01000}}},
      {'g', {{0b00000, 0b01111, 0b10001, 0b10001, 0b01111, 0b00001, 0b01110}}},
      {'h', {{0b10000, 0b10000, 0b11110, 0b10001, 0b10001, 0b10001, 0b10001}}},
      {'i', {{0b00100, 0b00000, 0b01100, 0b00100, 0b00100, 0b00100, 0b01110}}},
      {'j', {{0b00010, 0b00000, 0b00110, 0b00010, 0b00010, 0b10010, 0b01100}}},
      {'k', {{0b10000, 0b10000, 0b10010, 0b10100, 0b11000, 0b10100, 0b10010}}},
      {'l', {{0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110}}},
      {'m', {{0b00000, 0b00000, 0b11010, 0b10101, 0b10101, 0b10101, 0b10101}}},
      {'n', {{0b00000, 0b00000, 0b11110, 0b10001, 0b10001, 0b10001, 0b10001}}},
      {'o', {{0b00000, 0b00000, 0b01110, 0b10001, 0b10001, 0b10001, 0b01110}}},
      {'p', {{0b00000, 0b00000, 0b11110, 0b10001, 0b11110, 0b10000, 0b10000}}},
      {'q', {{0b00000, 0b00000, 0b01111, 0b10001, 0b01111, 0b00001, 0b00001}}},
      {'r', {{0b00000, 0b00000, 0b10110, 0b11001, 0b10000, 0b10000, 0b10000}}},
      {'s', {{0b00000, 0b00000, 0b01111, 0b10000, 0b01110, 0b00001, 0b11110}}},
      {'t', {{0b01000, 0b01000, 0b11100, 0b01000, 0b01000, 0b01001, 0b00110}}},
      {'u', {{0b00000, 0b00000, 0b10001, 0b10001, 0b10001, 0b10011, 0b01101}}},
      {'v', {{0b00000, 0b00000, 0b10001, 0b10001, 0b10001, 0b01010, 0b00100}}},
      {'w', {{0b00000, 0b00000, 0b10001, 0b10001, 0b10101, 0b10101, 0b01010}}},
      {'x', {{0b00000, 0b00000, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001}}},
      {'y', {{0b00000, 0b00000, 0b10001, 0b10001, 0b01111, 0b00001, 0b01110}}},
      {'z', {{0b00000, 0b00000, 0b11111, 0b00010, 0b00100, 0b01000, 0b11111}}},
      {'/', {{0b00001, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000, 0b10000}}},
      {':', {{0b00000, 0b01100, 0b01100, 0b00000, 0b01100, 0b01100, 0b00000}}},
      {'.', {{0b00000, 0b00000, 0b00000, 0b00000, 0b00000, 0b01100, 0b01100}}},
      {',', {{0b00000, 0b00000, 0b00000, 0b00000, 0b01100, 0b00100, 0b01000}}},
      {'-', {{0b00000, 0b00000, 0b00000, 0b11111, 0b00000, 0b00000, 0b00000}}},
  };
  return table;
}

}  // namespace

const Glyph* find_glyph(char c) {
  const auto& table = glyph_table();
  auto it = table.find(c);
  return it == table.end() ? nullptr : &it->second;
}

int glyph_advance(int height_px) {
  return (6 * height_px + 3) / 7;
}

int glyph_spacing(int height_px) {
  const int s = height_px / 7;
  return s < 1 ? 1 : s;
}

}  // namespace ecgen::render
