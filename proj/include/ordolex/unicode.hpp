#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ordolex {

// Canonical-composition (NFC) normalization of a UTF-8 string.
// Throws DecodeError on invalid UTF-8.
std::string nfc(std::string_view utf8);

// Number of Unicode scalar values in a UTF-8 string. Assumes well-formed
// input (any string that came out of nfc()).
std::size_t scalar_count(std::string_view utf8) noexcept;

// Scalar count after NFC normalization, without materializing the normalized
// string when the input is already NFC.
std::size_t nfc_scalar_count(std::string_view utf8);

bool valid_utf8(std::string_view bytes) noexcept;

}  // namespace ordolex
