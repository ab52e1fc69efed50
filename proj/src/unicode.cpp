#include "ordolex/unicode.hpp"

#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utypes.h>

#include <vector>

#include "ordolex/errors.hpp"

namespace ordolex {

namespace {

const UNormalizer2* nfc_instance() {
  static const UNormalizer2* inst = [] {
    UErrorCode ec = U_ZERO_ERROR;
    const UNormalizer2* n = unorm2_getNFCInstance(&ec);
    if (U_FAILURE(ec) || n == nullptr)
      throw Error("ICU NFC normalizer unavailable");
    return n;
  }();
  return inst;
}

bool all_ascii(std::string_view s) noexcept {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

}  // namespace

bool valid_utf8(std::string_view bytes) noexcept {
  std::size_t i = 0, n = bytes.size();
  while (i < n) {
    unsigned char c = bytes[i];
    std::size_t len;
    unsigned cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cc = bytes[i + k];
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlongs, surrogates, out of range
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

std::string nfc(std::string_view utf8) {
  if (all_ascii(utf8)) return std::string(utf8);  // ASCII is NFC already
  if (!valid_utf8(utf8)) throw DecodeError("invalid UTF-8 sequence");

  UErrorCode ec = U_ZERO_ERROR;
  std::vector<UChar> u16(utf8.size() + 1);
  int32_t u16len = 0;
  u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16len,
                utf8.data(), static_cast<int32_t>(utf8.size()), &ec);
  if (U_FAILURE(ec)) throw DecodeError("invalid UTF-8 sequence");

  const UNormalizer2* n = nfc_instance();
  ec = U_ZERO_ERROR;
  UBool is_nfc = unorm2_isNormalized(n, u16.data(), u16len, &ec);
  if (U_SUCCESS(ec) && is_nfc) return std::string(utf8);

  ec = U_ZERO_ERROR;
  std::vector<UChar> out(static_cast<std::size_t>(u16len) * 3 + 16);
  int32_t outlen = unorm2_normalize(n, u16.data(), u16len, out.data(),
                                    static_cast<int32_t>(out.size()), &ec);
  if (U_FAILURE(ec)) throw DecodeError("normalization failed");

  std::string result(static_cast<std::size_t>(outlen) * 4 + 4, '\0');
  int32_t u8len = 0;
  ec = U_ZERO_ERROR;
  u_strToUTF8(result.data(), static_cast<int32_t>(result.size()), &u8len,
              out.data(), outlen, &ec);
  if (U_FAILURE(ec)) throw DecodeError("normalization failed");
  result.resize(static_cast<std::size_t>(u8len));
  return result;
}

std::size_t scalar_count(std::string_view utf8) noexcept {
  std::size_t count = 0;
  for (unsigned char c : utf8)
    if ((c & 0xC0) != 0x80) ++count;
  return count;
}

std::size_t nfc_scalar_count(std::string_view utf8) {
  if (all_ascii(utf8)) return utf8.size();
  if (!valid_utf8(utf8)) throw DecodeError("invalid UTF-8 sequence");

  UErrorCode ec = U_ZERO_ERROR;
  std::vector<UChar> u16(utf8.size() + 1);
  int32_t u16len = 0;
  u_strFromUTF8(u16.data(), static_cast<int32_t>(u16.size()), &u16len,
                utf8.data(), static_cast<int32_t>(utf8.size()), &ec);
  if (U_FAILURE(ec)) throw DecodeError("invalid UTF-8 sequence");

  const UNormalizer2* n = nfc_instance();
  ec = U_ZERO_ERROR;
  if (unorm2_isNormalized(n, u16.data(), u16len, &ec) && U_SUCCESS(ec))
    return static_cast<std::size_t>(u_countChar32(u16.data(), u16len));

  ec = U_ZERO_ERROR;
  std::vector<UChar> out(static_cast<std::size_t>(u16len) * 3 + 16);
  int32_t outlen = unorm2_normalize(n, u16.data(), u16len, out.data(),
                                    static_cast<int32_t>(out.size()), &ec);
  if (U_FAILURE(ec)) throw DecodeError("normalization failed");
  return static_cast<std::size_t>(u_countChar32(out.data(), outlen));
}

}  // namespace ordolex
