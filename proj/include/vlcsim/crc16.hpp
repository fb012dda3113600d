#pragma once
#include <cstddef>
#include <cstdint>

namespace vlcsim {

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, xorout 0.
// crc16_ccitt_false("123456789") == 0x29B1.
uint16_t crc16_ccitt_false(const uint8_t* data, size_t len);

}  // namespace vlcsim
