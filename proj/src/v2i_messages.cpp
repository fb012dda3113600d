#include "vlcsim/v2i_messages.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vlcsim/crc16.hpp"
#include "vlcsim/errors.hpp"

namespace vlcsim::proto {
namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<uint8_t>& out, float v) { put_u32(out, std::bit_cast<uint32_t>(v)); }

uint32_t get_u32(const uint8_t* p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

uint64_t get_u64(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

float get_f32(const uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

}  // namespace

std::vector<uint8_t> encode_vehicle_report(const VehicleReport& report) {
  if (!std::isfinite(report.speed_mps) || !std::isfinite(report.acceleration_mps2) ||
      !std::isfinite(report.deceleration_mps2))
    throw DomainError("vehicle report fields must be finite");
  if (report.speed_mps < 0.0f)
    throw DomainError("vehicle report speed must be non-negative");
  if (report.deceleration_mps2 < 0.0f)
    throw DomainError("vehicle report deceleration must be non-negative");

  std::vector<uint8_t> out;
  out.reserve(kVehicleReportBytes);
  put_u32(out, report.vehicle_id);
  put_u64(out, report.timestamp_ms);
  put_f32(out, report.speed_mps);
  put_f32(out, report.acceleration_mps2);
  put_f32(out, report.deceleration_mps2);
  out.push_back(report.brake_status ? 1 : 0);
  const uint16_t crc = crc16_ccitt_false(out.data(), out.size());
  out.push_back(static_cast<uint8_t>(crc & 0xff));
  out.push_back(static_cast<uint8_t>(crc >> 8));
  return out;
}

VehicleReport decode_vehicle_report(const std::vector<uint8_t>& bytes) {
  if (bytes.size() != kVehicleReportBytes)
    throw ProtocolError("vehicle report must be " + std::to_string(kVehicleReportBytes) +
                        " bytes, got " + std::to_string(bytes.size()));
  const uint16_t stored = static_cast<uint16_t>(bytes[25]) |
                          (static_cast<uint16_t>(bytes[26]) << 8);
  const uint16_t computed = crc16_ccitt_false(bytes.data(), 25);
  if (stored != computed)
    throw ProtocolError("vehicle report CRC mismatch");

  VehicleReport r;
  r.vehicle_id = get_u32(bytes.data());
  r.timestamp_ms = get_u64(bytes.data() + 4);
  r.speed_mps = get_f32(bytes.data() + 12);
  r.acceleration_mps2 = get_f32(bytes.data() + 16);
  r.deceleration_mps2 = get_f32(bytes.data() + 20);
  r.brake_status = bytes[24] != 0;
  return r;
}

}  // namespace vlcsim::proto
