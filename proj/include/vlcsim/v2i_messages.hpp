#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vlcsim::proto {

// Uplink snapshot of the vehicle bus state.
struct VehicleReport {
  uint32_t vehicle_id = 0;
  uint64_t timestamp_ms = 0;
  float speed_mps = 0.0f;
  float acceleration_mps2 = 0.0f;
  float deceleration_mps2 = 0.0f;
  bool brake_status = false;
};

// Fixed-width little-endian record:
// id u32 | timestamp u64 | speed f32 | accel f32 | decel f32 | brake u8 |
// crc16 (CCITT-FALSE over the preceding 25 bytes).
inline constexpr size_t kVehicleReportBytes = 27;

std::vector<uint8_t> encode_vehicle_report(const VehicleReport& report);
VehicleReport decode_vehicle_report(const std::vector<uint8_t>& bytes);

}  // namespace vlcsim::proto
