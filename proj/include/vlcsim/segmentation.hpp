#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "vlcsim/grid.hpp"

namespace vlcsim::proto {

enum class PayloadKind : uint8_t { Pointcloud = 0, Video = 1, Fused = 2 };

struct MapTile {
  TileId tile_id;
  uint32_t version = 0;
  PayloadKind payload_kind = PayloadKind::Pointcloud;
  std::vector<uint8_t> payload;
};

struct Segment {
  TileId tile_id;
  uint32_t version = 0;
  uint32_t seq_no = 0;
  uint32_t total_segments = 0;
  PayloadKind payload_kind = PayloadKind::Pointcloud;
  std::vector<uint8_t> bytes;
};

// ceil(len/size) segments; an empty payload still yields one zero-byte
// segment so the tile's existence is transmissible.
std::vector<Segment> chunk_tile(const MapTile& tile, size_t segment_payload_bytes);

// Wire image: x i32 | y i32 | version u32 | seq u32 | total u32 | kind u8 |
// len u32 | payload bytes, all little-endian.
inline constexpr size_t kSegmentHeaderBytes = 25;
inline size_t segment_wire_bytes(size_t payload_bytes) {
  return kSegmentHeaderBytes + payload_bytes;
}
std::vector<uint8_t> encode_segment(const Segment& seg);
Segment decode_segment(const std::vector<uint8_t>& bytes);

// Accumulates segments of one tile, any order, duplicates ignored. A higher
// version discards lower-version state; versions at or below the last
// completed one are dropped so observed tile versions never decrease.
class Reassembler {
 public:
  // True when this segment completed the current version.
  bool add(const Segment& seg);

  bool complete() const { return complete_; }
  const MapTile& tile() const;  // throws ProtocolError until complete
  // Sequence numbers still absent for the version in progress.
  std::vector<uint32_t> missing() const;

 private:
  bool started_ = false;
  bool complete_ = false;
  bool has_completed_version_ = false;
  uint32_t completed_version_ = 0;
  TileId tile_id_{};
  uint32_t version_ = 0;
  uint32_t total_ = 0;
  PayloadKind kind_ = PayloadKind::Pointcloud;
  std::map<uint32_t, std::vector<uint8_t>> parts_;
  MapTile tile_;
};

struct ReassembleOutcome {
  bool complete = false;
  MapTile tile;                   // valid when complete
  std::vector<uint32_t> missing;  // for the highest version seen
};

ReassembleOutcome reassemble(const std::vector<Segment>& segments);

}  // namespace vlcsim::proto
