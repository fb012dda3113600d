#include "vlcsim/segmentation.hpp"

#include <algorithm>
#include <string>

#include "vlcsim/errors.hpp"

namespace vlcsim::proto {
namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t* p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string tile_str(TileId id) {
  return "(" + std::to_string(id.x) + "," + std::to_string(id.y) + ")";
}

}  // namespace

std::vector<Segment> chunk_tile(const MapTile& tile, size_t segment_payload_bytes) {
  if (segment_payload_bytes < 1)
    throw DomainError("segment payload size must be at least 1 byte");
  const size_t len = tile.payload.size();
  const size_t n = len == 0 ? 1 : (len + segment_payload_bytes - 1) / segment_payload_bytes;
  std::vector<Segment> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Segment s;
    s.tile_id = tile.tile_id;
    s.version = tile.version;
    s.seq_no = static_cast<uint32_t>(i);
    s.total_segments = static_cast<uint32_t>(n);
    s.payload_kind = tile.payload_kind;
    const size_t begin = i * segment_payload_bytes;
    const size_t end = std::min(len, begin + segment_payload_bytes);
    s.bytes.assign(tile.payload.begin() + begin, tile.payload.begin() + end);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<uint8_t> encode_segment(const Segment& seg) {
  if (seg.total_segments == 0 || seg.seq_no >= seg.total_segments)
    throw ProtocolError("segment seq_no " + std::to_string(seg.seq_no) +
                        " outside total_segments " + std::to_string(seg.total_segments));
  std::vector<uint8_t> out;
  out.reserve(kSegmentHeaderBytes + seg.bytes.size());
  put_u32(out, static_cast<uint32_t>(seg.tile_id.x));
  put_u32(out, static_cast<uint32_t>(seg.tile_id.y));
  put_u32(out, seg.version);
  put_u32(out, seg.seq_no);
  put_u32(out, seg.total_segments);
  out.push_back(static_cast<uint8_t>(seg.payload_kind));
  put_u32(out, static_cast<uint32_t>(seg.bytes.size()));
  out.insert(out.end(), seg.bytes.begin(), seg.bytes.end());
  return out;
}

Segment decode_segment(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kSegmentHeaderBytes)
    throw ProtocolError("segment truncated: " + std::to_string(bytes.size()) +
                        " bytes, header needs " + std::to_string(kSegmentHeaderBytes));
  Segment s;
  s.tile_id.x = static_cast<int32_t>(get_u32(bytes.data()));
  s.tile_id.y = static_cast<int32_t>(get_u32(bytes.data() + 4));
  s.version = get_u32(bytes.data() + 8);
  s.seq_no = get_u32(bytes.data() + 12);
  s.total_segments = get_u32(bytes.data() + 16);
  s.payload_kind = static_cast<PayloadKind>(bytes[20]);
  const uint32_t len = get_u32(bytes.data() + 21);
  if (bytes.size() != kSegmentHeaderBytes + len)
    throw ProtocolError("segment length field " + std::to_string(len) + " does not match " +
                        std::to_string(bytes.size() - kSegmentHeaderBytes) + " payload bytes");
  if (s.total_segments == 0 || s.seq_no >= s.total_segments)
    throw ProtocolError("segment seq_no " + std::to_string(s.seq_no) +
                        " outside total_segments " + std::to_string(s.total_segments));
  if (bytes[20] > 2) throw ProtocolError("unknown payload kind " + std::to_string(bytes[20]));
  s.bytes.assign(bytes.begin() + kSegmentHeaderBytes, bytes.end());
  return s;
}

bool Reassembler::add(const Segment& seg) {
  if (seg.total_segments == 0 || seg.seq_no >= seg.total_segments)
    throw ProtocolError("segment seq_no " + std::to_string(seg.seq_no) +
                        " outside total_segments " + std::to_string(seg.total_segments));
  if (started_ && seg.tile_id != tile_id_)
    throw ProtocolError("segment for tile " + tile_str(seg.tile_id) +
                        " fed to reassembler for tile " + tile_str(tile_id_));

  if (has_completed_version_ && seg.version <= completed_version_) return false;

  if (!started_ || seg.version > version_) {
    started_ = true;
    complete_ = false;
    tile_id_ = seg.tile_id;
    version_ = seg.version;
    total_ = seg.total_segments;
    kind_ = seg.payload_kind;
    parts_.clear();
  } else if (seg.version < version_) {
    return false;
  } else if (seg.total_segments != total_) {
    throw ProtocolError("conflicting total_segments for tile " + tile_str(tile_id_) +
                        " version " + std::to_string(version_) + ": " + std::to_string(total_) +
                        " vs " + std::to_string(seg.total_segments));
  }

  if (complete_) return false;
  if (!parts_.emplace(seg.seq_no, seg.bytes).second) return false;

  if (parts_.size() == total_) {
    tile_.tile_id = tile_id_;
    tile_.version = version_;
    tile_.payload_kind = kind_;
    tile_.payload.clear();
    for (const auto& [seq, bytes] : parts_)
      tile_.payload.insert(tile_.payload.end(), bytes.begin(), bytes.end());
    complete_ = true;
    has_completed_version_ = true;
    completed_version_ = version_;
    return true;
  }
  return false;
}

const MapTile& Reassembler::tile() const {
  if (!complete_) throw ProtocolError("tile is not completely reassembled");
  return tile_;
}

std::vector<uint32_t> Reassembler::missing() const {
  std::vector<uint32_t> out;
  if (!started_ || complete_) return out;
  for (uint32_t seq = 0; seq < total_; ++seq)
    if (!parts_.count(seq)) out.push_back(seq);
  return out;
}

ReassembleOutcome reassemble(const std::vector<Segment>& segments) {
  Reassembler r;
  for (const Segment& s : segments) r.add(s);
  ReassembleOutcome out;
  out.complete = r.complete();
  if (out.complete)
    out.tile = r.tile();
  else
    out.missing = r.missing();
  return out;
}

}  // namespace vlcsim::proto
