#pragma once
// Exception hierarchy shared by all modules. The CLI maps these to exit codes:
// ConfigError/DomainError -> 2, IoError -> 3, SyncError/FramingError -> 4.
#include <stdexcept>
#include <string>

namespace vlcsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter sets or malformed configuration documents.
struct ConfigError : Error { using Error::Error; };
// Payload/frame size violations and truncated frames.
struct FramingError : Error { using Error::Error; };
// No usable preamble correlation peak.
struct SyncError : Error { using Error::Error; };
// Zero-valued pilot observation; equalization impossible.
struct DegenerateChannelError : Error { using Error::Error; };
// Argument outside its physical domain.
struct DomainError : Error { using Error::Error; };
// File I/O failures; message carries the path.
struct IoError : Error { using Error::Error; };
// Wire-format violations (CRC, truncation, inconsistent segments).
struct ProtocolError : Error { using Error::Error; };

}  // namespace vlcsim
