#pragma once
// Canonical byte forms of space-time diagrams.
//
// ascii:  one row per line of '0'/'1', each line '\n'-terminated, row 0 first.
// packed: width and steps as u32 little-endian, then all cells row-major,
//         MSB-first within each byte, no per-row padding, final byte zero-padded.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ecaprog/eca.hpp"

namespace ecaprog {

enum class SerializationMode { ascii, packed };

inline constexpr std::size_t kPackedHeaderBytes = 8;

std::vector<std::uint8_t> serialize_diagram(const SpaceTimeDiagram& diagram,
                                            SerializationMode mode = SerializationMode::ascii);

/// Inverse of the ascii form. Rows must share one width >= 3. The rule is not
/// part of the format and is left as rule 0.
SpaceTimeDiagram parse_ascii_diagram(std::string_view text);

/// Inverse of the packed form; throws std::invalid_argument on size mismatch.
SpaceTimeDiagram parse_packed_diagram(std::span<const std::uint8_t> bytes);

SerializationMode serialization_mode_from_name(std::string_view name);

}  // namespace ecaprog
