#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "panolayout/layout.hpp"

namespace panolayout {

/// Parsed signals document: the arrays plus the decay constant they were
/// encoded with and an optional provenance note.
struct SignalsDocument {
    BoundarySignals signals;
    double decay = kDefaultCornerDecay;
    std::string provenance;
};

/// Text format ("panolayout-signals 1" header, one whitespace-separated
/// array per channel). With binary = true the arrays are stored as raw
/// little-endian float64 after the header for throughput.
void write_signals_file(const std::filesystem::path& path, const BoundarySignals& signals,
                        double decay, std::string_view provenance = {}, bool binary = false);
SignalsDocument read_signals_file(const std::filesystem::path& path);

/// Text format: camera_height, ceiling_height, then one "x z" vertex line
/// per corner. Parse failures carry the offending line number.
void write_layout_file(const std::filesystem::path& path, const ManhattanLayout& layout);
ManhattanLayout read_layout_file(const std::filesystem::path& path);

/// One corner per line: column ceiling_row floor_row (pixels, fractional
/// allowed). '#' starts a comment. The grid comes from the caller.
void write_annotation_file(const std::filesystem::path& path, const CornerAnnotation& annotation);
CornerAnnotation read_annotation_file(const std::filesystem::path& path, const ImageGrid& grid);

enum class FileKind { kSignals, kLayout, kUnknown };

/// Identifies a document by its header line.
FileKind sniff_file_kind(const std::filesystem::path& path);

}  // namespace panolayout
