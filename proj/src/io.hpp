#ifndef BLOCKCORR_IO_HPP
#define BLOCKCORR_IO_HPP

#include <string>
#include <vector>

#include "model.hpp"

namespace blockcorr {

/// Parse a delimiter-separated square matrix. Accepts an optional header row
/// and an optional first label column; blank or "NA" cells are permitted on
/// the diagonal (and only there) and read as 0. Delimiters: tab, comma,
/// semicolon or runs of spaces, auto-detected per file.
Network parse_network(const std::string& content, bool directed, bool self_ties_defined);
Network parse_network_file(const std::string& path, bool directed, bool self_ties_defined);

std::string format_network(const Network& net);

/// Partition files: either one "label<TAB>position" pair per line, or a
/// single line of ";"-separated comma-lists of labels.
Partition parse_partition(const std::string& content, const Network& net);
Partition parse_partition_file(const std::string& path, const Network& net);

std::string format_partition(const Partition& part, const Network& net);

/// Blockimage text: rows split by newlines or ";", cells by whitespace,
/// each cell one code or "code|code|..." for ensemble alternatives.
BlockImage parse_blockimage(const std::string& content);
BlockImage parse_blockimage_file(const std::string& path);

std::string format_blockimage(const BlockImage& image);

/// Matrix sorted by position with block separators, per-block annotations
/// and, on binary networks, inconsistent cells of com/nul blocks marked *.
std::string render_blockmodel(const Network& net, const Partition& part,
                              const BlockImage& image);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// SHA-256 hex digest of raw bytes.
std::string sha256_hex(const std::string& bytes);

/// Digest of the canonical serialisation of a network (labels, values,
/// flags), so logically equal networks share a digest regardless of the
/// file formatting they were parsed from.
std::string network_digest(const Network& net);

} // namespace blockcorr

#endif
