#ifndef BLOCKCORR_FIXTURES_HPP
#define BLOCKCORR_FIXTURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace blockcorr {

/// Bundled and external example networks.
///
/// Two fixtures ship embedded in the library: the 10-actor core-periphery
/// toy network and the Little League friendship network. Four more (Kansas
/// SAR, Hlebec notesharing, Florida primates, Freeman EIES) must be supplied
/// as files in a fixture directory because no sufficiently reliable copy
/// could be bundled; a manifest records their expected file names and,
/// optionally, SHA-256 digests to verify against.

struct FixtureInfo {
    std::string name;
    bool embedded;
    bool directed;
    std::string description;
};

const std::vector<FixtureInfo>& fixture_catalog();

/// Embedded fixtures, always available.
Network befig1_network();
Network transatlantic_network();

/// Raw file content of an embedded fixture (TSV, parse_network format).
std::string embedded_fixture_text(const std::string& name);

/// Resolve the fixture directory: explicit argument, else the
/// BLOCKCORR_FIXTURES environment variable, else "./fixtures".
std::string fixture_directory(const std::string& override_dir = "");

struct ExternalFixture {
    bool present = false;
    bool digest_ok = true; // false only when a manifest digest mismatches
    std::string path;
    std::string digest;       // actual sha256 of the file
    std::string note;         // reason when absent / mismatched
    std::optional<Network> network;
};

/// Load an external fixture by name ("kansas", "hlebec", "primates",
/// "eies_t1", "eies_t2"). Missing files yield present=false rather than an
/// error; a digest mismatch against the manifest yields digest_ok=false.
ExternalFixture load_external(const std::string& name, const std::string& dir = "");

/// Load any fixture by name; embedded ones always succeed.
ExternalFixture load_fixture(const std::string& name, const std::string& dir = "");

/// Write the embedded fixture files plus the external-data manifest and
/// README into the given directory.
void write_fixture_files(const std::string& dir);

} // namespace blockcorr

#endif
