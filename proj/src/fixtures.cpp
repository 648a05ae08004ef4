#include "fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "io.hpp"

namespace blockcorr {

namespace {

// Borgatti-Everett 10-actor core-periphery example: symmetric, binary,
// no self-ties; actors 1-4 form a clique, 5-10 hang off it.
constexpr const char* kBefig1 =
    "\t1\t2\t3\t4\t5\t6\t7\t8\t9\t10\n"
    "1\tNA\t1\t1\t1\t1\t0\t0\t0\t0\t0\n"
    "2\t1\tNA\t1\t1\t0\t1\t1\t1\t0\t0\n"
    "3\t1\t1\tNA\t1\t0\t0\t0\t1\t1\t0\n"
    "4\t1\t1\t1\tNA\t1\t0\t0\t0\t0\t1\n"
    "5\t1\t0\t0\t1\tNA\t0\t0\t0\t0\t0\n"
    "6\t0\t1\t0\t0\t0\tNA\t0\t0\t0\t0\n"
    "7\t0\t1\t0\t0\t0\t0\tNA\t0\t0\t0\n"
    "8\t0\t1\t1\t0\t0\t0\t0\tNA\t0\t0\n"
    "9\t0\t0\t1\t0\t0\t0\t0\t0\tNA\t0\n"
    "10\t0\t0\t0\t1\t0\t0\t0\t0\t0\tNA\n";

// Little League friendship nominations (13 boys, directed, three
// nominations each except Jerry and Arnie with two).
constexpr const char* kTransatlantic =
    "\tRon_1\tTom_2\tFrank_3\tBoyd_4\tTim_5\tJohn_6\tJeff_7\tJay_8\tSandy_9\tJerry_10\tDarrin_11\tBen_12\tArnie_13\n"
    "Ron_1\tNA\t1\t1\t1\t0\t0\t0\t0\t0\t0\t0\t0\t0\n"
    "Tom_2\t0\tNA\t1\t1\t0\t0\t0\t0\t0\t0\t1\t0\t0\n"
    "Frank_3\t1\t1\tNA\t0\t0\t0\t0\t0\t0\t0\t1\t0\t0\n"
    "Boyd_4\t1\t1\t1\tNA\t0\t0\t0\t0\t0\t0\t0\t0\t0\n"
    "Tim_5\t1\t0\t1\t1\tNA\t0\t0\t0\t0\t0\t0\t0\t0\n"
    "John_6\t0\t0\t0\t0\t1\tNA\t0\t0\t0\t0\t0\t1\t1\n"
    "Jeff_7\t0\t1\t0\t0\t0\t0\tNA\t1\t1\t0\t0\t0\t0\n"
    "Jay_8\t0\t1\t0\t0\t0\t0\t1\tNA\t1\t0\t0\t0\t0\n"
    "Sandy_9\t0\t1\t0\t0\t0\t0\t1\t1\tNA\t0\t0\t0\t0\n"
    "Jerry_10\t1\t0\t0\t0\t0\t1\t0\t0\t0\tNA\t0\t0\t0\n"
    "Darrin_11\t1\t0\t0\t0\t1\t0\t0\t0\t0\t1\tNA\t0\t0\n"
    "Ben_12\t1\t0\t0\t0\t0\t1\t0\t0\t0\t1\t0\tNA\t0\n"
    "Arnie_13\t0\t0\t0\t0\t1\t1\t0\t0\t0\t0\t0\t0\tNA\n";

struct ExternalSpec {
    const char* name;
    const char* filename;
    bool directed;
    const char* notes;
};

constexpr ExternalSpec kExternal[] = {
    {"kansas", "kansas.tsv", true,
     "Kansas Search and Rescue communication, 20 organisations, binarised. "
     "Labels must be the single letters A..T in the conventional order "
     "(A=Sheriff, B=CivilDef, C=Coroner, D=Attorney, E=HighwayP, F=ParksRes, "
     "G=GameFish, H=KansasDOT, I=ArmyCorps, J=ArmyRes, K=CrableAmb, "
     "L=FrankCoAmb, M=LeeRescue, N=Shawney, O=BurlPolice, P=LyndPolice, "
     "Q=RedCross, R=TopicaFD, S=CarbDF, T=TopekaRBW)."},
    {"hlebec", "hlebec.tsv", true,
     "Note borrowing among 13 social-informatics students, values 1..19, "
     "borrower -> lender. Labels 1..13. Ships with hlebec_ziberna.part and "
     "hlebec_ziberna.bim holding the published 3-positional sum-regular "
     "reference arrangement; its correlation of 0.8189 doubles as the "
     "integrity check for this fixture."},
    {"primates", "primates.tsv", false,
     "Joint river presences of 20 monkeys over 3 months, symmetric counts. "
     "Labels M1..M5 and F6..F20."},
    {"eies_t1", "eies_t1.tsv", true,
     "Freeman EIES friendship at time 1, 32 researchers, values 0..4. "
     "Labels carry the discipline suffix (_S sociology, _A anthropology, "
     "_M maths/statistics, _O other), e.g. 1_S, 2_A, 24_M, 3_O."},
    {"eies_t2", "eies_t2.tsv", true,
     "Freeman EIES friendship at time 2; same format as eies_t1."},
};

const ExternalSpec* external_spec(const std::string& name) {
    for (const auto& spec : kExternal)
        if (name == spec.name) return &spec;
    return nullptr;
}

} // namespace

const std::vector<FixtureInfo>& fixture_catalog() {
    static const std::vector<FixtureInfo> catalog = {
        {"befig1", true, false, "10-actor core-periphery toy network"},
        {"transatlantic", true, true, "Little League friendship nominations (13 boys)"},
        {"kansas", false, true, "Kansas SAR communication (external file)"},
        {"hlebec", false, true, "student note borrowing, valued (external file)"},
        {"primates", false, false, "river co-presence counts, valued (external file)"},
        {"eies_t1", false, true, "EIES friendship T1, valued (external file)"},
        {"eies_t2", false, true, "EIES friendship T2, valued (external file)"},
    };
    return catalog;
}

Network befig1_network() { return parse_network(kBefig1, false, false); }

Network transatlantic_network() { return parse_network(kTransatlantic, true, false); }

std::string embedded_fixture_text(const std::string& name) {
    if (name == "befig1") return kBefig1;
    if (name == "transatlantic") return kTransatlantic;
    throw DataError("no embedded fixture named '" + name + "'");
}

std::string fixture_directory(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("BLOCKCORR_FIXTURES")) return env;
    return "fixtures";
}

ExternalFixture load_external(const std::string& name, const std::string& dir) {
    const ExternalSpec* spec = external_spec(name);
    if (!spec) throw DataError("unknown external fixture '" + name + "'");
    ExternalFixture out;
    namespace fs = std::filesystem;
    fs::path base = fs::path(fixture_directory(dir)) / "external";
    fs::path file = base / spec->filename;
    if (!fs::exists(file)) {
        out.note = "file not found: " + file.string();
        return out;
    }
    std::string content = read_file(file.string());
    out.path = file.string();
    out.digest = sha256_hex(content);
    // optional digest check against the manifest
    fs::path manifest = base / "manifest.json";
    if (fs::exists(manifest)) {
        auto doc = nlohmann::json::parse(read_file(manifest.string()), nullptr, false);
        if (!doc.is_discarded() && doc.contains(spec->filename)) {
            const auto& entry = doc[spec->filename];
            if (entry.contains("sha256") && entry["sha256"].is_string()) {
                std::string want = entry["sha256"].get<std::string>();
                if (!want.empty() && want != out.digest) {
                    out.digest_ok = false;
                    out.note = "sha256 mismatch: manifest " + want + ", file " + out.digest;
                    return out;
                }
            }
        }
    }
    out.network = parse_network(content, spec->directed, false);
    out.present = true;
    return out;
}

ExternalFixture load_fixture(const std::string& name, const std::string& dir) {
    if (name == "befig1" || name == "transatlantic") {
        ExternalFixture out;
        out.present = true;
        out.network = name == "befig1" ? befig1_network() : transatlantic_network();
        out.digest = sha256_hex(embedded_fixture_text(name));
        return out;
    }
    return load_external(name, dir);
}

void write_fixture_files(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "external");
    write_file((fs::path(dir) / "befig1.tsv").string(), kBefig1);
    write_file((fs::path(dir) / "transatlantic.tsv").string(), kTransatlantic);

    nlohmann::ordered_json manifest;
    for (const auto& spec : kExternal) {
        manifest[spec.filename] = {{"fixture", spec.name},
                                   {"directed", spec.directed},
                                   {"sha256", nullptr},
                                   {"notes", spec.notes}};
    }
    write_file((fs::path(dir) / "external" / "manifest.json").string(),
               manifest.dump(2) + "\n");

    std::ostringstream readme;
    readme << "# External fixture data\n\n"
           << "The replication suite for the Kansas, Hlebec, primates and EIES\n"
           << "networks runs only when their matrices are present here. Place the\n"
           << "files listed in manifest.json into this directory, keeping the label\n"
           << "conventions described per file. When a sha256 value is filled in,\n"
           << "the loader verifies it; a null digest means \"accept any content\"\n"
           << "and the replication oracles themselves act as the integrity check.\n";
    write_file((fs::path(dir) / "external" / "README.md").string(), readme.str());
}

} // namespace blockcorr
