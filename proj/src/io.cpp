#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "blockfit.hpp"
#include "criteria.hpp"

namespace blockcorr {

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(content);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // strip comments
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (!blank) lines.push_back(line);
    }
    return lines;
}

char detect_delimiter(const std::vector<std::string>& lines) {
    for (char d : {'\t', ',', ';'})
        for (const auto& l : lines)
            if (l.find(d) != std::string::npos) return d;
    return ' ';
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> out;
    if (delim == ' ') {
        std::istringstream in(line);
        std::string tok;
        while (in >> tok) out.push_back(tok);
        return out;
    }
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delim)) {
        auto b = field.find_first_not_of(" \t");
        auto e = field.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

bool is_number(const std::string& s, double* value) {
    if (s.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    *value = v;
    return true;
}

bool is_missing(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "-";
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

Network parse_network(const std::string& content, bool directed, bool self_ties_defined) {
    auto lines = split_lines(content);
    if (lines.empty()) throw DataError("empty network file");
    char delim = detect_delimiter(lines);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const auto& l : lines) rows.push_back(split_fields(l, delim));

    // Header row signals: an empty corner field, a row with no numeric
    // fields at all, or one field less than the following rows.
    double v;
    bool header = false;
    if (rows.size() >= 2) {
        if (rows[0].empty() || rows[0][0].empty()) {
            header = true;
        } else if (rows[0].size() + 1 == rows[1].size()) {
            header = true;
        } else {
            bool any_numeric = false;
            for (const auto& f : rows[0])
                if (is_number(f, &v)) { any_numeric = true; break; }
            header = !any_numeric;
        }
    }
    size_t r0 = header ? 1 : 0;
    size_t n = rows.size() - r0;
    if (n == 0) throw DataError("network file has no data rows");

    // Label column: data rows one field wider than the matrix, or a
    // non-numeric leading field.
    bool label_col = false;
    if (rows[r0].size() == n + 1) label_col = true;
    else if (!rows[r0].empty() && !is_number(rows[r0][0], &v) && !is_missing(rows[r0][0]))
        label_col = true;

    std::vector<std::string> labels;
    if (label_col)
        for (size_t r = r0; r < rows.size(); ++r) labels.push_back(rows[r][0]);
    if (labels.empty() && header) {
        auto h = rows[0];
        while (h.size() > n && (h[0].empty())) h.erase(h.begin());
        if (h.size() == n) labels = h;
    }
    if (labels.empty())
        for (size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    if (labels.size() != n)
        throw DataError("label count " + std::to_string(labels.size()) +
                        " does not match " + std::to_string(n) + " rows");

    std::vector<double> values(n * n, 0.0);
    for (size_t r = 0; r < n; ++r) {
        const auto& row = rows[r0 + r];
        size_t c0 = label_col ? 1 : 0;
        if (row.size() - c0 != n)
            throw DataError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(row.size() - c0) + " cells, expected " +
                            std::to_string(n));
        for (size_t c = 0; c < n; ++c) {
            const std::string& cell = row[c0 + c];
            if (is_missing(cell)) {
                if (r != c)
                    throw DataError("missing value off the diagonal at row " +
                                    std::to_string(r + 1) + ", column " + std::to_string(c + 1));
                if (self_ties_defined)
                    throw DataError("self-ties requested but diagonal missing at row " +
                                    std::to_string(r + 1));
                values[r * n + c] = 0.0;
                continue;
            }
            if (!is_number(cell, &v))
                throw DataError("non-numeric cell '" + cell + "' at row " +
                                std::to_string(r + 1) + ", column " + std::to_string(c + 1));
            values[r * n + c] = v;
        }
    }
    return build_network(std::move(labels), std::move(values), directed, self_ties_defined);
}

Network parse_network_file(const std::string& path, bool directed, bool self_ties_defined) {
    try {
        return parse_network(read_file(path), directed, self_ties_defined);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

namespace {

std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string format_network(const Network& net) {
    std::ostringstream out;
    int n = net.size();
    for (int i = 0; i < n; ++i) out << '\t' << net.label(i);
    out << '\n';
    for (int r = 0; r < n; ++r) {
        out << net.label(r);
        for (int c = 0; c < n; ++c) {
            out << '\t';
            if (r == c && !net.self_ties_defined()) out << "NA";
            else out << format_value(net.at(r, c));
        }
        out << '\n';
    }
    return out.str();
}

Partition parse_partition(const std::string& content, const Network& net) {
    auto lines = split_lines(content);
    if (lines.empty()) throw DataError("empty partition file");
    std::vector<std::vector<std::string>> groups;
    if (lines.size() == 1 && lines[0].find(';') != std::string::npos) {
        // one line of ";"-separated comma-lists
        std::istringstream in(lines[0]);
        std::string group;
        while (std::getline(in, group, ';')) {
            std::vector<std::string> members;
            std::istringstream gin(group);
            std::string label;
            while (std::getline(gin, label, ',')) {
                label = trim(label);
                if (!label.empty()) members.push_back(label);
            }
            if (!members.empty()) groups.push_back(members);
        }
    } else {
        // label <TAB> position lines
        std::vector<std::pair<std::string, long>> pairs;
        long max_pos = -1;
        for (const auto& l : lines) {
            auto fields = split_fields(l, detect_delimiter({l}));
            if (fields.size() != 2)
                throw DataError("partition line needs 'label position': " + l);
            double v;
            if (!is_number(fields[1], &v))
                throw DataError("non-numeric position '" + fields[1] + "'");
            long p = static_cast<long>(v);
            pairs.push_back({fields[0], p});
            max_pos = std::max(max_pos, p);
        }
        // positions may be 0- or 1-based; normalise to 0-based
        long min_pos = max_pos;
        for (auto& [l, p] : pairs) min_pos = std::min(min_pos, p);
        groups.assign(max_pos - min_pos + 1, {});
        for (auto& [l, p] : pairs) groups[p - min_pos].push_back(l);
        groups.erase(std::remove_if(groups.begin(), groups.end(),
                                    [](const auto& g) { return g.empty(); }),
                     groups.end());
    }
    return make_partition(groups, net);
}

Partition parse_partition_file(const std::string& path, const Network& net) {
    try {
        return parse_partition(read_file(path), net);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::string format_partition(const Partition& part, const Network& net) {
    std::ostringstream out;
    for (int g = 0; g < part.k(); ++g) {
        if (g) out << "; ";
        bool first = true;
        for (int a : part.members(g)) {
            if (!first) out << ',';
            out << net.label(a);
            first = false;
        }
    }
    out << '\n';
    return out.str();
}

BlockImage parse_blockimage(const std::string& content) {
    // rows separated by newlines or ';'
    std::string norm = content;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    auto lines = split_lines(norm);
    if (lines.empty()) throw DataError("empty blockimage");
    int k = static_cast<int>(lines.size());
    std::vector<std::vector<BlockType>> cells;
    for (const auto& line : lines) {
        auto fields = split_fields(line, ' ');
        if (static_cast<int>(fields.size()) != k)
            throw DataError("blockimage is not square: row '" + line + "' has " +
                            std::to_string(fields.size()) + " cells, expected " +
                            std::to_string(k));
        for (const auto& f : fields) {
            std::vector<BlockType> alts;
            std::istringstream in(f);
            std::string code;
            while (std::getline(in, code, '|')) {
                BlockType t;
                if (!parse_block_type(trim(code), &t))
                    throw DataError("unknown block type code '" + code + "'");
                alts.push_back(t);
            }
            if (alts.empty()) throw DataError("empty blockimage cell");
            cells.push_back(alts);
        }
    }
    return BlockImage(k, std::move(cells));
}

BlockImage parse_blockimage_file(const std::string& path) {
    try {
        return parse_blockimage(read_file(path));
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::string format_blockimage(const BlockImage& image) {
    std::ostringstream out;
    for (int i = 0; i < image.k(); ++i) {
        for (int j = 0; j < image.k(); ++j) {
            if (j) out << ' ';
            const auto& alts = image.alternatives(i, j);
            for (size_t a = 0; a < alts.size(); ++a) {
                if (a) out << '|';
                out << block_type_code(alts[a]);
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_blockmodel(const Network& net, const Partition& part,
                              const BlockImage& image) {
    // actor order: by position, then by original index
    std::vector<int> order;
    for (int g = 0; g < part.k(); ++g)
        for (int a : part.members(g)) order.push_back(a);

    size_t label_w = 2;
    for (const auto& l : net.labels()) label_w = std::max(label_w, l.size());
    std::vector<std::vector<std::string>> cells(net.size());
    size_t cell_w = 1;
    bool binary = net.is_binary();
    for (int r : order) {
        for (int c : order) {
            std::string s;
            if (r == c && !net.self_ties_defined()) {
                s = ".";
            } else {
                s = format_value(net.at(r, c));
                // inconsistencies of com/nul blocks on binary data
                if (binary) {
                    BlockType t = image.cell(part.position_of(r), part.position_of(c));
                    double v = net.at(r, c);
                    if ((t == BlockType::Com && v == 0) || (t == BlockType::Nul && v != 0))
                        s += '*';
                }
            }
            cell_w = std::max(cell_w, s.size());
            cells[r].push_back(s);
        }
    }

    std::ostringstream out;
    out << "# positions: ";
    for (int g = 0; g < part.k(); ++g) {
        if (g) out << " | ";
        bool first = true;
        for (int a : part.members(g)) {
            if (!first) out << ',';
            out << net.label(a);
            first = false;
        }
    }
    out << '\n';

    auto pad = [](const std::string& s, size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };
    // column header
    out << std::string(label_w, ' ');
    for (size_t ci = 0; ci < order.size(); ++ci) {
        if (ci > 0 && part.position_of(order[ci]) != part.position_of(order[ci - 1]))
            out << " |";
        out << ' ' << pad(net.label(order[ci]), cell_w);
    }
    out << '\n';
    for (size_t ri = 0; ri < order.size(); ++ri) {
        if (ri > 0 && part.position_of(order[ri]) != part.position_of(order[ri - 1])) {
            size_t width = label_w;
            for (size_t ci = 0; ci < order.size(); ++ci) width += cell_w + 1;
            width += 2 * (part.k() - 1);
            out << std::string(width, '-') << '\n';
        }
        int r = order[ri];
        out << pad(net.label(r), label_w);
        for (size_t ci = 0; ci < order.size(); ++ci) {
            if (ci > 0 && part.position_of(order[ci]) != part.position_of(order[ci - 1]))
                out << " |";
            out << ' ' << pad(cells[r][ci], cell_w);
        }
        out << '\n';
    }

    // per-block annotations
    out << '\n';
    Evaluation ev = evaluate(net, part, image);
    out << "blockimage (type, density, weight):\n";
    for (int i = 0; i < part.k(); ++i) {
        for (int j = 0; j < part.k(); ++j) {
            const auto& d = ev.per_block[i * part.k() + j];
            if (j) out << "  ";
            if (d.checkable_cells == 0) {
                out << "[-]";
                continue;
            }
            char buf[96];
            std::snprintf(buf, sizeof buf, "[%s d=%.2f w=%g]", block_type_code(d.type),
                          d.density, d.weight_sum);
            out << buf;
        }
        out << '\n';
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "correlation: %.4f", ev.correlation);
    out << buf;
    if (ev.penalty) {
        std::snprintf(buf, sizeof buf, "  penalty: %ld%s", *ev.penalty,
                      ev.penalty_excludes_dnc ? " (dnc blocks excluded)" : "");
        out << buf;
    }
    out << '\n';
    return out.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
        throw DataError("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string network_digest(const Network& net) {
    std::ostringstream canon;
    canon << "directed=" << net.directed() << ";self=" << net.self_ties_defined()
          << ";labels=";
    for (int i = 0; i < net.size(); ++i) {
        if (i) canon << ',';
        canon << net.label(i);
    }
    canon << ";values=";
    for (int r = 0; r < net.size(); ++r)
        for (int c = 0; c < net.size(); ++c) {
            if (r || c) canon << ',';
            if (r == c && !net.self_ties_defined()) canon << "NA";
            else canon << format_value(net.at(r, c));
        }
    return sha256_hex(canon.str());
}

} // namespace blockcorr
