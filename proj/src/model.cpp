#include "model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace blockcorr {

namespace {

std::string cell_name(int r, int c) {
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

} // namespace

Network::Network(std::vector<std::string> labels, std::vector<double> values,
                 bool directed, bool self_ties_defined)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      values_(std::move(values)),
      directed_(directed),
      self_ties_defined_(self_ties_defined) {
    if (n_ == 0) throw DataError("network has no actors");
    if (values_.size() != static_cast<size_t>(n_) * n_)
        throw DataError("matrix is not square: " + std::to_string(values_.size()) +
                        " values for " + std::to_string(n_) + " labels");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) throw DataError("duplicate label '" + l + "'");
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            double v = at(r, c);
            if (r == c && !self_ties_defined_) continue;
            if (v < 0)
                throw DataError("negative value at " + cell_name(r, c));
        }
    if (!directed_) {
        for (int r = 0; r < n_; ++r)
            for (int c = r + 1; c < n_; ++c)
                if (at(r, c) != at(c, r))
                    throw DataError("asymmetry at " + cell_name(r, c) +
                                    " in undirected network");
    }
    binary_ = true;
    for (int r = 0; r < n_ && binary_; ++r)
        for (int c = 0; c < n_; ++c) {
            if (r == c && !self_ties_defined_) continue;
            double v = at(r, c);
            if (v != 0.0 && v != 1.0) { binary_ = false; break; }
        }
}

int Network::index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

Network Network::permuted(const std::vector<int>& perm) const {
    std::vector<std::string> labels(n_);
    std::vector<double> values(static_cast<size_t>(n_) * n_);
    for (int r = 0; r < n_; ++r) {
        labels[r] = labels_[perm[r]];
        for (int c = 0; c < n_; ++c)
            values[static_cast<size_t>(r) * n_ + c] = at(perm[r], perm[c]);
    }
    return Network(std::move(labels), std::move(values), directed_, self_ties_defined_);
}

Network build_network(std::vector<std::string> labels, std::vector<double> values,
                      bool directed, bool self_ties_defined) {
    return Network(std::move(labels), std::move(values), directed, self_ties_defined);
}

Partition::Partition(std::vector<int> assignment, int k)
    : assignment_(std::move(assignment)), k_(k) {
    if (k_ < 2)
        throw DataError("partitions need at least 2 positions, got k=" + std::to_string(k_));
    groups_.assign(k_, {});
    for (size_t i = 0; i < assignment_.size(); ++i) {
        int p = assignment_[i];
        if (p < 0 || p >= k_)
            throw DataError("actor " + std::to_string(i) + " assigned to position " +
                            std::to_string(p) + " outside 0.." + std::to_string(k_ - 1));
        groups_[p].push_back(static_cast<int>(i));
    }
    for (int p = 0; p < k_; ++p)
        if (groups_[p].empty())
            throw DataError("position " + std::to_string(p) + " is empty");
}

Partition Partition::canonical(std::vector<int>* old_to_new) const {
    std::vector<int> map(k_, -1);
    std::vector<int> relabeled(assignment_.size());
    int next = 0;
    for (size_t i = 0; i < assignment_.size(); ++i) {
        int& m = map[assignment_[i]];
        if (m < 0) m = next++;
        relabeled[i] = m;
    }
    if (old_to_new) *old_to_new = map;
    return Partition(std::move(relabeled), k_);
}

Partition make_partition(const std::vector<std::vector<std::string>>& groups,
                         const Network& net) {
    if (groups.size() < 2)
        throw DataError("a partition needs at least 2 groups, got " +
                        std::to_string(groups.size()));
    std::vector<int> assignment(net.size(), -1);
    for (size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty())
            throw DataError("group " + std::to_string(g) + " is empty");
        for (const auto& label : groups[g]) {
            int idx = net.index_of(label);
            if (idx < 0) throw DataError("unknown label '" + label + "'");
            if (assignment[idx] != -1)
                throw DataError("label '" + label + "' appears in more than one group");
            assignment[idx] = static_cast<int>(g);
        }
    }
    for (int i = 0; i < net.size(); ++i)
        if (assignment[i] == -1)
            throw DataError("actor '" + net.label(i) + "' not covered by any group");
    return Partition(std::move(assignment), static_cast<int>(groups.size()));
}

namespace {
constexpr const char* kCodes[kBlockTypeCount] = {"com", "nul", "reg", "rre",
                                                 "cre", "rfn", "cfn", "dnc"};
}

const char* block_type_code(BlockType t) { return kCodes[static_cast<int>(t)]; }

bool parse_block_type(const std::string& code, BlockType* out) {
    for (int i = 0; i < kBlockTypeCount; ++i)
        if (code == kCodes[i]) {
            *out = static_cast<BlockType>(i);
            return true;
        }
    return false;
}

BlockImage::BlockImage(int k) : k_(k), cells_(static_cast<size_t>(k) * k, {BlockType::Nul}) {
    if (k < 1) throw DataError("blockimage dimension must be positive");
}

BlockImage::BlockImage(int k, std::vector<std::vector<BlockType>> cells)
    : k_(k), cells_(std::move(cells)) {
    if (k < 1) throw DataError("blockimage dimension must be positive");
    if (cells_.size() != static_cast<size_t>(k) * k)
        throw DataError("blockimage needs " + std::to_string(k * k) + " cells, got " +
                        std::to_string(cells_.size()));
    for (auto& alts : cells_) {
        if (alts.empty()) throw DataError("blockimage cell with no alternatives");
        std::vector<bool> seen(kBlockTypeCount, false);
        for (BlockType t : alts) {
            if (seen[static_cast<int>(t)])
                throw DataError("duplicate type in blockimage cell alternatives");
            seen[static_cast<int>(t)] = true;
        }
    }
}

BlockImage BlockImage::fixed(int k, std::vector<BlockType> cells) {
    std::vector<std::vector<BlockType>> alts;
    alts.reserve(cells.size());
    for (BlockType t : cells) alts.push_back({t});
    return BlockImage(k, std::move(alts));
}

void BlockImage::set(int i, int j, std::vector<BlockType> alts) {
    if (alts.empty()) throw DataError("blockimage cell with no alternatives");
    cells_[static_cast<size_t>(i) * k_ + j] = std::move(alts);
}

bool BlockImage::is_fixed() const {
    for (const auto& alts : cells_)
        if (alts.size() != 1) return false;
    return true;
}

std::vector<BlockType> BlockImage::fixed_cells() const {
    std::vector<BlockType> out;
    out.reserve(cells_.size());
    for (const auto& alts : cells_) out.push_back(alts[0]);
    return out;
}

long long BlockImage::ensemble_size() const {
    long long total = 1;
    for (const auto& alts : cells_) total *= static_cast<long long>(alts.size());
    return total;
}

bool BlockImage::contains_dnc() const {
    for (const auto& alts : cells_)
        for (BlockType t : alts)
            if (t == BlockType::Dnc) return true;
    return false;
}

BlockImage BlockImage::permuted(const std::vector<int>& old_to_new) const {
    BlockImage out(k_);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j)
            out.set(old_to_new[i], old_to_new[j], alternatives(i, j));
    return out;
}

BlockView block_view(const Network& net, const Partition& part, int i, int j) {
    if (i < 0 || i >= part.k() || j < 0 || j >= part.k())
        throw DataError("block index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for k=" + std::to_string(part.k()));
    BlockView view;
    view.row_actors = &part.members(i);
    view.col_actors = &part.members(j);
    view.diagonal = (i == j);
    long rows = static_cast<long>(view.row_actors->size());
    long cols = static_cast<long>(view.col_actors->size());
    long skip = (view.diagonal && !net.self_ties_defined()) ? 1 : 0;
    view.checkable_cells = rows * (cols - skip);
    return view;
}

} // namespace blockcorr
