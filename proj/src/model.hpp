#ifndef BLOCKCORR_MODEL_HPP
#define BLOCKCORR_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace blockcorr {

/// A square, non-negative, possibly directed value matrix with actor labels.
///
/// Binary networks are just the 0/1 special case. When self_ties_defined is
/// false (the default for every network in this package), diagonal cells are
/// treated as absent: they are skipped by every block generator and never
/// enter any criterion, regardless of what the storage contains.
class Network {
public:
    Network(std::vector<std::string> labels, std::vector<double> values,
            bool directed, bool self_ties_defined);

    int size() const { return n_; }
    bool directed() const { return directed_; }
    bool self_ties_defined() const { return self_ties_defined_; }
    bool is_binary() const { return binary_; }

    double at(int row, int col) const { return values_[static_cast<size_t>(row) * n_ + col]; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }

    /// Index of a label, or -1.
    int index_of(const std::string& label) const;

    /// Network with rows/columns (and labels) reordered by `perm`, where
    /// perm[i] is the old index placed at new position i.
    Network permuted(const std::vector<int>& perm) const;

private:
    int n_;
    std::vector<std::string> labels_;
    std::vector<double> values_;
    bool directed_;
    bool self_ties_defined_;
    bool binary_;
};

Network build_network(std::vector<std::string> labels, std::vector<double> values,
                      bool directed, bool self_ties_defined);

/// Assignment of each actor to one of k non-empty positions. k >= 2 always:
/// a single position admits only constant ideal vectors, so every criterion
/// would be undefined.
class Partition {
public:
    Partition(std::vector<int> assignment, int k);

    int k() const { return k_; }
    int size() const { return static_cast<int>(assignment_.size()); }
    int position_of(int actor) const { return assignment_[actor]; }
    const std::vector<int>& assignment() const { return assignment_; }
    const std::vector<int>& members(int position) const { return groups_[position]; }
    const std::vector<std::vector<int>>& groups() const { return groups_; }

    /// Canonical restricted-growth relabeling: positions renumbered by first
    /// occurrence. Returns the relabeled partition and the map old->new.
    Partition canonical(std::vector<int>* old_to_new = nullptr) const;

private:
    std::vector<int> assignment_;
    int k_;
    std::vector<std::vector<int>> groups_;
};

/// Build a partition from explicit label groups; group order fixes position
/// indices. Groups must be disjoint, non-empty, and jointly cover all actors.
Partition make_partition(const std::vector<std::vector<std::string>>& groups,
                         const Network& net);

enum class BlockType : int {
    Com = 0, // complete
    Nul = 1, // null
    Reg = 2, // regular
    Rre = 3, // row-regular
    Cre = 4, // column-regular
    Rfn = 5, // row-functional
    Cfn = 6, // column-functional
    Dnc = 7, // do-not-care
};

inline constexpr int kBlockTypeCount = 8;

const char* block_type_code(BlockType t);
bool parse_block_type(const std::string& code, BlockType* out);

/// k x k grid of ideal block types. Each cell holds an ordered list of
/// alternatives; a singleton list is a fixed cell, more entries make the
/// blockimage an ensemble (order = priority).
class BlockImage {
public:
    explicit BlockImage(int k);
    BlockImage(int k, std::vector<std::vector<BlockType>> cells);

    static BlockImage fixed(int k, std::vector<BlockType> cells);

    int k() const { return k_; }
    const std::vector<BlockType>& alternatives(int i, int j) const {
        return cells_[static_cast<size_t>(i) * k_ + j];
    }
    void set(int i, int j, std::vector<BlockType> alts);

    bool is_fixed() const;
    /// First alternative of every cell (requires is_fixed() for exactness).
    BlockType cell(int i, int j) const { return alternatives(i, j)[0]; }
    std::vector<BlockType> fixed_cells() const;

    /// Number of ensemble members (product of alternative counts).
    long long ensemble_size() const;

    bool contains_dnc() const;

    /// Blockimage with rows and columns permuted by the position map
    /// new = old_to_new[old].
    BlockImage permuted(const std::vector<int>& old_to_new) const;

    bool operator==(const BlockImage& other) const = default;

private:
    int k_;
    std::vector<std::vector<BlockType>> cells_;
};

/// One empirical block of a blockmodel: the actors spanning it plus the
/// number of checkable cells (diagonal cells are not checkable when
/// self-ties are undefined).
struct BlockView {
    const std::vector<int>* row_actors;
    const std::vector<int>* col_actors;
    bool diagonal;
    long checkable_cells;
};

BlockView block_view(const Network& net, const Partition& part, int i, int j);

} // namespace blockcorr

#endif
