#ifndef BLOCKCORR_BLOCKFIT_HPP
#define BLOCKCORR_BLOCKFIT_HPP

#include <vector>

#include "model.hpp"

namespace blockcorr {

/// One (observed; ideal; weight) observation. The ideal value is always
/// binary; weights are chosen per block type so that every block contributes
/// to the pooled criterion in proportion to its checkable cell count.
struct ValueTriplet {
    double x; // observed tie value
    int y;    // ideal value, 0 or 1
    double w; // weight, > 0
};

struct TripletList {
    std::vector<ValueTriplet> triplets;
    int block_row = 0;
    int block_col = 0;
    BlockType type = BlockType::Dnc;

    double weight_sum() const {
        double s = 0;
        for (const auto& t : triplets) s += t.w;
        return s;
    }
};

// Generators for the ideal block types. All iterate checkable cells in
// row-major order; diagonal cells are skipped when self-ties are undefined.
// Zero checkable cells (a singleton diagonal block) yields an empty list
// for every type.

/// One (a_rc; 1; 1) per checkable cell.
TripletList triplets_complete(const Network& net, const Partition& part, int i, int j);

/// One (a_rc; 0; 1) per checkable cell.
TripletList triplets_null(const Network& net, const Partition& part, int i, int j);

/// Row maxima then column maxima, all against ideal 1, weighted by
/// cells / (rows + cols) so that the weight sum equals the cell count.
TripletList triplets_regular(const Network& net, const Partition& part, int i, int j);

/// One (row max; 1; cols) per row.
TripletList triplets_row_regular(const Network& net, const Partition& part, int i, int j);

/// One (col max; 1; rows) per column.
TripletList triplets_column_regular(const Network& net, const Partition& part, int i, int j);

/// Per row: the last cell attaining the row maximum is matched against 1 and
/// every other cell against 0, all unit weight; an empty row instead emits a
/// single full-width triplet (0; 1; cols).
TripletList triplets_row_functional(const Network& net, const Partition& part, int i, int j);

/// Column-wise mirror of triplets_row_functional.
TripletList triplets_column_functional(const Network& net, const Partition& part, int i, int j);

/// Always empty: the block is excluded from the criterion.
TripletList triplets_do_not_care(const Network& net, const Partition& part, int i, int j);

/// Dispatch on block type.
TripletList triplets_for(BlockType type, const Network& net, const Partition& part,
                         int i, int j);

} // namespace blockcorr

#endif
