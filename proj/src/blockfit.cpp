#include "blockfit.hpp"

#include <algorithm>

namespace blockcorr {

namespace {

struct BlockSpan {
    const std::vector<int>& rows;
    const std::vector<int>& cols;
    bool skip_diagonal;
    long n_rows;
    long n_cols;
    long cells; // checkable cells
};

BlockSpan span_of(const Network& net, const Partition& part, int i, int j) {
    BlockView view = block_view(net, part, i, j);
    return BlockSpan{*view.row_actors, *view.col_actors,
                     view.diagonal && !net.self_ties_defined(),
                     static_cast<long>(view.row_actors->size()),
                     static_cast<long>(view.col_actors->size()),
                     view.checkable_cells};
}

TripletList uniform_ideal(const Network& net, const Partition& part, int i, int j,
                          BlockType type, int ideal) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, type};
    out.triplets.reserve(b.cells);
    for (int r : b.rows)
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            out.triplets.push_back({net.at(r, c), ideal, 1.0});
        }
    return out;
}

} // namespace

TripletList triplets_complete(const Network& net, const Partition& part, int i, int j) {
    return uniform_ideal(net, part, i, j, BlockType::Com, 1);
}

TripletList triplets_null(const Network& net, const Partition& part, int i, int j) {
    return uniform_ideal(net, part, i, j, BlockType::Nul, 0);
}

TripletList triplets_regular(const Network& net, const Partition& part, int i, int j) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, BlockType::Reg};
    if (b.cells == 0) return out;
    double w = static_cast<double>(b.cells) / (b.n_rows + b.n_cols);
    out.triplets.reserve(b.n_rows + b.n_cols);
    for (int r : b.rows) {
        double m = 0;
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            m = std::max(m, net.at(r, c));
        }
        out.triplets.push_back({m, 1, w});
    }
    for (int c : b.cols) {
        double m = 0;
        for (int r : b.rows) {
            if (b.skip_diagonal && r == c) continue;
            m = std::max(m, net.at(r, c));
        }
        out.triplets.push_back({m, 1, w});
    }
    return out;
}

TripletList triplets_row_regular(const Network& net, const Partition& part, int i, int j) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, BlockType::Rre};
    double w = static_cast<double>(b.n_cols - (b.skip_diagonal ? 1 : 0));
    if (b.cells == 0 || w <= 0) return out;
    out.triplets.reserve(b.n_rows);
    for (int r : b.rows) {
        double m = 0;
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            m = std::max(m, net.at(r, c));
        }
        out.triplets.push_back({m, 1, w});
    }
    return out;
}

TripletList triplets_column_regular(const Network& net, const Partition& part, int i, int j) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, BlockType::Cre};
    double w = static_cast<double>(b.n_rows - (b.skip_diagonal ? 1 : 0));
    if (b.cells == 0 || w <= 0) return out;
    out.triplets.reserve(b.n_cols);
    for (int c : b.cols) {
        double m = 0;
        for (int r : b.rows) {
            if (b.skip_diagonal && r == c) continue;
            m = std::max(m, net.at(r, c));
        }
        out.triplets.push_back({m, 1, w});
    }
    return out;
}

TripletList triplets_row_functional(const Network& net, const Partition& part, int i, int j) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, BlockType::Rfn};
    if (b.cells == 0) return out;
    double w_empty = static_cast<double>(b.n_cols - (b.skip_diagonal ? 1 : 0));
    for (int r : b.rows) {
        double m = 0;
        int at_max = -1; // the overwrite loop keeps the last column attaining the max
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            double v = net.at(r, c);
            m = std::max(m, v);
        }
        if (m == 0) {
            out.triplets.push_back({0.0, 1, w_empty});
            continue;
        }
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            if (net.at(r, c) == m) at_max = c;
        }
        for (int c : b.cols) {
            if (b.skip_diagonal && r == c) continue;
            out.triplets.push_back({net.at(r, c), c == at_max ? 1 : 0, 1.0});
        }
    }
    return out;
}

TripletList triplets_column_functional(const Network& net, const Partition& part, int i, int j) {
    BlockSpan b = span_of(net, part, i, j);
    TripletList out{{}, i, j, BlockType::Cfn};
    if (b.cells == 0) return out;
    double w_empty = static_cast<double>(b.n_rows - (b.skip_diagonal ? 1 : 0));
    for (int c : b.cols) {
        double m = 0;
        int at_max = -1;
        for (int r : b.rows) {
            if (b.skip_diagonal && r == c) continue;
            m = std::max(m, net.at(r, c));
        }
        if (m == 0) {
            out.triplets.push_back({0.0, 1, w_empty});
            continue;
        }
        for (int r : b.rows) {
            if (b.skip_diagonal && r == c) continue;
            if (net.at(r, c) == m) at_max = r;
        }
        for (int r : b.rows) {
            if (b.skip_diagonal && r == c) continue;
            out.triplets.push_back({net.at(r, c), r == at_max ? 1 : 0, 1.0});
        }
    }
    return out;
}

TripletList triplets_do_not_care(const Network&, const Partition&, int i, int j) {
    return TripletList{{}, i, j, BlockType::Dnc};
}

TripletList triplets_for(BlockType type, const Network& net, const Partition& part,
                         int i, int j) {
    switch (type) {
        case BlockType::Com: return triplets_complete(net, part, i, j);
        case BlockType::Nul: return triplets_null(net, part, i, j);
        case BlockType::Reg: return triplets_regular(net, part, i, j);
        case BlockType::Rre: return triplets_row_regular(net, part, i, j);
        case BlockType::Cre: return triplets_column_regular(net, part, i, j);
        case BlockType::Rfn: return triplets_row_functional(net, part, i, j);
        case BlockType::Cfn: return triplets_column_functional(net, part, i, j);
        case BlockType::Dnc: return triplets_do_not_care(net, part, i, j);
    }
    throw DataError("unknown block type code");
}

} // namespace blockcorr
