#include "criteria.hpp"

#include <cmath>

namespace blockcorr {

double PointBiserialParts::balance_factor() const {
    return std::sqrt(static_cast<double>(n1) * static_cast<double>(n0) /
                     (static_cast<double>(n) * static_cast<double>(n)));
}

double weighted_correlation(std::span<const ValueTriplet> triplets) {
    if (triplets.size() < 2)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Observed,
                                 "correlation needs at least two observations, got " +
                                     std::to_string(triplets.size()));
    double xmin = triplets[0].x, xmax = triplets[0].x;
    int ymin = triplets[0].y, ymax = triplets[0].y;
    double sw = 0, swx = 0, swy = 0;
    for (const auto& t : triplets) {
        sw += t.w;
        swx += t.w * t.x;
        swy += t.w * t.y;
        xmin = std::min(xmin, t.x);
        xmax = std::max(xmax, t.x);
        ymin = std::min(ymin, t.y);
        ymax = std::max(ymax, t.y);
    }
    if (ymin == ymax)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                 "ideal vector is constant (" + std::to_string(ymin) +
                                     "): trivial blockimage");
    if (xmin == xmax)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Observed,
                                 "observed vector is constant (" + std::to_string(xmin) + ")");
    double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& t : triplets) {
        double dx = t.x - xbar, dy = t.y - ybar;
        sxx += t.w * dx * dx;
        syy += t.w * dy * dy;
        sxy += t.w * dx * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

std::pair<double, PointBiserialParts> point_biserial(std::span<const double> x,
                                                     std::span<const int> y) {
    if (x.size() != y.size())
        throw DataError("point_biserial: length mismatch " + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()));
    PointBiserialParts p;
    p.n = static_cast<long>(x.size());
    double s1 = 0, s0 = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (y[i] == 1) { p.n1++; s1 += x[i]; }
        else { p.n0++; s0 += x[i]; }
    }
    if (p.n1 == 0 || p.n0 == 0)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Ideal,
                                 "binary vector is constant");
    p.m1 = s1 / p.n1;
    p.m0 = s0 / p.n0;
    double mean = (s1 + s0) / p.n;
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    p.s_n = std::sqrt(ss / p.n);
    if (p.s_n == 0)
        throw UndefinedCriterion(UndefinedCriterion::Vector::Observed,
                                 "observed vector is constant");
    return {p.correlation(), p};
}

namespace {

// Row/column structure of one block on a binary matrix: tie counts per
// checkable row and column.
struct BinaryBlockShape {
    long ones = 0;
    long cells = 0;
    long n_rows = 0, n_cols = 0;           // checkable row length factors
    long empty_rows = 0, empty_cols = 0;
    std::vector<long> row_ties, col_ties;
};

BinaryBlockShape binary_shape(const Network& net, const Partition& part, int i, int j) {
    BlockView view = block_view(net, part, i, j);
    const auto& rows = *view.row_actors;
    const auto& cols = *view.col_actors;
    bool skip = view.diagonal && !net.self_ties_defined();
    BinaryBlockShape s;
    s.cells = view.checkable_cells;
    s.n_cols = static_cast<long>(cols.size()) - (skip ? 1 : 0);
    s.n_rows = static_cast<long>(rows.size()) - (skip ? 1 : 0);
    s.row_ties.assign(rows.size(), 0);
    s.col_ties.assign(cols.size(), 0);
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b) {
            if (skip && rows[a] == cols[b]) continue;
            if (net.at(rows[a], cols[b]) != 0.0) {
                s.row_ties[a]++;
                s.col_ties[b]++;
                s.ones++;
            }
        }
    if (s.n_cols > 0)
        for (long t : s.row_ties)
            if (t == 0) s.empty_rows++;
    if (s.n_rows > 0)
        for (long t : s.col_ties)
            if (t == 0) s.empty_cols++;
    return s;
}

} // namespace

long block_penalty(const Network& net, const Partition& part, int i, int j, BlockType type) {
    if (!net.is_binary())
        throw DataError("penalty criterion is defined for binary networks only");
    if (type == BlockType::Dnc) return 0;
    BinaryBlockShape s = binary_shape(net, part, i, j);
    if (s.cells == 0) return 0;
    switch (type) {
        case BlockType::Com: return s.cells - s.ones;
        case BlockType::Nul: return s.ones;
        // Empty rows cost a full row, empty columns a full column, shared
        // cells counted once (Doreian-style regular-block inconsistencies).
        case BlockType::Reg:
            return s.empty_rows * s.n_cols + s.empty_cols * s.n_rows -
                   s.empty_rows * s.empty_cols;
        case BlockType::Rre: return s.empty_rows * s.n_cols;
        case BlockType::Cre: return s.empty_cols * s.n_rows;
        case BlockType::Rfn: {
            long pen = 0;
            for (long t : s.row_ties) pen += (t == 0) ? s.n_cols : t - 1;
            return pen;
        }
        case BlockType::Cfn: {
            long pen = 0;
            for (long t : s.col_ties) pen += (t == 0) ? s.n_rows : t - 1;
            return pen;
        }
        case BlockType::Dnc: break;
    }
    return 0;
}

long penalty(const Network& net, const Partition& part, const BlockImage& image) {
    if (image.k() != part.k())
        throw DataError("blockimage is " + std::to_string(image.k()) + "x" +
                        std::to_string(image.k()) + " but partition has k=" +
                        std::to_string(part.k()));
    long total = 0;
    for (int i = 0; i < part.k(); ++i)
        for (int j = 0; j < part.k(); ++j)
            total += block_penalty(net, part, i, j, image.cell(i, j));
    return total;
}

Evaluation evaluate(const Network& net, const Partition& part, const BlockImage& image) {
    if (!image.is_fixed())
        throw DataError("evaluate needs a fixed blockimage; expand the ensemble first");
    if (image.k() != part.k())
        throw DataError("blockimage is " + std::to_string(image.k()) + "x" +
                        std::to_string(image.k()) + " but partition has k=" +
                        std::to_string(part.k()));
    Evaluation ev;
    std::vector<ValueTriplet> pooled;
    for (int i = 0; i < part.k(); ++i)
        for (int j = 0; j < part.k(); ++j) {
            TripletList list = triplets_for(image.cell(i, j), net, part, i, j);
            BlockView view = block_view(net, part, i, j);
            PerBlockDiagnostics d;
            d.i = i;
            d.j = j;
            d.type = image.cell(i, j);
            d.triplet_count = static_cast<long>(list.triplets.size());
            d.weight_sum = list.weight_sum();
            d.checkable_cells = view.checkable_cells;
            if (view.checkable_cells > 0) {
                long nonzero = 0;
                bool skip = view.diagonal && !net.self_ties_defined();
                for (int r : *view.row_actors)
                    for (int c : *view.col_actors) {
                        if (skip && r == c) continue;
                        if (net.at(r, c) != 0.0) nonzero++;
                    }
                d.density = static_cast<double>(nonzero) / view.checkable_cells;
            }
            if (net.is_binary() && d.type != BlockType::Dnc)
                d.penalty = block_penalty(net, part, i, j, d.type);
            ev.per_block.push_back(d);
            pooled.insert(pooled.end(), list.triplets.begin(), list.triplets.end());
        }
    ev.correlation = weighted_correlation(pooled);
    if (net.is_binary()) {
        long total = 0;
        for (const auto& d : ev.per_block) total += d.penalty.value_or(0);
        ev.penalty = total;
        ev.penalty_excludes_dnc = image.contains_dnc();
    }
    return ev;
}

BestPenaltyResult per_block_best_penalty(const Network& net, const Partition& part,
                                         const std::vector<BlockType>& allowed) {
    if (allowed.empty()) throw DataError("no allowed block types");
    BlockImage image(part.k());
    long total = 0;
    for (int i = 0; i < part.k(); ++i)
        for (int j = 0; j < part.k(); ++j) {
            long best = -1;
            BlockType best_type = allowed[0];
            for (BlockType t : allowed) {
                long p = block_penalty(net, part, i, j, t);
                if (best < 0 || p < best) {
                    best = p;
                    best_type = t;
                }
            }
            image.set(i, j, {best_type});
            total += best;
        }
    return {image, total};
}

} // namespace blockcorr
