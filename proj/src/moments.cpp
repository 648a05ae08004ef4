#include "moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blockcorr {

void TripletMoments::add(const TripletMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
        *this = o;
        return;
    }
    w += o.w;
    wx += o.wx;
    wxx += o.wxx;
    wy += o.wy;
    wyy += o.wyy;
    wxy += o.wxy;
    xmin = std::min(xmin, o.xmin);
    xmax = std::max(xmax, o.xmax);
    ymin = std::min(ymin, o.ymin);
    ymax = std::max(ymax, o.ymax);
    count += o.count;
}

std::optional<double> correlation_from_moments(const TripletMoments& t) {
    if (t.count < 2) return std::nullopt;
    if (t.ymin == t.ymax || t.xmin == t.xmax) return std::nullopt;
    double vx = t.wxx - t.wx * t.wx / t.w;
    double vy = t.wyy - t.wy * t.wy / t.w;
    if (vx <= 0 || vy <= 0) return std::nullopt;
    double cov = t.wxy - t.wx * t.wy / t.w;
    return cov / std::sqrt(vx * vy);
}

namespace {

// Moments of values each matched against ideal 1 with weight w.
TripletMoments all_one(const double* vals, size_t count, double w) {
    TripletMoments m;
    if (count == 0 || w <= 0) return m;
    m.count = static_cast<long>(count);
    m.xmin = m.xmax = vals[0];
    m.ymin = m.ymax = 1;
    double sum = 0, sumsq = 0;
    for (size_t i = 0; i < count; ++i) {
        double v = vals[i];
        sum += v;
        sumsq += v * v;
        if (v < m.xmin) m.xmin = v;
        if (v > m.xmax) m.xmax = v;
    }
    m.w = w * count;
    m.wx = w * sum;
    m.wxx = w * sumsq;
    m.wy = m.w;
    m.wyy = m.w;
    m.wxy = m.wx;
    return m;
}

} // namespace

BlockMomentTable::BlockMomentTable(const Network& net, int k)
    : net_(&net), k_(k), binary_(net.is_binary()) {
    int n = net.size();
    cells_.resize(static_cast<size_t>(k) * k);
    moments_.resize(static_cast<size_t>(k) * k * kBlockTypeCount);
    penalties_.resize(static_cast<size_t>(k) * k * kBlockTypeCount);
    members_.resize(k);
    row_stats_.resize(static_cast<size_t>(n) * k);
    col_stats_.resize(static_cast<size_t>(n) * k);
    size_t kk = static_cast<size_t>(k) * k;
    cell_sum_.resize(kk);
    cell_sumsq_.resize(kk);
    cell_min_.resize(kk);
    cell_max_.resize(kk);
    cell_ones_.resize(kk);
    cell_seen_.resize(kk);
    rmax_.reserve(n);
    cmax_.reserve(n);
}

BlockMomentTable::BlockMomentTable(const Network& net, const Partition& part)
    : BlockMomentTable(net, part.k()) {
    rebuild(part.assignment());
}

void BlockMomentTable::rebuild(const std::vector<int>& pos) {
    const Network& net = *net_;
    int n = net.size();
    int k = k_;
    size_t kk = static_cast<size_t>(k) * k;

    std::fill(cells_.begin(), cells_.end(), 0);
    std::fill(moments_.begin(), moments_.end(), TripletMoments{});
    std::fill(penalties_.begin(), penalties_.end(), 0L);
    std::fill(cell_sum_.begin(), cell_sum_.end(), 0.0);
    std::fill(cell_sumsq_.begin(), cell_sumsq_.end(), 0.0);
    std::fill(cell_min_.begin(), cell_min_.end(), 0.0);
    std::fill(cell_max_.begin(), cell_max_.end(), 0.0);
    std::fill(cell_ones_.begin(), cell_ones_.end(), 0L);
    std::fill(cell_seen_.begin(), cell_seen_.end(), 0);
    for (auto& g : members_) g.clear();
    for (int a = 0; a < n; ++a) members_[pos[a]].push_back(a);
    const LineStats zero{0, std::numeric_limits<double>::infinity(), 0, 0, 0, 0};
    std::fill(row_stats_.begin(), row_stats_.end(), zero);
    std::fill(col_stats_.begin(), col_stats_.end(), zero);

    bool self = net.self_ties_defined();
    for (int r = 0; r < n; ++r) {
        int i = pos[r];
        for (int c = 0; c < n; ++c) {
            if (r == c && !self) continue;
            int j = pos[c];
            double v = net.at(r, c);
            size_t b = static_cast<size_t>(i) * k + j;
            cells_[b]++;
            cell_sum_[b] += v;
            cell_sumsq_[b] += v * v;
            if (v != 0) cell_ones_[b]++;
            if (!cell_seen_[b]) {
                cell_seen_[b] = 1;
                cell_min_[b] = cell_max_[b] = v;
            } else {
                if (v < cell_min_[b]) cell_min_[b] = v;
                if (v > cell_max_[b]) cell_max_[b] = v;
            }
            LineStats& rs = row_stats_[static_cast<size_t>(r) * k + j];
            if (v > rs.max) rs.max = v;
            if (v < rs.min) rs.min = v;
            rs.sum += v;
            rs.sumsq += v * v;
            rs.len++;
            if (v != 0) rs.ties++;
            LineStats& cs = col_stats_[static_cast<size_t>(c) * k + i];
            if (v > cs.max) cs.max = v;
            if (v < cs.min) cs.min = v;
            cs.sum += v;
            cs.sumsq += v * v;
            cs.len++;
            if (v != 0) cs.ties++;
        }
    }

    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            size_t b = static_cast<size_t>(i) * k + j;
            long m = cells_[b];
            if (m == 0) continue;
            auto mom = [&](BlockType t) -> TripletMoments& {
                return moments_[b * kBlockTypeCount + static_cast<int>(t)];
            };
            auto pen = [&](BlockType t) -> long& {
                return penalties_[b * kBlockTypeCount + static_cast<int>(t)];
            };
            const auto& rows = members_[i];
            const auto& cols = members_[j];
            long d = (i == j && !self) ? 1 : 0;
            long n_cols = static_cast<long>(cols.size()) - d;
            long n_rows = static_cast<long>(rows.size()) - d;

            {
                TripletMoments base;
                base.count = m;
                base.w = static_cast<double>(m);
                base.wx = cell_sum_[b];
                base.wxx = cell_sumsq_[b];
                base.xmin = cell_min_[b];
                base.xmax = cell_max_[b];
                TripletMoments com = base;
                com.ymin = com.ymax = 1;
                com.wy = com.wyy = com.w;
                com.wxy = com.wx;
                mom(BlockType::Com) = com;
                TripletMoments nul = base;
                nul.ymin = nul.ymax = 0;
                mom(BlockType::Nul) = nul;
                pen(BlockType::Com) = m - cell_ones_[b];
                pen(BlockType::Nul) = cell_ones_[b];
            }

            rmax_.clear();
            cmax_.clear();
            long empty_rows = 0, empty_cols = 0;
            for (int r : rows) {
                const LineStats& rs = row_stats_[static_cast<size_t>(r) * k + j];
                rmax_.push_back(rs.max);
                if (rs.ties == 0) empty_rows++;
            }
            for (int c : cols) {
                const LineStats& cs = col_stats_[static_cast<size_t>(c) * k + i];
                cmax_.push_back(cs.max);
                if (cs.ties == 0) empty_cols++;
            }

            {
                double w = static_cast<double>(m) / (rows.size() + cols.size());
                TripletMoments reg = all_one(rmax_.data(), rmax_.size(), w);
                reg.add(all_one(cmax_.data(), cmax_.size(), w));
                mom(BlockType::Reg) = reg;
                pen(BlockType::Reg) =
                    empty_rows * n_cols + empty_cols * n_rows - empty_rows * empty_cols;
            }
            mom(BlockType::Rre) = all_one(rmax_.data(), rmax_.size(), static_cast<double>(n_cols));
            pen(BlockType::Rre) = empty_rows * n_cols;
            mom(BlockType::Cre) = all_one(cmax_.data(), cmax_.size(), static_cast<double>(n_rows));
            pen(BlockType::Cre) = empty_cols * n_rows;

            // row-functional: per non-empty row every cell unit-weight with
            // ideal 1 only at the last max; an empty row emits one
            // full-width triplet (0; 1; row length).
            {
                TripletMoments rfn;
                long p = 0;
                for (int r : rows) {
                    const LineStats& rs = row_stats_[static_cast<size_t>(r) * k + j];
                    if (rs.len == 0) continue;
                    TripletMoments rowm;
                    if (rs.max == 0) {
                        rowm.count = 1;
                        rowm.w = static_cast<double>(n_cols);
                        rowm.wy = rowm.wyy = rowm.w;
                        rowm.xmin = rowm.xmax = 0;
                        rowm.ymin = rowm.ymax = 1;
                        p += n_cols;
                    } else {
                        rowm.count = rs.len;
                        rowm.w = static_cast<double>(rs.len);
                        rowm.wx = rs.sum;
                        rowm.wxx = rs.sumsq;
                        rowm.wy = 1;
                        rowm.wyy = 1;
                        rowm.wxy = rs.max;
                        rowm.xmin = rs.min;
                        rowm.xmax = rs.max;
                        rowm.ymin = rs.len > 1 ? 0 : 1;
                        rowm.ymax = 1;
                        p += rs.ties - 1;
                    }
                    rfn.add(rowm);
                }
                mom(BlockType::Rfn) = rfn;
                pen(BlockType::Rfn) = p;
            }
            {
                TripletMoments cfn;
                long p = 0;
                for (int c : cols) {
                    const LineStats& cs = col_stats_[static_cast<size_t>(c) * k + i];
                    if (cs.len == 0) continue;
                    TripletMoments colm;
                    if (cs.max == 0) {
                        colm.count = 1;
                        colm.w = static_cast<double>(n_rows);
                        colm.wy = colm.wyy = colm.w;
                        colm.xmin = colm.xmax = 0;
                        colm.ymin = colm.ymax = 1;
                        p += n_rows;
                    } else {
                        colm.count = cs.len;
                        colm.w = static_cast<double>(cs.len);
                        colm.wx = cs.sum;
                        colm.wxx = cs.sumsq;
                        colm.wy = 1;
                        colm.wyy = 1;
                        colm.wxy = cs.max;
                        colm.xmin = cs.min;
                        colm.xmax = cs.max;
                        colm.ymin = cs.len > 1 ? 0 : 1;
                        colm.ymax = 1;
                        p += cs.ties - 1;
                    }
                    cfn.add(colm);
                }
                mom(BlockType::Cfn) = cfn;
                pen(BlockType::Cfn) = p;
            }
        }
}

const TripletMoments& BlockMomentTable::moments(int i, int j, BlockType type) const {
    return moments_[static_cast<size_t>(idx(i, j)) * kBlockTypeCount + static_cast<int>(type)];
}

long BlockMomentTable::penalty(int i, int j, BlockType type) const {
    return penalties_[static_cast<size_t>(idx(i, j)) * kBlockTypeCount + static_cast<int>(type)];
}

std::optional<double> BlockMomentTable::correlation(const BlockImage& image) const {
    return correlation(image.fixed_cells());
}

std::optional<double> BlockMomentTable::correlation(const std::vector<BlockType>& cells) const {
    TripletMoments total;
    for (int b = 0; b < k_ * k_; ++b)
        total.add(moments_[static_cast<size_t>(b) * kBlockTypeCount +
                           static_cast<int>(cells[b])]);
    return correlation_from_moments(total);
}

long BlockMomentTable::total_penalty(const std::vector<BlockType>& cells) const {
    long total = 0;
    for (int b = 0; b < k_ * k_; ++b)
        total += penalties_[static_cast<size_t>(b) * kBlockTypeCount +
                            static_cast<int>(cells[b])];
    return total;
}

} // namespace blockcorr
