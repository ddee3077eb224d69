#include "solarcast/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace solarcast {

double RegressionTree::predict(const double* row) const {
    int i = 0;
    while (!nodes_[i].is_leaf())
        i = row[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    return nodes_[i].value;
}

void RegressionTree::predict(const Matrix& X, std::vector<double>& out) const {
    out.resize(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) out[r] = predict(X.row(r));
}

namespace {

struct Split {
    bool found = false;
    int feature = 0;
    double threshold = 0.0;
    double gain = 0.0;  // sum-of-squares reduction
};

struct Builder {
    const Matrix& X;
    std::span<const double> y;
    int max_depth;
    int min_leaf;
    std::vector<TreeNode> nodes;
    std::vector<std::size_t> order;  // scratch

    Split best_split(std::span<std::size_t> rows) {
        const std::size_t n = rows.size();
        Split best;
        if (n < 2 * static_cast<std::size_t>(min_leaf)) return best;

        double total_sum = 0.0;
        for (std::size_t r : rows) total_sum += y[r];

        for (std::size_t f = 0; f < X.cols(); ++f) {
            order.assign(rows.begin(), rows.end());
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const double xa = X(a, f), xb = X(b, f);
                if (xa != xb) return xa < xb;
                return a < b;
            });

            double left_sum = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left_sum += y[order[i]];
                const double xl = X(order[i], f);
                const double xr = X(order[i + 1], f);
                if (xl == xr) continue;
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (nl < static_cast<std::size_t>(min_leaf) ||
                    nr < static_cast<std::size_t>(min_leaf))
                    continue;
                const double right_sum = total_sum - left_sum;
                const double gain = left_sum * left_sum / nl + right_sum * right_sum / nr -
                                    total_sum * total_sum / n;
                const double threshold = xl + 0.5 * (xr - xl);
                // Strictly-greater keeps the lowest (feature, threshold) on ties.
                if (gain > best.gain + 1e-15 && gain > 1e-12) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.threshold = threshold;
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    int build(std::span<std::size_t> rows, int depth) {
        const int id = static_cast<int>(nodes.size());
        nodes.emplace_back();

        double mean = 0.0;
        for (std::size_t r : rows) mean += y[r];
        mean /= static_cast<double>(rows.size());

        Split split;
        if (depth < max_depth) split = best_split(rows);
        if (!split.found) {
            nodes[id].value = mean;
            return id;
        }

        const auto mid = std::partition(rows.begin(), rows.end(), [&](std::size_t r) {
            return X(r, split.feature) <= split.threshold;
        });
        const std::size_t nl = static_cast<std::size_t>(mid - rows.begin());

        nodes[id].feature = split.feature;
        nodes[id].threshold = split.threshold;
        const int left = build(rows.subspan(0, nl), depth + 1);
        const int right = build(rows.subspan(nl), depth + 1);
        nodes[id].left = left;
        nodes[id].right = right;
        return id;
    }
};

}  // namespace

RegressionTree fit_tree(const Matrix& X, std::span<const double> targets,
                        std::span<const std::size_t> rows, int max_depth,
                        int min_samples_leaf) {
    if (rows.empty()) throw DataError("fit_tree: no rows");
    std::vector<std::size_t> work(rows.begin(), rows.end());
    Builder b{X, targets, max_depth, std::max(1, min_samples_leaf), {}, {}};
    b.build(work, 0);
    return RegressionTree(std::move(b.nodes));
}

RegressionTree fit_tree(const Matrix& X, std::span<const double> targets, int max_depth,
                        int min_samples_leaf) {
    std::vector<std::size_t> rows(X.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return fit_tree(X, targets, rows, max_depth, min_samples_leaf);
}

}  // namespace solarcast
