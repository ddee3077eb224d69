#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "solarcast/common.hpp"

namespace solarcast {

/// Depth-limited CART regression tree stored as a flat node array.
/// Internal nodes split on feature/threshold; leaves carry the mean target.
struct TreeNode {
    int feature = -1;          // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

class RegressionTree {
  public:
    RegressionTree() = default;
    explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<TreeNode>& nodes() const { return nodes_; }

    double predict(const double* row) const;
    void predict(const Matrix& X, std::vector<double>& out) const;

    bool operator==(const RegressionTree&) const = default;

  private:
    std::vector<TreeNode> nodes_;
};

/// Greedy variance-reduction fit over the rows listed in `rows`. Split
/// candidates are midpoints between consecutive distinct feature values; ties
/// are broken by lowest (feature, threshold) for determinism.
RegressionTree fit_tree(const Matrix& X, std::span<const double> targets,
                        std::span<const std::size_t> rows, int max_depth,
                        int min_samples_leaf);

RegressionTree fit_tree(const Matrix& X, std::span<const double> targets, int max_depth,
                        int min_samples_leaf);

}  // namespace solarcast
