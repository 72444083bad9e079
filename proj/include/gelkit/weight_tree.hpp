#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace gelkit {

/// Complete binary sum tree over a fixed slot array, carrying several weight
/// channels per slot. Updates recompute the path to the root from the two
/// children, so the sums carry no accumulated drift from repeated deltas.
template <std::size_t Channels>
class WeightTree {
 public:
  using Weights = std::array<double, Channels>;

  WeightTree() = default;
  explicit WeightTree(std::size_t slots) { reset(slots); }

  void reset(std::size_t slots) {
    leaves_ = 1;
    while (leaves_ < slots) leaves_ *= 2;
    slots_ = slots;
    nodes_.assign(2 * leaves_, Weights{});
  }

  std::size_t slots() const { return slots_; }

  /// Sets all leaves at once and rebuilds internal sums in O(n).
  void assign(const std::vector<Weights>& leaf_weights) {
    reset(leaf_weights.size());
    for (std::size_t i = 0; i < leaf_weights.size(); ++i) nodes_[leaves_ + i] = leaf_weights[i];
    for (std::size_t node = leaves_ - 1; node >= 1; --node) pull(node);
  }

  void set(std::size_t slot, const Weights& w) {
    std::size_t node = leaves_ + slot;
    nodes_[node] = w;
    for (node /= 2; node >= 1; node /= 2) pull(node);
  }

  const Weights& get(std::size_t slot) const { return nodes_[leaves_ + slot]; }

  double total(std::size_t channel) const { return nodes_.size() > 1 ? nodes_[1][channel] : 0.0; }

  /// Slot s with prefix(s) <= target < prefix(s) + w(s) on the given channel.
  /// `target` must lie in [0, total(channel)). Never returns a zero-weight
  /// slot while the total is positive.
  std::size_t find(std::size_t channel, double target) const {
    std::size_t node = 1;
    while (node < leaves_) {
      const std::size_t left = 2 * node;
      const double left_sum = nodes_[left][channel];
      if (target < left_sum || nodes_[left + 1][channel] <= 0.0) {
        node = left;
      } else {
        target -= left_sum;
        node = left + 1;
      }
    }
    return node - leaves_;
  }

 private:
  void pull(std::size_t node) {
    for (std::size_t c = 0; c < Channels; ++c) {
      nodes_[node][c] = nodes_[2 * node][c] + nodes_[2 * node + 1][c];
    }
  }

  std::size_t leaves_ = 1;
  std::size_t slots_ = 0;
  std::vector<Weights> nodes_ = std::vector<Weights>(2);
};

}  // namespace gelkit
