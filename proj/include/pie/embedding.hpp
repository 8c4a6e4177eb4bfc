#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pie/graph.hpp"
#include "pie/tree.hpp"

namespace pie {

/// Coordinates of one node in one tree. Vectors of different nodes in the
/// same tree may differ in length; distances use their common prefix.
struct CoordinateVector {
  TreeId tree;
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  bool operator==(const CoordinateVector&) const = default;
};

using BinaryCode = std::vector<std::uint8_t>;

/// Codes for `s` equiprobable siblings, as a complete Huffman code.
///
/// With h = ceil(log2 s): 2^h - s codes of length h - 1 followed by
/// 2(s - 2^(h-1)) codes of length h, canonical order within each length.
/// A single child gets no code, so s = 1 yields an empty list.
std::vector<BinaryCode> prefix_free_codes(std::size_t s);

struct CoordMsg {
  std::vector<double> parent_coords;
  /// Absent when the parent has exactly one child.
  std::optional<BinaryCode> code;
};

/// Child coordinates derived from the parent's: every inherited coordinate
/// moves away from zero by the link weight (zero counts as nonnegative), then
/// each code bit appends -w for 0 and +w for 1.
std::vector<double> apply_coord_msg(const CoordMsg& msg, Weight link_weight);

/// l-infinity distance over the common coordinate prefix. Throws
/// ContractViolation when the vectors belong to different trees.
double linf_distance(const CoordinateVector& a, const CoordinateVector& b);

/// Same metric on raw coordinate lists.
double linf_distance(std::span<const double> a, std::span<const double> b) noexcept;

struct ForestEmbedding {
  std::vector<CoordinateVector> coords;
  std::size_t rounds = 0;
  std::size_t messages = 0;
};

/// Runs the coordinates maintainer over a converged forest. Every tree of the
/// level is embedded at once since the trees are disjoint.
ForestEmbedding embed_forest(const Graph& g, const LevelForest& forest, const SimConfig& config);

/// Coordinate sets of all nodes over all m levels.
class MultiTreeEmbedding {
 public:
  MultiTreeEmbedding() = default;
  MultiTreeEmbedding(std::size_t node_count, std::vector<ForestEmbedding> levels);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t levels() const noexcept { return levels_; }

  const CoordinateVector& at(NodeId u, std::size_t level) const {
    return table_[static_cast<std::size_t>(u) * levels_ + level];
  }
  /// The node's coordinate set: one entry per level, ascending level.
  std::span<const CoordinateVector> node_set(NodeId u) const {
    return {table_.data() + static_cast<std::size_t>(u) * levels_, levels_};
  }
  /// Coordinates summed over the node's m trees.
  std::size_t total_dim(NodeId u) const;

  std::size_t rounds = 0;
  std::size_t messages = 0;

 private:
  std::size_t node_count_ = 0;
  std::size_t levels_ = 0;
  std::vector<CoordinateVector> table_;
};

/// CSV: nodeId,treeLevel,treeRoot,dim,coords (coords colon-separated).
void write_coordinate_dump(const MultiTreeEmbedding& emb, std::ostream& out);

}  // namespace pie
