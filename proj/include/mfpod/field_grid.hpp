#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "mfpod/errors.hpp"

namespace mfpod {

enum class Fidelity { LF, HF };

/// Field samples on a native (unstructured) mesh: one value per node.
struct ScatteredField {
  Eigen::MatrixX2d points;  // node coordinates (x, y)
  Eigen::VectorXd values;   // temperature per node, degC
  Fidelity fidelity = Fidelity::LF;

  Eigen::Index size() const { return points.rows(); }
};

/// Throws InvalidInputError unless points/values are consistent and finite.
void validate(const ScatteredField& field);

struct RectDomain {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

struct DiscSpec {
  double cx = 0.0, cy = 0.0, radius = 0.0;
};

/// Tight bounding square of a disc; the default regridding domain.
RectDomain bounding_square(const DiscSpec& disc);

/// Cartesian nx-by-ny grid with a boolean mask selecting cells whose centers
/// fall inside the wafer disc. Masked cells are enumerated in a fixed
/// row-major order (y-major, x within row); all flattened vectors use it.
class StandardGrid {
public:
  StandardGrid(int nx, int ny, const RectDomain& domain, const DiscSpec& disc);
  /// Unmasked variant: every cell active (m_I = nx*ny).
  StandardGrid(int nx, int ny, const RectDomain& domain);
  /// Explicit mask, one byte per cell in cell-index order (deserialization).
  StandardGrid(int nx, int ny, const RectDomain& domain, std::vector<std::uint8_t> mask);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const RectDomain& domain() const { return domain_; }
  int masked_count() const { return m_I_; }  // m_I

  double dx() const { return (domain_.x_max - domain_.x_min) / nx_; }
  double dy() const { return (domain_.y_max - domain_.y_min) / ny_; }

  bool mask(int ix, int iy) const { return mask_[cell_index(ix, iy)] != 0; }
  const std::vector<std::uint8_t>& mask_flat() const { return mask_; }

  int cell_index(int ix, int iy) const { return iy * nx_ + ix; }
  Eigen::Vector2d cell_center(int ix, int iy) const;

  /// Masked ordinal of a cell, or -1 when the cell is outside the mask.
  int masked_index(int ix, int iy) const { return masked_of_cell_[cell_index(ix, iy)]; }

  /// Centers of the masked cells in traversal order, m_I x 2.
  const Eigen::MatrixX2d& masked_centers() const { return masked_centers_; }

  bool same_layout(const StandardGrid& other) const;

private:
  void finalize_mask();

  int nx_, ny_;
  RectDomain domain_;
  std::vector<std::uint8_t> mask_;
  std::vector<int> masked_of_cell_;
  Eigen::MatrixX2d masked_centers_;
  int m_I_ = 0;
};

using GridPtr = std::shared_ptr<const StandardGrid>;

/// Field values over the masked cells of a StandardGrid, stored in the
/// grid's fixed traversal order (length m_I).
struct GridField {
  GridPtr grid;
  Eigen::VectorXd values;
};

GridPtr build_grid(int nx, int ny, const RectDomain& domain, const DiscSpec& disc);
GridPtr build_grid_unmasked(int nx, int ny, const RectDomain& domain);

/// Index of the Euclidean-nearest source point for every masked cell center.
/// Exact search; equidistant ties resolve to the lowest point index.
std::vector<int> nearest_indices(const Eigen::MatrixX2d& points, const StandardGrid& grid);

GridField interpolate_nearest(const ScatteredField& field, const GridPtr& grid);

/// Gather using a precomputed nearest-source map (one map per mesh/grid pair).
GridField apply_nearest_map(const Eigen::VectorXd& node_values, const std::vector<int>& map,
                            const GridPtr& grid);

Eigen::VectorXd flatten(const GridField& field);
GridField unflatten(const GridPtr& grid, const Eigen::VectorXd& values);

}  // namespace mfpod
