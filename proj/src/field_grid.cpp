#include "mfpod/field_grid.hpp"

#include <cmath>

#include "mfpod/kdtree.hpp"

namespace mfpod {

void validate(const ScatteredField& field) {
  if (field.points.rows() == 0) throw EmptyInputError("scattered field has no points");
  if (field.points.rows() != field.values.size())
    throw ShapeError("scattered field points/values length mismatch");
  if (!field.points.allFinite()) throw InvalidInputError("scattered field has non-finite coordinates");
  if (!field.values.allFinite()) throw InvalidInputError("scattered field has non-finite values");
}

RectDomain bounding_square(const DiscSpec& disc) {
  return RectDomain{disc.cx - disc.radius, disc.cx + disc.radius, disc.cy - disc.radius,
                    disc.cy + disc.radius};
}

namespace {
void check_domain(int nx, int ny, const RectDomain& d) {
  if (nx < 2 || ny < 2) throw InvalidDomainError("grid needs nx >= 2 and ny >= 2");
  if (!(d.x_min < d.x_max) || !(d.y_min < d.y_max))
    throw InvalidDomainError("grid domain rectangle has zero or negative area");
}
}  // namespace

StandardGrid::StandardGrid(int nx, int ny, const RectDomain& domain, const DiscSpec& disc)
    : nx_(nx), ny_(ny), domain_(domain) {
  check_domain(nx, ny, domain);
  if (!(disc.radius > 0.0)) throw InvalidDomainError("disc radius must be positive");
  mask_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
  const double r2 = disc.radius * disc.radius;
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const Eigen::Vector2d c = cell_center(ix, iy);
      const double dx = c.x() - disc.cx;
      const double dy = c.y() - disc.cy;
      if (dx * dx + dy * dy <= r2) mask_[cell_index(ix, iy)] = 1;
    }
  }
  finalize_mask();
  if (m_I_ < 1) throw InvalidDomainError("disc mask selects no grid cells");
}

StandardGrid::StandardGrid(int nx, int ny, const RectDomain& domain)
    : nx_(nx), ny_(ny), domain_(domain) {
  check_domain(nx, ny, domain);
  mask_.assign(static_cast<std::size_t>(nx_) * ny_, 1);
  finalize_mask();
}

StandardGrid::StandardGrid(int nx, int ny, const RectDomain& domain, std::vector<std::uint8_t> mask)
    : nx_(nx), ny_(ny), domain_(domain), mask_(std::move(mask)) {
  check_domain(nx, ny, domain);
  if (mask_.size() != static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_))
    throw ShapeError("grid mask length does not match nx*ny");
  finalize_mask();
  if (m_I_ < 1) throw InvalidDomainError("grid mask selects no cells");
}

void StandardGrid::finalize_mask() {
  masked_of_cell_.assign(mask_.size(), -1);
  m_I_ = 0;
  for (std::size_t c = 0; c < mask_.size(); ++c) {
    if (mask_[c]) masked_of_cell_[c] = m_I_++;
  }
  masked_centers_.resize(m_I_, 2);
  int out = 0;
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      if (mask_[cell_index(ix, iy)]) masked_centers_.row(out++) = cell_center(ix, iy).transpose();
    }
  }
}

Eigen::Vector2d StandardGrid::cell_center(int ix, int iy) const {
  return {domain_.x_min + (ix + 0.5) * dx(), domain_.y_min + (iy + 0.5) * dy()};
}

bool StandardGrid::same_layout(const StandardGrid& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ && domain_.x_min == other.domain_.x_min &&
         domain_.x_max == other.domain_.x_max && domain_.y_min == other.domain_.y_min &&
         domain_.y_max == other.domain_.y_max && mask_ == other.mask_;
}

GridPtr build_grid(int nx, int ny, const RectDomain& domain, const DiscSpec& disc) {
  return std::make_shared<const StandardGrid>(nx, ny, domain, disc);
}

GridPtr build_grid_unmasked(int nx, int ny, const RectDomain& domain) {
  return std::make_shared<const StandardGrid>(nx, ny, domain);
}

std::vector<int> nearest_indices(const Eigen::MatrixX2d& points, const StandardGrid& grid) {
  if (points.rows() == 0) throw EmptyInputError("nearest_indices: no source points");
  KdTree2 tree(points);
  const Eigen::MatrixX2d& centers = grid.masked_centers();
  std::vector<int> map(static_cast<std::size_t>(centers.rows()));
  for (Eigen::Index i = 0; i < centers.rows(); ++i) {
    map[static_cast<std::size_t>(i)] = tree.nearest(centers(i, 0), centers(i, 1));
  }
  return map;
}

GridField interpolate_nearest(const ScatteredField& field, const GridPtr& grid) {
  validate(field);
  const std::vector<int> map = nearest_indices(field.points, *grid);
  return apply_nearest_map(field.values, map, grid);
}

GridField apply_nearest_map(const Eigen::VectorXd& node_values, const std::vector<int>& map,
                            const GridPtr& grid) {
  if (static_cast<int>(map.size()) != grid->masked_count())
    throw ShapeError("nearest map length does not match grid mask");
  Eigen::VectorXd out(grid->masked_count());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || map[i] >= node_values.size())
      throw ShapeError("nearest map index out of range");
    out[static_cast<Eigen::Index>(i)] = node_values[map[i]];
  }
  return GridField{grid, std::move(out)};
}

Eigen::VectorXd flatten(const GridField& field) {
  if (!field.grid) throw InvalidInputError("grid field has no grid");
  if (field.values.size() != field.grid->masked_count())
    throw ShapeError("grid field length does not match grid m_I");
  return field.values;
}

GridField unflatten(const GridPtr& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid->masked_count())
    throw ShapeError("unflatten: vector length does not match grid m_I");
  return GridField{grid, values};
}

}  // namespace mfpod
