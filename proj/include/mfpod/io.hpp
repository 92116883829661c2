#pragma once

#include <filesystem>
#include <string>

#include "mfpod/field_grid.hpp"
#include "mfpod/pod.hpp"

namespace mfpod {

/// Scattered-field CSV: header `x,y,value`, one row per mesh node, '.'
/// decimal separator. Values are written with round-trip precision.
ScatteredField read_scattered_csv(const std::filesystem::path& path,
                                  Fidelity fidelity = Fidelity::LF);
void write_scattered_csv(const std::filesystem::path& path, const ScatteredField& field);

/// Grid-field binary container: 16-byte magic+version header; nx, ny and the
/// domain bounds as 64-bit floats; the mask as packed bits (row-major,
/// LSB-first); the masked values as little-endian 64-bit floats.
void write_grid_field(const std::filesystem::path& path, const GridField& field);
GridField read_grid_field(const std::filesystem::path& path);
GridField read_grid_field(const std::filesystem::path& path, const GridPtr& expected_grid);

/// POD basis persisted as the grid-field container extended with a
/// mode-count header (k, snapshot count, centering flag).
void write_pod_basis(const std::filesystem::path& path, const PODBasis& basis);
PODBasis read_pod_basis(const std::filesystem::path& path);

}  // namespace mfpod
