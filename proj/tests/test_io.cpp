#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mfpod/io.hpp"
#include "mfpod/pod.hpp"
#include "mfpod/rng.hpp"

using namespace mfpod;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "mfpod_io_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

GridField random_field(Rng& rng, const GridPtr& grid) {
  Eigen::VectorXd v(grid->masked_count());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform_in(rng, 10, 30);
  return GridField{grid, v};
}

}  // namespace

TEST_CASE("scattered CSV round trip") {
  Rng rng(2);
  ScatteredField f;
  f.points.resize(25, 2);
  f.values.resize(25);
  for (int i = 0; i < 25; ++i) {
    f.points(i, 0) = uniform_in(rng, -1, 1);
    f.points(i, 1) = uniform_in(rng, -1, 1);
    f.values[i] = uniform_in(rng, 10, 30);
  }
  f.fidelity = Fidelity::HF;
  const fs::path p = temp_dir() / "field.csv";
  write_scattered_csv(p, f);
  const ScatteredField g = read_scattered_csv(p, Fidelity::HF);
  CHECK(g.points == f.points);
  CHECK(g.values == f.values);

  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,value");
}

TEST_CASE("scattered CSV rejects malformed input") {
  const fs::path p = temp_dir() / "bad.csv";
  std::ofstream(p) << "x,y,value\n1,2\n";
  CHECK_THROWS_AS(read_scattered_csv(p), IoError);
  std::ofstream(p) << "a,b,c\n";
  CHECK_THROWS_AS(read_scattered_csv(p), IoError);
  CHECK_THROWS_AS(read_scattered_csv(temp_dir() / "missing.csv"), IoError);
}

TEST_CASE("grid field binary round trip preserves layout and bytes") {
  Rng rng(3);
  const GridPtr grid = build_grid(9, 7, RectDomain{-1, 2, 0, 2}, DiscSpec{0.5, 1.0, 0.8});
  const GridField f = random_field(rng, grid);
  const fs::path p = temp_dir() / "field.gf";
  write_grid_field(p, f);
  const GridField g = read_grid_field(p);
  CHECK(g.grid->same_layout(*grid));
  CHECK(g.values == f.values);

  // Re-writing yields bit-identical files.
  const fs::path p2 = temp_dir() / "field2.gf";
  write_grid_field(p2, g);
  CHECK(slurp(p) == slurp(p2));

  // Shared-grid overload returns the caller's grid instance.
  const GridField h = read_grid_field(p, grid);
  CHECK(h.grid.get() == grid.get());

  const GridPtr other = build_grid_unmasked(4, 4, RectDomain{0, 1, 0, 1});
  CHECK_THROWS_AS(read_grid_field(p, other), GridMismatchError);
}

TEST_CASE("grid field reader rejects foreign magic") {
  const fs::path p = temp_dir() / "junk.gf";
  std::ofstream(p, std::ios::binary) << "NOTMYFMT0000000000000000";
  CHECK_THROWS_AS(read_grid_field(p), IoError);
}

TEST_CASE("POD basis round trip") {
  Rng rng(5);
  const GridPtr grid = build_grid(8, 8, RectDomain{0, 1, 0, 1}, DiscSpec{0.5, 0.5, 0.45});
  std::vector<GridField> fields;
  for (int i = 0; i < 6; ++i) fields.push_back(random_field(rng, grid));
  const PODBasis basis = compute_pod(assemble_snapshots(fields), 3);

  const fs::path p = temp_dir() / "basis.pb";
  write_pod_basis(p, basis);
  const PODBasis loaded = read_pod_basis(p);
  CHECK(loaded.k == basis.k);
  CHECK(loaded.centered == basis.centered);
  CHECK(loaded.modes == basis.modes);
  CHECK(loaded.singular_values == basis.singular_values);
  CHECK(loaded.grid->same_layout(*grid));

  // Centered variant carries the mean.
  const PODBasis cb = compute_pod(assemble_snapshots(fields), 2, true);
  const fs::path p2 = temp_dir() / "basis_centered.pb";
  write_pod_basis(p2, cb);
  const PODBasis cl = read_pod_basis(p2);
  CHECK(cl.centered);
  CHECK(cl.mean == cb.mean);
}
