#include "mfpod/io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace mfpod {

namespace {

constexpr std::array<char, 8> kGridMagic = {'M', 'F', 'P', 'O', 'D', 'G', 'F', '\0'};
constexpr std::array<char, 8> kBasisMagic = {'M', 'F', 'P', 'O', 'D', 'P', 'B', '\0'};
constexpr std::uint32_t kContainerVersion = 1;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

void put_u32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

void write_header(std::ostream& out, const std::array<char, 8>& magic) {
  out.write(magic.data(), 8);
  put_u32(out, kContainerVersion);
  put_u32(out, 0);  // reserved
}

void read_header(std::istream& in, const std::array<char, 8>& magic, const char* what) {
  std::array<char, 8> got{};
  in.read(got.data(), 8);
  if (!in || got != magic) throw IoError(std::string("bad magic for ") + what);
  const std::uint32_t version = get_u32(in);
  if (version != kContainerVersion) throw IoError(std::string("unsupported version for ") + what);
  get_u32(in);  // reserved
}

void write_grid_layout(std::ostream& out, const StandardGrid& grid) {
  put_f64(out, static_cast<double>(grid.nx()));
  put_f64(out, static_cast<double>(grid.ny()));
  put_f64(out, grid.domain().x_min);
  put_f64(out, grid.domain().x_max);
  put_f64(out, grid.domain().y_min);
  put_f64(out, grid.domain().y_max);
  const auto& mask = grid.mask_flat();
  std::vector<std::uint8_t> packed((mask.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) packed[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  out.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
}

GridPtr read_grid_layout(std::istream& in) {
  const int nx = static_cast<int>(get_f64(in));
  const int ny = static_cast<int>(get_f64(in));
  RectDomain dom;
  dom.x_min = get_f64(in);
  dom.x_max = get_f64(in);
  dom.y_min = get_f64(in);
  dom.y_max = get_f64(in);
  if (!in) throw IoError("truncated grid header");
  const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<std::uint8_t> packed((cells + 7) / 8, 0);
  in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
  if (!in) throw IoError("truncated grid mask");
  std::vector<std::uint8_t> mask(cells, 0);
  for (std::size_t i = 0; i < cells; ++i) {
    mask[i] = (packed[i / 8] >> (i % 8)) & 1u;
  }
  return std::make_shared<const StandardGrid>(nx, ny, dom, std::move(mask));
}

}  // namespace

void write_scattered_csv(const std::filesystem::path& path, const ScatteredField& field) {
  validate(field);
  std::ofstream out = open_out(path, std::ios::out | std::ios::trunc);
  out << "x,y,value\n";
  char buf[96];
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", field.points(i, 0), field.points(i, 1),
                  field.values[i]);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

ScatteredField read_scattered_csv(const std::filesystem::path& path, Fidelity fidelity) {
  std::ifstream in = open_in(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty scattered-field file: " + path.string());
  // Trim a possible \r and check the header.
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != "x,y,value") throw IoError("scattered-field CSV must start with 'x,y,value'");

  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::array<double, 3> row{};
    const char* p = line.c_str();
    char* end = nullptr;
    for (int c = 0; c < 3; ++c) {
      row[static_cast<std::size_t>(c)] = std::strtod(p, &end);
      if (end == p) throw IoError("malformed row in " + path.string() + ": " + line);
      p = end;
      if (c < 2) {
        if (*p != ',') throw IoError("expected comma in " + path.string() + ": " + line);
        ++p;
      }
    }
    rows.push_back(row);
  }
  ScatteredField field;
  field.fidelity = fidelity;
  field.points.resize(static_cast<Eigen::Index>(rows.size()), 2);
  field.values.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    field.points(static_cast<Eigen::Index>(i), 0) = rows[i][0];
    field.points(static_cast<Eigen::Index>(i), 1) = rows[i][1];
    field.values[static_cast<Eigen::Index>(i)] = rows[i][2];
  }
  validate(field);
  return field;
}

void write_grid_field(const std::filesystem::path& path, const GridField& field) {
  if (!field.grid) throw InvalidInputError("grid field has no grid");
  if (field.values.size() != field.grid->masked_count())
    throw ShapeError("grid field length does not match grid m_I");
  std::ofstream out = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  write_header(out, kGridMagic);
  write_grid_layout(out, *field.grid);
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * 8));
  if (!out) throw IoError("failed writing " + path.string());
}

GridField read_grid_field(const std::filesystem::path& path) {
  return read_grid_field(path, nullptr);
}

GridField read_grid_field(const std::filesystem::path& path, const GridPtr& expected_grid) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  read_header(in, kGridMagic, "grid field");
  GridPtr grid = read_grid_layout(in);
  if (expected_grid) {
    if (!grid->same_layout(*expected_grid))
      throw GridMismatchError("grid field layout differs from expected grid: " + path.string());
    grid = expected_grid;  // share the caller's instance
  }
  Eigen::VectorXd values(grid->masked_count());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * 8));
  if (!in) throw IoError("truncated grid field: " + path.string());
  return GridField{grid, std::move(values)};
}

void write_pod_basis(const std::filesystem::path& path, const PODBasis& basis) {
  if (!basis.grid) throw InvalidInputError("POD basis has no grid");
  std::ofstream out = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  write_header(out, kBasisMagic);
  write_grid_layout(out, *basis.grid);
  put_u32(out, static_cast<std::uint32_t>(basis.k));
  put_u32(out, static_cast<std::uint32_t>(basis.singular_values.size()));
  put_u32(out, basis.centered ? 1 : 0);
  put_u32(out, 0);
  out.write(reinterpret_cast<const char*>(basis.singular_values.data()),
            static_cast<std::streamsize>(basis.singular_values.size() * 8));
  if (basis.centered) {
    out.write(reinterpret_cast<const char*>(basis.mean.data()),
              static_cast<std::streamsize>(basis.mean.size() * 8));
  }
  out.write(reinterpret_cast<const char*>(basis.modes.data()),
            static_cast<std::streamsize>(basis.modes.size() * 8));
  if (!out) throw IoError("failed writing " + path.string());
}

PODBasis read_pod_basis(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
  read_header(in, kBasisMagic, "POD basis");
  PODBasis basis;
  basis.grid = read_grid_layout(in);
  basis.k = static_cast<int>(get_u32(in));
  const int n_sigma = static_cast<int>(get_u32(in));
  basis.centered = get_u32(in) != 0;
  get_u32(in);
  basis.singular_values.resize(n_sigma);
  in.read(reinterpret_cast<char*>(basis.singular_values.data()),
          static_cast<std::streamsize>(n_sigma * 8));
  if (basis.centered) {
    basis.mean.resize(basis.grid->masked_count());
    in.read(reinterpret_cast<char*>(basis.mean.data()),
            static_cast<std::streamsize>(basis.mean.size() * 8));
  }
  basis.modes.resize(basis.grid->masked_count(), basis.k);
  in.read(reinterpret_cast<char*>(basis.modes.data()),
          static_cast<std::streamsize>(basis.modes.size() * 8));
  if (!in) throw IoError("truncated POD basis: " + path.string());
  return basis;
}

}  // namespace mfpod
