#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "threefold/chern_simons.hpp"
#include "threefold/dec.hpp"

namespace threefold {

// Binary grid dump, little-endian:
//   char[8]  magic "TFGRID\0\0"
//   uint32   version (1)
//   uint32   kind (1 = one-form, 3 components; 2 = su(2) connection, 9 components)
//   uint32   n (points per axis)
//   uint32   ncomp
//   float64  values[n][n][n][ncomp], row-major over (ix, iy, iz, comp)
// Values are cochain values (edge integrals). For connections comp = 3 mu + a
// holds the T_a coefficient of the link in direction mu.
enum class GridKind : std::uint32_t { OneForm = 1, Connection = 2 };

struct GridDump {
  GridKind kind = GridKind::OneForm;
  std::uint32_t n = 0;
  std::uint32_t ncomp = 0;
  std::vector<double> values;
};

void write_grid(const std::string& path, const GridDump& g);
// Throws ValidationError for a bad header, size mismatch or truncated file.
GridDump read_grid(const std::string& path);

GridDump to_grid(const DiscreteForm& one_form);
GridDump to_grid(const LatticeConnection& a);
DiscreteForm one_form_from_grid(const GridDump& g);
LatticeConnection connection_from_grid(const GridDump& g);

}  // namespace threefold
