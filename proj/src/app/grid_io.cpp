#include "threefold/app/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "threefold/errors.hpp"

namespace threefold {

namespace {

constexpr char kMagic[8] = {'T', 'F', 'G', 'R', 'I', 'D', '\0', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  std::memcpy(&v, b, sizeof(T));
  return v;
}

template <typename T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw ValidationError("grid dump " + path + " is truncated");
  return to_little(v);
}

std::uint32_t expected_components(GridKind k) { return k == GridKind::OneForm ? 3 : 9; }

}  // namespace

void write_grid(const std::string& path, const GridDump& g) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open grid dump " + path + " for writing");
  os.write(kMagic, sizeof kMagic);
  put(os, kVersion);
  put(os, static_cast<std::uint32_t>(g.kind));
  put(os, g.n);
  put(os, g.ncomp);
  for (double v : g.values) put(os, v);
  if (!os) throw Error("failed writing grid dump " + path);
}

GridDump read_grid(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open grid dump " + path);
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw ValidationError("grid dump " + path + " has a bad magic header");
  if (get<std::uint32_t>(is, path) != kVersion) throw ValidationError("grid dump " + path + " has an unknown version");
  GridDump g;
  const auto kind = get<std::uint32_t>(is, path);
  if (kind != 1 && kind != 2) throw ValidationError("grid dump " + path + " has unknown kind " + std::to_string(kind));
  g.kind = static_cast<GridKind>(kind);
  g.n = get<std::uint32_t>(is, path);
  g.ncomp = get<std::uint32_t>(is, path);
  if (g.n == 0 || g.n > 4096 || g.ncomp != expected_components(g.kind))
    throw ValidationError("grid dump " + path + " has inconsistent dimensions");
  const std::size_t count = static_cast<std::size_t>(g.n) * g.n * g.n * g.ncomp;
  g.values.resize(count);
  for (double& v : g.values) v = get<double>(is, path);
  if (is.peek() != std::char_traits<char>::eof()) throw ValidationError("grid dump " + path + " has trailing bytes");
  return g;
}

GridDump to_grid(const DiscreteForm& w) {
  if (w.degree() != 1) throw ParameterError("only 1-forms can be dumped");
  return {GridKind::OneForm, static_cast<std::uint32_t>(w.n()), 3, w.values()};
}

GridDump to_grid(const LatticeConnection& a) {
  GridDump g{GridKind::Connection, static_cast<std::uint32_t>(a.n()), 9, {}};
  g.values.reserve(a.link_count() * 3);
  // Link storage is already (ix, iy, iz, mu) row-major.
  for (std::size_t i = 0; i < a.link_count(); ++i)
    for (double u : su2_coeffs(a.link(i))) g.values.push_back(u);
  return g;
}

DiscreteForm one_form_from_grid(const GridDump& g) {
  if (g.kind != GridKind::OneForm) throw ValidationError("grid dump does not hold a 1-form");
  DiscreteForm w(1, static_cast<int>(g.n));
  w.values() = g.values;
  return w;
}

LatticeConnection connection_from_grid(const GridDump& g) {
  if (g.kind != GridKind::Connection) throw ValidationError("grid dump does not hold a connection");
  LatticeConnection a(static_cast<int>(g.n));
  for (std::size_t i = 0; i < a.link_count(); ++i)
    a.set_link(i, su2_from_coeffs({g.values[3 * i], g.values[3 * i + 1], g.values[3 * i + 2]}));
  return a;
}

}  // namespace threefold
