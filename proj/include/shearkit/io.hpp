#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shearkit/coeffspace.hpp"
#include "shearkit/distributions.hpp"
#include "shearkit/generator.hpp"

namespace shearkit {

/// Binary field format "SHFL": version u32, n1/n2 u64, origin/spacing f64 x4,
/// interleaved complex f64 row-major with b1 fastest. All little-endian.
void write_fld(const std::filesystem::path& path, const SampledField2D& f);
SampledField2D read_fld(const std::filesystem::path& path);

/// Binary volume format "SHCV": version, b-grid header as in .fld, |s| and s
/// values, |a| and a values, then values ordered (b1, b2, s, a), b1 fastest.
void write_cvol(const std::filesystem::path& path, const CoefficientVolume& v);
CoefficientVolume read_cvol(const std::filesystem::path& path);

/// Round-trippable decimal formatting (shortest exact form).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
std::string format_csv(const CsvTable& t);
CsvTable parse_csv(const std::string& text);

struct Config {
  std::string generator_kind = "meyer_cone";  // or "gaussian" (control profile)
  std::array<double, 4> band{0.5, 0.75, 1.5, 2.0};
  double cone_halfwidth = 1.0;
  double cone_plateau = 0.5;
  double cone_center = 0.0;

  int n = 64;
  double half_width = 8.0;

  int octaves = 3;
  int a_per_octave = 8;
  double s_max = 3.0;
  double ds = 0.125;

  double boundary_tol = 1e-10;
  double guard_tol = 0.0;  // 0 = half a frequency bin
  double quad_target = 1e-9;
  int max_order = 10;
  std::uint64_t seed = 20260811;
  int threads = 0;

  void validate() const;
  Grid2D make_grid() const;
  ShearletGenerator make_generator() const;
  ParamGrid make_pgrid() const;
};

Config config_from_json(const std::string& text);
Config config_from_file(const std::filesystem::path& path);
std::string config_to_json(const Config& cfg);

LizorkinDistribution distribution_from_json(const std::string& text,
                                            const std::filesystem::path& base_dir = ".");
LizorkinDistribution distribution_from_file(const std::filesystem::path& path);
std::string distribution_to_json(const LizorkinDistribution& d);

/// Deterministic band-covered test field: a smooth cone-band spectrum with a
/// seeded low-order modulation, unit L^2 norm.
SampledField2D make_band_covered_field(const Grid2D& grid, std::uint64_t seed);
/// e^{-pi |x|^2} sampled on the grid.
SampledField2D make_gaussian_field(const Grid2D& grid);

/// Separable Hermite-type field: spectrum xi1^4 xi2^4 e^{-pi |xi|^2}.
/// Gaussian decay in space and every moment of order <= 7 vanishes.
SampledField2D make_hermite_field(const Grid2D& grid);

/// Portable uniform doubles from a seeded engine (independent of libstdc++
/// distribution internals).
struct Rng {
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::uint64_t state;
};

}  // namespace shearkit
