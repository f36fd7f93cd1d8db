#include "shearkit/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shearkit/detail/taylor.hpp"

namespace shearkit {

namespace {

constexpr std::uint32_t kVersion = 1;

void put_bytes(std::ostream& os, const void* p, size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  put_bytes(os, &v, sizeof(T));  // little-endian hosts only
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("unexpected end of file");
  return v;
}

void write_grid_header(std::ostream& os, const Grid2D& g) {
  put<std::uint64_t>(os, static_cast<std::uint64_t>(g.n1));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(g.n2));
  put<double>(os, g.origin[0]);
  put<double>(os, g.origin[1]);
  put<double>(os, g.spacing[0]);
  put<double>(os, g.spacing[1]);
}

Grid2D read_grid_header(std::istream& is) {
  Grid2D g;
  g.n1 = static_cast<Eigen::Index>(get<std::uint64_t>(is));
  g.n2 = static_cast<Eigen::Index>(get<std::uint64_t>(is));
  g.origin[0] = get<double>(is);
  g.origin[1] = get<double>(is);
  g.spacing[0] = get<double>(is);
  g.spacing[1] = get<double>(is);
  if (g.n1 < 8 || g.n2 < 8 || !(g.spacing[0] > 0.0) || !(g.spacing[1] > 0.0))
    throw IoError("grid header out of range");
  return g;
}

void write_values(std::ostream& os, const CArray& v) {
  // Column-major storage is exactly (b1 fastest) row-major-in-b1 order.
  for (Eigen::Index j2 = 0; j2 < v.cols(); ++j2)
    for (Eigen::Index j1 = 0; j1 < v.rows(); ++j1) {
      put<double>(os, v(j1, j2).real());
      put<double>(os, v(j1, j2).imag());
    }
}

void read_values(std::istream& is, CArray& v) {
  for (Eigen::Index j2 = 0; j2 < v.cols(); ++j2)
    for (Eigen::Index j1 = 0; j1 < v.rows(); ++j1) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      v(j1, j2) = Complex(re, im);
    }
}

void check_magic(std::istream& is, const char expect[4]) {
  char m[4];
  is.read(m, 4);
  if (!is || std::memcmp(m, expect, 4) != 0) throw BadMagic("file magic mismatch");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw VersionMismatch("unsupported format version");
}

}  // namespace

void write_fld(const std::filesystem::path& path, const SampledField2D& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string());
  os.write("SHFL", 4);
  put<std::uint32_t>(os, kVersion);
  write_grid_header(os, f.grid);
  write_values(os, f.values);
  if (!os) throw IoError("short write to " + path.string());
}

SampledField2D read_fld(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  check_magic(is, "SHFL");
  SampledField2D f;
  f.grid = read_grid_header(is);
  f.values.resize(f.grid.n1, f.grid.n2);
  read_values(is, f.values);
  return f;
}

void write_cvol(const std::filesystem::path& path, const CoefficientVolume& v) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string());
  os.write("SHCV", 4);
  put<std::uint32_t>(os, kVersion);
  write_grid_header(os, v.pgrid.b_grid);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(v.pgrid.ns()));
  for (Eigen::Index i = 0; i < v.pgrid.ns(); ++i) put<double>(os, v.pgrid.s_values[i]);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(v.pgrid.na()));
  for (Eigen::Index i = 0; i < v.pgrid.na(); ++i) put<double>(os, v.pgrid.a_values[i]);
  for (Eigen::Index ia = 0; ia < v.pgrid.na(); ++ia)
    for (Eigen::Index is = 0; is < v.pgrid.ns(); ++is) write_values(os, v.slice(is, ia));
  if (!os) throw IoError("short write to " + path.string());
}

namespace {

// Haar weights are not serialized; they are a function of the sample
// positions (trapezoid on the log2|a| axis per sign branch, trapezoid in s).
void rebuild_weights(ParamGrid& pg) {
  const Eigen::Index ns = pg.ns(), na = pg.na();
  if (ns < 2 || na < 2) throw IoError("parameter grid too small");
  const double ds = pg.s_values[1] - pg.s_values[0];
  for (Eigen::Index i = 1; i + 1 < ns; ++i)
    if (std::abs(pg.s_values[i + 1] - pg.s_values[i] - ds) > 1e-9 * std::abs(ds))
      throw IoError("s grid is not uniform");
  pg.s_weights.resize(ns);
  for (Eigen::Index i = 0; i < ns; ++i)
    pg.s_weights[i] = (i == 0 || i == ns - 1) ? 0.5 * ds : ds;

  pg.a_weights.resize(na);
  Eigen::Index neg_end = 0;
  while (neg_end < na && pg.a_values[neg_end] < 0.0) ++neg_end;
  auto branch = [&](Eigen::Index lo, Eigen::Index hi) {
    if (lo == hi) return;
    if (hi - lo < 2) throw IoError("a-branch needs at least two samples");
    const double ln2 = std::log(2.0);
    for (Eigen::Index i = lo; i < hi; ++i) {
      const double t_prev = i > lo ? std::log2(std::abs(pg.a_values[i - 1])) : 0.0;
      const double t_here = std::log2(std::abs(pg.a_values[i]));
      const double t_next = i + 1 < hi ? std::log2(std::abs(pg.a_values[i + 1])) : 0.0;
      double dt;
      if (i == lo)
        dt = 0.5 * std::abs(t_next - t_here);
      else if (i + 1 == hi)
        dt = 0.5 * std::abs(t_here - t_prev);
      else
        dt = 0.5 * std::abs(t_next - t_prev);
      const double aa = std::abs(pg.a_values[i]);
      pg.a_weights[i] = ln2 * dt / (aa * aa);
    }
  };
  branch(0, neg_end);
  branch(neg_end, na);
  for (Eigen::Index i = 0; i < na; ++i)
    if (pg.a_values[i] == 0.0) throw IoError("a = 0 in parameter grid");
}

}  // namespace

CoefficientVolume read_cvol(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  check_magic(is, "SHCV");
  CoefficientVolume v;
  v.pgrid.b_grid = read_grid_header(is);
  const auto ns = static_cast<Eigen::Index>(get<std::uint64_t>(is));
  if (ns < 1 || ns > (1 << 20)) throw IoError("s count out of range");
  v.pgrid.s_values.resize(ns);
  for (Eigen::Index i = 0; i < ns; ++i) v.pgrid.s_values[i] = get<double>(is);
  const auto na = static_cast<Eigen::Index>(get<std::uint64_t>(is));
  if (na < 1 || na > (1 << 20)) throw IoError("a count out of range");
  v.pgrid.a_values.resize(na);
  for (Eigen::Index i = 0; i < na; ++i) v.pgrid.a_values[i] = get<double>(is);
  rebuild_weights(v.pgrid);
  v.slices.assign(static_cast<size_t>(ns * na), CArray());
  for (Eigen::Index ia = 0; ia < na; ++ia)
    for (Eigen::Index is_ = 0; is_ < ns; ++is_) {
      CArray& s = v.slice(is_, ia);
      s.resize(v.pgrid.b_grid.n1, v.pgrid.b_grid.n2);
      read_values(is, s);
    }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_csv(const CsvTable& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void Config::validate() const {
  if (generator_kind != "meyer_cone" && generator_kind != "gaussian")
    throw ConfigInvalid("generator_kind must be meyer_cone or gaussian");
  if (!(band[0] > 0.0 && band[0] < band[1] && band[1] < band[2] && band[2] < band[3]))
    throw ConfigInvalid("band edges must satisfy 0 < r0_in < r1_in < r1_out < r0_out");
  if (!(cone_halfwidth > 0.0 && cone_halfwidth <= 2.0)) throw ConfigInvalid("cone half-width");
  if (!(cone_plateau > 0.0 && cone_plateau < cone_halfwidth)) throw ConfigInvalid("cone plateau");
  if (n < 8) throw ConfigInvalid("grid needs n >= 8");
  if (!(half_width > 0.0)) throw ConfigInvalid("grid half-width must be positive");
  if (octaves < 1) throw ConfigInvalid("octaves >= 1");
  if (a_per_octave < 1) throw ConfigInvalid("a_per_octave >= 1");
  if (!(s_max > 0.0) || !(ds > 0.0)) throw ConfigInvalid("s grid parameters must be positive");
  if (!(boundary_tol > 0.0) || !(quad_target > 0.0)) throw ConfigInvalid("tolerances must be positive");
  if (guard_tol < 0.0) throw ConfigInvalid("guard_tol must be nonnegative");
  if (max_order < 1 || max_order > kMaxOrder) throw ConfigInvalid("max_order out of range");
  if (threads < 0) throw ConfigInvalid("threads must be nonnegative");
}

Grid2D Config::make_grid() const { return Grid2D::symmetric(n, half_width); }

ShearletGenerator Config::make_generator() const {
  if (generator_kind == "gaussian") return make_gaussian_profile();
  return make_cone_generator(band, cone_center, cone_halfwidth, cone_plateau);
}

ParamGrid Config::make_pgrid() const {
  return ParamGrid::make(make_grid(), octaves, a_per_octave, s_max, ds);
}

namespace {

using nlohmann::json;

void read_into(const json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}
void read_into(const json& j, const char* key, int& out) {
  if (j.contains(key)) out = j.at(key).get<int>();
}
void read_into(const json& j, const char* key, std::uint64_t& out) {
  if (j.contains(key)) out = j.at(key).get<std::uint64_t>();
}
void read_into(const json& j, const char* key, std::string& out) {
  if (j.contains(key)) out = j.at(key).get<std::string>();
}

}  // namespace

Config config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("JSON parse failure: ") + e.what());
  }
  Config cfg;
  try {
    if (j.contains("generator")) {
      const json& g = j["generator"];
      read_into(g, "kind", cfg.generator_kind);
      if (g.contains("band")) {
        const auto band = g.at("band").get<std::vector<double>>();
        if (band.size() != 4) throw ConfigInvalid("band needs 4 edges");
        std::copy(band.begin(), band.end(), cfg.band.begin());
      }
      read_into(g, "cone_halfwidth", cfg.cone_halfwidth);
      read_into(g, "cone_plateau", cfg.cone_plateau);
      read_into(g, "cone_center", cfg.cone_center);
    }
    if (j.contains("grid")) {
      const json& g = j["grid"];
      read_into(g, "n", cfg.n);
      read_into(g, "half_width", cfg.half_width);
    }
    if (j.contains("pgrid")) {
      const json& g = j["pgrid"];
      read_into(g, "octaves", cfg.octaves);
      read_into(g, "a_per_octave", cfg.a_per_octave);
      read_into(g, "s_max", cfg.s_max);
      read_into(g, "ds", cfg.ds);
    }
    if (j.contains("tolerances")) {
      const json& g = j["tolerances"];
      read_into(g, "boundary_tol", cfg.boundary_tol);
      read_into(g, "guard_tol", cfg.guard_tol);
      read_into(g, "quad_target", cfg.quad_target);
      read_into(g, "max_order", cfg.max_order);
    }
    read_into(j, "seed", cfg.seed);
    read_into(j, "threads", cfg.threads);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("bad config field: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Config config_from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return config_from_json(os.str());
}

std::string config_to_json(const Config& cfg) {
  json j;
  j["generator"] = {{"kind", cfg.generator_kind},
                    {"band", cfg.band},
                    {"cone_halfwidth", cfg.cone_halfwidth},
                    {"cone_plateau", cfg.cone_plateau},
                    {"cone_center", cfg.cone_center}};
  j["grid"] = {{"n", cfg.n}, {"half_width", cfg.half_width}};
  j["pgrid"] = {{"octaves", cfg.octaves},
                {"a_per_octave", cfg.a_per_octave},
                {"s_max", cfg.s_max},
                {"ds", cfg.ds}};
  j["tolerances"] = {{"boundary_tol", cfg.boundary_tol},
                     {"guard_tol", cfg.guard_tol},
                     {"quad_target", cfg.quad_target},
                     {"max_order", cfg.max_order}};
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j.dump(2) + "\n";
}

namespace {

Complex json_complex(const json& v) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2)
    return Complex(v.at(0).get<double>(), v.at(1).get<double>());
  throw ConfigInvalid("complex values are numbers or [re, im] pairs");
}

json complex_json(Complex v) {
  if (v.imag() == 0.0) return json(v.real());
  return json::array({v.real(), v.imag()});
}

Poly2 json_poly(const json& v) {
  Poly2 p;
  if (v.is_null() || (v.is_array() && v.empty())) return p;
  const auto rows = v.size();
  size_t cols = 0;
  for (const auto& r : v) cols = std::max(cols, r.size());
  p.c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < v.at(i).size(); ++j)
      p.c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = json_complex(v.at(i).at(j));
  return p;
}

json poly_json(const Poly2& p) {
  json v = json::array();
  if (p.zero()) return v;
  for (Eigen::Index i = 0; i < p.c.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < p.c.cols(); ++j) row.push_back(complex_json(p.c(i, j)));
    v.push_back(row);
  }
  return v;
}

RegistryKind kind_from_name(const std::string& name) {
  if (name == "gaussian") return RegistryKind::Gaussian;
  if (name == "ramp") return RegistryKind::Ramp;
  if (name == "sinusoid") return RegistryKind::Sinusoid;
  if (name == "abs_norm") return RegistryKind::AbsNorm;
  if (name == "poly_gaussian") return RegistryKind::PolyGaussian;
  if (name == "gridded") return RegistryKind::Gridded;
  throw ConfigInvalid("unknown registry function: " + name);
}

std::string kind_name(RegistryKind k) {
  switch (k) {
    case RegistryKind::Gaussian: return "gaussian";
    case RegistryKind::Ramp: return "ramp";
    case RegistryKind::Sinusoid: return "sinusoid";
    case RegistryKind::AbsNorm: return "abs_norm";
    case RegistryKind::PolyGaussian: return "poly_gaussian";
    case RegistryKind::Gridded: return "gridded";
  }
  return "?";
}

MultiIndex json_deriv(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigInvalid("deriv must be [m1, m2]");
  return MultiIndex(j.at(0).get<int>(), j.at(1).get<int>());
}

}  // namespace

LizorkinDistribution distribution_from_json(const std::string& text,
                                            const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("JSON parse failure: ") + e.what());
  }
  LizorkinDistribution d;
  try {
    for (const auto& a : j.value("atoms", json::array())) {
      DeltaAtom atom;
      if (a.contains("coeff")) atom.coeff = json_complex(a.at("coeff"));
      if (a.contains("location")) {
        atom.location[0] = a.at("location").at(0).get<double>();
        atom.location[1] = a.at("location").at(1).get<double>();
      }
      if (a.contains("deriv")) atom.deriv = json_deriv(a.at("deriv"));
      d.atoms.push_back(atom);
    }
    for (const auto& t : j.value("func_terms", json::array())) {
      FuncTerm term;
      term.kind = kind_from_name(t.at("kind").get<std::string>());
      if (t.contains("deriv")) term.deriv = json_deriv(t.at("deriv"));
      if (t.contains("poly")) term.poly = json_poly(t.at("poly"));
      if (t.contains("freq")) {
        term.freq[0] = t.at("freq").at(0).get<double>();
        term.freq[1] = t.at("freq").at(1).get<double>();
      }
      if (t.contains("phase")) term.phase = t.at("phase").get<double>();
      if (term.kind == RegistryKind::Gridded) {
        const std::filesystem::path p = t.at("payload").get<std::string>();
        term.payload = read_fld(p.is_absolute() ? p : base_dir / p);
      }
      d.func_terms.push_back(std::move(term));
    }
    if (j.contains("poly")) d.poly = json_poly(j.at("poly"));
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("bad distribution field: ") + e.what());
  }
  const size_t terms = d.atoms.size() + d.func_terms.size() + (d.poly.zero() ? 0 : 1);
  if (terms > 64) throw ConfigInvalid("distribution exceeds 64 terms");
  return d;
}

LizorkinDistribution distribution_from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return distribution_from_json(os.str(), path.parent_path());
}

std::string distribution_to_json(const LizorkinDistribution& d) {
  json j;
  j["atoms"] = json::array();
  for (const DeltaAtom& a : d.atoms)
    j["atoms"].push_back({{"coeff", complex_json(a.coeff)},
                          {"location", {a.location[0], a.location[1]}},
                          {"deriv", {a.deriv.m1, a.deriv.m2}}});
  j["func_terms"] = json::array();
  for (const FuncTerm& t : d.func_terms) {
    json e{{"kind", kind_name(t.kind)}, {"deriv", {t.deriv.m1, t.deriv.m2}}};
    if (t.kind == RegistryKind::PolyGaussian) e["poly"] = poly_json(t.poly);
    if (t.kind == RegistryKind::Sinusoid) {
      e["freq"] = {t.freq[0], t.freq[1]};
      e["phase"] = t.phase;
    }
    if (t.kind == RegistryKind::Gridded) e["payload"] = "payload.fld";
    j["func_terms"].push_back(e);
  }
  if (!d.poly.zero()) j["poly"] = poly_json(d.poly);
  return j.dump(2) + "\n";
}

std::uint64_t Rng::next_u64() {
  // splitmix64: small, portable, reproducible everywhere.
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

SampledField2D make_band_covered_field(const Grid2D& grid, std::uint64_t seed) {
  using detail::smoothstep;
  Rng rng(seed);
  std::array<Complex, 4> mod;
  for (auto& c : mod) c = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  mod[0] += Complex(1.5, 0.0);  // keep the envelope away from zero

  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const double xi1 = freq.x1(k1), xi2 = freq.x2(k2);
      const double u = std::abs(xi1);
      if (u <= 0.4 || u >= 1.35) continue;
      const double w = smoothstep((u - 0.4) / 0.15) * smoothstep((1.35 - u) / 0.30);
      const double q = xi2 / xi1;
      if (std::abs(q) >= 0.4) continue;
      const double v = smoothstep((0.4 - std::abs(q)) / 0.2);
      const Complex m = mod[0] + mod[1] * (xi1 / 1.4) + mod[2] * q + mod[3] * (xi1 * q / 1.4);
      F.values(k1, k2) = w * v * m;
    }
  SampledField2D f = fft_inverse(F, grid);
  const double nf = l2_norm(f);
  if (nf > 0.0) f.values /= nf;
  return f;
}

SampledField2D make_gaussian_field(const Grid2D& grid) {
  SampledField2D f = SampledField2D::zero(grid);
  for (Eigen::Index j2 = 0; j2 < grid.n2; ++j2)
    for (Eigen::Index j1 = 0; j1 < grid.n1; ++j1)
      f.values(j1, j2) = std::exp(-M_PI * grid.point(j1, j2).squaredNorm());
  return f;
}

SampledField2D make_hermite_field(const Grid2D& grid) {
  const Grid2D freq = grid.dual();
  FrequencyField2D F = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1) {
      const Eigen::Vector2d xi = freq.point(k1, k2);
      F.values(k1, k2) = std::pow(xi[0], 4) * std::pow(xi[1], 4) *
                         std::exp(-M_PI * xi.squaredNorm());
    }
  SampledField2D f = fft_inverse(F, grid);
  const double nf = l2_norm(f);
  if (nf > 0.0) f.values /= nf;
  return f;
}

}  // namespace shearkit
