// shearkit command-line front end: generator reports, transforms, synthesis,
// round trips, desingularized pairings, and the acceptance self-test.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "shearkit/distributions.hpp"
#include "shearkit/lizorkin.hpp"
#include "shearkit/selftest.hpp"
#include "shearkit/synthesis.hpp"

namespace fs = std::filesystem;
using namespace shearkit;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string input;
  std::string output;
  std::string test_path;
  std::string emit_field;
  std::string format = "fld";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
};

Config load_config(const GlobalOpts& opts) {
  Config cfg;
  if (!opts.config_path.empty()) {
    cfg = config_from_file(opts.config_path);
  } else if (const char* env = std::getenv("SHEARKIT_CONFIG"); env && *env) {
    cfg = config_from_file(env);
  }
  // CLI flags override JSON fields.
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.threads >= 0) cfg.threads = opts.threads;
  cfg.validate();
  return cfg;
}

std::string csv_path_for(const std::string& output, const char* suffix) {
  fs::path p(output);
  p.replace_extension("");
  return p.string() + suffix;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string());
  os << text;
}

// --format csv writes fields as x1,x2,re,im tables instead of .fld binaries.
void write_field(const GlobalOpts& opts, const fs::path& path, const SampledField2D& f) {
  if (opts.format == "csv") {
    CsvTable t;
    t.header = {"x1", "x2", "re", "im"};
    for (Eigen::Index j2 = 0; j2 < f.grid.n2; ++j2)
      for (Eigen::Index j1 = 0; j1 < f.grid.n1; ++j1)
        t.rows.push_back({format_double(f.grid.x1(j1)), format_double(f.grid.x2(j2)),
                          format_double(f.values(j1, j2).real()),
                          format_double(f.values(j1, j2).imag())});
    write_text(path, format_csv(t));
    return;
  }
  write_fld(path, f);
}

CsvTable seminorm_csv(const CoefficientVolume& vol, int cap) {
  const auto table = seminorm_weight_table(vol, cap);
  CsvTable t;
  t.header = {"k1", "k2", "l", "m", "value", "argmax_b1", "argmax_b2", "argmax_s", "argmax_a"};
  for (const SeminormEntry& e : table)
    t.rows.push_back({std::to_string(e.idx.k1), std::to_string(e.idx.k2),
                      std::to_string(e.idx.l), std::to_string(e.idx.m), format_double(e.value),
                      format_double(vol.pgrid.b_grid.x1(e.argmax_b1)),
                      format_double(vol.pgrid.b_grid.x2(e.argmax_b2)),
                      format_double(vol.pgrid.s_values[e.argmax_s]),
                      format_double(vol.pgrid.a_values[e.argmax_a])});
  return t;
}

int cmd_gen(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  const ShearletGenerator gen = cfg.make_generator();
  const AdmissibilityReport rep = admissibility(gen, gen, default_probes(gen));

  std::cout << "generator: " << gen.kind() << "\n";
  std::cout << "admissible: " << (rep.admissible ? "yes" : "no") << "\n";
  if (rep.divergent) std::cout << "divergent: dyadic shell masses fail to decay\n";
  std::cout << "C_psi: " << format_double(rep.c_psi.real()) << "\n";
  std::cout << "method discrepancy: " << format_double(rep.max_discrepancy) << "\n";
  std::cout << "probe spread: " << format_double(rep.probe_spread) << "\n";

  const Grid2D grid = Grid2D::symmetric(2 * cfg.n, 2 * cfg.half_width);
  const Grid2D freq = grid.dual();
  FrequencyField2D P = FrequencyField2D::zero(freq);
  for (Eigen::Index k2 = 0; k2 < freq.n2; ++k2)
    for (Eigen::Index k1 = 0; k1 < freq.n1; ++k1)
      P.values(k1, k2) = gen.profile(freq.point(k1, k2));
  const SampledField2D g = fft_inverse(P, grid);
  std::cout << "moment max (order 6): " << format_double(moments(g, 6).max_abs) << "\n";

  CsvTable decay;
  decay.header = {"radius", "axis1", "diagonal"};
  for (double radius : {5.0, 10.0, 20.0, 40.0}) {
    const double ax = std::abs(eval_space(gen, {radius, 0.0}, MultiIndex(), cfg.quad_target));
    const double dg = std::abs(
        eval_space(gen, {radius / std::sqrt(2.0), radius / std::sqrt(2.0)}, MultiIndex(),
                   cfg.quad_target));
    decay.rows.push_back({format_double(radius), format_double(ax), format_double(dg)});
    std::cout << "decay r=" << radius << ": axis " << format_double(ax) << ", diagonal "
              << format_double(dg) << "\n";
  }
  if (!opts.output.empty()) write_text(opts.output, format_csv(decay));

  if (!opts.emit_field.empty()) {
    const SampledField2D sample = make_band_covered_field(cfg.make_grid(), cfg.seed);
    write_fld(opts.emit_field, sample);
    std::cout << "sample field written to " << opts.emit_field << "\n";
  }
  if (!rep.admissible) throw NotAdmissible("configured generator is not admissible");
  return 0;
}

int cmd_analyze(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  if (opts.input.empty() || opts.output.empty())
    throw ConfigInvalid("analyze needs --input and --output");
  const SampledField2D f = read_fld(opts.input);
  if (boundary_max_abs(f) > cfg.boundary_tol)
    std::cout << "warning: field boundary magnitude " << format_double(boundary_max_abs(f))
              << " exceeds boundary_tol " << format_double(cfg.boundary_tol) << "\n";
  const ShearletGenerator gen = cfg.make_generator();
  const ParamGrid pg = ParamGrid::make(f.grid, cfg.octaves, cfg.a_per_octave, cfg.s_max, cfg.ds);
  CoverageReport cov;
  const CoefficientVolume vol = transform_spectral(f, gen, pg, &cov);
  write_cvol(opts.output, vol);
  write_text(csv_path_for(opts.output, ".seminorms.csv"), format_csv(seminorm_csv(vol, 3)));
  std::cout << "covered energy fraction: " << format_double(cov.covered_energy_fraction) << "\n";
  if (cov.gap) std::cout << "warning: coverage gap (>1% energy outside all warped supports)\n";
  return 0;
}

int cmd_synthesize(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  if (opts.input.empty() || opts.output.empty())
    throw ConfigInvalid("synthesize needs --input and --output");
  const CoefficientVolume vol = read_cvol(opts.input);
  const SampledField2D f = synthesize(vol, cfg.make_generator());
  write_field(opts, opts.output, f);
  return 0;
}

int cmd_roundtrip(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  if (opts.input.empty()) throw ConfigInvalid("roundtrip needs --input");
  const SampledField2D f = read_fld(opts.input);
  const ShearletGenerator gen = cfg.make_generator();
  const ParamGrid pg = ParamGrid::make(f.grid, cfg.octaves, cfg.a_per_octave, cfg.s_max, cfg.ds);
  const ReconstructionResult rec = reconstruct(f, gen, gen, pg);
  const double defect = isometry_defect(f, gen, pg, rec.c_pair.real());
  std::cout << "reconstruction relative L2 error: " << format_double(rec.rel_l2_error) << "\n";
  std::cout << "isometry defect: " << format_double(defect) << "\n";
  std::cout << "covered energy fraction: "
            << format_double(rec.coverage.covered_energy_fraction) << "\n";
  if (rec.coverage.gap) std::cout << "warning: coverage gap\n";
  if (!opts.output.empty()) write_field(opts, opts.output, rec.field);
  return 0;
}

int cmd_desingularize(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  if (opts.input.empty() || opts.test_path.empty())
    throw ConfigInvalid("desingularize needs --input (distribution JSON) and --test (.fld)");
  const LizorkinDistribution dist = distribution_from_file(opts.input);
  const SampledField2D test = read_fld(opts.test_path);
  const ShearletGenerator gen = cfg.make_generator();
  const ParamGrid pg =
      ParamGrid::make(test.grid, cfg.octaves, cfg.a_per_octave, cfg.s_max, cfg.ds);
  const Complex desing = desingularized_pairing(dist, gen, gen, test, pg);
  const Complex direct = pair_with_test(dist, test);
  std::cout << "desingularized pairing: " << format_double(desing.real()) << " + "
            << format_double(desing.imag()) << "i\n";
  std::cout << "direct pairing:         " << format_double(direct.real()) << " + "
            << format_double(direct.imag()) << "i\n";
  std::cout << "difference: " << format_double(std::abs(desing - direct)) << "\n";
  if (!opts.output.empty()) {
    CsvTable t;
    t.header = {"quantity", "real", "imag"};
    t.rows.push_back({"desingularized", format_double(desing.real()),
                      format_double(desing.imag())});
    t.rows.push_back({"direct", format_double(direct.real()), format_double(direct.imag())});
    write_text(opts.output, format_csv(t));
  }
  return 0;
}

int cmd_selftest(const GlobalOpts& opts) {
  const Config cfg = load_config(opts);
  const auto results = run_acceptance(cfg, nullptr);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail
              << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "self-test passed" : "self-test FAILED") << " ("
            << results.size() - failures << "/" << results.size() << ")\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "shearkit: continuous shearlet analysis/synthesis on sampled fields.\n"
      "Exit codes: 0 ok, 1 self-test failure, 2 ConfigInvalid, 3 BadMagic,\n"
      "4 VersionMismatch, 5 GridMismatch, 6 ZeroDilation, 7 OrderTooHigh,\n"
      "8 NotLizorkin, 9 SingularDivision, 10 BadBandEdges,\n"
      "11 QuadratureNotConverged, 12 NotAdmissible, 13 DegenerateInput,\n"
      "14 GridTooCoarse, 15 NoBoundWithinCap, 16 CoverageGap, 17 IoError.\n"
      "Precedence: built-in defaults < --config JSON (or SHEARKIT_CONFIG) < flags."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts opts;
  app.add_option("--config", opts.config_path, "JSON configuration path");
  app.add_option("--input", opts.input, "input file");
  app.add_option("--output", opts.output, "output file");
  app.add_option("--seed", opts.seed, "seed override")->each([&](const std::string&) {
    opts.seed_set = true;
  });
  app.add_option("--threads", opts.threads,
                 "worker threads (0 = implementation default; results never depend on it)");
  app.add_option("--format", opts.format, "output format: fld or csv")
      ->check(CLI::IsMember({"fld", "csv"}));

  auto* gen = app.add_subcommand("gen", "generator report: admissibility, moments, decay");
  gen->add_option("--emit-field", opts.emit_field, "also write a band-covered sample .fld");
  auto* analyze = app.add_subcommand("analyze", "transform a .fld into a .cvol + seminorm CSV");
  auto* synth = app.add_subcommand("synthesize", "synthesize a .cvol into a .fld");
  auto* rt = app.add_subcommand("roundtrip", "reconstruct a .fld and report the error budget");
  auto* desing = app.add_subcommand("desingularize",
                                    "pair a distribution JSON with a test field over the group");
  desing->add_option("--test", opts.test_path, "test field (.fld)");
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(opts);
    if (analyze->parsed()) return cmd_analyze(opts);
    if (synth->parsed()) return cmd_synthesize(opts);
    if (rt->parsed()) return cmd_roundtrip(opts);
    if (desing->parsed()) return cmd_desingularize(opts);
    if (self->parsed()) return cmd_selftest(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
