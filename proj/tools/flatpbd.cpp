// flatpbd: construct, verify and analyze pairwise balanced designs with
// certified small flats, plus the latin-square and cycle derivatives.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "flatpbd/catalog.hpp"
#include "flatpbd/construct.hpp"
#include "flatpbd/errors.hpp"
#include "flatpbd/flats.hpp"
#include "flatpbd/geometry.hpp"
#include "flatpbd/io.hpp"
#include "flatpbd/latin.hpp"
#include "flatpbd/verify.hpp"

namespace {

// Exit codes (documented in the README): 0 success, 2 construction
// failure, 3 verification failure, 4 parse/file error, 10 internal error.
constexpr int kExitOk = 0;
constexpr int kExitBuild = 2;
constexpr int kExitVerify = 3;
constexpr int kExitParse = 4;
constexpr int kExitInternal = 10;

using namespace flatpbd;

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file " + path);
  out << bytes;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SizeSet parse_k(const std::string& text) {
  SizeSet k;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) k.push_back(std::stoi(item));
  std::sort(k.begin(), k.end());
  if (k.empty()) throw ParseError("--k: expected a comma-separated size list");
  return k;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

void print_report(const VerificationReport& report, bool json) {
  if (!json) {
    std::cout << report.summary() << "\n";
    return;
  }
  std::cout << "{\"passed\":" << (report.passed ? "true" : "false")
            << ",\"pairs_total\":" << report.pairs_total
            << ",\"pairs_covered\":" << report.pairs_covered << ",\"sizes\":{";
  bool first = true;
  for (auto [size, count] : report.block_size_histogram) {
    if (!first) std::cout << ',';
    first = false;
    std::cout << '"' << size << "\":" << count;
  }
  std::cout << "},\"violations\":[";
  first = true;
  for (const Violation& violation : report.violations) {
    if (!first) std::cout << ',';
    first = false;
    std::cout << "{\"kind\":\"" << violation.kind << "\",\"witness\":\""
              << violation.witness << "\"}";
  }
  std::cout << "]}\n";
}

IncidenceDesign load_pbd_or_gdd(const std::string& path) {
  DesignFile file = parse_design_file(read_input(path));
  if (file.kind == "pbd") return file.to_pbd();
  if (file.kind == "gdd") return as_pbd(file.to_gdd());
  throw ParseError("expected a pbd or gdd design file");
}

int run_batch(int from, int to, int jobs) {
  if (from < 1 || to < from) throw PreconditionError("batch: bad range");
  const int count = to - from + 1;
  std::vector<std::string> lines(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};

  small_pbd(3);  // force the catalog load before the workers start

  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      int v = from + i;
      std::string line;
      try {
        BuiltDesign built = construct_bounded_pbd(v);
        VerificationReport report = verify_pbd(built.design, sizes({3, 4, 5}));
        line = std::to_string(v) + "\t" + built.certificate.route + "\t" +
               std::to_string(built.certificate.flat_bound) + "\t" +
               (report.passed ? "ok" : "FAILED");
        if (!report.passed) failed = true;
      } catch (const NoDesignExists&) {
        line = std::to_string(v) + "\t-\t-\tno-design";
      } catch (const std::exception& e) {
        line = std::to_string(v) + "\t-\t-\tERROR " + e.what();
        failed = true;
      }
      lines[static_cast<std::size_t>(i)] = std::move(line);
    }
  };

  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const std::string& line : lines) std::cout << line << "\n";
  return failed ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise balanced designs with certified small flats"};
  app.require_subcommand(1);
  std::string catalog_path;
  app.add_option("--catalog", catalog_path,
                 "override the embedded catalog bundle (JSONL file)");

  int exit_code = kExitOk;

  // construct pbd / construct geometry
  auto* construct = app.add_subcommand("construct", "build a design");
  construct->require_subcommand(1);

  auto* pbd = construct->add_subcommand("pbd", "PBD(v,{3,4,5}) with certificate");
  int pbd_v = 0;
  std::string pbd_out = "-";
  std::uint64_t pbd_seed = 0;
  pbd->add_option("--v", pbd_v, "number of points")->required();
  pbd->add_option("--out", pbd_out, "output file (default stdout)");
  pbd->add_option("--seed", pbd_seed, "seed recorded in the certificate");
  auto run_pbd = [&] {
    BuiltDesign built = construct_bounded_pbd(pbd_v);
    DesignFile file = make_pbd_file(built.design, built.certificate.to_meta(pbd_seed));
    write_output(pbd_out, serialize(file));
    std::cerr << "v=" << pbd_v << " route=" << built.certificate.route
              << " flat_bound=" << built.certificate.flat_bound << "\n";
  };

  auto* geometry = construct->add_subcommand("geometry", "projective/affine space");
  std::vector<int> geo_pg, geo_ag;
  std::string geo_out = "-";
  geometry->add_option("--pg", geo_pg, "projective: D Q")->expected(2);
  geometry->add_option("--ag", geo_ag, "affine: D Q")->expected(2);
  geometry->add_option("--out", geo_out, "output file (default stdout)");
  auto run_geometry = [&] {
    if (geo_pg.empty() == geo_ag.empty())
      throw PreconditionError("construct geometry: exactly one of --pg / --ag");
    bool projective = !geo_pg.empty();
    int d = projective ? geo_pg[0] : geo_ag[0];
    int q = projective ? geo_pg[1] : geo_ag[1];
    Geometry g = projective ? build_projective_space(d, q) : build_affine_space(d, q);
    Meta meta;
    meta.push_back(MetaEntry::str("route", "geometry"));
    meta.push_back(MetaEntry::str(
        "space", std::string(projective ? "PG(" : "AG(") + std::to_string(d) +
                     "," + std::to_string(q) + ")"));
    meta.push_back(MetaEntry::str("generator_version", kGeneratorVersion));
    IncidenceDesign design = g.design();
    design.labels.clear();
    write_output(geo_out, serialize(make_pbd_file(design, std::move(meta))));
  };

  auto* verify = app.add_subcommand("verify", "check the design axioms");
  std::string verify_file, verify_k = "3,4,5";
  bool verify_json = false;
  verify->add_option("file", verify_file, "design file")->required();
  verify->add_option("--k", verify_k, "allowed block sizes");
  verify->add_flag("--json", verify_json, "structured report");
  auto run_verify = [&] {
    DesignFile file = parse_design_file(read_input(verify_file));
    VerificationReport report;
    if (file.kind == "pbd")
      report = verify_pbd(file.to_pbd(), parse_k(verify_k));
    else if (file.kind == "gdd")
      report = verify_gdd(file.to_gdd(), parse_k(verify_k));
    else
      throw ParseError("verify: expected a pbd or gdd design file");
    print_report(report, verify_json);
    if (!report.passed) exit_code = kExitVerify;
  };

  auto* flats = app.add_subcommand("flats", "max generated flat over d-subsets");
  std::string flats_file;
  int flats_d = 3;
  bool flats_exhaustive = false;
  long long flats_samples = 0;
  std::uint64_t flats_seed = 0;
  flats->add_option("file", flats_file, "design file")->required();
  flats->add_option("--d", flats_d, "seed size");
  flats->add_flag("--exhaustive", flats_exhaustive, "scan all d-subsets");
  flats->add_option("--samples", flats_samples, "number of sampled subsets");
  flats->add_option("--seed", flats_seed, "sampling seed");
  auto run_flats = [&] {
    if (flats_exhaustive == (flats_samples > 0))
      throw PreconditionError("flats: pass exactly one of --exhaustive / --samples");
    IncidenceDesign design = load_pbd_or_gdd(flats_file);
    FlatScanResult scan = flat_spectrum(
        design, flats_d,
        flats_exhaustive ? FlatScanMode::Exhaustive()
                         : FlatScanMode::Sample(flats_samples, flats_seed));
    std::cout << "max_flat=" << scan.max_size
              << " witness=" << join_ints(scan.witness)
              << " scanned=" << scan.scanned << "\n";
  };

  auto* dim = app.add_subcommand("dimension", "design dimension (small designs)");
  std::string dim_file;
  dim->add_option("file", dim_file, "design file")->required();
  auto run_dim = [&] { std::cout << dimension(load_pbd_or_gdd(dim_file)) << "\n"; };

  auto* latin = app.add_subcommand("latin", "idempotent square glued from a PBD");
  int latin_v = 0;
  std::string latin_out = "-";
  bool latin_text = false;
  std::uint64_t latin_seed = 0;
  latin->add_option("--v", latin_v, "order")->required();
  latin->add_option("--out", latin_out, "output file (default stdout)");
  latin->add_flag("--text", latin_text, "plain text grid instead of a design file");
  latin->add_option("--seed", latin_seed, "seed recorded in the certificate");
  auto run_latin = [&] {
    BuiltDesign built = construct_bounded_pbd(latin_v);
    GluedSquare glued = glue_latin(built.design);
    if (latin_text) {
      write_output(latin_out, latin_to_text(glued.square.grid));
    } else {
      Meta meta = built.certificate.to_meta(latin_seed);
      meta.insert(meta.begin(), MetaEntry::str("glued_from", "pbd"));
      write_output(latin_out, serialize(make_latin_file(glued.square.grid, meta)));
    }
  };

  auto* cycles = app.add_subcommand("cycles", "two-colored cycle scan");
  std::string cycles_file;
  bool cycles_exhaustive = false;
  long long cycles_samples = 0;
  std::uint64_t cycles_seed = 0;
  cycles->add_option("file", cycles_file, "latin design file")->required();
  cycles->add_flag("--exhaustive", cycles_exhaustive, "scan all symbol pairs");
  cycles->add_option("--samples", cycles_samples, "number of sampled pairs");
  cycles->add_option("--seed", cycles_seed, "sampling seed");
  auto run_cycles = [&] {
    if (cycles_exhaustive == (cycles_samples > 0))
      throw PreconditionError("cycles: pass exactly one of --exhaustive / --samples");
    DesignFile file = parse_design_file(read_input(cycles_file));
    if (file.kind != "latin") throw ParseError("cycles: expected a latin design file");
    LatinSquare sq{file.v, file.grid};
    if (!is_latin(sq)) throw ParseError("cycles: grid is not a latin square");
    CycleScanResult scan = max_cycle_scan(
        sq, cycles_exhaustive ? CycleScanMode::Exhaustive()
                              : CycleScanMode::Sample(cycles_samples, cycles_seed));
    std::cout << "max_cycle=" << scan.max_length
              << " witness=" << scan.witness.first << "," << scan.witness.second
              << " scanned=" << scan.scanned << "\n";
  };

  auto* batch = app.add_subcommand("batch", "construct and verify a range");
  int batch_from = 0, batch_to = 0;
  int batch_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  batch->add_option("--from", batch_from, "first v")->required();
  batch->add_option("--to", batch_to, "last v")->required();
  batch->add_option("--jobs", batch_jobs, "worker threads");
  auto run_batch_cmd = [&] { exit_code = run_batch(batch_from, batch_to, batch_jobs); };

  try {
    app.parse(argc, argv);
    if (!catalog_path.empty()) set_catalog_override(catalog_path);
    if (pbd->parsed()) run_pbd();
    if (geometry->parsed()) run_geometry();
    if (verify->parsed()) run_verify();
    if (flats->parsed()) run_flats();
    if (dim->parsed()) run_dim();
    if (latin->parsed()) run_latin();
    if (cycles->parsed()) run_cycles();
    if (batch->parsed()) run_batch_cmd();
    return exit_code;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const NoDesignExists& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBuild;
  } catch (const OutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBuild;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBuild;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
