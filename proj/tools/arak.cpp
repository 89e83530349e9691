// arak: local intersection numbers on the command line.
//
// Exit codes: 0 success and agreement, 1 malformed input, 2 a hypothesis
// of the construction failed, 3 the methods disagreed, 4 selftest failures.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arakelov/arch.hpp"
#include "arakelov/building.hpp"
#include "arakelov/generator.hpp"
#include "arakelov/json_io.hpp"
#include "arakelov/nonarch.hpp"

using namespace arakelov;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string print_qmatrix(const QMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    out += "[";
    for (int j = 0; j < m.cols(); ++j) {
      out += format_rational(m(i, j));
      if (j + 1 < m.cols()) out += ",";
    }
    out += "]";
    if (i + 1 < m.rows()) out += ",";
  }
  return out + "]";
}

struct OutputMode {
  bool pretty = false;
  bool timing = false;
};

int emit(jsonio::ResultDocument& doc, const OutputMode& mode, double seconds) {
  if (mode.timing) doc.seconds = seconds;
  std::cout << jsonio::serialize_result(doc, mode.pretty) << "\n";
  return doc.agree ? 0 : 3;
}

int run_intersect_finite(const jsonio::FiniteDoc& f, const OutputMode& mode) {
  auto start = std::chrono::steady_clock::now();
  ValuationContext ctx(f.prime);
  nonarch::CycleQuadruple quad(Subspace(f.a), Subspace(f.b), Subspace(f.c),
                               Subspace(f.d), ctx);
  std::optional<Lattice> l_a, l_b;
  if (f.l_a) l_a = Lattice(*f.l_a, ctx);
  if (f.l_b) l_b = Lattice(*f.l_b, ctx);

  long algebraic = nonarch::intersection_algebraic(quad);
  nonarch::GeometricResult geo =
      nonarch::intersection_geometric_detailed(quad, l_a, l_b);
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  jsonio::ResultDocument out;
  out.place = "finite";
  out.values.emplace_back("algebraic", std::to_string(algebraic));
  out.values.emplace_back("geometric", std::to_string(geo.value));
  out.agree = algebraic == geo.value;
  if (!out.agree) out.mismatch = "algebraic and geometric values differ";
  out.extras.emplace_back("degenerate", geo.degenerate ? "true" : "false");
  if (geo.scalars) {
    out.extras.emplace_back("alpha_valuation",
                            std::to_string(geo.scalars->alpha_val));
    out.extras.emplace_back("beta_valuation",
                            std::to_string(geo.scalars->beta_val));
  }
  if (geo.distor) out.extras.emplace_back("distor", std::to_string(*geo.distor));
  if (geo.gate_a)
    out.extras.emplace_back("gate_a",
                            print_qmatrix(geo.gate_a->canonical().basis()));
  if (geo.gate_b)
    out.extras.emplace_back("gate_b",
                            print_qmatrix(geo.gate_b->canonical().basis()));
  return emit(out, mode, seconds);
}

int run_intersect_arch(const jsonio::ArchDoc& a, const OutputMode& mode) {
  auto start = std::chrono::steady_clock::now();
  symspace::ComplexSubspace sa(a.a), sb(a.b), sc(a.c), sd(a.d);
  arch::ArchQuadruple quad(sa, sb, sc, sd);
  std::optional<symspace::MetricClass> h_a, h_b, h0;
  if (a.h_a) h_a = symspace::MetricClass(sa, *a.h_a);
  if (a.h_b) h_b = symspace::MetricClass(sb, *a.h_b);
  if (a.h0) {
    symspace::CMatrix cd =
        symspace::complex_intersection(a.c, a.d);
    if (cd.cols() != a.h0->rows())
      throw DimensionMismatch("h0 does not match the overlap of C and D");
    h0 = symspace::MetricClass(symspace::ComplexSubspace(cd), *a.h0);
  }

  double closed = arch::intersection_closed_form(quad, h_a, h_b);
  arch::ArchResult geo =
      arch::intersection_geometric_detailed(quad, h_a, h_b, h0);
  std::optional<double> levine;
  if (quad.p() == 1) levine = arch::levine_pairing_p1(quad);
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  jsonio::ResultDocument out;
  out.place = "archimedean";
  out.values.emplace_back("closed_form", jsonio::format_real(closed));
  out.values.emplace_back("geometric", jsonio::format_real(geo.value));
  if (levine) out.values.emplace_back("levine", jsonio::format_real(*levine));

  const double tol = 1e-8;
  out.agree = std::abs(closed - geo.value) <= tol &&
              (!levine || std::abs(closed - *levine) <= tol);
  if (!out.agree) out.mismatch = "methods differ beyond 1e-8";
  out.extras.emplace_back("degenerate", geo.degenerate ? "true" : "false");
  if (geo.alpha) out.extras.emplace_back("alpha", jsonio::format_real(*geo.alpha));
  if (geo.beta) out.extras.emplace_back("beta", jsonio::format_real(*geo.beta));
  if (geo.s_a) out.extras.emplace_back("gate_a", jsonio::format_real(*geo.s_a));
  if (geo.s_b) out.extras.emplace_back("gate_b", jsonio::format_real(*geo.s_b));
  if (geo.distor)
    out.extras.emplace_back("distor", jsonio::format_real(*geo.distor));
  return emit(out, mode, seconds);
}

int run_intersect(const std::string& path, const OutputMode& mode) {
  jsonio::InstanceDocument doc = jsonio::parse_instance(read_file(path));
  if (doc.finite) return run_intersect_finite(*doc.finite, mode);
  return run_intersect_arch(*doc.arch, mode);
}

const QMatrix& require(const std::optional<QMatrix>& field, const char* name) {
  if (!field)
    throw SchemaError(std::string("building query needs field '") + name + "'");
  return *field;
}

long require_long(const std::optional<long>& field, const char* name) {
  if (!field)
    throw SchemaError(std::string("building query needs field '") + name + "'");
  return *field;
}

int run_building(const std::string& sub, const std::string& path,
                 const OutputMode& mode) {
  jsonio::BuildingQuery q = jsonio::parse_building(read_file(path));
  auto start = std::chrono::steady_clock::now();
  ValuationContext ctx(q.prime);

  jsonio::ResultDocument out;
  out.place = "building";
  if (sub == "half-geodesic") {
    LatticeClass x{Lattice(require(q.x, "x"), ctx)};
    Subspace w{require(q.w, "W")};
    long k_max = require_long(q.k_max, "k_max");
    for (long k = 0; k <= k_max; ++k) {
      LatticeClass v = building::half_geodesic_vertex(x, w, k);
      out.values.emplace_back("vertex_" + std::to_string(k),
                              print_qmatrix(v.canonical().basis()));
    }
  } else if (sub == "distance") {
    LatticeClass x{Lattice(require(q.x, "x"), ctx)};
    LatticeClass y{Lattice(require(q.y, "y"), ctx)};
    out.values.emplace_back(
        "distance", std::to_string(building::combinatorial_distance(x, y)));
  } else {
    LatticeClass x{Lattice(require(q.x, "x"), ctx)};
    Subspace w1{require(q.w1, "W1")}, w2{require(q.w2, "W2")};
    long m = require_long(q.m, "m");
    bool eq = building::reduction_segment_equal(x, w1, w2, m);
    out.values.emplace_back("equal", eq ? "true" : "false");
  }
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return emit(out, mode, seconds);
}

struct SuiteRow {
  std::string name;
  int passed = 0;
  int total = 0;
};

int run_selftest(std::uint64_t seed, int count, std::vector<int> sizes,
                 bool as_json, const OutputMode& mode) {
  if (sizes.empty()) sizes = {2, 3, 4};
  for (int n : sizes)
    if (n < 2) throw SchemaError("selftest sizes must be at least 2");
  const long primes[] = {2, 3, 5, 13};

  SuiteRow finite{"finite dual route"};
  SuiteRow arch_row{"archimedean dual route"};
  SuiteRow pencil{"archimedean pencil triple"};
  SuiteRow speed{"ray unit speed"};

  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    int n = sizes[static_cast<std::size_t>(i) % sizes.size()];
    int p = 1 + static_cast<int>(rng.below(n / 2));
    bool conj = (i % 2) == 1;

    {
      ValuationContext ctx(primes[i % 4]);
      NonarchInstance inst = random_nonarch_instance(rng, n, p, ctx, conj);
      ++finite.total;
      long alg = nonarch::intersection_algebraic(inst.quad);
      long geo =
          nonarch::intersection_geometric(inst.quad, inst.l_a, inst.l_b);
      if (alg == inst.expected && geo == inst.expected) ++finite.passed;
    }
    {
      ArchInstance inst = random_arch_instance(rng, n, p, conj);
      ++arch_row.total;
      double closed =
          arch::intersection_closed_form(inst.quad, inst.h_a, inst.h_b);
      double geo =
          arch::intersection_geometric(inst.quad, inst.h_a, inst.h_b);
      bool ok = std::abs(closed - inst.expected) <= 1e-8 &&
                std::abs(geo - inst.expected) <= 1e-8;
      if (ok) ++arch_row.passed;
      if (p == 1) {
        ++pencil.total;
        if (ok && std::abs(arch::levine_pairing_p1(inst.quad) -
                           inst.expected) <= 1e-8)
          ++pencil.passed;
      }
    }
    {
      ++speed.total;
      symspace::SpacePoint x = random_space_point(rng, n);
      symspace::ComplexSubspace w =
          random_complex_subspace(rng, n, 1 + static_cast<int>(rng.below(n - 1)));
      symspace::RayParams ray = symspace::ray_to_boundary(x, w);
      double t = 0.5 + 2.0 * rng.real01();
      if (std::abs(symspace::distance(x, symspace::point_at(ray, t)) - t) <=
          1e-9)
        ++speed.passed;
    }
  }

  std::vector<SuiteRow> rows{finite, arch_row, pencil, speed};
  bool all_ok = true;
  for (const SuiteRow& r : rows)
    if (r.passed != r.total) all_ok = false;

  if (as_json) {
    jsonio::ResultDocument out;
    out.place = "selftest";
    for (const SuiteRow& r : rows)
      out.values.emplace_back(r.name, std::to_string(r.passed) + "/" +
                                          std::to_string(r.total));
    out.agree = all_ok;
    if (!all_ok) out.mismatch = "selftest failures";
    out.extras.emplace_back("seed", std::to_string(seed));
    out.extras.emplace_back("count", std::to_string(count));
    emit(out, mode, 0.0);
  } else {
    std::cout << "selftest seed=" << seed << " count=" << count << "\n";
    for (const SuiteRow& r : rows) {
      std::cout << "  " << r.name;
      for (std::size_t pad = r.name.size(); pad < 28; ++pad) std::cout << ' ';
      std::cout << r.passed << "/" << r.total << "  "
                << (r.passed == r.total ? "ok" : "FAIL") << "\n";
    }
    std::cout << (all_ok ? "all suites passed" : "FAILURES present") << "\n";
  }
  return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Local intersection numbers of linear cycles, at a finite prime and "
      "at the Archimedean place, each computed by independent methods"};
  app.require_subcommand(1);

  OutputMode mode;
  std::string file;
  bool json_flag = false;

  CLI::App* intersect = app.add_subcommand(
      "intersect", "Run every applicable method on an instance document");
  intersect->add_option("file", file, "JSON instance document")->required();
  intersect->add_flag("--json", json_flag, "compact JSON output (default)");
  intersect->add_flag("--pretty", mode.pretty, "indented JSON output");
  intersect->add_flag("--timing", mode.timing, "include wall time in output");

  CLI::App* building = app.add_subcommand(
      "building", "Lattice-class computations at a finite prime");
  std::string sub;
  building->add_option("subcmd", sub, "one of: half-geodesic, distance, reduction-equal")
      ->required()
      ->check(CLI::IsMember({"half-geodesic", "distance", "reduction-equal"}));
  building->add_option("file", file, "JSON query document")->required();
  building->add_flag("--json", json_flag, "compact JSON output (default)");
  building->add_flag("--pretty", mode.pretty, "indented JSON output");
  building->add_flag("--timing", mode.timing, "include wall time in output");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Generate instances and verify the methods against each other");
  std::uint64_t seed = 1;
  int count = 20;
  std::vector<int> sizes;
  selftest->add_option("--seed", seed, "generator seed");
  selftest->add_option("--count", count, "instances per suite")
      ->check(CLI::NonNegativeNumber);
  selftest->add_option("--sizes", sizes, "ambient dimensions to draw from")
      ->delimiter(',');
  selftest->add_flag("--json", json_flag, "JSON summary instead of a table");
  selftest->add_flag("--pretty", mode.pretty, "indented JSON output");
  selftest->add_flag("--timing", mode.timing, "include wall time in output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (intersect->parsed()) return run_intersect(file, mode);
    if (building->parsed()) return run_building(sub, file, mode);
    return run_selftest(seed, count, sizes, json_flag || mode.pretty, mode);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 2;
  }
}
