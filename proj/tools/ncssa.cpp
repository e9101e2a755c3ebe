// ncssa: constants, audits and instance generation from the command line.
//
// Exit codes: 0 success, 1 input error, 2 solver non-convergence, 3 audit failure.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ncssa/constants.hpp"
#include "ncssa/io.hpp"
#include "ncssa/kappa.hpp"
#include "ncssa/random.hpp"
#include "ncssa/verify.hpp"

using namespace ncssa;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitAudit = 3;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("NCSSA_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError(std::string("NCSSA_SEED: not an unsigned integer: ") + s);
    }
  }
  return 1;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--dims: '" + tok + "' is not a positive integer");
    }
  }
  return out;
}

std::string dims_label(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "x" : "") + std::to_string(d[i]);
  return s;
}

struct QuadFlags {
  QuadConfig cfg;
  void add(CLI::App* app) {
    app->add_option("--quad-T", cfg.T, "kappa quadrature: integrate alpha(t) log c(t) over [-T, T]")->check(CLI::PositiveNumber);
    app->add_option("--quad-panels", cfg.panels, "kappa quadrature: initial number of panels")->check(CLI::PositiveNumber);
    app->add_option("--quad-nodes", cfg.nodes, "kappa quadrature: Gauss-Legendre nodes per panel")->check(CLI::PositiveNumber);
    app->add_option("--quad-tol", cfg.tol, "kappa quadrature: stop halving the panel width below this change")->check(CLI::PositiveNumber);
  }
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// constant

KappaProblem kappa_problem(const Instance& inst) {
  if (!inst.e_r) throw InputError("expectation.e_r: required for --constant kappa");
  return {inst.state("rho"), inst.state("sigma"), inst.channel("phi_a"), inst.channel("phi_b"), *inst.e_r};
}

Inclusion r_in_a(const Instance& inst) {
  const Channel& a = inst.channel("phi_a");
  auto it = inst.inclusions.find("r");
  if (it != inst.inclusions.end() && it->second.ambient() == a.output()) return it->second;
  return Inclusion::scalar(a.output(), 1.0);
}

int cmd_constant(const std::string& file, const std::string& which, bool log2, const QuadConfig& quad) {
  const Instance inst = load_instance(file);
  const double unit = log2 ? std::numbers::ln2 : 1.0;
  Json out;
  out["constant"] = which;
  bool converged = true;
  if (which == "cb") {
    out["value"] = cb_constant(inst.channel("phi_a"), inst.channel("phi_b"));
  } else if (which == "flo") {
    const OverlapPairs o = frank_lieb_overlap(inst.povm("phi_a"), inst.povm("phi_b"));
    out["value"] = o.value;
    Json pairs = Json::array();
    for (auto [x, z] : o.argmax) pairs.push_back({x, z});
    out["argmax"] = pairs;
  } else if (which == "overlap") {
    const OverlapResult o = overlap_constant(inst.channel("phi_a"), inst.channel("phi_b"), r_in_a(inst));
    out["value"] = o.value;
    if (o.upper) out["upper"] = *o.upper;
    out["restarts"] = o.restarts;
    out["agreeing"] = o.agreeing;
    out["rounds"] = o.rounds;
    out["converged"] = o.converged;
    converged = o.converged;
  } else if (which == "bsw") {
    const BswResult b = bsw_constant(inst.channel("phi_a"), inst.channel("phi_b"));
    out["value"] = b.lower;
    out["lower"] = b.lower;
    out["upper"] = b.upper;
    out["evaluations"] = b.evaluations;
  } else if (which == "kappa") {
    const KappaResult k = kappa(kappa_problem(inst), quad);
    out["value"] = k.kappa / unit;
    out["quad_error"] = k.quadrature_error_estimate / unit;
    out["T"] = k.T;
    out["halvings"] = k.halvings;
    out["nodes"] = k.samples.size();
    out["support_cut"] = k.support_cut;
    out["converged"] = k.converged;
    converged = k.converged;
  } else {
    throw InputError("--constant: expected cb, overlap, bsw, kappa or flo");
  }
  if (which != "kappa" && out["value"].get<double>() > 0)
    out["log_inv"] = -std::log(out["value"].get<double>()) / unit + 0.0;  // no "-0.0" for c = 1
  if (log2) out["units"] = "bits";
  std::cout << dump_json(out, -1) << "\n";
  return converged ? 0 : kExitSolver;
}

// ---------------------------------------------------------------------------
// audit

struct AuditSpec {
  std::string theorem;
  std::string preset;
  std::vector<int> dims;
  QuadConfig quad;
};

InequalityReport audit_one(const AuditSpec& a, std::uint64_t seed) {
  const auto& d = a.dims;
  if (a.theorem == "A") {
    Rng rng(seed);
    const Channel pa = random_channel(d[0], d[1], d[0], rng);
    const Channel pb = random_channel(d[0], d[2], d[0], rng);
    const AlgElement rho = random_state(Algebra::full(d[0] * d[3]), rng);
    return check_theorem_A(rho, pa, pb, d[3], {}, seed);
  }
  if (a.theorem == "B") {
    if (a.preset == "cs") {
      const ChannelTriple t = channels_of(random_commuting_square(seed));
      Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
      const AlgElement rho = random_state(t.phi_a.input(), rng);
      return check_theorem_B(rho, t.phi_a, t.phi_b, t.r_in_a, {}, seed);
    }
    Rng rng(seed);
    const Channel pa = random_channel(d[0], d[1], d[0], rng);
    const Channel pb = random_channel(d[0], d[2], d[0], rng);
    const AlgElement rho = random_state(Algebra::full(d[0]), rng);
    return check_theorem_B(rho, pa, pb, Inclusion::scalar(pa.output(), 1.0), {}, seed);
  }
  KappaProblem pb;
  if (a.preset == "improved-dpi")
    pb = build_improved_dpi_instance(d[0], d[1], seed);
  else if (a.preset == "dpi")
    pb = build_dpi_instance(d[0], d[1], seed);
  else
    pb = build_petz_instance(d[0], d[1], d[2], seed);
  return check_theorem_C(pb, a.quad, {}, seed);
}

int cmd_audit(AuditSpec spec, int seeds, std::uint64_t base, const std::string& out, int jobs, int cap, bool log2) {
  if (spec.theorem != "A" && spec.theorem != "B" && spec.theorem != "C")
    throw InputError("--theorem: expected A, B or C");
  if (seeds < 0) throw InputError("--seeds: must be non-negative");
  std::size_t want = 0;
  if (spec.theorem == "A") {
    want = 4;
    if (spec.dims.empty()) spec.dims = {2, 2, 2, 2};
    if (!spec.preset.empty() && spec.preset != "random") throw InputError("--preset: theorem A supports only 'random'");
  } else if (spec.theorem == "B") {
    want = 3;
    if (spec.preset.empty()) spec.preset = "random";
    if (spec.preset != "random" && spec.preset != "cs") throw InputError("--preset: theorem B supports 'random' or 'cs'");
    if (spec.dims.empty()) spec.dims = {3, 2, 2};
  } else {
    if (spec.preset.empty()) spec.preset = "improved-dpi";
    if (spec.preset == "petz") {
      want = 3;
      if (spec.dims.empty()) spec.dims = {2, 2, 2};
    } else if (spec.preset == "improved-dpi" || spec.preset == "dpi") {
      want = 2;
      if (spec.dims.empty()) spec.dims = {3, 2};
    } else {
      throw InputError("--preset: theorem C supports 'improved-dpi', 'dpi' or 'petz'");
    }
  }
  if (spec.dims.size() != want)
    throw InputError("--dims: theorem " + spec.theorem + " expects " + std::to_string(want) + " comma-separated values");
  long prod = 1;
  for (int v : spec.dims) prod *= v;
  if (prod > cap) throw InputError("--dims: product " + std::to_string(prod) + " exceeds --cap " + std::to_string(cap));
  if (jobs > 1) spec.quad.threads = 1;

  struct Row {
    InequalityReport rep;
    double ms = 0;
  };
  std::vector<Row> rows(seeds);
  std::vector<std::string> errors(seeds);
  parallel_map(
      seeds,
      [&](int i) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
          rows[i].rep = audit_one(spec, base + i);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
        rows[i].ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return 0.0;
      },
      std::max(1, jobs));
  for (int i = 0; i < seeds; ++i)
    if (!errors[i].empty()) throw Error("seed " + std::to_string(base + i) + ": " + errors[i]);

  const double unit = log2 ? std::numbers::ln2 : 1.0;
  // the constant column is c for A and B; kappa (a log quantity) for C
  const double cunit = spec.theorem == "C" ? unit : 1.0;
  std::string csv = "# ncssa-audit v1\nseed,dims,lhs,rhs,constant,gap,pass,wall_ms\n";
  double min_gap = std::numeric_limits<double>::infinity(), total_ms = 0;
  bool all = true;
  for (int i = 0; i < seeds; ++i) {
    const InequalityReport& r = rows[i].rep;
    csv += std::to_string(base + i) + "," + dims_label(spec.dims) + "," + fmt(r.lhs / unit) + "," + fmt(r.rhs / unit) +
           "," + fmt(r.constant / cunit) + "," + fmt(r.gap / unit) + "," + (r.pass ? "true" : "false") + "," +
           fmt(rows[i].ms) + "\n";
    min_gap = std::min(min_gap, r.gap / unit);
    total_ms += rows[i].ms;
    all = all && r.pass;
  }
  csv += "summary," + std::to_string(seeds) + ",,,," + (seeds ? fmt(min_gap) : std::string()) + "," +
         (all ? "true" : "false") + "," + fmt(total_ms) + "\n";
  write_out(out, csv);
  return all ? 0 : kExitAudit;
}

// ---------------------------------------------------------------------------
// gen

struct GenSpec {
  std::string preset;
  std::uint64_t seed = 1;
  int d = 2, d_a = 2, d_b = 2;
};

void add_kappa_problem(Instance& inst, const KappaProblem& pb) {
  inst.algebras = {{"M", pb.phi_a.input()}, {"A", pb.phi_a.output()}, {"B", pb.phi_b.output()},
                   {"R", pb.e_r.r_inc.sub()}};
  inst.channels = {{"phi_a", pb.phi_a}, {"phi_b", pb.phi_b}};
  inst.states = {{"rho", pb.rho}, {"sigma", pb.sigma}};
  inst.inclusions = {{"r", pb.e_r.r_inc}};
  inst.e_r = pb.e_r;
}

Instance generate(const GenSpec& g) {
  Instance inst;
  inst.preset = g.preset;
  inst.seed = g.seed;
  if (g.preset == "mub") {
    inst.dims = {{"d", g.d}};
    if (!is_prime(g.d)) throw InputError("--d: the mub preset needs a prime dimension");
    const ChannelPair c = build_mub_instance(g.d);
    auto [p, q] = mub_povms(g.d);
    inst.algebras = {{"M", c.phi_a.input()}, {"A", c.phi_a.output()}, {"R", c.r_inc.sub()}};
    inst.channels = {{"phi_a", c.phi_a}, {"phi_b", c.phi_b}};
    inst.povms = {{"phi_a", p}, {"phi_b", q}};
    inst.inclusions = {{"r", c.r_inc}};
    inst.states = {{"rho", AlgElement::identity(c.phi_a.input()) * cplx(1.0 / g.d)}};
  } else if (g.preset == "ptrace") {
    inst.dims = {{"dA", g.d_a}, {"dB", g.d_b}};
    const ChannelPair c = build_partial_trace_instance(g.d_a, g.d_b);
    inst.algebras = {{"M", c.phi_a.input()}, {"A", c.phi_a.output()}, {"B", c.phi_b.output()}, {"R", c.r_inc.sub()}};
    inst.channels = {{"phi_a", c.phi_a}, {"phi_b", c.phi_b}};
    inst.inclusions = {{"r", c.r_inc}};
    inst.states = {{"rho", random_state(c.phi_a.input(), c.phi_a.input().hilbert_dim(), g.seed)}};
  } else if (g.preset == "cs") {
    inst.dims = {{"d", g.d}};
    const ChannelTriple t = channels_of(tensor_square(g.d));
    inst.algebras = {{"M", t.phi_a.input()}, {"A", t.phi_a.output()}, {"R", t.r_in_a.sub()}};
    inst.channels = {{"phi_a", t.phi_a}, {"phi_b", t.phi_b}};
    inst.inclusions = {{"r", t.r_in_a}};
    inst.states = {{"rho", random_state(t.phi_a.input(), t.phi_a.input().hilbert_dim(), g.seed)}};
  } else if (g.preset == "random") {
    inst.dims = {{"d", g.d}, {"dA", g.d_a}, {"dB", g.d_b}};
    Rng rng(g.seed);
    const Channel pa = random_channel(g.d, g.d_a, g.d, rng);
    const Channel pb = random_channel(g.d, g.d_b, g.d, rng);
    const Inclusion r = Inclusion::scalar(pa.output(), 1.0);
    inst.algebras = {{"M", pa.input()}, {"A", pa.output()}, {"B", pb.output()}, {"R", r.sub()}};
    inst.channels = {{"phi_a", pa}, {"phi_b", pb}};
    inst.inclusions = {{"r", r}};
    const AlgElement rho = random_state(pa.input(), rng);
    inst.states = {{"rho", rho}, {"sigma", random_state(pa.input(), rng)}};
  } else if (g.preset == "dpi") {
    inst.dims = {{"d", g.d}, {"dB", g.d_b}};
    add_kappa_problem(inst, build_dpi_instance(g.d, g.d_b, g.seed));
  } else if (g.preset == "improved-dpi") {
    inst.dims = {{"d", g.d}, {"dA", g.d_a}};
    add_kappa_problem(inst, build_improved_dpi_instance(g.d, g.d_a, g.seed));
  } else if (g.preset == "petz") {
    inst.dims = {{"d1", g.d_a}, {"d2", g.d}, {"d3", g.d_b}};
    add_kappa_problem(inst, build_petz_instance(g.d_a, g.d, g.d_b, g.seed));
  } else {
    throw InputError("--preset: expected mub, ptrace, cs, random, dpi, improved-dpi or petz");
  }
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncssa: generalized strong subadditivity constants and audits"};
  app.require_subcommand(1);

  bool log2 = false;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* constant = app.add_subcommand("constant", "Compute an uncertainty constant for an instance file (JSON on stdout)");
  std::string file, which = "cb";
  QuadFlags cq;
  constant->add_option("instance", file, "Instance JSON (schema v1)")->required();
  constant->add_option("--constant", which, "cb | overlap | bsw | kappa | flo")
      ->check(CLI::IsMember({"cb", "overlap", "bsw", "kappa", "flo"}));
  constant->add_flag("--log2", log2, "Report logarithmic quantities in bits");
  cq.add(constant);

  auto* audit = app.add_subcommand("audit", "Audit Theorem A, B or C on seeded random instances (CSV)");
  AuditSpec spec;
  int seeds = 10, jobs = 1, cap = 64;
  std::string dims, out;
  QuadFlags aq;
  audit->add_option("--theorem", spec.theorem, "A | B | C")->required()->check(CLI::IsMember({"A", "B", "C"}));
  audit->add_option("--seeds", seeds, "Number of seeds (rows)");
  audit->add_option("--dims", dims,
                    "A: dM,dA,dB,dC  B: dM,dA,dB  C: d,dA (improved-dpi), d,dB (dpi), d1,d2,d3 (petz)");
  audit->add_option("--preset", spec.preset, "B: random | cs   C: improved-dpi | dpi | petz");
  audit->add_option("--out", out, "CSV path (default stdout)");
  audit->add_option("--jobs", jobs, "Parallel seeds")->check(CLI::PositiveNumber);
  audit->add_option("--cap", cap, "Maximum product of --dims")->check(CLI::PositiveNumber);
  audit->add_option("--seed", seed, "Base seed; row i uses seed + i (default $NCSSA_SEED or 1)")
      ->each([&](const std::string&) { seed_given = true; });
  audit->add_flag("--log2", log2, "Report entropies in bits");
  aq.add(audit);

  auto* gen = app.add_subcommand("gen", "Write a preset instance as JSON");
  GenSpec g;
  std::string gen_out;
  gen->add_option("--preset", g.preset, "mub | ptrace | cs | random | dpi | improved-dpi | petz")->required();
  gen->add_option("--seed", seed, "Seed (default $NCSSA_SEED or 1)")->each([&](const std::string&) { seed_given = true; });
  gen->add_option("--d", g.d, "Dimension (mub, cs, random, dpi, improved-dpi; middle factor for petz)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--dA", g.d_a, "Dimension of A (ptrace, random, improved-dpi; first factor for petz)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--dB", g.d_b, "Dimension of B (ptrace, random, dpi; last factor for petz)")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (*constant) return cmd_constant(file, which, log2, cq.cfg);
    if (*audit) {
      if (!dims.empty()) spec.dims = parse_dims(dims);
      spec.quad = aq.cfg;
      return cmd_audit(spec, seeds, seed, out, jobs, cap, log2);
    }
    g.seed = seed;
    write_out(gen_out, serialize_instance(generate(g)));
    return 0;
  } catch (const InputError& e) {
    std::cerr << "ncssa: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConstructionError& e) {
    std::cerr << "ncssa: invalid instance: " << e.what() << "\n";
    return kExitInput;
  } catch (const ShapeError& e) {
    std::cerr << "ncssa: invalid instance: " << e.what() << "\n";
    return kExitInput;
  } catch (const PositivityError& e) {
    std::cerr << "ncssa: invalid instance: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedShape& e) {
    std::cerr << "ncssa: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "ncssa: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}
