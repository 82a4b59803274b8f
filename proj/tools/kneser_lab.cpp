// kneserlab - command-line driver: chromatic reports, explicit colorings,
// complex construction, homology profiles, nerve checks, equivariant
// certificate runs, and batch sweeps.
//
// Exit codes: 0 all checks pass, 1 a claimed bound or lemma check failed,
// 2 input error, 3 resource budget exceeded.

#include "kneser/io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace kneser;

struct CommonOpts {
  std::string instance;
  std::string out;
  std::string format = "json";
  Budget budget;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_instance = true) {
  auto* inst = cmd->add_option("--instance", opts.instance, "instance or input file");
  if (needs_instance) inst->required();
  cmd->add_option("--out", opts.out, "output file (stdout when omitted)");
  cmd->add_option("--format", opts.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--max-vertices", opts.budget.max_vertices, "vertex cap");
  cmd->add_option("--max-faces", opts.budget.max_faces, "face cap");
  cmd->add_option("--timeout", opts.budget.max_seconds, "time cap in seconds");
  cmd->add_option("--workers", opts.workers, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
}

void emit(const CommonOpts& opts, const std::string& content) {
  if (opts.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(opts.out);
  if (!f) throw input_error("cannot open output file: " + opts.out);
  f << content;
  if (!content.empty() && content.back() != '\n') f << "\n";
}

int cmd_chromatic(const CommonOpts& opts) {
  auto spec = load_instance(opts.instance);
  auto rep = make_chromatic_report(spec, opts.budget);
  emit(opts, chromatic_report_to_json(spec, rep).dump(2));
  return rep.consistent ? 0 : 1;
}

int cmd_color(const CommonOpts& opts, const std::string& method) {
  auto spec = load_instance(opts.instance);
  Coloring c;
  if (method == "standard" ||
      (method == "auto" && spec.variant() == Variant::partition)) {
    c = standard_kneser_coloring(spec);
  } else if (method == "erdos" || method == "auto") {
    c = erdos_greedy_coloring(spec.svec(), spec.k()).coloring;
  } else {  // exact
    auto res = chromatic_number_exact(spec, opts.budget);
    if (res.chi.infinite)
      throw input_error("color: chromatic number is infinite (loop edge)");
    c = res.witness;
  }
  bool proper = is_proper(spec, c);
  json j = coloring_to_json(spec, c);
  j["proper"] = proper;
  emit(opts, j.dump(2));
  return proper ? 0 : 1;
}

int cmd_complex(const CommonOpts& opts, const std::string& family) {
  auto spec = load_instance(opts.instance);
  std::ostringstream buf;
  if (family == "E") {
    auto e = build_E(spec.n(), spec.r(), opts.budget);
    write_facet_file(buf, e.sc);
  } else if (family == "box") {
    auto box = build_box_complex(spec, opts.budget);
    write_facet_file(buf, box.sc);
  } else {
    if (spec.variant() == Variant::partition)
      throw input_error("complex: Ks/Cs need a uniform_s or general_s instance");
    std::vector<int> kvec(spec.r(), spec.k());
    if (family == "Ks") {
      auto ks = build_Ks(spec.n(), kvec, spec.svec(), opts.budget);
      write_facet_file(buf, ks.sc);
    } else {
      auto cs = build_Cs(spec.n(), kvec, spec.svec(), opts.budget);
      write_facet_file(buf, cs.sc);
    }
  }
  emit(opts, buf.str());
  return 0;
}

int cmd_homology(const CommonOpts& opts) {
  std::ifstream in(opts.instance);
  if (!in) throw input_error("cannot open facet file: " + opts.instance);
  auto sc = read_facet_file(in);
  auto profile = betti_numbers(sc, opts.budget);
  int hconn = homological_connectivity(sc, opts.budget);
  emit(opts, homology_profile_to_json(profile, hconn).dump(2));
  return 0;
}

int cmd_nerve_check(const CommonOpts& opts) {
  auto spec = load_instance(opts.instance);
  if (spec.variant() == Variant::partition)
    throw input_error("nerve-check: needs a uniform_s or general_s instance");
  std::vector<int> kvec(spec.r(), spec.k());
  auto rep = nerve_iso_check(spec.n(), kvec, spec.svec(), opts.budget);
  emit(opts, nerve_report_to_json(rep).dump(2));
  return rep.pass ? 0 : 1;
}

int cmd_tucker_verify(const CommonOpts& opts) {
  auto spec = load_instance(opts.instance);
  if (spec.variant() != Variant::partition)
    throw input_error("tucker-verify: needs a partition instance");
  if (!is_prime(spec.r()))
    throw input_error("tucker-verify: uniformity must be prime");
  auto coloring = standard_kneser_coloring(spec);
  TuckerParams params(spec.r(), spec.n(), spec.k(), spec.blocks(), coloring.t);
  auto rep = verify_tucker_conditions(params, coloring, opts.budget);
  emit(opts, tucker_report_to_json(spec, rep).dump(2));
  return rep.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep: the partition grid r x k x n x block shapes, one row per instance
// ---------------------------------------------------------------------------
struct SweepRow {
  std::string instance;
  int lower = 0, exact = 0, upper = 0;
  bool theorem_ok = false;
};

std::vector<std::vector<int>> shapes_with_parts_at_most(int n, int maxpart) {
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int maxnext) -> void {
    if (left == 0) {
      shapes.push_back(cur);
      return;
    }
    for (int part = std::min(left, maxnext); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, maxpart);
  return shapes;
}

HypergraphSpec shape_instance(int n, int k, int r, const std::vector<int>& shape) {
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (int len : shape) {
    std::vector<int> b;
    for (int i = 0; i < len; ++i) b.push_back(next++);
    blocks.push_back(std::move(b));
  }
  return HypergraphSpec::partition(n, k, r, Partition(n, std::move(blocks)));
}

int cmd_sweep(const CommonOpts& opts, std::vector<int> rs, std::vector<int> ks,
              int n_extra) {
  std::vector<HypergraphSpec> instances;
  for (int r : rs)
    for (int k : ks)
      for (int n = r * k; n <= r * k + n_extra; ++n)
        for (const auto& shape : shapes_with_parts_at_most(n, r))
          instances.push_back(shape_instance(n, k, r, shape));

  std::vector<SweepRow> rows(instances.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> budget_hit{false};
  std::string budget_msg;
  std::mutex budget_mutex;

  auto work = [&]() {
    std::size_t i;
    while ((i = cursor.fetch_add(1)) < instances.size()) {
      if (budget_hit.load()) return;
      const auto& spec = instances[i];
      SweepRow row;
      row.instance = spec.str();
      try {
        row.lower = formula_lower_bound(spec);
        row.upper = standard_kneser_coloring(spec).t;
        auto exact = chromatic_number_exact(spec, opts.budget);
        row.exact = exact.chi.value;
        row.theorem_ok = row.exact == row.lower && row.lower <= row.upper;
      } catch (const budget_error& e) {
        std::lock_guard<std::mutex> lock(budget_mutex);
        budget_hit.store(true);
        budget_msg = e.what();
        return;
      }
      rows[i] = std::move(row);
    }
  };
  std::vector<std::thread> pool;
  int nworkers = std::max(1, opts.workers);
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (budget_hit.load()) throw budget_error("sweep: " + budget_msg);

  bool all_ok = true;
  for (const auto& row : rows) all_ok = all_ok && row.theorem_ok;

  if (opts.format == "csv") {
    std::ostringstream buf;
    buf << "instance,lower,exact,upper,theorem_ok\n";
    for (const auto& row : rows)
      buf << '"' << row.instance << "\"," << row.lower << "," << row.exact << ","
          << row.upper << "," << (row.theorem_ok ? "true" : "false") << "\n";
    emit(opts, buf.str());
  } else {
    json arr = json::array();
    for (const auto& row : rows) {
      json j;
      j["instance"] = row.instance;
      j["lower"] = row.lower;
      j["exact"] = row.exact;
      j["upper"] = row.upper;
      j["theorem_ok"] = row.theorem_ok;
      arr.push_back(std::move(j));
    }
    json top;
    top["schema"] = 1;
    top["rows"] = std::move(arr);
    emit(opts, top.dump(2));
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kneserlab: Kneser-type hypergraph chromatic bounds, complexes, homology,\n"
      "and equivariant certificate checks. Deterministic throughout; the\n"
      "KNESER_LAB_SEED environment variable is reserved and unused."};
  app.require_subcommand(1);

  CommonOpts chromatic_opts, color_opts, complex_opts, homology_opts;
  CommonOpts nerve_opts, tucker_opts, sweep_opts;
  std::string color_method = "auto";
  std::string complex_family;
  std::vector<int> sweep_rs = {2, 3};
  std::vector<int> sweep_ks = {1, 2};
  int sweep_extra = 3;

  auto* c1 = app.add_subcommand("chromatic",
                                "formula bound, explicit coloring size, exact value");
  add_common(c1, chromatic_opts);
  auto* c2 = app.add_subcommand("color", "emit an explicit proper coloring");
  add_common(c2, color_opts);
  c2->add_option("--method", color_method, "auto|standard|erdos|exact")
      ->check(CLI::IsMember({"auto", "standard", "erdos", "exact"}));
  auto* c3 = app.add_subcommand("complex", "write a facet-list file");
  add_common(c3, complex_opts);
  c3->add_option("--family", complex_family, "E|box|Ks|Cs")
      ->required()
      ->check(CLI::IsMember({"E", "box", "Ks", "Cs"}));
  auto* c4 = app.add_subcommand("homology", "Betti/torsion profile of a facet file");
  add_common(c4, homology_opts);
  auto* c5 = app.add_subcommand("nerve-check",
                                "verify the maximal-nerve isomorphism for K_s/C_s");
  add_common(c5, nerve_opts);
  auto* c6 = app.add_subcommand("tucker-verify",
                                "run the equivariant labeling certificate");
  add_common(c6, tucker_opts);
  auto* c7 = app.add_subcommand("sweep", "partition-grid table: lower/exact/upper");
  add_common(c7, sweep_opts, /*needs_instance=*/false);
  c7->add_option("--r-list", sweep_rs, "uniformities to sweep");
  c7->add_option("--k-list", sweep_ks, "subset sizes to sweep");
  c7->add_option("--n-extra", sweep_extra, "sweep n from r*k to r*k + n-extra");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c1->parsed()) return cmd_chromatic(chromatic_opts);
    if (c2->parsed()) return cmd_color(color_opts, color_method);
    if (c3->parsed()) return cmd_complex(complex_opts, complex_family);
    if (c4->parsed()) return cmd_homology(homology_opts);
    if (c5->parsed()) return cmd_nerve_check(nerve_opts);
    if (c6->parsed()) return cmd_tucker_verify(tucker_opts);
    if (c7->parsed()) return cmd_sweep(sweep_opts, sweep_rs, sweep_ks, sweep_extra);
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
