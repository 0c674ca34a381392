// qppm — command-line harness: parameter sweeps, a small self-test suite,
// and export of the optimal-measurement program for external solvers.

#include "qppm/constellation.hpp"
#include "qppm/detect.hpp"
#include "qppm/srm.hpp"
#include "qppm/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    // start:stop:step, inclusive of stop up to a half-step slack.
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3 ||
        step <= 0) {
      throw CLI::ValidationError("grid", "expected start:stop:step with step > 0, got " + text);
    }
    for (double x = start; x <= stop + step / 2; x += step) out.push_back(x);
    return out;
  }
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    if (!field.empty()) out.push_back(std::stod(field));
  }
  return out;
}

std::vector<std::string> parse_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%-52s %s\n", name, ok ? "ok" : "FAIL");
    if (!ok) ++failures;
  };

  using namespace qppm;
  {
    const auto params = constellation::choose_params(3, 1.5, 0.0);
    const constellation::Constellation c(params);
    const double srm_pe = srm::pc_gram_matrix(c).Pe;
    const double closed = detect::pure_ppm_closed_form(3, 1.5).Pe;
    check("pure 3-PPM matches the closed form", std::abs(srm_pe - closed) < 1e-7);
  }
  {
    const auto params = constellation::choose_params(2, 1.0, 0.05);
    const constellation::Constellation c(params);
    const double gram = srm::pc_gram_matrix(c).Pc;
    const double oper = srm::pc_gram_operator(c).Pc;
    check("gram-matrix and gram-operator paths agree", std::abs(gram - oper) < 1e-8);
    const double hel = detect::helstrom_binary(detect::ppm_binary_problem(c)).Pc;
    check("binary optimum dominates the measurement", hel >= gram - 1e-10);
  }
  {
    const auto counts = gus::count_multiplicities(2, 4);
    check("eigenvalue multiplicities for n=2, m=4",
          counts == std::vector<std::int64_t>({6, 3, 4, 3}));
  }
  {
    const double pe = detect::classical_ppm(4, 0.0, 0.1).Pe;
    check("classical PPM blind-guessing limit", std::abs(pe - 0.75) < 1e-12);
  }
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum pulse-position-modulation detection numerics"};
  app.require_subcommand(1);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a (Ns, nbar) sweep and emit CSV + SVG");
  int m = 2;
  std::string ns_text = "0.5:10:0.5";
  std::string nbar_text = "0";
  std::string methods_text = "srm";
  double eps = qppm::glauber::kDefaultTruncationEps;
  double nu = qppm::glauber::kDefaultRankNu;
  int force_n = 0, force_h = 0, threads = 0;
  std::string out_dir = "results";
  sweep_cmd->add_option("--m", m, "PPM order")->check(CLI::Range(2, 64));
  sweep_cmd->add_option("--ns", ns_text, "Ns grid: start:stop:step or comma list");
  sweep_cmd->add_option("--nbar", nbar_text, "thermal photon numbers, comma list");
  sweep_cmd->add_option("--methods", methods_text,
                        "comma list of srm,helstrom,pure-closed-form,classical,ook-baselines");
  sweep_cmd->add_option("--eps", eps, "truncation accuracy");
  sweep_cmd->add_option("--nu", nu, "factor-rank accuracy");
  sweep_cmd->add_option("--force-n", force_n, "override the automatic slot dimension");
  sweep_cmd->add_option("--force-h", force_h, "override the automatic slot rank");
  sweep_cmd->add_option("--threads", threads, "worker pool size (0 = hardware)");
  sweep_cmd->add_option("--out", out_dir, "output directory");

  // export-sdp
  auto* sdp_cmd = app.add_subcommand("export-sdp", "write the optimal-POVM program (.dat-s)");
  int sdp_m = 2;
  double sdp_ns = 2.0, sdp_nbar = 0.0;
  double sdp_eps = qppm::glauber::kDefaultTruncationEps;
  double sdp_nu = qppm::glauber::kDefaultRankNu;
  std::string sdp_out = "problem.dat-s";
  sdp_cmd->add_option("--m", sdp_m, "PPM order")->check(CLI::Range(2, 8));
  sdp_cmd->add_option("--ns", sdp_ns, "mean signal photons");
  sdp_cmd->add_option("--nbar", sdp_nbar, "mean thermal photons");
  sdp_cmd->add_option("--eps", sdp_eps, "truncation accuracy");
  sdp_cmd->add_option("--nu", sdp_nu, "factor-rank accuracy");
  sdp_cmd->add_option("--out", sdp_out, "output path");

  // selftest
  app.add_subcommand("selftest", "run the small-instance oracle checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("selftest")) {
      return run_selftest();
    }
    if (app.got_subcommand("export-sdp")) {
      const auto params =
          qppm::constellation::choose_params(sdp_m, sdp_ns, sdp_nbar, sdp_eps, sdp_nu);
      const qppm::constellation::Constellation c(params);
      qppm::detect::export_sdp(c, sdp_out);
      std::printf("wrote %s (m=%d, n=%d, N=%lld)\n", sdp_out.c_str(), sdp_m, params.n,
                  static_cast<long long>(params.composite_dim()));
      return 0;
    }

    qppm::sweep::SweepSpec spec;
    spec.m = m;
    spec.ns_grid = parse_grid(ns_text);
    spec.nbar_list = parse_grid(nbar_text);
    spec.methods = parse_list(methods_text);
    spec.eps = eps;
    spec.nu = nu;
    spec.force_n = force_n;
    spec.force_h = force_h;
    spec.threads = threads;
    spec.eid_cap = qppm::sweep::eid_cap_from_env();
    qppm::sweep::validate(spec);

    std::filesystem::create_directories(out_dir);
    std::fprintf(stderr, "sweeping %zu Ns points x %zu nbar values x %zu method(s)...\n",
                 spec.ns_grid.size(), spec.nbar_list.size(), spec.methods.size());
    const auto rows = qppm::sweep::run_sweep(spec);

    int failed = 0;
    for (const auto& row : rows) {
      if (!row.error.empty()) {
        ++failed;
        std::fprintf(stderr, "point %s Ns=%g nbar=%g failed: %s\n", row.method.c_str(), row.Ns,
                     row.nbar, row.error.c_str());
      }
    }
    const std::string base = out_dir + "/sweep_m" + std::to_string(m);
    qppm::sweep::write_csv(rows, base + ".csv");
    qppm::sweep::write_plot(rows, base + ".svg");
    std::printf("%zu rows (%d failed) -> %s.csv, %s.svg\n", rows.size(), failed, base.c_str(),
                base.c_str());
    return failed == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
