#include "qppm/sweep.hpp"

#include "qppm/detect.hpp"
#include "qppm/result.hpp"
#include "qppm/srm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qppm::sweep {

namespace {

const std::set<std::string> kMethods = {"srm", "helstrom", "pure-closed-form", "classical",
                                       "ook-baselines"};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SweepRow run_point(const SweepSpec& spec, const std::string& method, double nbar, double Ns) {
  SweepRow row;
  row.method = method;
  row.m = spec.m;
  row.Ns = Ns;
  row.nbar = nbar;
  try {
    if (method == "pure-closed-form") {
      const DetectionResult r = detect::pure_ppm_closed_form(spec.m, Ns);
      row.Pc = r.Pc;
      row.Pe = r.Pe;
      row.runtime_s = r.diagnostics.runtime_s;
      return row;
    }
    if (method == "classical") {
      const DetectionResult r = detect::classical_ppm(spec.m, Ns, nbar);
      row.Pc = r.Pc;
      row.Pe = r.Pe;
      return row;
    }
    if (method == "ook-classical" || method == "ook-helstrom") {
      const detect::OokBaselines b = detect::ook_baselines(Ns);
      row.Pe = method == "ook-classical" ? b.classical_pe : b.helstrom_pe;
      row.Pc = 1.0 - row.Pe;
      return row;
    }
    // srm / helstrom need the constellation.
    const constellation::PpmParams params = constellation::choose_params(
        spec.m, Ns, nbar, spec.eps, spec.nu, spec.force_n, spec.force_h, spec.composite_cap);
    row.n = params.n;
    row.h = params.h;
    row.H = params.composite_rank();
    if (method == "srm") {
      if (row.H > spec.eid_cap) {
        throw std::runtime_error("composite rank " + std::to_string(row.H) +
                                 " exceeds the EID cap " + std::to_string(spec.eid_cap));
      }
      const constellation::Constellation c(params);
      const DetectionResult r = srm::pc_gram_matrix(c);
      row.Pc = r.Pc;
      row.Pe = r.Pe;
      row.runtime_s = r.diagnostics.runtime_s;
      return row;
    }
    // helstrom (m = 2 enforced by validate)
    const constellation::Constellation c(params);
    const DetectionResult r = detect::helstrom_binary(detect::ppm_binary_problem(c));
    row.Pc = r.Pc;
    row.Pe = r.Pe;
    row.runtime_s = r.diagnostics.runtime_s;
    return row;
  } catch (const std::exception& e) {
    row.error = e.what();
    return row;
  }
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("sweep: m must be >= 2");
  if (spec.ns_grid.empty()) throw std::invalid_argument("sweep: empty Ns grid");
  if (spec.nbar_list.empty()) throw std::invalid_argument("sweep: empty nbar list");
  if (spec.methods.empty()) throw std::invalid_argument("sweep: no methods selected");
  for (double x : spec.ns_grid) {
    if (x < 0.0) throw std::invalid_argument("sweep: negative Ns value");
  }
  for (double x : spec.nbar_list) {
    if (x < 0.0) throw std::invalid_argument("sweep: negative nbar value");
  }
  for (const std::string& method : spec.methods) {
    if (kMethods.count(method) == 0) {
      throw std::invalid_argument("sweep: unknown method '" + method + "'");
    }
    if (method == "helstrom" && spec.m != 2) {
      throw std::invalid_argument("sweep: helstrom is available only for m = 2");
    }
  }
  if (!(spec.eps > 0.0 && spec.eps < 1.0) || !(spec.nu > 0.0 && spec.nu < 1.0)) {
    throw std::invalid_argument("sweep: eps and nu must be in (0, 1)");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);

  std::vector<std::string> methods;
  for (const std::string& method : spec.methods) {
    if (method == "ook-baselines") {
      methods.push_back("ook-classical");
      methods.push_back("ook-helstrom");
    } else {
      methods.push_back(method);
    }
  }
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  std::vector<double> nbars = spec.nbar_list;
  std::sort(nbars.begin(), nbars.end());
  nbars.erase(std::unique(nbars.begin(), nbars.end()), nbars.end());
  std::vector<double> grid = spec.ns_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  struct Job {
    std::string method;
    double nbar;
    double Ns;
  };
  std::vector<Job> jobs;
  for (const std::string& method : methods) {
    for (double nbar : nbars) {
      for (double Ns : grid) {
        jobs.push_back(Job{method, nbar, Ns});
      }
    }
  }

  std::vector<SweepRow> rows(jobs.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(jobs.size(), spec.threads > 0 ? spec.threads : hw);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      rows[i] = run_point(spec, jobs[i].method, jobs[i].nbar, jobs[i].Ns);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "method,m,Ns,nbar,n,h,H,Pe,Pc,runtime_s\n";
  for (const SweepRow& r : rows) {
    if (!r.error.empty()) continue;
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.6f", r.runtime_s);
    out << r.method << "," << r.m << "," << fmt(r.Ns) << "," << fmt(r.nbar) << "," << r.n << ","
        << r.h << "," << r.H << "," << fmt(r.Pe) << "," << fmt(r.Pc) << "," << runtime << "\n";
  }
  return out.str();
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << to_csv(rows);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "method,m,Ns,nbar,n,h,H,Pe,Pc,runtime_s") {
    throw std::runtime_error("read_csv: bad header in " + path);
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw std::runtime_error("read_csv: bad row in " + path);
    SweepRow r;
    r.method = fields[0];
    r.m = std::stoi(fields[1]);
    r.Ns = std::stod(fields[2]);
    r.nbar = std::stod(fields[3]);
    r.n = std::stoi(fields[4]);
    r.h = std::stoi(fields[5]);
    r.H = std::stoll(fields[6]);
    r.Pe = std::stod(fields[7]);
    r.Pc = std::stod(fields[8]);
    r.runtime_s = std::stod(fields[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_plot(const std::vector<SweepRow>& rows, const std::string& path) {
  // Group usable points per (method, nbar) curve.
  std::map<std::pair<std::string, double>, std::vector<std::pair<double, double>>> curves;
  double ns_min = 1e300, ns_max = -1e300, lg_min = 0.0, lg_max = -300.0;
  for (const SweepRow& r : rows) {
    if (!r.error.empty() || r.Pe <= 0.0) continue;
    const double lg = std::log10(r.Pe);
    curves[{r.method, r.nbar}].emplace_back(r.Ns, lg);
    ns_min = std::min(ns_min, r.Ns);
    ns_max = std::max(ns_max, r.Ns);
    lg_min = std::min(lg_min, lg);
    lg_max = std::max(lg_max, lg);
  }
  if (curves.empty()) throw std::invalid_argument("write_plot: no plottable rows");
  if (ns_max <= ns_min) ns_max = ns_min + 1.0;
  lg_max = std::min(lg_max + 0.2, 0.0);
  lg_min -= 0.2;

  const double w = 720, hgt = 480, l = 70, rmar = 180, t = 30, b = 50;
  auto px = [&](double ns) { return l + (ns - ns_min) / (ns_max - ns_min) * (w - l - rmar); };
  auto py = [&](double lg) { return t + (lg_max - lg) / (lg_max - lg_min) * (hgt - t - b); };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << hgt
      << "' font-family='sans-serif' font-size='12'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";
  // Axes and decade grid lines.
  svg << "<line x1='" << l << "' y1='" << t << "' x2='" << l << "' y2='" << hgt - b
      << "' stroke='black'/>\n"
      << "<line x1='" << l << "' y1='" << hgt - b << "' x2='" << w - rmar << "' y2='" << hgt - b
      << "' stroke='black'/>\n";
  for (int d = static_cast<int>(std::ceil(lg_min)); d <= std::floor(lg_max); ++d) {
    svg << "<line x1='" << l << "' y1='" << py(d) << "' x2='" << w - rmar << "' y2='" << py(d)
        << "' stroke='#dddddd'/>\n"
        << "<text x='" << l - 8 << "' y='" << py(d) + 4
        << "' text-anchor='end'>1e" << d << "</text>\n";
  }
  const double ns_step = (ns_max - ns_min) / 8.0;
  for (int i = 0; i <= 8; ++i) {
    const double ns = ns_min + i * ns_step;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", ns);
    svg << "<text x='" << px(ns) << "' y='" << hgt - b + 18 << "' text-anchor='middle'>" << label
        << "</text>\n";
  }
  svg << "<text x='" << (l + w - rmar) / 2 << "' y='" << hgt - 12
      << "' text-anchor='middle'>Ns</text>\n"
      << "<text x='16' y='" << (t + hgt - b) / 2 << "' transform='rotate(-90 16 "
      << (t + hgt - b) / 2 << ")' text-anchor='middle'>Pe</text>\n";

  int ci = 0;
  for (const auto& [key, pts] : curves) {
    const char* color = kColors[ci % 8];
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (const auto& [ns, lg] : pts) svg << px(ns) << "," << py(lg) << " ";
    svg << "'/>\n";
    char label[96];
    std::snprintf(label, sizeof label, "%s nbar=%g", key.first.c_str(), key.second);
    svg << "<line x1='" << w - rmar + 10 << "' y1='" << t + 14 + 18 * ci << "' x2='"
        << w - rmar + 30 << "' y2='" << t + 14 + 18 * ci << "' stroke='" << color
        << "' stroke-width='1.5'/>\n"
        << "<text x='" << w - rmar + 36 << "' y='" << t + 18 + 18 * ci << "'>" << label
        << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_plot: cannot open " + path);
  out << svg.str();
  if (!out) throw std::runtime_error("write_plot: write failed for " + path);
}

std::int64_t eid_cap_from_env(std::int64_t fallback) {
  const char* env = std::getenv("QPPM_MAX_H");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0) {
    throw std::invalid_argument("QPPM_MAX_H must be a positive integer, got '" + std::string(env) +
                                "'");
  }
  return v;
}

}  // namespace qppm::sweep
