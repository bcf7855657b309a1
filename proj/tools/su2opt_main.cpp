// su2opt: time-optimal SU(2) synthesis under asymmetric control bounds.
//
// Subcommands: frontline, reachable, synth, classify, sweep, verify.
// All command-line times and frequencies are physical (rad/time); the
// rescaled tau = t/2 is internal only. Exit codes: 0 ok, 2 bad
// configuration, 3 empty locus, 4 unreachable target.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "su2opt/errors.hpp"
#include "su2opt/extremals.hpp"
#include "su2opt/frontlines.hpp"
#include "su2opt/io.hpp"
#include "su2opt/su2.hpp"
#include "su2opt/synthesis.hpp"
#include "su2opt/verify.hpp"

namespace {

using nlohmann::json;
using namespace su2opt;

struct CommonArgs {
  double omega0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::string config_path;
  std::string out_path;

  CLI::Option* o_w0 = nullptr;
  CLI::Option* o_g1 = nullptr;
  CLI::Option* o_g2 = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  args.o_w0 = cmd->add_option("--omega0", args.omega0, "drift frequency (rad/time)");
  args.o_g1 = cmd->add_option("--gamma1", args.gamma1, "transverse control bound");
  args.o_g2 = cmd->add_option("--gamma2", args.gamma2, "longitudinal control bound");
  cmd->add_option("--config", args.config_path,
                  "key=value config file; flags override file values");
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
}

// File values fill in whatever the command line left unset.
ProblemParams resolve_params(const CommonArgs& args) {
  double w0 = args.omega0, g1 = args.gamma1, g2 = args.gamma2;
  if (!args.config_path.empty()) {
    const io::RunConfig cfg = io::load_config(args.config_path);
    if (!args.o_w0->count()) w0 = cfg.get_double("omega0", w0);
    if (!args.o_g1->count()) g1 = cfg.get_double("gamma1", g1);
    if (!args.o_g2->count()) g2 = cfg.get_double("gamma2", g2);
  }
  const ProblemParams p{w0, g1, g2};
  validate(p);
  return p;
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw RangeError("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw RangeError("times list is empty");
  return out;
}

json params_json(const ProblemParams& p) {
  return json{{"omega0", p.omega0}, {"gamma1", p.gamma1}, {"gamma2", p.gamma2}};
}

// ---------------------------------------------------------------------
// frontline

int cmd_frontline(const CommonArgs& args, double t, int samples,
                  const std::string& branch_filter) {
  const ProblemParams p = resolve_params(args);
  const double tau = 0.5 * t;
  OutputStream out_stream(args.out_path);
  io::CsvWriter csv{out_stream.get()};
  csv.header({"branch", "omega", "tau", "x", "y"});

  std::vector<Branch> branches;
  if (branch_filter == "all") {
    branches = {Branch::Minus, Branch::Plus, Branch::Zero};
  } else if (branch_filter == "minus") {
    branches = {Branch::Minus};
  } else if (branch_filter == "plus") {
    branches = {Branch::Plus};
  } else if (branch_filter == "zero") {
    branches = {Branch::Zero};
  } else {
    throw RangeError("unknown branch filter: " + branch_filter);
  }

  for (const Branch b : branches) {
    const auto rows = sample_frontline(p, b, tau, samples);
    for (const auto& s : rows) {
      csv.row({to_string(s.branch), io::format_double(s.omega),
               io::format_double(s.tau), io::format_double(s.x),
               io::format_double(s.y)});
    }
  }
  return 0;
}

// ---------------------------------------------------------------------
// reachable

void emit_traces(io::SvgDisk& svg, const ProblemParams& p, double tau_max) {
  // Endpoint histories of the F0 arc; dashed until the arc first closes
  // (full wrap or zero radius), dotted afterwards.
  double s_conv = std::numeric_limits<double>::infinity();
  if (p.gamma1 > 0.0) s_conv = std::min(s_conv, 0.5 * kPi / p.gamma1);
  if (p.gamma2 > 0.0) s_conv = std::min(s_conv, kPi / p.gamma2);
  for (const double drift : {p.omega0 - p.gamma2, p.omega0 + p.gamma2}) {
    for (int phase = 0; phase < 2; ++phase) {
      const double s0 = phase == 0 ? 0.0 : s_conv;
      const double s1 = phase == 0 ? std::min(tau_max, s_conv) : tau_max;
      if (!(s1 > s0)) continue;
      const int n = 256;
      std::vector<DiskPoint> pts;
      pts.reserve(n + 1);
      for (int i = 0; i <= n; ++i) {
        const double s = s0 + (s1 - s0) * i / n;
        const double r = std::cos(p.gamma1 * s);
        pts.push_back({r * std::cos(drift * s), -r * std::sin(drift * s)});
      }
      svg.polyline(pts, "#606060", 1.0,
                   phase == 0 ? svg.theme().trace_dashed : svg.theme().trace_dotted);
    }
  }
}

int cmd_reachable(const CommonArgs& args, const std::string& times_csv,
                  int resolution, bool tau_equals_t, bool traces,
                  const std::string& csv_path) {
  const ProblemParams p = resolve_params(args);
  const std::vector<double> times = parse_times(times_csv);

  io::SvgDisk svg;
  std::ostringstream csv_buf;
  io::CsvWriter csv{csv_buf};
  csv.header({"t", "tau", "piece", "param", "x", "y"});

  double tau_max = 0.0;
  std::vector<ReachableBoundary> boundaries;
  for (const double t : times) {
    const double tau = tau_equals_t ? t : 0.5 * t;
    tau_max = std::max(tau_max, tau);
    boundaries.push_back(reachable_boundary(p, tau, resolution));
  }

  if (traces) emit_traces(svg, p, tau_max);

  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    const auto& rb = boundaries[k];
    const double t = times[k];
    const auto& color =
        svg.theme().time_colors[k % svg.theme().time_colors.size()];
    for (const auto& seg : rb.segments) {
      const bool zero = seg.kind == PieceKind::ZeroArc;
      svg.polyline(seg.points, zero ? svg.theme().zero_stroke : color,
                   zero ? 2.4 : 1.6);
      const int stride = std::max<int>(1, static_cast<int>(seg.points.size()) / 64);
      for (std::size_t i = 0; i < seg.points.size(); i += stride) {
        const double frac = seg.points.size() > 1
                                ? static_cast<double>(i) / (seg.points.size() - 1)
                                : 0.0;
        const double param = seg.param_lo + frac * (seg.param_hi - seg.param_lo);
        csv.row({io::format_double(t), io::format_double(rb.tau), to_string(seg.kind),
                 io::format_double(param), io::format_double(seg.points[i].x),
                 io::format_double(seg.points[i].y)});
      }
    }
  }

  OutputStream svg_stream(args.out_path);
  svg_stream.get() << svg.finish();
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw RangeError("cannot open CSV output: " + csv_path);
    f << csv_buf.str();
  }
  return 0;
}

// ---------------------------------------------------------------------
// synth

int cmd_synth(const CommonArgs& args, const std::string& target_kind,
              double lambda, double a_re, double a_im, double b_re, double b_im,
              double tol, double tau_max, bool exact_phase, int oracle_grid) {
  const ProblemParams p = resolve_params(args);

  Su2Element target;
  SynthesisResult res;
  if (target_kind == "swap") {
    target = swap_element();
    res = min_time_swap(p);
  } else if (target_kind == "diagonal") {
    target = diagonal_element(lambda);
    res = min_time_diagonal(p, lambda);
  } else if (target_kind == "general") {
    target = make_element({a_re, a_im}, {b_re, b_im});
    GeneralOptions opts;
    opts.tau_max = tau_max > 0.0 ? 0.5 * tau_max : 0.0;
    opts.exact_phase = exact_phase;
    res = min_time_general(p, target, tol, opts);
  } else {
    throw RangeError("unknown target kind: " + target_kind);
  }

  json rep;
  rep["schema"] = "su2opt/synth-report/v1";
  rep["params"] = params_json(p);
  rep["target"] = {{"kind", target_kind},
                   {"alpha", {target.alpha.real(), target.alpha.imag()}},
                   {"beta", {target.beta.real(), target.beta.imag()}}};
  if (target_kind == "diagonal") rep["target"]["lambda"] = lambda;
  rep["t_f"] = res.t_f;
  rep["branch"] = to_string(res.branch);
  rep["omega"] = res.omega;
  rep["phi"] = res.phi;
  rep["u_z"] = res.schedule.pieces.empty() ? 0.0 : res.schedule.pieces.front().uz;
  rep["residual"] = res.residual;
  rep["closed_form_beaten"] = res.closed_form_beaten;

  if (oracle_grid > 0) {
    const double horizon = std::max(res.t_f * 0.75, 0.1);
    try {
      const double oracle =
          brute_force_min_time(p, target, oracle_grid, oracle_grid, horizon);
      rep["oracle"] = {{"t_f", oracle},
                       {"rel_gap", res.t_f > 0.0 ? (res.t_f - oracle) / res.t_f : 0.0},
                       {"grids", oracle_grid}};
    } catch (const NotFoundError&) {
      // Nothing faster in 0.75 * t_f: the synthesized time stands.
      rep["oracle"] = {{"t_f", nullptr},
                       {"note", "no faster extremal within 0.75 * t_f"},
                       {"grids", oracle_grid}};
    }
  }

  OutputStream out_stream(args.out_path);
  out_stream.get() << rep.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// classify

int cmd_classify(const CommonArgs& args) {
  const ProblemParams p = resolve_params(args);
  const RegimeClass c = classify(p);
  json rep;
  rep["schema"] = "su2opt/classify-report/v1";
  rep["params"] = params_json(p);
  rep["rotation"] = to_string(c.rotation);
  rep["depth"] = to_string(c.depth);
  if (c.excluded_radius) {
    rep["excluded_disk_radius"] = *c.excluded_radius;
  }
  json boundary = json::array();
  if (c.boundary_rotation) boundary.push_back("gamma2_equals_omega0");
  if (c.boundary_depth) boundary.push_back("two_gamma1_equals_gamma2");
  rep["boundary_case"] = boundary;
  OutputStream out_stream(args.out_path);
  out_stream.get() << rep.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// sweep

int cmd_sweep(const CommonArgs& args, int n, std::uint64_t seed) {
  const ProblemParams base = resolve_params(args);
  OutputStream out_stream(args.out_path);
  io::CsvWriter csv{out_stream.get()};
  csv.header({"gamma1", "gamma2", "lambda", "t_f_asym", "t_f_sym", "dominance_ok"});

  // xorshift with explicit bit-to-double mapping: identical rows for
  // identical (config, seed) everywhere.
  std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
  const auto uniform = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };

  int violations = 0;
  for (int i = 0; i < n; ++i) {
    const double gamma = 0.5 + 3.5 * uniform();
    const double eta = 0.5 * kPi * uniform();
    const double g1 = gamma * std::sin(eta);
    const double g2 = gamma * std::cos(eta);
    const double lambda = 1e-3 + (2.0 * kPi - 2e-3) * uniform();
    const double t_asym =
        su2opt::detail::diagonal_time_formula(base.omega0, g1, g2, lambda);
    const double t_sym = symmetric_bound_time(base.omega0, gamma, lambda);
    const bool ok = t_sym <= t_asym + 1e-9;
    if (!ok) ++violations;
    csv.row({io::format_double(g1), io::format_double(g2), io::format_double(lambda),
             io::format_double(t_asym), io::format_double(t_sym),
             ok ? "1" : "0"});
  }
  out_stream.get() << "# rows=" << n << " violations=" << violations << "\n";
  return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------
// verify

int cmd_verify(const CommonArgs& args, const std::string& branch_name,
               double omega, double phi, double t, double step) {
  const ProblemParams p = resolve_params(args);
  Branch branch;
  if (branch_name == "plus") {
    branch = Branch::Plus;
  } else if (branch_name == "minus") {
    branch = Branch::Minus;
  } else if (branch_name == "zero") {
    branch = Branch::Zero;
  } else {
    throw RangeError("unknown branch: " + branch_name);
  }
  const ExtremalSpec spec{branch, omega, phi};
  IntegrationConfig cfg;
  cfg.step = step;

  const Su2Element closed = extremal_element(p, spec, t);
  const Su2Element integrated =
      propagate(p, make_extremal_schedule(p, spec, t), t, cfg);
  const CostateReport costate = costate_check(p, spec, t, cfg);

  json rep;
  rep["schema"] = "su2opt/verify-report/v1";
  rep["params"] = params_json(p);
  rep["spec"] = {{"branch", to_string(branch)}, {"omega", omega}, {"phi", phi},
                 {"t", t}};
  rep["closed_form"] = {{"alpha", {closed.alpha.real(), closed.alpha.imag()}},
                        {"beta", {closed.beta.real(), closed.beta.imag()}}};
  rep["integrated"] = {
      {"alpha", {integrated.alpha.real(), integrated.alpha.imag()}},
      {"beta", {integrated.beta.real(), integrated.beta.imag()}}};
  rep["residuals"] = {
      {"alpha_distance", std::abs(closed.alpha - integrated.alpha)},
      {"beta_distance", std::abs(closed.beta - integrated.beta)},
      {"equiv_distance", equiv_distance(closed, integrated)},
      {"unitarity", std::abs(std::norm(integrated.alpha) +
                             std::norm(integrated.beta) - 1.0)},
      {"costate_closed_form", costate.max_closed_form_deviation},
      {"costate_invariant", costate.max_invariant_drift},
      {"hamiltonian_drift", costate.max_hamiltonian_drift}};
  OutputStream out_stream(args.out_path);
  out_stream.get() << rep.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal SU(2) control with asymmetric bounds"};
  app.require_subcommand(1);

  // frontline
  auto* fl = app.add_subcommand("frontline", "sample the optimal front lines as CSV");
  CommonArgs fl_args;
  add_common(fl, fl_args);
  double fl_t = 1.0;
  int fl_samples = 512;
  std::string fl_branch = "all";
  fl->add_option("--t", fl_t, "physical time of the front line");
  fl->add_option("--resolution", fl_samples, "samples per branch");
  fl->add_option("--branch", fl_branch, "all|plus|minus|zero");

  // reachable
  auto* rc = app.add_subcommand("reachable", "render reachable-set boundaries as SVG");
  CommonArgs rc_args;
  add_common(rc, rc_args);
  std::string rc_times = "0.6,1.0,1.4";
  int rc_resolution = 2048;
  bool rc_tau_eq_t = false;
  bool rc_no_traces = false;
  std::string rc_csv;
  rc->add_option("--times", rc_times, "comma-separated physical times");
  rc->add_option("--resolution", rc_resolution, "samples per boundary piece");
  rc->add_flag("--tau-equals-t", rc_tau_eq_t,
               "interpret the times as the rescaled tau instead of t = 2 tau");
  rc->add_flag("--no-traces", rc_no_traces, "omit the endpoint-trace curves");
  rc->add_option("--out-csv", rc_csv, "also dump boundary vertices as CSV");

  // synth
  auto* sy = app.add_subcommand("synth", "minimum-time synthesis report (JSON)");
  CommonArgs sy_args;
  add_common(sy, sy_args);
  std::string sy_target = "swap";
  double sy_lambda = kPi;
  double sy_are = 1.0, sy_aim = 0.0, sy_bre = 0.0, sy_bim = 0.0;
  double sy_tol = 1e-8;
  double sy_tau_max = 0.0;
  bool sy_exact_phase = false;
  int sy_oracle = 96;
  sy->add_option("--target", sy_target, "swap|diagonal|general");
  sy->add_option("--lambda", sy_lambda, "diagonal target angle in [0, 2pi)");
  sy->add_option("--alpha-re", sy_are, "general target Re(alpha)");
  sy->add_option("--alpha-im", sy_aim, "general target Im(alpha)");
  sy->add_option("--beta-re", sy_bre, "general target Re(beta)");
  sy->add_option("--beta-im", sy_bim, "general target Im(beta)");
  sy->add_option("--tol", sy_tol, "bisection tolerance on tau");
  sy->add_option("--tau-max", sy_tau_max, "search horizon (physical time)");
  sy->add_flag("--exact-phase", sy_exact_phase,
               "recover phi for the exact beta phase instead of the class");
  sy->add_option("--oracle-grid", sy_oracle,
                 "brute-force cross-check grid (0 disables)");

  // classify
  auto* cl = app.add_subcommand("classify", "parameter-regime report (JSON)");
  CommonArgs cl_args;
  add_common(cl, cl_args);

  // sweep
  auto* sw = app.add_subcommand("sweep", "asymmetric-vs-symmetric dominance sweep (CSV)");
  CommonArgs sw_args;
  add_common(sw, sw_args);
  int sw_n = 100;
  std::uint64_t sw_seed = 1;
  sw->add_option("--n", sw_n, "number of random instances");
  sw->add_option("--seed", sw_seed, "RNG seed");

  // verify
  auto* vf = app.add_subcommand("verify", "closed-form vs integration residuals (JSON)");
  CommonArgs vf_args;
  add_common(vf, vf_args);
  std::string vf_branch = "zero";
  double vf_omega = 0.0, vf_phi = 0.0, vf_t = 1.0, vf_step = 0.0;
  vf->add_option("--branch", vf_branch, "plus|minus|zero");
  vf->add_option("--omega", vf_omega, "extremal frequency");
  vf->add_option("--phi", vf_phi, "transverse phase");
  vf->add_option("--t", vf_t, "physical time");
  vf->add_option("--step", vf_step, "integrator step (0 = automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fl->parsed()) return cmd_frontline(fl_args, fl_t, fl_samples, fl_branch);
    if (rc->parsed()) {
      return cmd_reachable(rc_args, rc_times, rc_resolution, rc_tau_eq_t,
                           !rc_no_traces, rc_csv);
    }
    if (sy->parsed()) {
      return cmd_synth(sy_args, sy_target, sy_lambda, sy_are, sy_aim, sy_bre,
                       sy_bim, sy_tol, sy_tau_max, sy_exact_phase, sy_oracle);
    }
    if (cl->parsed()) return cmd_classify(cl_args);
    if (sw->parsed()) return cmd_sweep(sw_args, sw_n, sw_seed);
    if (vf->parsed()) {
      return cmd_verify(vf_args, vf_branch, vf_omega, vf_phi, vf_t, vf_step);
    }
  } catch (const EmptyLocusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnreachableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
