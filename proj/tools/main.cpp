#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathregret/errors.hpp"
#include "pathregret/generator.hpp"
#include "pathregret/io.hpp"
#include "pathregret/oracle.hpp"
#include "pathregret/parametric.hpp"
#include "pathregret/regret.hpp"

namespace pr = pathregret;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCheckFailed = 4;

double phi_from_analysis(const pr::Network& net, const pr::Analysis& a, double x,
                         double t) {
  const pr::SinkLocation loc = pr::locate(net, x);
  const int n = net.vertex_count();
  if (loc.kind == pr::SinkLocation::Kind::vertex) {
    const int i = loc.index;
    double v = net.tau() * net.position(i) *
               (net.prefix_weight(0, i - 1) - net.prefix_weight(i + 1, n - 1))(t);
    if (i > 0) v += a.F_left[i - 1](t);
    if (i < n - 1) v += a.F_right[i](t);
    return v;
  }
  const int e = loc.index;
  return net.tau() * x *
             (net.prefix_weight(0, e) - net.prefix_weight(e + 1, n - 1))(t) +
         a.F_left[e](t) + a.F_right[e](t);
}

int cmd_solve(const std::string& path, const std::string& out_path) {
  const pr::Network net(pr::load_instance(path));
  const pr::SolveResult result = pr::solve(net);
  const nlohmann::json j = pr::result_to_json(net, result);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sample(const std::string& path, const std::string& what, int resolution) {
  const pr::Network net(pr::load_instance(path));
  const pr::Analysis a = pr::analyze(net);
  const pr::Interval T = net.horizon();
  const double L = net.total_length();

  if (what == "mr") {
    for (int k = 0; k < resolution; ++k) {
      const double x = resolution == 1 ? 0.0 : L * k / (resolution - 1);
      std::printf("%.12g,%.12g\n", x, pr::max_regret_at(net, a, x));
    }
  } else if (what == "opt") {
    for (int k = 0; k < resolution; ++k) {
      const double t = resolution == 1 ? T.lo : T.lo + T.width() * k / (resolution - 1);
      std::printf("%.12g,%.12g\n", t, a.opt(t));
    }
  } else {  // phi at the mid-horizon scenario
    const double t = T.mid();
    for (int k = 0; k < resolution; ++k) {
      const double x = resolution == 1 ? 0.0 : L * k / (resolution - 1);
      std::printf("%.12g,%.12g,%.12g\n", x, t, phi_from_analysis(net, a, x, t));
    }
  }
  return 0;
}

int cmd_check(const std::string& path, uint64_t seed, int samples) {
  const pr::Network net(pr::load_instance(path));
  const pr::Analysis a = pr::analyze(net);
  const pr::Interval T = net.horizon();

  if (samples == 0) {
    std::printf("warning: no samples drawn; all checks vacuously pass\n");
    std::printf("overall: PASS\n");
    return 0;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(T.lo, T.hi);
  std::uniform_real_distribution<double> ux(0.0, net.total_length());
  std::uniform_int_distribution<int> ue(0, net.edge_count() - 1);
  std::uniform_int_distribution<int> us(0, 1);

  struct Worst {
    double err = 0.0;
    std::string where;
  };
  Worst wf, wo, wm;

  for (int k = 0; k < samples; ++k) {
    const int e = ue(rng);
    const pr::Side side = us(rng) ? pr::Side::right : pr::Side::left;
    const double t = ut(rng);
    const auto& F = side == pr::Side::left ? a.F_left[e] : a.F_right[e];
    const double err = pr::rel_err(F(t), pr::oracle_side_integral(net, e, side, t));
    if (err > wf.err) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "edge=%d side=%c t=%.12g", e,
                    side == pr::Side::left ? 'L' : 'R', t);
      wf = {err, buf};
    }
  }
  for (int k = 0; k < samples; ++k) {
    const double t = ut(rng);
    const double err = pr::rel_err(a.opt(t), pr::oracle_opt(net, t));
    if (err > wo.err) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "t=%.12g", t);
      wo = {err, buf};
    }
  }
  for (int k = 0; k < samples; ++k) {
    const double x = ux(rng);
    const double err =
        pr::rel_err(pr::max_regret_at(net, a, x), pr::oracle_max_regret(net, x, 10000, 40));
    if (err > wm.err) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "x=%.12g", x);
      wm = {err, buf};
    }
  }

  const double tol_f = 1e-7, tol_opt = 1e-7, tol_mr = 1e-4;
  const bool ok_f = wf.err <= tol_f, ok_o = wo.err <= tol_opt, ok_m = wm.err <= tol_mr;
  std::printf("check side-integral: max_rel_err=%.3e tol=%.0e worst(%s) %s\n", wf.err,
              tol_f, wf.where.c_str(), ok_f ? "PASS" : "FAIL");
  std::printf("check opt:           max_rel_err=%.3e tol=%.0e worst(%s) %s\n", wo.err,
              tol_opt, wo.where.c_str(), ok_o ? "PASS" : "FAIL");
  std::printf("check max-regret:    max_rel_err=%.3e tol=%.0e worst(%s) %s\n", wm.err,
              tol_mr, wm.where.c_str(), ok_m ? "PASS" : "FAIL");
  const bool ok = ok_f && ok_o && ok_m;
  std::printf("overall: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : kExitCheckFailed;
}

int cmd_bench(int n, const std::string& mode, int trials, uint64_t seed) {
  std::printf("n,mode,trial,max_pieces_f,pieces_opt,max_pieces_mr,ms_f,ms_opt,ms_edges,ms_total\n");
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + static_cast<uint64_t>(trial));
    pr::GeneratorOptions opt;
    opt.n = n;
    opt.uniform_capacity = (mode == "uniform");
    const pr::Network net(pr::random_instance(rng, opt));

    using clock = std::chrono::steady_clock;
    const auto ms_since = [](clock::time_point a, clock::time_point b) {
      return std::chrono::duration<double, std::milli>(b - a).count();
    };

    const auto t0 = clock::now();
    std::vector<pr::PiecewisePoly> fl(net.edge_count()), fr(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) {
      fl[e] = pr::side_integral(net, e, pr::Side::left);
      fr[e] = pr::side_integral(net, e, pr::Side::right);
    }
    const auto t1 = clock::now();
    const pr::PiecewisePoly optf = pr::min_aggregate(net, fl, fr);
    const auto t2 = clock::now();
    int max_mr = 0;
    for (int e = 0; e < net.edge_count(); ++e) {
      const pr::EdgeRegret er = pr::build_edge_regret(net, e, fl[e], fr[e], optf);
      max_mr = std::max(max_mr, er.envelope.piece_count());
    }
    for (int i = 0; i < net.vertex_count(); ++i)
      pr::max_regret_at_vertex(net, i, i > 0 ? &fl[i - 1] : nullptr,
                               i < net.vertex_count() - 1 ? &fr[i] : nullptr, optf);
    const auto t3 = clock::now();

    int max_f = 0;
    for (int e = 0; e < net.edge_count(); ++e)
      max_f = std::max({max_f, fl[e].piece_count(), fr[e].piece_count()});

    std::printf("%d,%s,%d,%d,%d,%d,%.3f,%.3f,%.3f,%.3f\n", n, mode.c_str(), trial,
                max_f, optf.piece_count(), max_mr, ms_since(t0, t1), ms_since(t1, t2),
                ms_since(t2, t3), ms_since(t0, t3));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minmax-regret sink location on dynamic flow path networks"};
  app.require_subcommand(1);

  std::string path, out_path, what = "mr", mode = "random";
  int resolution = 100, samples = 200, n = 10, trials = 1;
  uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "compute the optimal sink for an instance");
  solve->add_option("file", path, "instance JSON file")->required();
  solve->add_option("-o,--output", out_path, "write the result JSON here");

  auto* sample = app.add_subcommand("sample", "emit CSV samples of mr, opt or phi");
  sample->add_option("file", path, "instance JSON file")->required();
  sample->add_option("--what", what, "mr | opt | phi")
      ->check(CLI::IsMember({"mr", "opt", "phi"}));
  sample->add_option("--resolution", resolution, "number of rows")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "cross-check the pipeline against oracles");
  check->add_option("file", path, "instance JSON file")->required();
  check->add_option("--seed", seed, "RNG seed");
  check->add_option("--samples", samples, "samples per check")
      ->check(CLI::NonNegativeNumber);

  auto* bench = app.add_subcommand("bench", "random-instance timing and piece counts");
  bench->add_option("--n", n, "vertex count")->check(CLI::Range(2, 1 << 20));
  bench->add_option("--capacity-mode", mode, "uniform | random")
      ->check(CLI::IsMember({"uniform", "random"}));
  bench->add_option("--trials", trials, "instances to run")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(path, out_path);
    if (sample->parsed()) return cmd_sample(path, what, resolution);
    if (check->parsed()) return cmd_check(path, seed, samples);
    return cmd_bench(n, mode, trials, seed);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed instance: " << e.what() << "\n";
    return kExitParse;
  } catch (const pr::ValidationError& e) {
    std::cerr << "error: invalid instance: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pr::NumericError& e) {
    std::cerr << "error: numeric breakdown: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
