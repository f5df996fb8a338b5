#pragma once

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "experiments.hpp"
#include "multiplier.hpp"
#include "svg.hpp"

namespace dnls::cli {

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

// Flat "key = value" config file; command-line flags override.  Implemented by
// prepending the file's pairs to the subcommand argument list with take-last
// semantics on every option.
inline std::vector<std::string> load_config_pairs(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string v) {
      const auto a = v.find_first_not_of(" \t\r");
      const auto b = v.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : v.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    out.push_back("--" + key);
    out.push_back(val);
  }
  return out;
}

struct CommonOpts {
  int nmax = 32;
  double dt = 0.0;  // 0: stability default
  double tend = 1.0;
  double amp = 0.1;
  double sigma = 2.0;
  std::uint64_t seed = 1;
  std::string mu_mode = "constant";
  int trunc = -1;
  std::string out;
  std::string svg;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->option_defaults()->take_last();
    cmd->add_option("--nmax", nmax, "Fourier cutoff");
    cmd->add_option("--dt", dt, "time step (0: stability default)");
    cmd->add_option("--tend", tend, "final time");
    cmd->add_option("--amp", amp, "data profile amplitude");
    cmd->add_option("--sigma", sigma, "data profile decay exponent");
    cmd->add_option("--seed", seed, "data profile seed");
    cmd->add_option("--mu-mode", mu_mode, "constant|instant")
        ->check(CLI::IsMember({"constant", "instant"}));
    cmd->add_option("--trunc", trunc, "Galerkin truncation cutoff (-1: off)");
    cmd->add_option("--out", out, "CSV output path");
    cmd->add_option("--svg", svg, "SVG output path");
    cmd->add_option("--config", config, "key = value config file, flags override");
  }

  SpectralProfile profile() const { return {sigma, amp, seed}; }

  SimConfig sim(const SpectralState& u0) const {
    SimConfig cfg;
    cfg.n_max = nmax;
    const double mu0 = mu(u0);
    cfg.dt = dt > 0.0 ? dt : default_dt(nmax, mu0);
    cfg.t_end = tend;
    cfg.mu_mode = mu_mode == "constant" ? MuMode::constant_mu(mu0) : MuMode::instant();
    if (trunc >= 0) cfg.truncation = trunc;
    const long long n_steps = static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    cfg.record_stride = std::max(1, static_cast<int>(n_steps / 512));
    return cfg;
  }
};

inline std::string run_id(const CommonOpts& o) {
  return "s" + std::to_string(o.seed) + "n" + std::to_string(o.nmax);
}

inline int dispatch(const std::string& sub, CommonOpts& o, CLI::App* cmd);

inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"DNLS pseudospectral laboratory"};
  app.require_subcommand(1);

  static const char* subs[] = {"simulate", "converge",   "tail",    "identities",
                               "multiplier", "gauge-check", "conserve"};
  std::map<std::string, CommonOpts> opts;
  std::map<std::string, CLI::App*> cmds;
  for (const char* name : subs) {
    CLI::App* cmd = app.add_subcommand(name);
    opts[name].attach(cmd);
    cmds[name] = cmd;
  }

  // Extra knobs beyond the shared flag set.
  double s_val = 0.45, sprime = 0.45, s_data = 0.6, s1 = 1.0, s1prime = 0.6, p = 3.0;
  std::string levels = "32,64,128,256", ns = "64,128,256,512", cgrid = "1,1.5,2,3,4",
              tails = "";
  int nref = 1024, radius = 50, dmvt_ximax = 512;
  long long rand_count = 100000;
  int rand_ximax = 100;
  for (const char* name : {"simulate", "conserve", "tail", "converge", "multiplier"})
    cmds[name]->add_option("--s", s_val, "Sobolev index for reported norms");
  cmds["converge"]->add_option("--sdata", s_data, "data regularity target s");
  cmds["converge"]->add_option("--sprime", sprime, "error norm index s' < s");
  cmds["converge"]->add_option("--s1", s1, "Fourier-Lebesgue data index");
  cmds["converge"]->add_option("--s1prime", s1prime, "Fourier-Lebesgue error index");
  cmds["converge"]->add_option("--p", p, "Fourier-Lebesgue exponent, 2 < p < 4");
  cmds["converge"]->add_option("--levels", levels, "comma-separated truncation levels");
  cmds["converge"]->add_option("--nref", nref, "reference resolution");
  cmds["tail"]->add_option("--ns", ns, "comma-separated tail cutoffs");
  cmds["tail"]->add_option("--cgrid", cgrid, "comma-separated C grid for the envelope fit");
  cmds["simulate"]->add_option("--s1", s1, "Fourier-Lebesgue index for fl_norm");
  cmds["conserve"]->add_option("--s1", s1, "Fourier-Lebesgue index for fl_norm");
  cmds["simulate"]->add_option("--p", p, "Fourier-Lebesgue exponent");
  cmds["conserve"]->add_option("--p", p, "Fourier-Lebesgue exponent");
  cmds["conserve"]->add_option("--tails", tails, "comma-separated tail cutoffs for extra columns");
  cmds["identities"]->add_option("--radius", radius, "exhaustive scan radius");
  cmds["identities"]->add_option("--rand", rand_count, "random quad count");
  cmds["identities"]->add_option("--ximax", rand_ximax, "random quad coordinate bound");
  cmds["multiplier"]->add_option("--radius", radius, "Gamma4 scan radius");
  cmds["multiplier"]->add_option("--dmvt-ximax", dmvt_ximax, "mean-value scan bound");

  // Config file pass: find --config in the raw args, splice its pairs in
  // right after the subcommand so explicit flags win via take-last.
  for (size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      const auto pairs = load_config_pairs(args[i + 1]);
      args.insert(args.begin() + 1, pairs.begin(), pairs.end());
      break;
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());  // CLI11 vector form
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::flush;
    return 2;
  }

  try {
    for (const char* name : subs)
      if (cmds[name]->parsed()) {
        CommonOpts& o = opts[name];
        CLI::App* cmd = cmds[name];
        const std::string subname = name;

        if (subname == "identities") {
          long long fact_checked = 0, disp_checked = 0;
          for (long long x1 = -radius; x1 <= radius; ++x1)
            for (long long x2 = -radius; x2 <= radius; ++x2)
              for (long long x3 = -radius; x3 <= radius; ++x3) {
                if (!factorization_check(x1, x2, x3)) return 1;
                ++fact_checked;
                const FrequencyQuad q{{x1, x2, x3, -(x1 + x2 + x3)}};
                if (!dispersive_identity_check(q, {0.0, 0.0, 0.0, 0.0})) return 1;
                ++disp_checked;
              }
          std::mt19937_64 rng(12345);
          std::uniform_int_distribution<long long> dist(-rand_ximax, rand_ximax);
          std::uniform_real_distribution<double> rdist(-1.0, 1.0);
          for (long long k = 0; k < rand_count; ++k) {
            const long long x1 = dist(rng), x2 = dist(rng), x3 = dist(rng);
            if (!factorization_check(x1, x2, x3)) return 1;
            const double t1 = rdist(rng), t2 = rdist(rng), t3 = rdist(rng);
            const FrequencyQuad q{{x1, x2, x3, -(x1 + x2 + x3)}};
            if (!dispersive_identity_check(q, {t1, t2, t3, -(t1 + t2 + t3)})) return 1;
            ++fact_checked;
            ++disp_checked;
          }
          std::printf("identities: factorization %lld ok, dispersive %lld ok\n", fact_checked,
                      disp_checked);
          return 0;
        }

        if (subname == "multiplier") {
          CsvTable t;
          t.header = {"case", "s", "radius", "max_ratio", "count", "xi1", "xi2", "xi3", "xi4"};
          const ScanReport rep = bound_ratio_scan(radius, s_val);
          const auto row = [&](const char* cname, const CaseStat& st) {
            t.rows.push_back({cname, format_double(s_val), format_int(radius),
                              format_double(st.max_ratio), format_int(st.count),
                              format_int(st.witness.xi[0]), format_int(st.witness.xi[1]),
                              format_int(st.witness.xi[2]), format_int(st.witness.xi[3])});
          };
          row("case_i", rep.case_i);
          row("case_ii", rep.case_ii);
          row("case_iii", rep.case_iii);
          const DmvtReport dm = dmvt_ratio_scan(s_val, dmvt_ximax);
          t.rows.push_back({"dmvt", format_double(s_val), format_int(dm.xi_max),
                            format_double(dm.max_ratio), format_int(dm.count),
                            format_int(dm.witness.xi[0]), format_int(dm.witness.xi[1]),
                            format_int(dm.witness.xi[2]), "0"});
          if (!o.out.empty()) t.write(o.out);
          std::printf(
              "multiplier: s=%g radius=%d max ratios i=%.6g ii=%.6g iii=%.6g dmvt=%.6g\n", s_val,
              radius, rep.case_i.max_ratio, rep.case_ii.max_ratio, rep.case_iii.max_ratio,
              dm.max_ratio);
          return 0;
        }

        if (subname == "converge") {
          ConvergenceConfig cc;
          cc.profile = {o.sigma, o.amp, o.seed};
          if (!cmd->count("--sigma")) cc.profile.sigma = s_data + 0.5 + 0.05;
          cc.s = s_data;
          cc.s_prime = sprime;
          cc.s1 = s1;
          cc.s1_prime = s1prime;
          cc.p = p;
          cc.levels = parse_int_list(levels);
          cc.n_ref = nref;
          cc.t_end = o.tend;
          cc.dt = o.dt;
          cc.mu_kind = o.mu_mode == "constant" ? MuMode::constant : MuMode::instantaneous;
          const ConvergenceReport rep = convergence_experiment(cc);
          if (!o.out.empty()) convergence_csv(rep).write(o.out);
          if (!o.svg.empty()) {
            SvgSeries se{"err_hs", {}};
            for (const auto& lv : rep.levels) se.points.emplace_back(lv.n, lv.err_hs);
            write_svg_plot(o.svg, "truncation error vs N", {se}, true);
          }
          std::printf("converge: slope=%.4f predicted=%.4f r2=%.4f floor=%.3g%s\n",
                      rep.fitted_slope, rep.predicted_exponent, rep.fit_r2, rep.ref_floor,
                      rep.degenerate ? " (degenerate)" : "");
          return 0;
        }

        if (subname == "tail") {
          TailConfig tc;
          tc.profile = {o.sigma, o.amp, o.seed};
          if (!cmd->count("--sigma")) tc.profile.sigma = s_val + 0.55;
          tc.s = s_val;
          tc.ns = parse_int_list(ns);
          tc.c_grid = parse_double_list(cgrid);
          tc.n_max = o.nmax;
          tc.t_end = o.tend;
          tc.dt = o.dt;
          tc.mu_kind = o.mu_mode == "constant" ? MuMode::constant : MuMode::instantaneous;
          const TailReport rep = tail_experiment(tc);
          if (!o.out.empty()) tail_csv(rep).write(o.out);
          if (!o.svg.empty()) {
            SvgSeries a{"sup_tail", {}}, b{"data_tail", {}};
            for (const auto& r : rep.rows) {
              a.points.emplace_back(r.n, r.sup_tail_hs);
              b.points.emplace_back(r.n, r.data_tail_hs);
            }
            write_svg_plot(o.svg, "tail norms vs N", {a, b}, true);
          }
          std::printf("tail: C=%.3g eps=%.4f rows=%zu\n", rep.fitted_c, rep.fitted_eps,
                      rep.rows.size());
          return 0;
        }

        if (subname == "gauge-check") {
          const SpectralState u0 = random_state(o.profile(), o.nmax);
          SimConfig cfg = o.sim(u0);
          cfg.record_stride = 1;
          std::printf("gauge-check: nmax=%d tend=%g\n", o.nmax, cfg.t_end);
          CsvTable t;
          t.header = {"dt", "max_residual"};
          double prev = 0.0;
          for (int halvings = 0; halvings < 3; ++halvings) {
            const Trajectory traj = evolve(u0, cfg);
            const std::vector<double> res = dnls_residual(traj, cfg.mu_mode);
            double mx = 0.0;
            for (double r : res) mx = std::max(mx, r);
            t.rows.push_back({format_double(cfg.dt), format_double(mx)});
            if (halvings > 0)
              std::printf("  dt=%-10.3g max residual=%.6g ratio=%.3f\n", cfg.dt, mx, prev / mx);
            else
              std::printf("  dt=%-10.3g max residual=%.6g\n", cfg.dt, mx);
            prev = mx;
            cfg.dt *= 0.5;
          }
          if (!o.out.empty()) t.write(o.out);
          return 0;
        }

        // simulate / conserve
        SpectralState u0 = random_state(o.profile(), o.nmax);
        if (o.trunc >= 0) u0 = project(u0, band_le(o.trunc));
        const SimConfig cfg = o.sim(u0);
        Trajectory traj = evolve(u0, cfg);
        traj.provenance = o.profile().describe();
        traj.seed = o.seed;
        ConservationConfig cc;
        cc.s = s_val;
        cc.s1 = s1;
        cc.p = p;
        if (subname == "conserve" && !tails.empty()) cc.tail_ns = parse_int_list(tails);
        const std::vector<ConservationRow> rows = conservation_experiment(traj, cc);
        if (!o.out.empty()) {
          (subname == "simulate" ? simulate_csv(run_id(o), rows) : conserve_csv(rows, cc.tail_ns))
              .write(o.out);
        }
        if (!o.svg.empty()) {
          SvgSeries m{"mass", {}}, e{"energy", {}}, pm{"momentum", {}};
          for (const auto& r : rows) {
            m.points.emplace_back(r.t, r.mass);
            e.points.emplace_back(r.t, r.energy);
            pm.points.emplace_back(r.t, r.momentum);
          }
          write_svg_plot(o.svg, "conserved quantities", {m, e, pm}, false);
        }
        const ConservationRow& last = rows.back();
        const ConservationRow& first = rows.front();
        std::printf("%s: frames=%zu dt=%.3g M drift=%.3g E drift=%.3g P drift=%.3g\n",
                    subname.c_str(), rows.size(), cfg.dt,
                    std::abs(last.mass - first.mass) / std::max(1e-300, std::abs(first.mass)),
                    std::abs(last.energy - first.energy) / std::max(1e-300, std::abs(first.energy)),
                    std::abs(last.momentum - first.momentum) /
                        std::max(1e-300, std::abs(first.momentum)));
        return 0;
      }
  } catch (const divergence_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// argv form; argv[0] is the program name and is dropped.
inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args));
}

}  // namespace dnls::cli
