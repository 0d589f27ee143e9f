// Command-line entry point: run cases, convergence tables and single
// Riemann / GRP probes.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "hemogrp/harness.hpp"

using namespace hemogrp;

namespace {

// Splices `key=value` lines of a --config file in as `--key value` right
// after the subcommand name, so that flags given later on the command line
// win. CLI11's own config support does not reach subcommand options.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::vector<std::string> extra;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    extra.push_back("--" + item.name);
    for (const std::string& v : item.inputs) extra.push_back(v);
  }
  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub != args.end()) ++sub;
  args.insert(sub, extra.begin(), extra.end());
  return args;
}

Primitive pair_state(const std::vector<double>& v) {
  return {v.at(0), v.at(1), v.size() > 2 ? v[2] : 0.0};
}

Slopes pair_slope(const std::vector<double>& v) {
  return {v.at(0), v.at(1), v.size() > 2 ? v[2] : 0.0};
}

const std::map<std::string, Scheme> kSchemes{{"grp", Scheme::Grp}, {"godunov", Scheme::Godunov}};
const std::map<std::string, NormKind> kNorms{{"L1", NormKind::L1}, {"Linf", NormKind::Linf}};
const std::map<std::string, StudyMode> kModes{{"time", StudyMode::TimeHalving},
                                              {"mesh", StudyMode::MeshDoubling}};
const std::map<std::string, SonicClosure> kClosures{
    {"axis-drift", SonicClosure::AxisDrift}, {"characteristic", SonicClosure::Characteristic}};

void list_cases(std::ostream& os) {
  os << std::left;
  for (const CaseSpec& c : case_registry()) {
    os << std::setw(10) << c.name << ' ' << c.dimension << "D  [" << c.x_min << ", " << c.x_max
       << "]";
    if (c.dimension == 2) os << "x[" << c.y_min << ", " << c.y_max << "]";
    os << "  t=" << c.t_end << "  cells=" << c.cells << "  k=" << c.k.name()
       << "  reference=" << to_string(c.reference) << "  " << c.title << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order GRP solver for 1D/2D arterial flow"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // run
  RunConfig rc;
  std::string scheme = "grp";
  double t_end = 0.0;
  auto* run = app.add_subcommand("run", "run a case and write snapshot, error and log files");
  run->add_option("--case", rc.case_name, "case name (see list-cases)")->required();
  run->add_option("--scheme", scheme, "grp or godunov")->check(CLI::IsMember(kSchemes));
  run->add_option("--cells", rc.cells, "cells (1D) or cells per direction (2D)");
  run->add_option("--nx", rc.nx, "cells in x (2D)");
  run->add_option("--ny", rc.ny, "cells in y (2D)");
  run->add_option("--cfl", rc.cfl, "CFL number")->capture_default_str();
  run->add_option("--t-end", t_end, "final time (default: the case's)");
  run->add_option("--alpha", rc.alpha, "limiter weight")->capture_default_str();
  run->add_option("--output", rc.output, "output directory (default $HEMOGRP_OUT or ./out)");
  run->add_option("--config", "key=value file; keys are flag names, flags win");

  // convergence
  std::string conv_case = "example1", mode = "time", norm = "Linf", conv_scheme = "grp";
  StudyOptions so;
  double K0 = 0.0;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "time-halving or mesh-doubling error table");
  conv->add_option("--case", conv_case)->capture_default_str();
  conv->add_option("--mode", mode, "time or mesh")->check(CLI::IsMember(kModes))->capture_default_str();
  conv->add_option("--K0", K0, "stiffness level of the manufactured case");
  conv->add_option("--t0", so.t0, "first final time (time) or fixed final time (mesh)")->capture_default_str();
  conv->add_option("--cells", so.cells, "cells for time halving")->capture_default_str();
  conv->add_option("--levels", so.levels, "levels for time halving")->capture_default_str();
  conv->add_option("--meshes", so.meshes, "cell counts for mesh doubling")->delimiter(',');
  conv->add_option("--norm", norm, "L1 or Linf")->check(CLI::IsMember(kNorms))->capture_default_str();
  conv->add_option("--scheme", conv_scheme)->check(CLI::IsMember(kSchemes))->capture_default_str();
  conv->add_option("--cfl", so.cfl)->capture_default_str();
  conv->add_option("--alpha", so.alpha)->capture_default_str();
  conv->add_option("--output", conv_out, "output directory");
  conv->add_option("--config", "key=value file; keys are flag names, flags win");

  // riemann
  std::vector<double> left{3.5, 3.5}, right{2.5, 5.0}, xi;
  double k = 10.0;
  int rays = 0;
  ModelParams params;
  auto* rp = app.add_subcommand("riemann", "exact Riemann solution with frozen stiffness");
  rp->add_option("--left", left, "A,u")->delimiter(',')->expected(2);
  rp->add_option("--right", right, "A,u")->delimiter(',')->expected(2);
  rp->add_option("--k", k, "stiffness")->capture_default_str();
  rp->add_option("--rays", rays, "print this many samples across the wave fan");
  rp->add_option("--xi", xi, "print samples at these x/t")->delimiter(',');

  // grp-probe
  std::vector<double> gl{1.0, 1.0}, gr{1.2, -0.5}, sl{0.0, 0.0}, sr{0.0, 0.0};
  double gk = 10.0, gdk = 0.0;
  std::string closure = "axis-drift";
  auto* probe = app.add_subcommand("grp-probe", "interface time derivatives for linear data");
  probe->add_option("--left", gl, "A,u")->delimiter(',')->expected(2);
  probe->add_option("--right", gr, "A,u")->delimiter(',')->expected(2);
  probe->add_option("--left-slope", sl, "dA/dx,du/dx")->delimiter(',')->expected(2);
  probe->add_option("--right-slope", sr, "dA/dx,du/dx")->delimiter(',')->expected(2);
  probe->add_option("--k", gk)->capture_default_str();
  probe->add_option("--dk", gdk, "dk/dx at the interface")->capture_default_str();
  probe->add_option("--closure", closure)->check(CLI::IsMember(kClosures))->capture_default_str();

  auto* list = app.add_subcommand("list-cases", "list the built-in cases");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*list) {
      list_cases(std::cout);
    } else if (*run) {
      rc.scheme = kSchemes.at(scheme);
      if (run->count("--t-end")) rc.t_end = t_end;
      const RunResult r = hemogrp::run(rc);
      std::cout << "snapshot " << r.snapshot << '\n' << "log " << r.log << '\n';
      if (r.l1) {
        std::cout << std::setprecision(6) << "L1 " << r.l1->value << "  Linf " << r.linf->value
                  << "  (" << r.l1->runtime_s << " s)\n"
                  << "errors " << r.errors << '\n';
      }
    } else if (*conv) {
      CaseSpec spec = find_case(conv_case);
      if (conv->count("--K0")) {
        if (!spec.manufactured) throw std::invalid_argument("--K0 applies to the manufactured case");
        spec.manufactured->K0 = K0;
        spec.k = Manufactured(*spec.manufactured, spec.params).stiffness();
      }
      so.mode = kModes.at(mode);
      so.norm = kNorms.at(norm);
      so.scheme = kSchemes.at(conv_scheme);
      const auto rows = convergence_study(spec, so);
      RunConfig where;
      where.output = conv_out;
      const std::filesystem::path dir = output_dir(where);
      std::filesystem::create_directories(dir);
      std::ostringstream name;
      name << spec.name << "_convergence_" << mode;
      if (spec.manufactured) name << "_K0_" << spec.manufactured->K0;
      const std::filesystem::path file = dir / (name.str() + ".csv");
      std::ofstream os(file);
      write_csv(rows, os);
      write_csv(rows, std::cout);
      std::cout << "written " << file.string() << '\n';
    } else if (*rp) {
      const StarSolution s = solve_star({pair_state(left), pair_state(right), k, params});
      std::cout << std::setprecision(10) << "A* " << s.A_star << "\nu* " << s.u_star << "\nc* "
                << s.c_star << '\n';
      for (const auto& [side, w] : {std::pair{"left", s.left_wave}, std::pair{"right", s.right_wave}})
        std::cout << side << ' ' << to_string(w.kind) << " head " << w.head << " tail " << w.tail
                  << '\n';
      if (rays > 1) {
        const double lo = std::min(s.left_wave.head, s.left_wave.tail);
        const double hi = std::max(s.right_wave.head, s.right_wave.tail);
        const double pad = 0.1 * (hi - lo) + 1e-3;
        for (int n = 0; n < rays; ++n) xi.push_back(lo - pad + (hi - lo + 2 * pad) * n / (rays - 1));
      }
      if (!xi.empty()) {
        std::cout << "xi,A,u\n" << std::setprecision(17);
        for (double x : xi) {
          const Primitive w = sample(s, x);
          std::cout << x << ',' << w.A << ',' << w.u << '\n';
        }
      }
    } else if (*probe) {
      const GrpInput in{pair_state(gl), pair_state(gr), pair_slope(sl), pair_slope(sr), gk, gdk, params};
      const InterfaceRates r = grp_interface(in, kClosures.at(closure));
      std::cout << std::setprecision(10) << "case " << to_string(r.tag) << "\nA " << r.star.A
                << "\nu " << r.star.u << "\ndA/dt " << r.dA_dt << "\ndu/dt " << r.du_dt << '\n';
    }
  } catch (const SolverError& e) {
    std::cerr << "solver error at index " << e.cell() << ": " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
