// Command-line front end: geodesic evaluation, synthesis queries and the
// sphere/wavefront/caustic/cut-locus samplers with file export.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "sh2geo/expmap.hpp"
#include "sh2geo/kernels.hpp"
#include "sh2geo/mesh_io.hpp"
#include "sh2geo/optimality.hpp"
#include "sh2geo/pendulum.hpp"
#include "sh2geo/sampling.hpp"
#include "sh2geo/synthesis.hpp"
#include "sh2geo/verify.hpp"

namespace {

using namespace sh2geo;

struct GridFlags {
  SampleGrid grid;
  void attach(CLI::App* cmd) {
    cmd->add_option("--n-gamma", grid.n_gamma, "grid points along gamma");
    cmd->add_option("--n-c", grid.n_c, "grid points along c");
    cmd->add_option("--c-max", grid.c_max, "half-width of the c range");
    cmd->add_option("--t-steps", grid.t_steps, "time subdivisions");
    cmd->add_option("--threads", grid.threads, "worker threads (0 = auto)");
  }
};

void print_point(const GroupPoint& q) {
  std::printf("%.17g %.17g %.17g\n", q.x, q.y, q.z);
}

int run(int argc, char** argv) {
  CLI::App app{"Optimal synthesis for the sub-Riemannian structure on SH(2)"};
  app.require_subcommand(1);

  double gamma = 0, c = 0, t = 1, x = 0, y = 0, z = 0;
  double tol = 1e-9, radius = 3.14159265358979323846;
  double extent = 15.0;
  std::string out_path, suite = "all";
  GridFlags gf;

  auto* cexp = app.add_subcommand("exp", "evaluate Exp(lambda, t)");
  cexp->add_option("--gamma", gamma)->required();
  cexp->add_option("--c", c)->required();
  cexp->add_option("--t", t)->required();

  auto* ccut = app.add_subcommand("cut-time", "cut time of a covector");
  ccut->add_option("--gamma", gamma)->required();
  ccut->add_option("--c", c)->required();

  auto* ccls = app.add_subcommand(
      "classify", "stratum of a covector (--gamma/--c) or of a plane point "
      "(--x/--y)");
  ccls->add_option("--gamma", gamma);
  ccls->add_option("--c", c);
  auto* ox = ccls->add_option("--x", x);
  ccls->add_option("--y", y);

  auto* cdist = app.add_subcommand("distance", "sub-Riemannian distance");
  cdist->add_option("--x", x)->required();
  cdist->add_option("--y", y)->required();
  cdist->add_option("--z", z);
  cdist->add_option("--tol", tol);

  auto* csynth = app.add_subcommand("synth", "all minimizers reaching a point");
  csynth->add_option("--x", x)->required();
  csynth->add_option("--y", y)->required();
  csynth->add_option("--z", z);
  csynth->add_option("--tol", tol);

  auto* csph = app.add_subcommand("sphere", "sample a sub-Riemannian sphere");
  csph->add_option("--radius", radius)->required();
  csph->add_option("--out", out_path)->required();
  gf.attach(csph);

  auto* cwav = app.add_subcommand("wavefront", "sample a wavefront");
  cwav->add_option("--radius", radius)->required();
  cwav->add_option("--out", out_path)->required();
  gf.attach(cwav);

  auto* ccau = app.add_subcommand("caustic", "sample the first caustic");
  ccau->add_option("--out", out_path)->required();
  gf.attach(ccau);

  auto* cloc = app.add_subcommand("cutlocus", "sample the cut locus");
  cloc->add_option("--extent", extent, "bounding half-width in x, y");
  cloc->add_option("--out", out_path)->required();
  gf.attach(cloc);

  auto* cver = app.add_subcommand("verify", "run a verification suite");
  cver->add_option("--suite", suite,
                   "elliptic|oracle|symmetry|roundtrip|strata|all");
  cver->add_flag("--json", "emit the report as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (cexp->parsed()) {
    print_point(exp({make_covector(gamma, c), t}));
    return 0;
  }
  if (ccut->parsed()) {
    const double tc = cut_time(make_covector(gamma, c));
    if (tc == kInf)
      std::printf("inf\n");
    else
      std::printf("%.17g\n", tc);
    return 0;
  }
  if (ccls->parsed()) {
    if (ox->count()) {
      const PlaneLabel l = classify_plane(x, y);
      std::printf("M'_%d %s\n", l.index, family_name(l.family));
    } else {
      const StratumTag tag = classify(make_covector(gamma, c));
      std::printf("%s component=%d s1=%d s2=%d E=%.17g\n",
                  stratum_name(tag.stratum), tag.component, tag.s1, tag.s2,
                  energy(make_covector(gamma, c)));
    }
    return 0;
  }
  if (cdist->parsed()) {
    SolverConfig cfg;
    cfg.tol = tol;
    std::printf("%.17g\n", distance({x, y, z}, cfg));
    return 0;
  }
  if (csynth->parsed()) {
    SolverConfig cfg;
    cfg.tol = tol;
    const SynthesisResult res = minimizers({x, y, z}, cfg);
    std::printf("classification %s\ndistance %.17g\nresidual %.3g\n",
                classification_name(res.classification), res.distance,
                res.residual);
    for (const GeodesicSpec& nu : res.minimizers)
      std::printf("minimizer gamma=%.17g c=%.17g t=%.17g\n", nu.lambda.gamma,
                  nu.lambda.c, nu.t);
    return 0;
  }
  if (csph->parsed() || cwav->parsed()) {
    const MeshOutput mesh = csph->parsed() ? sample_sphere(radius, gf.grid)
                                           : sample_wavefront(radius, gf.grid);
    save_mesh(out_path, mesh);
    std::printf("wrote %zu vertices, %zu faces to %s (%zu dropped) [%s kernels]\n",
                mesh.vertices.size(), mesh.faces.size(), out_path.c_str(),
                mesh.dropped,
                kernels::backend_name(kernels::active_backend()));
    return 0;
  }
  if (ccau->parsed()) {
    const MeshOutput mesh = sample_caustic(gf.grid);
    save_mesh(out_path, mesh);
    std::printf("wrote %zu vertices to %s (%zu dropped)\n",
                mesh.vertices.size(), out_path.c_str(), mesh.dropped);
    return 0;
  }
  if (cloc->parsed()) {
    const MeshOutput mesh = sample_cutlocus(extent, gf.grid);
    save_mesh(out_path, mesh);
    std::printf("wrote %zu vertices to %s (%zu dropped)\n",
                mesh.vertices.size(), out_path.c_str(), mesh.dropped);
    return 0;
  }
  if (cver->parsed()) {
    const bool as_json = cver->count("--json") > 0;
    bool all_pass = true;
    for (const CheckReport& r : verify_suite(suite)) {
      all_pass = all_pass && r.pass;
      if (as_json)
        std::printf(
            "{\"name\":\"%s\",\"pass\":%s,\"max_err\":%.17g,\"tol\":%.17g,"
            "\"note\":\"%s\"}\n",
            r.name.c_str(), r.pass ? "true" : "false", r.max_err, r.tol,
            r.note.c_str());
      else
        std::printf("[%s] %-34s max_err=%.3g tol=%.3g %s\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_err,
                    r.tol, r.note.c_str());
    }
    return all_pass ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
