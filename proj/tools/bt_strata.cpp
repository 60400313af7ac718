// bt-strata: lattice-model computations for the basic locus of a unitary
// moduli space: vertex-lattice enumeration, Bruhat-Tits strata, finite flag
// counts, and special-cycle intersection numbers.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "btstrata/chi.hpp"
#include "btstrata/graph.hpp"
#include "btstrata/selftest.hpp"

using namespace bts;

namespace {

// exit codes: 0 ok, 2 usage, 3 budget, 4 precision, 5 internal invariant
constexpr int kUsage = 2, kBudget = 3, kPrecision = 4, kInternal = 5;

struct CommonOpts {
  std::uint32_t p = 3;
  int f = 1, n = 3, h = 1, precision = 32, window = 1, level = 1;
  std::string kind = "auto";
  unsigned long long budget = 1ull << 39;
  unsigned long long seed = 12345;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  std::string out_path;
  std::string format = "json";
};

FormKind parse_kind(const std::string& s) {
  if (s == "tI") return FormKind::TI;
  if (s == "tJ") return FormKind::TJ;
  if (s == "auto") return FormKind::Custom;
  throw CLI::ValidationError("--kind must be tI, tJ, or auto");
}

void write_out(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty() || o.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw std::runtime_error("cannot open output path " + o.out_path);
  f << text;
}

nlohmann::json config_json(const CommonOpts& o) {
  return {{"p", o.p},           {"f", o.f},         {"n", o.n},
          {"h", o.h},           {"kind", o.kind},   {"precision", o.precision},
          {"window", o.window}, {"level", o.level}, {"budget", o.budget},
          {"seed", o.seed},     {"jobs", o.jobs}};
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_tower = true) {
  if (with_tower) {
    cmd->add_option("--p", o.p, "odd residue characteristic")->envname("BT_STRATA_P");
    cmd->add_option("--f", o.f, "inertia degree (q = p^f)")->envname("BT_STRATA_F");
    cmd->add_option("--precision", o.precision, "pi-adic digit budget")
        ->envname("BT_STRATA_PRECISION");
  }
  cmd->add_option("--budget", o.budget, "enumeration work budget")->envname("BT_STRATA_BUDGET");
  cmd->add_option("--jobs", o.jobs, "worker threads")->envname("BT_STRATA_JOBS");
  cmd->add_option("--seed", o.seed, "seed for sampled suites")->envname("BT_STRATA_SEED");
  cmd->add_option("--out", o.out_path, "output path (default stdout)");
}

void prime_power_split(long q, std::uint32_t& p, int& f) {
  if (q < 2) throw CLI::ValidationError("q must be a prime power");
  for (std::uint32_t cand = 2; (long)cand * cand <= q; ++cand)
    if (q % cand == 0) {
      long t = q;
      f = 0;
      while (t % cand == 0) {
        t /= cand;
        ++f;
      }
      if (t != 1) throw CLI::ValidationError("q must be a prime power");
      p = cand;
      return;
    }
  p = static_cast<std::uint32_t>(q);
  f = 1;
}

std::vector<long> parse_vals(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stol(item));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bt-strata: strata, flag counts, and intersection numbers"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  CommonOpts o;

  auto sub = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print usage");
    return cmd;
  };

  auto* cmd_vl = sub("vertex-lattices", "enumerate vertex lattices in a window");
  add_common(cmd_vl, o);
  cmd_vl->add_option("--n", o.n, "space dimension");
  cmd_vl->add_option("--h", o.h, "parahoric invariant");
  cmd_vl->add_option("--kind", o.kind, "form kind: tI, tJ, auto");
  cmd_vl->add_option("--window", o.window, "enumeration window");
  cmd_vl->add_option("--format", o.format, "json or csv");

  auto* cmd_graph = sub("strata-graph", "build the stratification graph");
  add_common(cmd_graph, o);
  cmd_graph->add_option("--n", o.n, "space dimension");
  cmd_graph->add_option("--h", o.h, "parahoric invariant");
  cmd_graph->add_option("--kind", o.kind, "form kind: tI, tJ, auto");
  cmd_graph->add_option("--window", o.window, "enumeration window");
  cmd_graph->add_option("--level", o.level, "finite level m");
  cmd_graph->add_option("--format", o.format, "dot, json, or csv");

  long q_arg = 3;
  int t_arg = 3, cls_arg = 0;
  auto* cmd_count = sub("dl-count", "count flags of a closed stratum");
  add_common(cmd_count, o, false);
  cmd_count->add_option("--q", q_arg, "residue size q (prime power)")->required();
  cmd_count->add_option("--t", t_arg, "vertex lattice type (= space dimension)")->required();
  cmd_count->add_option("--n", o.n, "ambient dimension");
  cmd_count->add_option("--h", o.h, "parahoric invariant");
  cmd_count->add_option("--class", cls_arg, "vertex lattice class (0 or 1)");
  cmd_count->add_option("--level", o.level, "finite level m");

  auto* cmd_dim = sub("dl-dim", "stratum dimension from the Weyl datum");
  cmd_dim->add_option("--t", t_arg, "vertex lattice type")->required();
  cmd_dim->add_option("--n", o.n, "ambient dimension");
  cmd_dim->add_option("--h", o.h, "parahoric invariant");
  cmd_dim->add_option("--class", cls_arg, "vertex lattice class (0 or 1)");

  std::string point_path;
  auto* cmd_classify = sub("classify-point", "classify a lattice pair");
  add_common(cmd_classify, o);
  cmd_classify->add_option("--point", point_path, "point file (JSON)")->required();
  cmd_classify->add_option("--n", o.n, "ambient dimension");
  cmd_classify->add_option("--h", o.h, "parahoric invariant");
  cmd_classify->add_option("--kind", o.kind, "form kind: tI, tJ, auto");

  std::string lattice_path;
  auto* cmd_pts = sub("stratum-points", "points of a closed stratum");
  add_common(cmd_pts, o);
  cmd_pts->add_option("--lattice", lattice_path, "vertex lattice file (JSON)")->required();
  cmd_pts->add_option("--n", o.n, "ambient dimension");
  cmd_pts->add_option("--h", o.h, "parahoric invariant");
  cmd_pts->add_option("--kind", o.kind, "form kind: tI, tJ, auto");
  cmd_pts->add_option("--level", o.level, "finite level m");

  std::string xvals_s, yvals_s, batch_path;
  auto* cmd_chi = sub("intersect-chi", "special-cycle intersection numbers");
  add_common(cmd_chi, o, false);
  cmd_chi->add_option("--n", o.n, "number of special homomorphisms");
  cmd_chi->add_option("--h", o.h, "parahoric invariant");
  cmd_chi->add_option("--q", q_arg, "residue size q");
  cmd_chi->add_option("--xvals", xvals_s, "comma-separated x valuations");
  cmd_chi->add_option("--yvals", yvals_s, "comma-separated y valuations");
  cmd_chi->add_option("--batch", batch_path, "CSV of profiles: n,h,q,x;x;...,y;y;...");

  bool quick = false;
  auto* cmd_self = sub("selftest", "run the property suite");
  add_common(cmd_self, o, false);
  cmd_self->add_flag("--quick", quick, "reduced scales");

  CLI11_PARSE(app, argc, argv);
  if (o.jobs < 1) o.jobs = 1;

  try {
    Budget budget(o.budget);
    if (cmd_vl->parsed()) {
      StratumContext ctx =
          StratumContext::make(o.p, o.f, o.n, o.h, 1, o.precision, parse_kind(o.kind));
      auto vertices = enumerate_vertex_lattices(ctx.space_e, o.n, o.h, o.window, budget);
      if (o.format == "csv") {
        std::ostringstream os;
        os << "# config: " << config_json(o).dump() << "\n";
        os << "class,type,sign,basis\n";
        for (const auto& v : vertices)
          os << v.cls << "," << v.type << "," << sign_name(v.sign) << ",\""
             << v.lat.compact_text() << "\"\n";
        write_out(o, os.str());
      } else {
        nlohmann::json j;
        j["config"] = config_json(o);
        j["vertex_lattices"] = nlohmann::json::array();
        for (const auto& v : vertices) j["vertex_lattices"].push_back(v.to_json());
        write_out(o, j.dump(2) + "\n");
      }
    } else if (cmd_graph->parsed()) {
      StratumContext ctx =
          StratumContext::make(o.p, o.f, o.n, o.h, o.level, o.precision, parse_kind(o.kind));
      StrataGraph g = build_graph(ctx, o.window, budget);
      write_out(o, export_graph(g, o.format));
    } else if (cmd_count->parsed()) {
      std::uint32_t p;
      int f;
      prime_power_split(q_arg, p, f);
      auto V = FiniteHermitianSpace::standard(p, f, t_arg, cls_arg);
      int h_eff = (cls_arg == 0) ? o.h : o.n - o.h;
      DlCounts c = count_points(V, h_eff, o.level, budget, o.jobs);
      nlohmann::json j;
      j["config"] = config_json(o);
      j["config"]["q"] = q_arg;
      j["config"]["t"] = t_arg;
      j["config"]["class"] = cls_arg;
      j["closed"] = c.closed;
      j["open_id"] = c.open_id;
      j["open_w"] = c.open_w;
      j["dim"] = dimension_weyl(stratum_weyl_datum(t_arg, h_eff).datum);
      write_out(o, j.dump(2) + "\n");
    } else if (cmd_dim->parsed()) {
      int h_eff = (cls_arg == 0) ? o.h : o.n - o.h;
      std::cout << dimension_weyl(stratum_weyl_datum(t_arg, h_eff).datum) << "\n";
    } else if (cmd_classify->parsed()) {
      std::ifstream in(point_path);
      if (!in) throw std::runtime_error("cannot read " + point_path);
      nlohmann::json pj = nlohmann::json::parse(in);
      int n = pj.value("n", o.n), h = pj.value("h", o.h), m = pj.value("level", o.level);
      StratumPoint pt = StratumPoint::from_json(pj);
      const TowerField& T = *pt.A.field();
      StratumContext ctx =
          StratumContext::make(T.p(), T.f(), n, h, m, T.precision(), parse_kind(o.kind));
      nlohmann::json j;
      j["config"] = config_json(o);
      PointCheck chk = is_point(ctx, pt);
      j["is_point"] = chk.ok;
      if (!chk.ok) j["violation"] = chk.violation;
      if (chk.ok) {
        nlohmann::json verdicts = nlohmann::json::array();
        for (const auto& v : classify(ctx, pt))
          verdicts.push_back({{"case", v.cls == 0 ? "L0" : "L1"},
                              {"type", v.type},
                              {"sign", sign_name(v.sign)},
                              {"depth_c", v.depth_c},
                              {"depth_d", v.depth_d},
                              {"witness", v.witness.to_json()}});
        j["verdicts"] = std::move(verdicts);
      }
      write_out(o, j.dump(2) + "\n");
    } else if (cmd_pts->parsed()) {
      std::ifstream in(lattice_path);
      if (!in) throw std::runtime_error("cannot read " + lattice_path);
      nlohmann::json lj = nlohmann::json::parse(in);
      Lattice lat = Lattice::from_json(lj.contains("lattice") ? lj.at("lattice") : lj);
      const TowerField& E = *lat.field();
      StratumContext ctx = StratumContext::make(E.p(), E.f(), o.n, o.h, o.level,
                                                E.precision(), parse_kind(o.kind));
      VertexInfo info = classify_vertex(lat, ctx.space_e, o.n, o.h);
      int cls = lj.value("class", info.is_vertex[0] ? 0 : 1);
      if (cls < 0 || cls > 1 || !info.is_vertex[cls])
        throw std::invalid_argument("not a vertex lattice of the requested class");
      VertexLattice v{lat, cls, info.type[cls], info.sign[cls]};
      VertexChart chart = make_chart(ctx, v);
      nlohmann::json j;
      j["config"] = config_json(o);
      j["vertex"] = v.to_json();
      j["points"] = nlohmann::json::array();
      for (const auto& pt : stratum_points(ctx, chart, budget))
        j["points"].push_back(pt.to_json(ctx));
      write_out(o, j.dump(2) + "\n");
    } else if (cmd_chi->parsed()) {
      if (!batch_path.empty()) {
        std::ifstream in(batch_path);
        if (!in) throw std::runtime_error("cannot read " + batch_path);
        std::ostringstream os;
        os << "n,h,q,xvals,yvals,case,core_a,core_b,chi\n";
        std::string line;
        while (std::getline(in, line)) {
          if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
          std::stringstream ss(line);
          std::string nf, hf, qf, xf, yf;
          std::getline(ss, nf, ',');
          std::getline(ss, hf, ',');
          std::getline(ss, qf, ',');
          std::getline(ss, xf, ',');
          std::getline(ss, yf, ',');
          std::string xs = xf, ys = yf;
          std::replace(xs.begin(), xs.end(), ';', ',');
          std::replace(ys.begin(), ys.end(), ';', ',');
          IntersectionProblem prob;
          prob.n = std::stoi(nf);
          prob.h = std::stoi(hf);
          prob.q = mpz_class(qf);
          prob.xvals = parse_vals(xs);
          prob.yvals = parse_vals(ys);
          auto red = reduce_problem(prob);
          if (std::holds_alternative<std::string>(red)) {
            os << prob.n << "," << prob.h << "," << prob.q.get_str() << "," << xf << ","
               << yf << ",unsupported,,,\n";
          } else {
            const auto& r = std::get<Reduction>(red);
            os << prob.n << "," << prob.h << "," << prob.q.get_str() << "," << xf << ","
               << yf << "," << r.core_case << "," << r.a << "," << r.b << ","
               << chi(prob).str() << "\n";
          }
        }
        write_out(o, os.str());
      } else {
        IntersectionProblem prob;
        prob.n = o.n;
        prob.h = o.h;
        prob.q = q_arg;
        prob.xvals = parse_vals(xvals_s);
        prob.yvals = parse_vals(yvals_s);
        nlohmann::json j = chi_report(prob);
        j["config"] = config_json(o);
        j["config"]["q"] = q_arg;
        write_out(o, j.dump(2) + "\n");
      }
    } else if (cmd_self->parsed()) {
      std::ostringstream os;
      int failures = run_selftest(quick, os, o.seed, o.jobs);
      write_out(o, os.str());
      return failures == 0 ? 0 : 1;
    }
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << " (raise --budget or shrink --window)\n";
    return kBudget;
  } catch (const precision_error& e) {
    std::cerr << "precision error: " << e.what() << " (raise --precision)\n";
    return kPrecision;
  } catch (const invariant_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
