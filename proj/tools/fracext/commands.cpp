#include "commands.hpp"

#include "fracext/acceptance.hpp"
#include "fracext/convolution.hpp"
#include "fracext/dimension.hpp"
#include "fracext/error.hpp"
#include "fracext/extension.hpp"
#include "fracext/knapp.hpp"
#include "fracext/oracle.hpp"
#include "fracext/region.hpp"

#include <iostream>
#include <limits>

namespace fracext::cli {

namespace {

// Config block for one command; missing keys fall back to defaults.
class Cfg {
 public:
  Cfg(Json j, std::string path) : j_(std::move(j)), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_.empty() ? "/" : path_, "expected an object");
  }
  const Json& raw() const { return j_; }
  bool has(const std::string& k) const { return j_.contains(k); }
  std::string at(const std::string& k) const { return path_ + "/" + k; }

  double num(const std::string& k, double def) const { return has(k) ? number_at(j_[k], at(k)) : def; }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    if (!j_[k].is_number_integer()) throw SchemaError(at(k), "expected an integer");
    return j_[k].get<int>();
  }
  std::vector<double> nums(const std::string& k, std::vector<double> def) const {
    if (!has(k)) return def;
    if (!j_[k].is_array()) throw SchemaError(at(k), "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j_[k].size(); ++i) out.push_back(number_at(j_[k][i], at(k) + "/" + std::to_string(i)));
    return out;
  }
  std::vector<int> ints(const std::string& k, std::vector<int> def) const {
    if (!has(k)) return def;
    if (!j_[k].is_array()) throw SchemaError(at(k), "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j_[k].size(); ++i) {
      if (!j_[k][i].is_number_integer()) throw SchemaError(at(k) + "/" + std::to_string(i), "expected an integer");
      out.push_back(j_[k][i].get<int>());
    }
    return out;
  }
  Cfg sub(const std::string& k, Json def) const { return has(k) ? Cfg(j_[k], at(k)) : Cfg(std::move(def), at(k)); }

 private:
  Json j_;
  std::string path_;
};

const Json kCantorIfs = {{"maps", {{{"ratio", "1/3"}, {"translation", "0"}}, {{"ratio", "1/3"}, {"translation", "2/3"}}}},
                         {"probs", {"1/2", "1/2"}}};
const Json kKnapp = {{"alphas", {0.4, 0.4}}, {"betas", {0.4, 0.4}}, {"epsilon", 1}, {"n_max", 4}, {"seed", 0}};

struct Context {
  const Options& opts;
  Cfg cfg;
  std::uint64_t seed;
  Json report = Json::object();

  std::filesystem::path file(const std::string& name) const { return opts.out / name; }
  void write(const std::string& name, const std::string& text) const { write_text(file(name), text); }
  void write_json(const std::string& name, const Json& j) const { write(name, j.dump(2) + "\n"); }
};

DiscreteMeasure ifs_measure(const Context& c, const Cfg& cfg) {
  const auto ifs = ifs_from_json(cfg.has("ifs") ? cfg.raw()["ifs"] : kCantorIfs, cfg.at("ifs"));
  return build_self_similar(ifs, cfg.integer("depth", 8), c.opts.cap_atoms);
}

FrequencyGrid grid_from(const Cfg& cfg, double radius, double step) {
  const auto g = cfg.sub("grid", Json::object());
  return FrequencyGrid(g.num("radius", radius), g.num("step", step));
}

KnappParams knapp_from(const Context& c) {
  auto p = knapp_params_from_json(c.cfg.has("knapp") ? c.cfg.raw()["knapp"] : kKnapp, c.cfg.at("knapp"));
  if (c.opts.seed || c.cfg.has("seed")) p.seed = c.seed;
  return p;
}

Json measure_json(const DiscreteMeasure& m) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({to_string(m.positions()[i]), m.weights()[i]});
  return {{"kind", m.kind() == MeasureKind::Block ? "block" : "atomic"},
          {"block_width", to_string(m.block_width())},
          {"total_mass", m.total_mass()},
          {"atoms", atoms}};
}

int measure_cmd(Context& c, const std::string& action) {
  const auto ifs = ifs_from_json(c.cfg.has("ifs") ? c.cfg.raw()["ifs"] : kCantorIfs, c.cfg.at("ifs"));
  const auto m = ifs_measure(c, c.cfg);
  if (action == "build") {
    c.report = {{"separation", to_string(check_separation(ifs))}, {"atoms", m.size()}};
    c.write_json("measure.json", measure_json(m));
  } else if (action == "dims") {
    std::vector<double> probs;
    for (const auto& p : ifs.probs()) probs.push_back(to_double(p));
    Json lq = Json::object();
    if (ifs.homogeneous() && check_separation(ifs) != Separation::Unverified)
      for (double q : c.cfg.nums("q", {0.0, 1.0, 2.0, 4.0}))
        lq[std::to_string(q)] = lq_dimension_homogeneous(probs, to_double(ifs.maps()[0].ratio), q);
    const auto radii = c.cfg.nums("radii", {1.0 / 9, 1.0 / 27, 1.0 / 81, 1.0 / 243});
    const auto fit = frostman_fit(m, radii);
    std::vector<Rational> deltas;
    if (c.cfg.has("deltas")) {
      for (std::size_t i = 0; i < c.cfg.raw()["deltas"].size(); ++i)
        deltas.push_back(rational_at(c.cfg.raw()["deltas"][i], c.cfg.at("deltas") + "/" + std::to_string(i)));
    } else {
      for (int j = 1; j <= 6; ++j) deltas.push_back(Rational(1, static_cast<int>(std::pow(3, j))));
    }
    const auto boxes = box_counts(m, deltas);
    Json energy = Json::object();
    for (double s : c.cfg.nums("energy_s", {0.5})) energy[std::to_string(s)] = energy_integral(m, s);
    c.report = {{"lq_dimension", lq},
                {"frostman", {{"upper_exponent", fit.upper_exponent}, {"lower_exponent", fit.lower_exponent}}},
                {"energy", energy}};
    c.write("box_counts.csv", box_counts_csv(boxes));
  } else {
    const auto fit =
        fourier_decay_fit(m, c.cfg.num("xi_min", 1.0), c.cfg.num("xi_max", 1e3), c.cfg.integer("samples", 1000));
    c.report = {{"exponent", fit.exponent}, {"constant", fit.constant}, {"sup_product", fit.sup_product}};
    c.write("decay.csv", decay_csv(fit));
  }
  c.write_json(action + ".json", c.report);
  return 0;
}

int extend_cmd(Context& c, const std::string& action) {
  if (action == "norm") {
    const auto m = ifs_measure(c, c.cfg);
    const auto g = grid_from(c.cfg, 64.0, 1.0 / 16);
    const auto vals = extension_transform(m, {}, g.points());
    std::vector<double> mod;
    for (const auto& v : vals) mod.push_back(std::abs(v));
    const double q = c.cfg.num("q", 4.0);
    c.report = {{"q", q}, {"norm", lq_freq_norm(mod, q, g)}, {"R", g.radius()}, {"step", g.step()}};
    c.write("transform.csv", transform_csv(g.points(), vals));
  } else {
    std::vector<DiscreteMeasure> ms;
    if (c.cfg.has("measures")) {
      const auto& arr = c.cfg.raw()["measures"];
      if (!arr.is_array()) throw SchemaError(c.cfg.at("measures"), "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) ms.push_back(ifs_measure(c, Cfg(arr[i], c.cfg.at("measures") + "/" + std::to_string(i))));
    } else {
      ms = {ifs_measure(c, c.cfg), ifs_measure(c, c.cfg)};
    }
    const auto g = grid_from(c.cfg, 64.0, 1.0 / 16);
    const double p = c.cfg.num("p", 2.0), q = c.cfg.num("q", 4.0);
    c.report = {{"p", p}, {"q", q}, {"ratio", multilinear_ratio(ms, {}, p, q, g)}};
  }
  c.write_json(action + ".json", c.report);
  return 0;
}

int convolve_cmd(Context& c, const std::string& action) {
  const auto exps = c.cfg.nums("exponents", {0.6, 0.6});
  if (action == "run") {
    const int cells = c.cfg.integer("cells", 1 << 12);
    std::vector<DiscreteMeasure> ms;
    for (double a : exps) ms.push_back(discretize_power_density({a}, cells));
    const auto d = convolve_grid(ms, cells);
    std::string csv = "x,density\n";
    char buf[64];
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", d.centre(i), d.values[i]);
      csv += buf;
    }
    c.write("density.csv", csv);
    c.report = {{"cells", cells}, {"mass", d.mass()}, {"cell_width", d.cell_width}};
    c.write_json("run.json", c.report);
  } else {
    std::vector<Theorem31Level> levels;
    for (int cells : c.cfg.ints("cells", {1 << 10, 1 << 11, 1 << 12})) {
      Theorem31Level lv{{}, cells};
      for (double a : exps) lv.measures.push_back(discretize_power_density({a}, cells));
      levels.push_back(std::move(lv));
    }
    const auto rep = verify_theorem31(levels, c.cfg.num("p", 2.0), c.cfg.num("q", 4.0), c.cfg.integer("trials", 64),
                                      c.seed, grid_from(c.cfg, 64.0, 0.125));
    c.report = theorem31_to_json(rep);
    c.write_json("thm31.json", c.report);
  }
  return 0;
}

int knapp_cmd(Context& c, const std::string& action) {
  const auto params = knapp_from(c);
  const auto fam = build_family(params);
  if (action == "build") {
    c.write_json("family.json", family_to_json(fam));
    c.report = {{"depth", fam.depth()}, {"attempts", fam.attempts}, {"n0", fam.n0}};
  } else if (action == "validate") {
    const int N = c.cfg.integer("level", fam.depth());
    const auto v = validate_family(fam, N, c.cfg.num("xi_min", 1.0), c.cfg.num("xi_max", 1e3), c.cfg.integer("samples", 1000));
    Json per = Json::array();
    for (const auto& m : v.per_measure)
      per.push_back({{"upper_constant", m.ball.upper_constant},
                     {"lower_constant", m.ball.lower_constant},
                     {"intervals", m.ball.intervals},
                     {"decay_sup_product", m.decay_sup_product},
                     {"ball_ok", m.ball_ok},
                     {"decay_ok", m.decay_ok}});
    c.report = {{"level", v.level}, {"ok", v.ok}, {"measures", per}};
    c.write_json("validation.json", c.report);
  } else {
    const double p = c.cfg.num("p", 2.0);
    const int r = default_r(fam);
    Json rows = Json::array();
    for (double q : c.cfg.nums("q", {2.0, 4.0})) {
      Json inv = Json::array();
      for (int ell = 0; ell <= fam.depth(); ++ell) inv.push_back(gamma_bound(fam, ell, q, p, r).inverse);
      rows.push_back({{"q", q}, {"gamma_inverse", inv}});
    }
    c.report = {{"p", p}, {"r", r}, {"note", "modulo constant"}, {"trend", rows}};
    c.write_json("ratio_trend.json", c.report);
  }
  return 0;
}

int oracle_cmd(Context& c, const std::string& action) {
  if (action == "count") {
    std::vector<std::vector<std::int64_t>> sets;
    if (c.cfg.has("sets")) {
      const auto& arr = c.cfg.raw()["sets"];
      if (!arr.is_array()) throw SchemaError(c.cfg.at("sets"), "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = c.cfg.at("sets") + "/" + std::to_string(i);
        if (!arr[i].is_array()) throw SchemaError(p, "expected an array of integers");
        std::vector<std::int64_t> s;
        for (std::size_t j = 0; j < arr[i].size(); ++j) {
          if (!arr[i][j].is_number_integer()) throw SchemaError(p + "/" + std::to_string(j), "expected an integer");
          s.push_back(arr[i][j].get<std::int64_t>());
        }
        sets.push_back(std::move(s));
      }
    } else {
      sets = {{0, 1, 2}, {0, 3}};
    }
    const auto h = g_histogram(sets, c.cfg.integer("r", 1));
    c.write("histogram.csv", histogram_csv(h));
    c.report = {{"count_solutions", to_string(count_solutions(h))},
                {"cs_lower_bound", to_string(cs_lower_bound(h))},
                {"support", h.support_size()}};
    c.write_json("count.json", c.report);
  } else {
    const auto fam = build_family(knapp_from(c));
    const int N = c.cfg.integer("N", fam.depth());
    const double Psi = double(fam.Psi(std::clamp(N, 0, fam.depth())));
    const auto rep = norm_identity_check(fam, c.cfg.integer("ell", 1), N, c.cfg.integer("r", 1), grid_from(c.cfg, 4 * Psi, 0.125));
    c.report = identity_to_json(rep);
    c.write_json("identity.json", c.report);
  }
  return 0;
}

int regions_cmd(Context& c) {
  const auto a = c.cfg.nums("alphas", {0.4, 0.4});
  const auto b = c.cfg.nums("betas", a);
  const double d = c.cfg.num("d", 1.0);
  std::vector<RegionBoundary> bs{thm32(a, b), thm34(a), trainor(d, c.cfg.nums("gammas", a)),
                                 top_lid(d, c.cfg.nums("box_dims", a))};
  std::vector<double> grid;
  if (c.cfg.has("p_grid")) grid = c.cfg.nums("p_grid", {});
  const auto rep = region_report(bs, grid, a, b);
  c.write("region.csv", region_csv(rep));
  c.write("region.svg", region_svg(bs));
  Json rows = Json::array();
  for (const auto& r : rep.containment)
    rows.push_back({{"p", r.p}, {"thm32", r.thm32}, {"trainor", r.trainor}, {"contains", r.contains}, {"visible", r.visible}});
  c.report = {{"containment_holds", rep.containment_holds},
              {"sum_alpha_below_one", rep.sum_alpha_below_one},
              {"gap", {rep.gap_lo, rep.gap_hi}},
              {"gap_nonempty", rep.gap_nonempty},
              {"flags", rep.flags},
              {"containment", rows}};
  c.write_json("region.json", c.report);
  return 0;
}

int accept_cmd(Context& c) {
  Json rows = Json::array();
  bool all = true;
  const auto results = run_acceptance(c.cfg.integer("only", 0), [](const CriterionResult& r) {
    std::cout << format_line(r) << std::endl;
  });
  for (const auto& r : results) {
    all = all && r.pass;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  c.report = {{"all_pass", all}, {"criteria", rows}};
  c.write_json("acceptance.json", c.report);
  return all ? 0 : 1;
}

}  // namespace

int run(const std::string& group, const std::string& action, const Options& opts) {
  Json cfg = opts.config ? read_json_file(*opts.config) : Json::object();
  std::uint64_t seed = 0;
  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer()) throw SchemaError("/seed", "expected an unsigned integer");
    seed = cfg["seed"].get<std::uint64_t>();
  }
  if (opts.seed) seed = *opts.seed;
  Context c{opts, Cfg(cfg, ""), seed};
  std::filesystem::create_directories(opts.out);
  const std::string command = action.empty() ? group : group + " " + action;
  // the manifest goes first so failed runs still record their inputs
  c.write_json("manifest.json", manifest(command, cfg, seed));

  int code = 0;
  if (group == "measure") code = measure_cmd(c, action);
  else if (group == "extend") code = extend_cmd(c, action);
  else if (group == "convolve") code = convolve_cmd(c, action);
  else if (group == "knapp") code = knapp_cmd(c, action);
  else if (group == "oracle") code = oracle_cmd(c, action);
  else if (group == "regions") code = regions_cmd(c);
  else if (group == "accept") code = accept_cmd(c);
  else throw InvalidArgument("unknown command " + command);
  std::cout << c.report.dump(2) << std::endl;
  return code;
}

}  // namespace fracext::cli
