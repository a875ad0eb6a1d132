#include "spherepack/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "spherepack/axis.hpp"
#include "spherepack/cohn_elkies.hpp"
#include "spherepack/error.hpp"
#include "spherepack/forms.hpp"
#include "spherepack/lattice.hpp"
#include "spherepack/magic.hpp"
#include "spherepack/modular.hpp"
#include "spherepack/packing.hpp"

namespace spherepack::cli {

using nlohmann::ordered_json;

namespace {

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

struct RunConfig {
  int series_order = 50;
  double eta_min = 0.5;
  double tol = 1e-12;
  QuadratureConfig quadrature;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string format = "json";
  long max_norm2 = 8;
  double radius = 5.0;
  std::uint64_t samples = 2'000'000;
  std::optional<Grid> grid;
  std::string convention = "sweighted";
  std::vector<double> r;
  std::string form;
  std::vector<double> tau;
  std::vector<double> point;
  std::string which = "G";
};

Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || !in.eof() || g.n < 1 || g.hi < g.lo) {
    throw Error(ErrorKind::Config, "grid must look like lo:hi:n, got '" + s + "'");
  }
  return g;
}

std::string grid_string(const Grid& g) {
  std::ostringstream o;
  o.precision(17);
  o << g.lo << ':' << g.hi << ':' << g.n;
  return o.str();
}

std::vector<double> linear_points(const Grid& g) {
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.n - 1);
  return v;
}

template <class T>
void take(const ordered_json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

void check_keys(const ordered_json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::Config, where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(ErrorKind::Config, "unknown config key '" + k + "' in " + where);
  }
}

void load_config(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  }
  check_keys(j,
             {"series_order", "eta_min", "tol", "quadrature", "seed", "threads", "format", "max_norm2", "radius",
              "samples", "grid", "convention", "r", "form", "tau", "point", "which"},
             "config");
  try {
    take(j, "series_order", c.series_order);
    take(j, "eta_min", c.eta_min);
    take(j, "tol", c.tol);
    if (j.contains("quadrature")) {
      const auto& q = j.at("quadrature");
      check_keys(q, {"gauss_order", "panels_per_segment", "ray_truncation", "tail_tol"}, "quadrature");
      take(q, "gauss_order", c.quadrature.gauss_order);
      take(q, "panels_per_segment", c.quadrature.panels_per_segment);
      take(q, "ray_truncation", c.quadrature.ray_truncation);
      take(q, "tail_tol", c.quadrature.tail_tol);
    }
    take(j, "seed", c.seed);
    take(j, "threads", c.threads);
    take(j, "format", c.format);
    take(j, "max_norm2", c.max_norm2);
    take(j, "radius", c.radius);
    take(j, "samples", c.samples);
    if (j.contains("grid")) c.grid = parse_grid(j.at("grid").get<std::string>());
    take(j, "convention", c.convention);
    if (j.contains("r")) {
      c.r = j.at("r").is_array() ? j.at("r").get<std::vector<double>>() : std::vector<double>{j.at("r").get<double>()};
    }
    take(j, "form", c.form);
    take(j, "tau", c.tau);
    take(j, "point", c.point);
    take(j, "which", c.which);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad config value: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  if (c.series_order < 2) throw Error(ErrorKind::Config, "series_order must be >= 2");
  if (!(c.eta_min > 0.0)) throw Error(ErrorKind::Config, "eta_min must be positive");
  if (!(c.tol > 0.0)) throw Error(ErrorKind::Config, "tol must be positive");
  c.quadrature.validate();
  if (c.format != "json" && c.format != "csv") throw Error(ErrorKind::Config, "format must be json or csv");
  if (c.max_norm2 < 0) throw Error(ErrorKind::Config, "max_norm2 must be >= 0");
  if (!(c.radius > 0.0)) throw Error(ErrorKind::Config, "radius must be positive");
  if (c.samples < 1) throw Error(ErrorKind::Config, "samples must be >= 1");
  convention_from_string(c.convention);
  radial_kind_from_string(c.which);
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["series_order"] = c.series_order;
  j["eta_min"] = c.eta_min;
  j["tol"] = c.tol;
  j["quadrature"] = {{"gauss_order", c.quadrature.gauss_order},
                     {"panels_per_segment", c.quadrature.panels_per_segment},
                     {"ray_truncation", c.quadrature.ray_truncation},
                     {"tail_tol", c.quadrature.tail_tol}};
  j["seed"] = c.seed;
  j["threads"] = c.threads ? c.threads : default_thread_count();
  j["format"] = c.format;
  j["max_norm2"] = c.max_norm2;
  j["radius"] = c.radius;
  j["samples"] = c.samples;
  j["grid"] = c.grid ? ordered_json(grid_string(*c.grid)) : ordered_json(nullptr);
  j["convention"] = c.convention;
  j["r"] = c.r;
  j["form"] = c.form;
  j["tau"] = c.tau;
  j["point"] = c.point;
  j["which"] = c.which;
  return j;
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

struct Outcome {
  ordered_json results = ordered_json::object();
  bool pass = true;
  // CSV body: header row first
  std::vector<std::vector<std::string>> table;
};

std::string num(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

FormsConfig forms_config(const RunConfig& c) { return {c.series_order, c.eta_min, c.tol}; }

// ---------------------------------------------------------------------------

Outcome cmd_forms_eval(const RunConfig& c) {
  const FormLibrary forms(forms_config(c));
  const std::vector<double> tau = c.tau.empty() ? std::vector<double>{0.0, 1.0} : c.tau;
  if (tau.size() != 2) throw Error(ErrorKind::Config, "tau needs two numbers re,im");
  const HalfPlanePoint p(tau[0], tau[1]);
  std::vector<FormId> ids;
  if (c.form.empty()) {
    ids.assign(all_forms().begin(), all_forms().end());
  } else {
    ids.push_back(form_from_string(c.form));
  }
  Outcome o;
  o.results["tau"] = tau;
  o.results["values"] = ordered_json::array();
  o.table.push_back({"form", "re", "im"});
  for (FormId id : ids) {
    const Complex v = forms.eval(id, p);
    o.results["values"].push_back({{"form", std::string(to_string(id))}, {"value", complex_json(v)}});
    o.table.push_back({std::string(to_string(id)), num(v.real()), num(v.imag())});
  }
  return o;
}

Outcome cmd_forms_identities(const RunConfig& c) {
  const int n = c.series_order;
  const auto ram = check_ramanujan(n);
  const auto jac = jacobi_residual_qseries(8 * n);
  const auto d1 = delta_qseries(n);
  const auto d2 = delta_eta_product_qseries(n);
  int mismatches = 0;
  for (int k = 0; k <= n; ++k)
    if (d1.coeff(k) != d2.coeff(k)) ++mismatches;
  Outcome o;
  o.results["order"] = n;
  o.results["ramanujan"] = {{"e2_zero", ram.e2.is_zero()}, {"e4_zero", ram.e4.is_zero()}, {"e6_zero", ram.e6.is_zero()}};
  o.results["jacobi_zero"] = jac.is_zero();
  o.results["delta_eta_mismatches"] = mismatches;
  o.pass = ram.all_zero() && jac.is_zero() && mismatches == 0;
  o.table = {{"identity", "zero"},
             {"ramanujan", ram.all_zero() ? "true" : "false"},
             {"jacobi", jac.is_zero() ? "true" : "false"},
             {"delta_eta", mismatches == 0 ? "true" : "false"}};
  return o;
}

Outcome cmd_lattice_shells(const RunConfig& c) {
  const auto shells = enumerate_shells(c.max_norm2, false);
  const auto e4 = eisenstein_qseries(4, static_cast<int>(c.max_norm2 / 2));
  Outcome o;
  o.results["max_norm2"] = c.max_norm2;
  o.results["shells"] = ordered_json::array();
  o.table.push_back({"norm2", "count"});
  bool agree = true;
  std::size_t next = 0;
  for (long m = 1; 2 * m <= c.max_norm2; ++m) {
    const std::uint64_t count = next < shells.size() && shells[next].norm2 == 2 * m ? shells[next++].count : 0;
    agree = agree && mpz_class(std::to_string(count)) == e4.coeff(static_cast<int>(m));
  }
  for (const auto& s : shells) {
    o.results["shells"].push_back({{"norm2", s.norm2}, {"count", s.count}});
    o.table.push_back({std::to_string(s.norm2), std::to_string(s.count)});
    agree = agree && s.norm2 % 2 == 0;
  }
  o.results["matches_e4"] = agree;
  o.pass = agree;
  return o;
}

Outcome cmd_lattice_decode(const RunConfig& c) {
  if (c.point.size() != 8) throw Error(ErrorKind::Config, "point needs 8 coordinates");
  std::array<double, 8> y{};
  std::copy(c.point.begin(), c.point.end(), y.begin());
  const auto d = nearest_point(y);
  Outcome o;
  o.results["point"] = c.point;
  o.results["nearest"] = d.point.coords();
  o.results["distance"] = d.distance;
  o.results["member"] = e8_membership(d.point);
  o.pass = e8_membership(d.point);
  o.table = {{"key", "value"}, {"distance", num(d.distance)}};
  return o;
}

Outcome cmd_lattice_info(const RunConfig&) {
  const auto b = e8_basis();
  const mpq_class det = basis_determinant(b);
  const auto gram = gram_matrix(b);
  bool members = true;
  bool even = true;
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 8; ++i) {
    members = members && e8_membership(b.rows[i]);
    even = even && gram[i][i].get_den() == 1 && gram[i][i].get_num() % 2 == 0;
    rows.push_back(b.rows[i].coords());
  }
  Outcome o;
  o.results["basis"] = rows;
  o.results["determinant"] = det.get_str();
  o.results["covolume"] = covolume();
  o.results["rows_in_lattice"] = members;
  o.results["gram_diagonal_even"] = even;
  o.results["min_norm"] = min_norm();
  o.pass = members && even && abs(det) == 1;
  o.table = {{"key", "value"}, {"determinant", det.get_str()}, {"min_norm", num(min_norm())}};
  return o;
}

Outcome cmd_packing_density(const RunConfig&) {
  const double d = periodic_density(e8_packing());
  const double target = e8_density_target();
  Outcome o;
  o.results["density"] = d;
  o.results["target"] = target;
  o.results["abs_error"] = std::abs(d - target);
  o.pass = std::abs(d - target) < 1e-12;
  o.table = {{"key", "value"}, {"density", num(d)}, {"target", num(target)}};
  return o;
}

Outcome cmd_packing_mc(const RunConfig& c) {
  MonteCarloConfig mc{c.radius, c.samples, c.seed, c.threads};
  const auto e = finite_density_mc(e8_packing(), mc);
  const double target = e8_density_target();
  const double dev = std::abs(e.value - target);
  Outcome o;
  o.results["value"] = e.value;
  o.results["stderr"] = e.std_error;
  o.results["hits"] = e.hits;
  o.results["samples"] = e.samples;
  o.results["seed"] = e.seed;
  o.results["radius"] = e.radius;
  o.results["target"] = target;
  o.results["relative_deviation"] = dev / target;
  o.results["sigmas"] = e.std_error > 0 ? dev / e.std_error : 0.0;
  o.pass = dev <= 0.05 * target && dev <= 3.0 * e.std_error;
  o.table = {{"key", "value"}, {"value", num(e.value)}, {"stderr", num(e.std_error)}, {"target", num(target)}};
  return o;
}

Outcome cmd_magic_eval(const RunConfig& c) {
  const MagicFunction m(c.quadrature, forms_config(c));
  const std::vector<double> rs = c.r.empty() ? std::vector<double>{0.0} : c.r;
  Outcome o;
  o.results["values"] = ordered_json::array();
  o.table.push_back({"r", "a_im", "b_im", "g", "g_hat"});
  for (double r : rs) {
    const Complex a = m.eval_a(r);
    const Complex b = m.eval_b(r);
    ordered_json e = {{"r", r},
                      {"a", complex_json(a)},
                      {"b", complex_json(b)},
                      {"g", m.eval_g(r)},
                      {"g_hat", m.eval_g_hat(r)}};
    if (r >= std::sqrt(2.0)) {
      e["a_propagated"] = complex_json(m.eval_a_propagated(r));
      e["b_propagated"] = complex_json(m.eval_b_propagated(r));
    }
    o.results["values"].push_back(e);
    o.table.push_back({num(r), num(a.imag()), num(b.imag()), num(m.eval_g(r)), num(m.eval_g_hat(r))});
  }
  return o;
}

Outcome cmd_magic_table(const RunConfig& c) {
  const MagicFunction m(c.quadrature, forms_config(c));
  const Grid g = c.grid.value_or(Grid{0.0, 6.0, 121});
  const auto radii = linear_points(g);
  const auto table = m.tabulate_radial(radial_kind_from_string(c.which), radii, c.threads);
  Outcome o;
  o.results["which"] = c.which;
  o.results["radii"] = table.radii;
  o.results["values"] = table.values;
  o.table.push_back({"r", "value"});
  for (std::size_t i = 0; i < radii.size(); ++i) o.table.push_back({num(table.radii[i]), num(table.values[i])});
  return o;
}

Outcome cmd_magic_verify(const RunConfig& c) {
  const MagicFunction m(c.quadrature, forms_config(c));
  const double a0 = std::abs(m.a0());
  Outcome o;
  bool pass = true;

  ordered_json rep = ordered_json::array();
  for (double r : {1.5, 2.0, 3.0}) {
    const double da = std::abs(m.eval_a(r) - m.eval_a_propagated(r)) / a0;
    const double db = std::abs(m.eval_b(r) - m.eval_b_propagated(r)) / a0;
    rep.push_back({{"r", r}, {"a_rel_diff", da}, {"b_rel_diff", db}});
    pass = pass && da < 1e-6 && db < 1e-6;
  }
  o.results["representations"] = rep;

  ordered_json dz = ordered_json::array();
  const double g0 = std::abs(m.g0());
  for (int n = 1; n <= 3; ++n) {
    const double r = std::sqrt(2.0 * n);
    const double h = 1e-4;
    const double v = m.eval_g(r);
    const double slope = (m.eval_g(r + h) - m.eval_g(r - h)) / (2 * h);
    dz.push_back({{"n", n}, {"g", v}, {"slope", slope}});
    pass = pass && std::abs(v) < 1e-6 * g0 && std::abs(slope) < 1e-3 * g0;
  }
  o.results["double_zeroes"] = dz;

  o.results["b0_over_a0"] = std::abs(m.b0()) / a0;
  pass = pass && std::abs(m.b0()) < 1e-6 * a0;

  const auto radii = linear_points(Grid{0.0, 8.0, 801});
  const auto ta = m.tabulate_radial(RadialKind::A, radii, c.threads);
  const auto tb = m.tabulate_radial(RadialKind::B, radii, c.threads);
  ordered_json eig = ordered_json::array();
  for (double r : {0.8, 1.3}) {
    const double a = m.eval_a(r).imag();
    const double b = m.eval_b(r).imag();
    const double ha = hankel8(ta, r);
    const double hb = hankel8(tb, r);
    const double ea = std::abs(ha - a) / std::abs(a);
    const double eb = std::abs(hb + b) / std::abs(b);
    eig.push_back({{"r", r}, {"hankel_a", ha}, {"a", a}, {"hankel_b", hb}, {"minus_b", -b}, {"a_rel_err", ea},
                   {"b_rel_err", eb}});
    pass = pass && ea < 0.01 && eb < 0.01;
  }
  o.results["eigenfunctions"] = eig;
  o.pass = pass;
  o.table = {{"key", "value"}, {"pass", pass ? "true" : "false"}};
  return o;
}

ordered_json ce_json(const CEReport& r) {
  return {{"g0", r.g0},
          {"ghat0", r.ghat0},
          {"ce1_pass", r.ce1_pass},
          {"ce2_max_violation", r.ce2_max_violation},
          {"ce2_argmax", r.ce2_argmax},
          {"ce3_min_value", r.ce3_min_value},
          {"ce3_argmin", r.ce3_argmin},
          {"tol", r.tol},
          {"grid_points", r.grid.size()},
          {"pass", r.pass}};
}

Outcome cmd_bound(const RunConfig& c) {
  const MagicFunction m(c.quadrature, forms_config(c));
  const auto grid = default_ce_grid();
  CEOptions opts;
  opts.threads = c.threads;
  const auto g = [&](double r) { return m.eval_g(r); };
  const auto gh = [&](double r) { return m.eval_g_hat(r); };
  const CEReport ce = verify_ce(g, gh, grid, opts);
  const CEReport swapped = verify_ce(gh, g, grid, opts);
  const double bound = rescaled_bound(m.g0(), m.g_hat0());
  const double target = e8_density_target();
  Outcome o;
  o.results["g0"] = m.g0();
  o.results["ghat0"] = m.g_hat0();
  o.results["bound"] = bound;
  o.results["target"] = target;
  o.results["abs_error"] = std::abs(bound - target);
  o.results["ce_conditions"] = ce_json(ce);
  o.results["ce_conditions_transform_pair"] = ce_json(swapped);
  o.pass = std::abs(bound - target) < 1e-6;
  o.table = {{"key", "value"}, {"bound", num(bound)}, {"target", num(target)}};
  return o;
}

ordered_json inequality_json(const InequalityReport& r) {
  return {{"convention", std::string(to_string(r.convention))},
          {"samples", r.samples},
          {"min_plus", r.min_plus},
          {"argmin_plus", r.argmin_plus},
          {"min_minus", r.min_minus},
          {"argmin_minus", r.argmin_minus},
          {"refined", r.refined},
          {"pass", r.pass}};
}

Outcome cmd_axis_check(const RunConfig& c) {
  const FormLibrary forms(forms_config(c));
  const Grid g = c.grid.value_or(Grid{0.05, 20.0, 400});
  if (!(g.lo > 0.0)) throw Error(ErrorKind::Config, "axis grid must be positive");
  const auto ts = log_grid(g.lo, g.hi, g.n);
  const KernelConvention selected = convention_from_string(c.convention);
  Outcome o;
  o.results["selected"] = c.convention;
  o.results["conventions"] = ordered_json::array();
  o.table.push_back({"convention", "min_plus", "argmin_plus", "min_minus", "argmin_minus", "pass"});
  for (KernelConvention k : {KernelConvention::Direct, KernelConvention::STransformedWeighted}) {
    const auto r = verify_inequalities(forms, ts, k);
    o.results["conventions"].push_back(inequality_json(r));
    o.table.push_back({std::string(to_string(k)), num(r.min_plus), num(r.argmin_plus), num(r.min_minus),
                       num(r.argmin_minus), r.pass ? "true" : "false"});
    if (k == selected) o.pass = r.pass;
  }
  o.results["phi0_realness"] = check_realness(forms, FormId::Phi0, ts);
  o.results["psiS_realness"] = check_realness(forms, FormId::PsiS, ts);
  return o;
}

void write_csv(std::ostream& out, const Outcome& o) {
  for (const auto& row : o.table) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for the E8 sphere packing certificate", "spherepack"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<int> order;
  std::optional<long> max_norm2;
  std::optional<double> radius;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> grid;
  std::optional<std::string> convention;
  std::vector<double> r;
  std::optional<std::string> form;
  std::vector<double> tau;
  std::vector<double> point;
  std::optional<std::string> which;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "write the report to FILE");
  app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("--order", order, "q-series order");
  app.add_option("--max-norm2", max_norm2, "largest squared norm to enumerate");
  app.add_option("--radius", radius, "Monte-Carlo ball radius");
  app.add_option("--samples", samples, "Monte-Carlo samples");
  app.add_option("--grid", grid, "lo:hi:n");
  app.add_option("--convention", convention, "direct|sweighted")->check(CLI::IsMember({"direct", "sweighted"}));
  app.add_option("--r", r, "radii")->delimiter(',');
  app.add_option("--form", form, "form name");
  app.add_option("--tau", tau, "re,im")->delimiter(',');
  app.add_option("--point", point, "8 comma-separated coordinates")->delimiter(',');
  app.add_option("--which", which, "A|B|G|GHat");

  std::string command;
  std::function<Outcome(const RunConfig&)> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  std::function<Outcome(const RunConfig&)> f) {
    auto* sub = parent->add_subcommand(name, desc);
    sub->callback([&command, &action, parent, name, f] {
      command = parent->get_name() == "spherepack" ? name : parent->get_name() + " " + name;
      action = f;
    });
  };
  auto* forms = app.add_subcommand("forms", "modular form series")->require_subcommand(1);
  leaf(forms, "eval", "evaluate forms at --tau", cmd_forms_eval);
  leaf(forms, "identities", "exact series identities", cmd_forms_identities);
  auto* lattice = app.add_subcommand("lattice", "E8 lattice")->require_subcommand(1);
  leaf(lattice, "shells", "shell counts up to --max-norm2", cmd_lattice_shells);
  leaf(lattice, "decode", "nearest lattice point to --point", cmd_lattice_decode);
  leaf(lattice, "info", "basis, determinant, minimal norm", cmd_lattice_info);
  auto* packing = app.add_subcommand("packing", "packing density")->require_subcommand(1);
  leaf(packing, "density", "closed-form E8 density", cmd_packing_density);
  leaf(packing, "mc", "Monte-Carlo finite density", cmd_packing_mc);
  auto* magic = app.add_subcommand("magic", "eigenfunctions a, b and g")->require_subcommand(1);
  leaf(magic, "eval", "a, b, g, g_hat at --r", cmd_magic_eval);
  leaf(magic, "table", "radial table over --grid", cmd_magic_table);
  leaf(magic, "verify", "representation, double-zero and eigenfunction checks", cmd_magic_verify);
  leaf(&app, "bound", "Cohn-Elkies bound and conditions", cmd_bound);
  auto* axis = app.add_subcommand("axis", "imaginary-axis inequalities")->require_subcommand(1);
  leaf(axis, "check", "sign of phi0 +- (36/pi^2) psi_S", cmd_axis_check);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) load_config(config_path, cfg);
    if (format) cfg.format = *format;
    if (seed) cfg.seed = *seed;
    if (threads) {
      cfg.threads = *threads;
    }
    if (order) cfg.series_order = *order;
    if (max_norm2) cfg.max_norm2 = *max_norm2;
    if (radius) cfg.radius = *radius;
    if (samples) cfg.samples = *samples;
    if (grid) cfg.grid = parse_grid(*grid);
    if (convention) cfg.convention = *convention;
    if (!r.empty()) cfg.r = r;
    if (form) cfg.form = *form;
    if (!tau.empty()) cfg.tau = tau;
    if (!point.empty()) cfg.point = point;
    if (which) cfg.which = *which;
    validate(cfg);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action(cfg);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "cannot write " << out_path << "\n";
      return 2;
    }
    sink = &file;
  }
  if (cfg.format == "csv") {
    write_csv(*sink, outcome);
  } else {
    ordered_json env;
    env["command"] = command;
    env["config"] = config_json(cfg);
    env["results"] = outcome.results;
    env["pass"] = outcome.pass;
    env["wall_time_ms"] = ms;
    *sink << env.dump(2) << '\n';
  }
  return outcome.pass ? 0 : 1;
}

}  // namespace spherepack::cli
