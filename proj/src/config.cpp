#include "iwave/config.hpp"

#include <fstream>

#include "iwave/errors.hpp"

namespace iwave {

namespace {

std::vector<std::string> default_coords(int dim) {
  if (dim == 1) return {"x"};
  if (dim == 2) return {"x", "y"};
  if (dim == 3) return {"x", "y", "z"};
  std::vector<std::string> c;
  for (int i = 0; i < dim; ++i) c.push_back("x" + std::to_string(i + 1));
  return c;
}

Vec to_vec(const Json& j, const std::string& key, int dim) {
  if (!j.is_array())
    throw ConfigError("config: " + key + " must be an array");
  if (dim >= 0 && static_cast<int>(j.size()) != dim)
    throw ConfigError("config: " + key + " has dimension " +
                      std::to_string(j.size()) + ", manifold has " +
                      std::to_string(dim));
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

// Sets j at a dotted path like "integrator.rel_tol" from a string value.
void apply_override(Json& j, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like key.path=value: " + assignment);
  std::string path = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);
  Json* node = &j;
  std::size_t pos = 0;
  for (;;) {
    auto dot = path.find('.', pos);
    std::string key = path.substr(pos, dot - pos);
    if (key.empty()) throw ConfigError("override: empty key in " + assignment);
    if (dot == std::string::npos) {
      Json parsed = Json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? Json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

}  // namespace

std::vector<TestFunction> ScenarioConfig::phis() const {
  std::vector<TestFunction> out;
  for (const auto& p : test_functions) {
    if (p.expr == "bump") {
      out.push_back(bump_test_function(p.lo, p.hi));
    } else {
      Expr e = Expr::parse(p.expr, {"u"});
      TestFunction phi;
      phi.label = p.expr;
      phi.lo = p.lo;
      phi.hi = p.hi;
      phi.phi = [e, lo = p.lo, hi = p.hi](double u) {
        if (u <= lo || u >= hi) return 0.0;
        double val[1] = {u};
        return e.eval(val);
      };
      out.push_back(std::move(phi));
    }
  }
  return out;
}

ScenarioConfig load_config(const Json& j) {
  ScenarioConfig cfg;
  try {
    cfg.scenario = j.value("scenario", std::string("scenario"));

    // Manifold.
    if (!j.contains("manifold")) throw ConfigError("config: missing manifold");
    const Json& m = j.at("manifold");
    if (m.is_string()) {
      cfg.manifold = make_builtin_manifold(m.get<std::string>());
      cfg.coords = default_coords(cfg.manifold->dim());
      if (m.get<std::string>() == "sphere") cfg.coords = {"theta", "phi"};
    } else if (m.is_object()) {
      if (!m.contains("coords") || !m.contains("metric"))
        throw ConfigError("config: manifold.coords and manifold.metric required");
      cfg.coords = m.at("coords").get<std::vector<std::string>>();
      auto metric = m.at("metric").get<std::vector<std::vector<std::string>>>();
      cfg.manifold = make_custom_manifold(m.value("name", std::string("custom")),
                                          cfg.coords, metric,
                                          m.value("fd_step", 1e-5));
    } else {
      throw ConfigError("config: manifold must be a name or an object");
    }
    const int dim = cfg.manifold->dim();

    // Profile.
    if (j.contains("profile") && !j.at("profile").is_null() &&
        j.at("profile").get<std::string>() != "0")
      cfg.profile =
          WaveProfile::from_expression(j.at("profile").get<std::string>(), cfg.coords);
    else
      cfg.profile = WaveProfile::zero(dim);

    cfg.net_name = j.value("net", std::string("bump"));
    make_family(cfg.net_name);  // validates the name (non-examples included)

    // Data.
    if (!j.contains("data")) throw ConfigError("config: missing data");
    const Json& d = j.at("data");
    cfg.data.v0 = d.value("v0", 0.0);
    cfg.data.vdot0 = d.value("vdot0", 0.0);
    if (!d.contains("x0")) throw ConfigError("config: missing data.x0");
    cfg.data.x0 = to_vec(d.at("x0"), "data.x0", dim);
    if (!d.contains("xdot0")) throw ConfigError("config: missing data.xdot0");
    cfg.data.xdot0 = to_vec(d.at("xdot0"), "data.xdot0", dim);
    cfg.data.u0 = d.value("u0", -1.0);
    if (!cfg.manifold->in_domain(cfg.data.x0))
      throw ConfigError("config: data.x0 outside chart domain");

    cfg.T = j.value("T", 1.0);
    if (!(cfg.T > 0.0)) throw ConfigError("config: T must be positive");

    // Integrator.
    if (j.contains("integrator")) {
      const Json& ic = j.at("integrator");
      cfg.integrator.rel_tol = ic.value("rel_tol", cfg.integrator.rel_tol);
      cfg.integrator.abs_tol = ic.value("abs_tol", cfg.integrator.abs_tol);
      cfg.integrator.max_step = ic.value("max_step", cfg.integrator.max_step);
      cfg.integrator.kappa = ic.value("kappa", cfg.integrator.kappa);
      cfg.integrator.eps_min = ic.value("eps_min", cfg.integrator.eps_min);
    }
    cfg.integrator.validate();

    // eps / eps_grid.
    if (j.contains("eps_grid")) {
      const Json& g = j.at("eps_grid");
      if (g.is_string()) {
        cfg.eps_grid = parse_eps_grid_spec(g.get<std::string>());
      } else if (g.is_object()) {
        cfg.eps_grid = geometric_grid(g.at("start").get<double>(),
                                      g.at("stop").get<double>(),
                                      g.at("count").get<int>());
      } else {
        cfg.eps_grid = g.get<std::vector<double>>();
      }
    } else if (j.contains("eps")) {
      cfg.eps_grid = {j.at("eps").get<double>()};
    }
    for (double e : cfg.eps_grid)
      if (!(e > cfg.integrator.eps_min) || e > 1.0)
        throw ConfigError("config: eps values must lie in (" +
                          std::to_string(cfg.integrator.eps_min) + ", 1]");

    if (j.contains("v_sample_points"))
      cfg.v_sample_points = j.at("v_sample_points").get<std::vector<double>>();

    if (j.contains("test_functions")) {
      for (const Json& p : j.at("test_functions")) {
        ScenarioConfig::Phi phi;
        phi.expr = p.value("expr", std::string("bump"));
        auto support = p.at("support").get<std::vector<double>>();
        if (support.size() != 2)
          throw ConfigError("config: test_functions[].support needs 2 values");
        phi.lo = support[0];
        phi.hi = support[1];
        cfg.test_functions.push_back(phi);
      }
    }

    cfg.stability_q = j.value("stability_q", 2);
    cfg.seed = j.value("seed", 1u);
    cfg.out_dir = j.value("out", std::string("out"));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  cfg.resolved = j;
  cfg.resolved["scenario"] = cfg.scenario;
  cfg.config_hash = hash_json(cfg.resolved);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path,
                                const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  return load_config(j);
}

std::vector<double> parse_eps_grid_spec(const std::string& spec) {
  auto c1 = spec.find(':');
  auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ConfigError("eps grid spec must be start:stop:count, got " + spec);
  try {
    double start = std::stod(spec.substr(0, c1));
    double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    int count = std::stoi(spec.substr(c2 + 1));
    return geometric_grid(start, stop, count);
  } catch (const std::exception&) {
    throw ConfigError("eps grid spec must be start:stop:count, got " + spec);
  }
}

std::string hash_json(const Json& j) {
  std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace iwave
