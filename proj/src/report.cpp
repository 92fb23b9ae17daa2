#include "iwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "iwave/errors.hpp"

namespace iwave {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string eps_stem(double eps) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "eps_%.1e", eps);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, int n_samples,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  const int n = traj.dim();
  out << "u,v,vdot";
  for (int i = 1; i <= n; ++i) out << ",x" << i;
  for (int i = 1; i <= n; ++i) out << ",xdot" << i;
  out << "\n";
  double lo = traj.u_lo(), hi = traj.u_hi();
  for (int s = 0; s < n_samples; ++s) {
    double u = lo + (hi - lo) * s / (n_samples - 1);
    GeodesicState st = traj.at(u);
    out << fmt_double(u) << ',' << fmt_double(st.v) << ','
        << fmt_double(traj.vdot_at(u));
    for (int i = 0; i < n; ++i) out << ',' << fmt_double(st.x[i]);
    for (int i = 0; i < n; ++i) out << ',' << fmt_double(st.xdot[i]);
    out << "\n";
  }
}

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json slope_json(const SlopeFit& fit) {
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"residual", fit.residual},
              {"n_used", fit.n_used},
              {"floored", fit.floored}};
}

Json provenance(const ScenarioConfig& cfg) {
  return Json{{"manifold", cfg.manifold->name()},
              {"profile", cfg.profile.label()},
              {"net", cfg.net_name},
              {"config_hash", cfg.config_hash}};
}

}  // namespace

Json trajectory_json(const Trajectory& traj, int n_samples,
                     const ScenarioConfig& cfg) {
  Json j;
  j["schema_version"] = 1;
  j["eps"] = traj.eps();
  j["provenance"] = provenance(cfg);
  j["stats"] = Json{{"n_accepted", traj.stats().n_accepted},
                    {"n_rejected", traj.stats().n_rejected},
                    {"n_rhs", traj.stats().n_rhs},
                    {"min_step", traj.stats().min_step}};
  Json rows = Json::array();
  double lo = traj.u_lo(), hi = traj.u_hi();
  for (int s = 0; s < n_samples; ++s) {
    double u = lo + (hi - lo) * s / (n_samples - 1);
    GeodesicState st = traj.at(u);
    rows.push_back(Json{{"u", u},
                        {"v", st.v},
                        {"vdot", traj.vdot_at(u)},
                        {"x", vec_json(st.x)},
                        {"xdot", vec_json(st.xdot)}});
  }
  j["samples"] = rows;
  j["config"] = cfg.resolved;
  return j;
}

Json sweep_report_json(const SweepReport& rep, const ScenarioConfig& cfg) {
  Json j;
  j["schema_version"] = 1;
  j["scenario"] = cfg.scenario;
  j["provenance"] = provenance(cfg);
  j["T"] = rep.T;
  j["v_sample_points"] = rep.v_sample_points;
  j["error_floor"] = rep.error_floor;
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json je{{"eps", e.eps}};
    if (e.error.empty()) {
      je["sup_x_err"] = e.sup_x_err;
      je["v_err"] = e.v_err;
      je["jump_err"] = e.jump_err;
      je["x_end_err"] = e.x_end_err;
    } else {
      je["error"] = e.error;
    }
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["slopes"] = Json{{"sup_x_err", slope_json(rep.x_slope)},
                     {"jump_err", slope_json(rep.jump_slope)},
                     {"v_err", slope_json(rep.v_slope)}};
  j["verdicts"] = Json{{"monotone_x", rep.monotone_x},
                       {"all_integrated", rep.all_integrated}};
  j["config"] = cfg.resolved;
  return j;
}

Json pairing_report_json(const PairingReport& rep) {
  Json j;
  j["phi"] = rep.phi_labels;
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(Json{{"eps", e.eps}, {"pairing", e.value}});
  j["entries"] = entries;
  Json rates = Json::array();
  for (const auto& r : rep.rates) rates.push_back(slope_json(r));
  j["rates"] = rates;
  j["converges"] = rep.converges;
  return j;
}

Json moderateness_report_json(const ModeratenessReport& rep) {
  Json j;
  j["eps"] = rep.eps;
  j["sup_xdot"] = rep.sup_xdot;
  j["sup_xddot"] = rep.sup_xddot;
  j["sup_x3dot"] = rep.sup_x3dot;
  j["sup_vddot"] = rep.sup_vddot;
  j["fits"] = Json{{"xdot", slope_json(rep.xdot_fit)},
                   {"xddot", slope_json(rep.xddot_fit)},
                   {"x3dot", slope_json(rep.x3dot_fit)},
                   {"vddot", slope_json(rep.vddot_fit)}};
  j["verdicts"] = Json{{"xdot", rep.xdot_ok},
                       {"xddot", rep.xddot_ok},
                       {"x3dot", rep.x3dot_ok},
                       {"vddot", rep.vddot_ok}};
  return j;
}

Json stability_report_json(const StabilityReport& rep) {
  Json j;
  j["q"] = rep.q;
  j["c3"] = rep.c3;
  j["c4"] = rep.c4;
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(
        Json{{"eps", e.eps}, {"psi_sup", e.psi_sup}, {"bound", e.bound}});
  j["entries"] = entries;
  j["psi_fit"] = slope_json(rep.psi_fit);
  j["verdicts"] = Json{{"order_ok", rep.order_ok}, {"dominated", rep.dominated}};
  return j;
}

Json broken_geodesic_json(const BrokenGeodesic& bg, const ScenarioConfig& cfg,
                          int n_samples) {
  Json j;
  j["schema_version"] = 1;
  j["provenance"] = provenance(cfg);
  j["cross_point"] = vec_json(bg.cross_point);
  j["cross_velocity_pre"] = vec_json(bg.cross_velocity_pre);
  j["refraction"] = vec_json(bg.refraction);
  j["jump"] = bg.jump;
  j["kink_slope"] = bg.kink_slope;
  j["v0"] = bg.v0;
  j["vdot0"] = bg.vdot0;
  auto sample_piece = [n_samples](const BackgroundGeodesic& g) {
    Json rows = Json::array();
    double lo = g.u_lo(), hi = g.u_hi();
    for (int s = 0; s < n_samples; ++s) {
      double u = lo + (hi - lo) * s / (n_samples - 1);
      auto st = g.at(u);
      rows.push_back(
          Json{{"u", u}, {"x", vec_json(st.x)}, {"xdot", vec_json(st.xdot)}});
    }
    return rows;
  };
  j["pre"] = sample_piece(bg.pre);
  j["post"] = sample_piece(bg.post);
  j["config"] = cfg.resolved;
  return j;
}

Json validation_report_json(const ValidationReport& rep) {
  auto axiom = [](const AxiomVerdict& v) {
    return Json{{"pass", v.pass}, {"detail", v.detail}};
  };
  Json j;
  j["net"] = rep.label;
  j["axiom_i_support"] = axiom(rep.support);
  j["axiom_ii_mass"] = axiom(rep.mass);
  j["axiom_iii_l1_bound"] = axiom(rep.l1_bound);
  j["witnessed_c"] = rep.witnessed_c;
  j["mass_limit"] = rep.mass_limit;
  j["all_pass"] = rep.all_pass();
  return j;
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void write_plotdata(const std::vector<double>& eps,
                    const std::vector<double>& err,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "# log10_eps log10_err\n";
  for (std::size_t i = 0; i < eps.size() && i < err.size(); ++i) {
    if (!(err[i] > 0.0)) continue;
    out << fmt_double(std::log10(eps[i])) << ' '
        << fmt_double(std::log10(err[i])) << "\n";
  }
}

}  // namespace iwave
