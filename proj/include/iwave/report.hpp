#ifndef IWAVE_REPORT_HPP
#define IWAVE_REPORT_HPP

#include <filesystem>
#include <string>

#include "iwave/asymptotics.hpp"
#include "iwave/config.hpp"
#include "iwave/dynamics.hpp"
#include "iwave/limit_oracle.hpp"

namespace iwave {

// Fixed-format float (round-trip precision) so reports are byte-stable.
std::string fmt_double(double v);

// "eps_1.0e-03" style file stem.
std::string eps_stem(double eps);

// CSV with header u,v,vdot,x1..xn,xdot1..xdotn over a uniform grid.
void write_trajectory_csv(const Trajectory& traj, int n_samples,
                          const std::filesystem::path& path);

Json trajectory_json(const Trajectory& traj, int n_samples,
                     const ScenarioConfig& cfg);
Json sweep_report_json(const SweepReport& rep, const ScenarioConfig& cfg);
Json pairing_report_json(const PairingReport& rep);
Json moderateness_report_json(const ModeratenessReport& rep);
Json stability_report_json(const StabilityReport& rep);
Json broken_geodesic_json(const BrokenGeodesic& bg, const ScenarioConfig& cfg,
                          int n_samples = 33);
Json validation_report_json(const ValidationReport& rep);

void write_json(const Json& j, const std::filesystem::path& path);

// Two-column (log10 eps, log10 err) plot data; entries at or below zero
// error are skipped.
void write_plotdata(const std::vector<double>& eps,
                    const std::vector<double>& err,
                    const std::filesystem::path& path);

}  // namespace iwave

#endif
