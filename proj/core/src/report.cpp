#include "poisswell/report.hpp"

#include "poisswell/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace poisswell {

using nlohmann::json;

namespace {

// JSON has no inf/nan; map them to strings so the documents stay valid.
json number(double v)
{
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json optional_number(std::optional<double> const& v)
{
    return v ? number(*v) : json(nullptr);
}

json record_object(DiagnosticsRecord const& r)
{
    json j;
    j["t"] = number(r.t);
    j["step"] = r.step;
    j["charge"] = number(r.charge);
    j["energy"] = optional_number(r.energy);
    j["E_s"] = number(r.E_s);
    j["E_s_mu"] = number(r.E_s_mu);
    j["E_s_mu1_mu2"] = number(r.E_s_mu12);
    j["M"] = number(r.M);
    j["N"] = number(r.N);
    j["continuity_residual"] = optional_number(r.continuity_residual);
    j["gauge_residual"] = optional_number(r.gauge_residual);
    j["tail_fraction"] = number(r.tail_fraction);
    j["monitor_sum"] = number(r.monitor_sum);
    j["monitor"] = to_string(r.status);
    j["gradient_mismatch"] = optional_number(r.gradient_mismatch);
    return j;
}

json records_array(std::vector<DiagnosticsRecord> const& records)
{
    json a = json::array();
    for (auto const& r : records) a.push_back(record_object(r));
    return a;
}

json envelope_object(EnvelopeReport const& e)
{
    return {{"C", number(e.C)}, {"max_violation_ratio", number(e.max_violation_ratio)}, {"pass", e.pass}};
}

json slope_object(SlopeFit const& s)
{
    if (!s.defined) return {{"defined", false}, {"points", s.points}};
    return {{"defined", true}, {"slope", number(s.slope)}, {"intercept", number(s.intercept)}, {"points", s.points}};
}

json header(RunConfig const& config)
{
    json j;
    // The output location is not part of the experiment, so it stays out of the report.
    RunConfig copy = config;
    copy.output_dir = ".";
    j["kind"] = to_string(config.kind);
    j["config"] = serialize_config(copy);
    return j;
}

double relative_drift(std::vector<DiagnosticsRecord> const& records)
{
    if (records.empty() || records.front().charge == 0.0) return 0.0;
    double worst = 0.0;
    for (auto const& r : records) worst = std::max(worst, std::abs(r.charge - records.front().charge));
    return worst / records.front().charge;
}

json residual_summary(std::vector<DiagnosticsRecord> const& records)
{
    double cont = 0.0;
    double gauge = 0.0;
    bool any = false;
    for (auto const& r : records) {
        if (r.continuity_residual) {
            any = true;
            cont = std::max(cont, *r.continuity_residual);
        }
        if (r.gauge_residual) gauge = std::max(gauge, *r.gauge_residual);
    }
    if (!any) return nullptr;
    return {{"max_continuity_residual", number(cont)}, {"max_gauge_residual", number(gauge)}};
}

std::string dump(json const& j)
{
    return j.dump(2) + "\n";
}

} // namespace

std::string record_json(DiagnosticsRecord const& record)
{
    return record_object(record).dump();
}

void write_text(std::filesystem::path const& path, std::string const& text)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_diagnostics_jsonl(std::filesystem::path const& path, std::vector<DiagnosticsRecord> const& records)
{
    std::string text;
    for (auto const& r : records) text += record_json(r) + "\n";
    write_text(path, text);
}

void write_diagnostics_csv(std::filesystem::path const& path, std::vector<DiagnosticsRecord> const& records)
{
    std::ostringstream o;
    o << std::setprecision(17);
    o << "t,step,charge,energy,E_s,E_s_mu,E_s_mu1_mu2,M,N,continuity_residual,gauge_residual,tail_fraction,"
         "monitor_sum,monitor\n";
    auto opt = [&](std::optional<double> const& v) {
        if (v) o << *v;
    };
    for (auto const& r : records) {
        o << r.t << ',' << r.step << ',' << r.charge << ',';
        opt(r.energy);
        o << ',' << r.E_s << ',' << r.E_s_mu << ',' << r.E_s_mu12 << ',' << r.M << ',' << r.N << ',';
        opt(r.continuity_residual);
        o << ',';
        opt(r.gauge_residual);
        o << ',' << r.tail_fraction << ',' << r.monitor_sum << ',' << to_string(r.status) << '\n';
    }
    write_text(path, o.str());
}

std::string hydro_run_report(RunConfig const& config, HydroRun const& run, double Q, EnvelopeReport const& envelope)
{
    json j = header(config);
    j["status"] = to_string(run.status);
    j["stop_reason"] = run.message.empty() ? to_string(run.status) : run.message;
    j["t_stop"] = number(run.times.empty() ? 0.0 : run.times.back());
    j["dt"] = number(run.dt);
    j["steps"] = run.steps;
    j["Q"] = number(Q);
    j["charge_drift"] = number(relative_drift(run.records));
    j["max_gradient_mismatch"] = number(run.max_gradient_mismatch);
    j["max_curl_ratio"] = number(run.max_curl_ratio);
    j["envelope"] = envelope_object(envelope);
    j["residuals"] = residual_summary(run.records);
    if (!run.records.empty()) j["final"] = record_object(run.records.back());
    j["records"] = records_array(run.records);
    return dump(j);
}

std::string spinor_run_report(RunConfig const& config, SpinorRun const& run, EnvelopeReport const& envelope)
{
    json j = header(config);
    j["status"] = to_string(run.status);
    j["stop_reason"] = run.message.empty() ? to_string(run.status) : run.message;
    j["t_stop"] = number(run.times.empty() ? 0.0 : run.times.back());
    j["dt"] = number(run.dt);
    j["steps"] = run.steps;
    j["charge_drift"] = number(relative_drift(run.records));
    j["envelope"] = envelope_object(envelope);
    j["residuals"] = residual_summary(run.records);
    if (!run.records.empty()) j["final"] = record_object(run.records.back());
    j["records"] = records_array(run.records);
    return dump(j);
}

std::string ladder_report(RunConfig const& config, LadderReport const& ladder, DensityCurrentReport const& dc)
{
    json j = header(config);
    j["status"] = to_string(ladder.reference_status);
    j["epsilons"] = ladder.epsilons;
    j["t_final"] = number(ladder.t_final);
    j["dt"] = number(ladder.dt);
    j["s"] = number(ladder.s);
    j["Q"] = number(ladder.Q);
    j["preflight"] = {{"ok", ladder.preflight_ok}, {"t_stop", number(ladder.preflight_stop_time)}};
    j["reference_envelope"] = envelope_object(ladder.reference_envelope);
    j["degenerate"] = ladder.degenerate;
    j["error_monotone"] = ladder.error_monotone;
    j["slopes"] = {{"error", slope_object(ladder.error_slope)},
                   {"rho", slope_object(ladder.rho_slope)},
                   {"current", slope_object(ladder.current_slope)},
                   {"eps_terms", slope_object(ladder.eps_terms_slope)},
                   {"defect", slope_object(ladder.defect_slope)}};
    json rungs = json::array();
    for (auto const& r : ladder.rungs) {
        json x;
        x["epsilon"] = number(r.epsilon);
        x["status"] = to_string(r.status);
        x["message"] = r.message;
        x["t_stop"] = number(r.stop_time);
        x["error_sup"] = number(r.error_sup);
        x["error_final"] = number(r.error_final);
        json traj = json::array();
        for (double e : r.error_trajectory) traj.push_back(number(e));
        x["error_trajectory"] = traj;
        x["rho_error"] = number(r.rho_error);
        x["current_error"] = number(r.current_error);
        x["eps_terms"] = number(r.eps_terms);
        x["charge_drift"] = number(r.charge_drift);
        x["envelope"] = envelope_object(r.envelope);
        x["K_lower_bound"] = optional_number(r.K_lower_bound);
        x["defect"] = optional_number(r.defect);
        x["spinor_charge_drift"] = optional_number(r.spinor_charge_drift);
        rungs.push_back(x);
    }
    j["rungs"] = rungs;
    j["density_current"] = {{"rho_slope", slope_object(dc.rho_slope)},
                            {"current_slope", slope_object(dc.current_slope)},
                            {"eps_terms_slope", slope_object(dc.eps_terms_slope)},
                            {"eps_term_ratios", dc.eps_term_ratios}};
    return dump(j);
}

std::string spinor_wkb_report(RunConfig const& config, SpinorWkbReport const& report)
{
    json j = header(config);
    j["status"] = to_string(report.pauli_status == RunStatus::completed ? report.wkb_status : report.pauli_status);
    j["epsilon"] = number(report.epsilon);
    j["pauli_status"] = to_string(report.pauli_status);
    j["wkb_status"] = to_string(report.wkb_status);
    j["max_distance"] = number(report.max_distance);
    j["times"] = report.times;
    json d = json::array();
    for (double x : report.distances) d.push_back(number(x));
    j["distances"] = d;
    return dump(j);
}

std::string monokinetic_report(RunConfig const& config, MonokineticReport const& report)
{
    json j = header(config);
    j["status"] = "completed";
    j["t"] = number(report.t);
    json rungs = json::array();
    for (auto const& r : report.rungs) {
        json x;
        x["epsilon"] = number(r.epsilon);
        x["status"] = to_string(r.status);
        x["defect"] = number(r.defect);
        x["charge_drift"] = number(r.charge_drift);
        x["window_fractions"] = r.window_fractions;
        x["slice_marginal_errors"] = r.slice_marginal_errors;
        x["slice_max_imag_ratio"] = number(r.slice_max_imag_ratio);
        rungs.push_back(x);
    }
    j["rungs"] = rungs;
    j["defect_ratios"] = report.defect_ratios;
    j["defect_slope"] = slope_object(report.defect_slope);
    j["slice_centres"] = report.slice_centres;
    if (report.slice) {
        auto const& s = *report.slice;
        j["slice"] = {{"metadata", json::parse(wigner_metadata_json(s))},
                      {"xi", s.xi},
                      {"values", s.values},
                      {"base_points", s.base_points}};
    }
    return dump(j);
}

void write_ladder_csv(std::filesystem::path const& path, LadderReport const& ladder)
{
    std::ostringstream o;
    o << std::setprecision(17);
    o << "epsilon,status,error_sup,error_final,rho_error,current_error,eps_terms,defect\n";
    for (auto const& r : ladder.rungs) {
        o << r.epsilon << ',' << to_string(r.status) << ',' << r.error_sup << ',' << r.error_final << ','
          << r.rho_error << ',' << r.current_error << ',' << r.eps_terms << ',';
        if (r.defect) o << *r.defect;
        o << '\n';
    }
    write_text(path, o.str());
}

std::string ladder_timings(LadderReport const& ladder)
{
    json j = json::array();
    for (auto const& r : ladder.rungs) j.push_back({{"epsilon", r.epsilon}, {"wall_seconds", r.wall_seconds}});
    return dump(j);
}

Manifest::Manifest(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path Manifest::add(std::filesystem::path const& relative)
{
    std::lock_guard lock(mutex_);
    auto const name = relative.generic_string();
    if (std::find(entries_.begin(), entries_.end(), name) == entries_.end()) entries_.push_back(name);
    return root_ / relative;
}

std::vector<std::string> Manifest::entries() const
{
    std::lock_guard lock(mutex_);
    return entries_;
}

std::filesystem::path Manifest::write() const
{
    std::string text;
    {
        std::lock_guard lock(mutex_);
        for (auto const& e : entries_) text += e + "\n";
    }
    text += "manifest.txt\n";
    auto const path = root_ / "manifest.txt";
    write_text(path, text);
    return path;
}

} // namespace poisswell
