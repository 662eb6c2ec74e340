#include "poisswell/plots.hpp"

#include "poisswell/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace poisswell {

using nlohmann::json;

namespace {

bool positive_number(json const& v)
{
    return v.is_number() && v.get<double>() > 0.0 && std::isfinite(v.get<double>());
}

std::string block(std::string const& name, std::string const& rows)
{
    return "$" + name + " << EOD\n" + rows + "EOD\n";
}

std::string errors_script(json const& report)
{
    static char const* const metrics[] = {"error_sup", "rho_error", "current_error", "eps_terms", "defect"};
    std::ostringstream data;
    data << std::setprecision(17);
    std::ostringstream plot;
    bool first = true;
    for (char const* m : metrics) {
        std::ostringstream rows;
        rows << std::setprecision(17);
        if (report.contains("rungs") && report["rungs"].is_array()) {
            for (auto const& r : report["rungs"]) {
                if (r.contains(m) && positive_number(r[m]) && positive_number(r["epsilon"])) {
                    rows << r["epsilon"].get<double>() << ' ' << r[m].get<double>() << '\n';
                }
            }
        }
        data << block(m, rows.str());
        plot << (first ? "plot " : ", \\\n     ") << "$" << m << " using 1:2 with linespoints title '" << m << "'";
        first = false;
    }
    std::ostringstream s;
    s << "# log-log errors against epsilon\n" << data.str();
    s << "set logscale xy\nset xlabel 'epsilon'\nset ylabel 'error'\nset key left top\n";
    s << "if (|$error_sup| + |$rho_error| + |$current_error| + |$eps_terms| + |$defect| > 0) {\n  " << plot.str()
      << "\n}\n";
    return s.str();
}

std::string diagnostics_script(json const& report)
{
    std::ostringstream rows;
    rows << std::setprecision(17);
    if (report.contains("records") && report["records"].is_array()) {
        for (auto const& r : report["records"]) {
            auto num = [&](char const* k) { return r.contains(k) && r[k].is_number() ? r[k].get<double>() : NAN; };
            rows << num("t") << ' ' << num("charge") << ' ' << num("E_s") << ' ' << num("E_s_mu") << ' '
                 << num("M") << ' ' << num("N") << ' ' << num("monitor_sum") << '\n';
        }
    }
    std::ostringstream s;
    s << "# diagnostics against time: t charge E_s E_s_mu M N monitor_sum\n" << block("diag", rows.str());
    s << "set xlabel 't'\nset logscale y\n";
    s << "if (|$diag| > 0) {\n  plot $diag using 1:2 with lines title 'charge', \\\n"
         "       $diag using 1:3 with lines title 'E_s', \\\n"
         "       $diag using 1:4 with lines title 'E_s^mu', \\\n"
         "       $diag using 1:5 with lines title 'M', \\\n"
         "       $diag using 1:6 with lines title 'N', \\\n"
         "       $diag using 1:7 with lines title 'monitor'\n}\n";
    return s.str();
}

std::string wigner_script(json const& report)
{
    std::ostringstream rows;
    rows << std::setprecision(17);
    if (report.contains("slice") && report["slice"].is_object()) {
        auto const& sl = report["slice"];
        auto const& xi = sl["xi"];
        auto const& values = sl["values"];
        for (std::size_t b = 0; b < values.size(); ++b) {
            for (std::size_t k = 0; k < xi.size(); ++k) {
                rows << b << ' ' << xi[k].get<double>() << ' ' << values[b][k].get<double>() << '\n';
            }
            rows << '\n';
        }
    }
    std::ostringstream s;
    s << "# Wigner slice heat data: base-point index, xi, f\n" << block("wigner", rows.str());
    s << "set xlabel 'base point'\nset ylabel 'xi'\nset view map\n";
    s << "if (|$wigner| > 0) {\n  splot $wigner using 1:2:3 with pm3d notitle\n}\n";
    return s.str();
}

std::string defect_script(json const& report)
{
    std::ostringstream rows;
    rows << std::setprecision(17);
    if (report.contains("rungs") && report["rungs"].is_array()) {
        for (auto const& r : report["rungs"]) {
            if (r.contains("defect") && r["defect"].is_number()) {
                rows << r["epsilon"].get<double>() << ' ' << r["defect"].get<double>() << '\n';
            }
        }
    }
    std::ostringstream s;
    s << "# monokinetic defect per epsilon\n" << block("defect", rows.str());
    s << "set style data histograms\nset style fill solid\nset xlabel 'epsilon'\nset ylabel 'defect'\n";
    s << "if (|$defect| > 0) {\n  plot $defect using 2:xtic(1) title 'defect'\n}\n";
    return s.str();
}

} // namespace

std::vector<std::filesystem::path> emit_plots(std::string const& report_json, std::filesystem::path const& out_dir,
                                              Manifest* manifest)
{
    json report = json::object();
    auto const trimmed = report_json.find_first_not_of(" \t\r\n");
    if (trimmed != std::string::npos) {
        try {
            report = json::parse(report_json);
        } catch (json::exception const& e) {
            throw IoError(std::string("report is not valid JSON: ") + e.what());
        }
    }
    if (!report.is_object()) throw IoError("report must be a JSON object");

    std::vector<std::pair<std::string, std::string>> scripts{
        {"errors_vs_epsilon.gp", errors_script(report)},
        {"diagnostics_vs_time.gp", diagnostics_script(report)},
        {"wigner_slice.gp", wigner_script(report)},
        {"defect_bars.gp", defect_script(report)},
    };
    std::vector<std::filesystem::path> written;
    for (auto const& [name, text] : scripts) {
        auto const path = manifest ? manifest->add(name) : out_dir / name;
        write_text(path, text);
        written.push_back(path);
    }
    return written;
}

} // namespace poisswell
