#include "poisswell/config.hpp"

#include "poisswell/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

namespace poisswell {

std::string to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::pauli: return "pauli";
    case ExperimentKind::wkb: return "wkb";
    case ExperimentKind::euler: return "euler";
    case ExperimentKind::ladder: return "ladder";
    case ExperimentKind::spinor_vs_wkb: return "spinor-vs-wkb";
    case ExperimentKind::monokinetic: return "monokinetic";
    }
    return "unknown";
}

ExperimentKind parse_kind(std::string const& name)
{
    for (auto k : {ExperimentKind::pauli, ExperimentKind::wkb, ExperimentKind::euler, ExperimentKind::ladder,
                   ExperimentKind::spinor_vs_wkb, ExperimentKind::monokinetic}) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("kind", "unknown experiment kind '" + name + "'");
}

namespace {

using List = std::vector<double>;
using Value = std::variant<bool, double, std::string, List>;

struct Entry {
    Value value;
    int line = 0;
};

std::string trim(std::string const& s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(std::string const& s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool parse_number(std::string const& text, double& out)
{
    auto const t = trim(text);
    if (t.empty()) return false;
    char const* begin = t.data();
    char const* end = t.data() + t.size();
    if (*begin == '+') ++begin;
    auto const [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

Value parse_value(std::string const& raw, int line, std::string const& key)
{
    auto const text = trim(raw);
    if (text.empty()) throw ParseError("missing value", line, key);
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"') throw ParseError("unterminated string", line, key);
        auto inner = text.substr(1, text.size() - 2);
        if (inner.find('"') != std::string::npos) throw ParseError("stray quote in string", line, key);
        return inner;
    }
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.front() == '[') {
        if (text.back() != ']') throw ParseError("unterminated list", line, key);
        List list;
        auto const inner = trim(text.substr(1, text.size() - 2));
        if (inner.empty()) return list;
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = 0.0;
            if (!parse_number(item, v)) throw ParseError("list items must be numbers", line, key);
            list.push_back(v);
        }
        return list;
    }
    double v = 0.0;
    if (!parse_number(text, v)) throw ParseError("cannot read value '" + text + "'", line, key);
    return v;
}

std::map<std::string, Entry> tokenize(std::string const& text)
{
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto const content = trim(strip_comment(raw));
        if (content.empty()) continue;
        if (content.front() == '[') {
            if (content.back() != ']') throw ParseError("malformed section header", line, "");
            section = trim(content.substr(1, content.size() - 2));
            if (section.empty()) throw ParseError("empty section name", line, "");
            continue;
        }
        auto const eq = content.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, "");
        auto const key = trim(content.substr(0, eq));
        if (key.empty()) throw ParseError("missing key", line, "");
        auto const full = section.empty() ? key : section + "." + key;
        if (entries.count(full)) throw ParseError("duplicate key", line, full);
        entries[full] = Entry{parse_value(content.substr(eq + 1), line, full), line};
    }
    return entries;
}

// Typed readers: each consumes the entry so leftovers can be reported as unknown keys.
class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    void number(std::string const& key, double& out) { take<double>(key, out, "a number"); }

    void integer(std::string const& key, int& out)
    {
        double v = out;
        take<double>(key, v, "an integer");
        if (v != std::floor(v) || std::abs(v) > 2e9) fail(key, "must be an integer");
        out = static_cast<int>(v);
    }

    void boolean(std::string const& key, bool& out) { take<bool>(key, out, "true or false"); }
    void string(std::string const& key, std::string& out) { take<std::string>(key, out, "a quoted string"); }
    void list(std::string const& key, List& out) { take<List>(key, out, "a list"); }

    void vec3(std::string const& key, std::array<double, 3>& out)
    {
        List l;
        bool const present = entries_.count(key) > 0;
        list(key, l);
        if (!present) return;
        if (l.empty() || l.size() > 3) fail(key, "expects 1 to 3 numbers");
        for (std::size_t i = 0; i < l.size(); ++i) out[i] = l[i];
    }

    void optional_number(std::string const& key, std::optional<double>& out)
    {
        if (!entries_.count(key)) return;
        double v = 0.0;
        number(key, v);
        out = v;
    }

    void finish() const
    {
        if (!entries_.empty()) {
            auto const& [key, entry] = *entries_.begin();
            throw ParseError("unknown key", entry.line, key);
        }
    }

private:
    template <class T, class Out>
    void take(std::string const& key, Out& out, char const* expected)
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) return;
        auto const* v = std::get_if<T>(&it->second.value);
        if (!v) throw ParseError(std::string("expected ") + expected, it->second.line, key);
        out = *v;
        line_of_[key] = it->second.line;
        entries_.erase(it);
    }

    [[noreturn]] void fail(std::string const& key, std::string const& what) const
    {
        auto it = line_of_.find(key);
        throw ParseError(what, it == line_of_.end() ? 0 : it->second, key);
    }

    std::map<std::string, Entry> entries_;
    std::map<std::string, int> line_of_;
};

std::string format_number(double v)
{
    if (std::isinf(v)) throw ValidationError("config", "cannot serialize an infinite value");
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_list(std::vector<double> const& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_number(v[i]);
    }
    return out + "]";
}

} // namespace

void validate_config(RunConfig const& config)
{
    auto const& s = config.setup;
    s.params.validate();
    if (s.data.family == InitialFamily::gaussian_bump && !(s.data.width > 0.0)) {
        throw ValidationError("initial.width", "must be > 0");
    }
    bool const needs_eps = config.kind == ExperimentKind::pauli || config.kind == ExperimentKind::spinor_vs_wkb;
    if (needs_eps && !(s.params.epsilon > 0.0)) {
        throw ValidationError("epsilon", "the spinor solver needs epsilon > 0");
    }
    if (config.kind == ExperimentKind::ladder || config.kind == ExperimentKind::monokinetic) {
        if (s.epsilons.empty()) throw ValidationError("epsilons", "epsilon list must be nonempty");
        for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
            if (!(s.epsilons[i] > 0.0)) throw ValidationError("epsilons", "ladder epsilons must be > 0");
            if (i > 0 && !(s.epsilons[i] < s.epsilons[i - 1])) {
                throw ValidationError("epsilons", "epsilon list must be decreasing");
            }
        }
    }
    if (!(s.preflight_factor >= 1.0)) throw ValidationError("experiment.preflight_factor", "must be >= 1");
    if (s.threads < 1) throw ValidationError("threads", "must be >= 1");
    if (!(s.options.thresholds.factor > 0.0)) throw ValidationError("thresholds.blowup_factor", "must be > 0");
    for (auto p : s.wigner_points) {
        if (p >= s.grid.size()) throw ValidationError("experiment.wigner_points", "index outside the grid");
    }
    if (config.output_dir.empty()) throw ValidationError("output.dir", "must not be empty");
}

RunConfig parse_config(std::string const& text)
{
    Reader r(tokenize(text));
    RunConfig c;
    auto& s = c.setup;

    std::string kind = to_string(c.kind);
    r.string("kind", kind);
    double seed = 0.0;
    r.number("seed", seed);
    if (seed < 0.0 || seed != std::floor(seed) || seed > 9.007199254740992e15) {
        throw ValidationError("seed", "must be a nonnegative integer");
    }
    c.seed = static_cast<std::uint64_t>(seed);

    int dim = s.grid.dim();
    int n = s.grid.points(0);
    double length = s.grid.length(0);
    List points;
    List lengths;
    r.integer("grid.dim", dim);
    r.integer("grid.n", n);
    r.number("grid.length", length);
    r.list("grid.points", points);
    r.list("grid.lengths", lengths);

    auto& p = s.params;
    r.number("params.epsilon", p.epsilon);
    r.list("params.epsilons", s.epsilons);
    r.number("params.dt", p.dt);
    r.number("params.t_final", p.t_final);
    r.number("params.s", p.s);
    r.number("params.mu", p.mu);
    r.number("params.mu1", p.mu1);
    r.number("params.mu2", p.mu2);
    r.integer("params.sample_every", p.sample_every);
    r.boolean("params.electric", p.electric);
    r.boolean("params.magnetic", p.magnetic);
    std::string refresh = p.refresh == PotentialRefresh::lagged ? "lagged" : "predictor_corrector";
    r.string("params.refresh", refresh);
    r.number("params.solver_tolerance", p.screened.tolerance);
    r.integer("params.solver_max_iters", p.screened.max_iters);
    r.boolean("params.keep_snapshots", p.keep_snapshots);

    auto& d = s.data;
    std::string family = to_string(d.family);
    r.string("initial.family", family);
    r.number("initial.amplitude", d.amplitude);
    r.number("initial.width", d.width);
    r.vec3("initial.center", d.center);
    r.number("initial.phase_amplitude", d.phase_amplitude);
    r.integer("initial.phase_mode", d.phase_mode);
    r.number("initial.spin_angle", d.spin_angle);
    r.vec3("initial.k", d.k);
    r.number("initial.beta", d.beta);
    r.number("initial.noise", d.noise);
    r.boolean("initial.normalize", d.normalize);

    r.string("output.dir", c.output_dir);
    r.boolean("output.snapshots", c.write_snapshots);

    r.number("thresholds.blowup_factor", s.options.thresholds.factor);
    r.number("thresholds.tail", s.options.thresholds.tail);
    r.boolean("thresholds.stop_on_blowup", s.options.stop_on_blowup);
    r.number("thresholds.envelope_C_max", s.envelope_C_max);
    r.optional_number("thresholds.K_constant", s.K_constant);

    r.boolean("experiment.residuals", s.options.residuals);
    r.number("experiment.preflight_factor", s.preflight_factor);
    r.boolean("experiment.spinor_rungs", s.spinor_rungs);
    List wpoints;
    r.list("experiment.wigner_points", wpoints);
    r.integer("experiment.wigner_half_width", s.wigner_half_width);
    r.integer("experiment.threads", s.threads);
    r.finish();

    c.kind = parse_kind(kind);
    d.family = parse_family(family);
    d.seed = c.seed;
    if (refresh == "lagged") p.refresh = PotentialRefresh::lagged;
    else if (refresh == "predictor_corrector") p.refresh = PotentialRefresh::predictor_corrector;
    else throw ValidationError("params.refresh", "expected \"lagged\" or \"predictor_corrector\"");

    std::array<int, 3> np{1, 1, 1};
    std::array<double, 3> nl{1.0, 1.0, 1.0};
    if (dim < 1 || dim > 3) throw ValidationError("grid.dim", "must be 1, 2 or 3");
    for (int i = 0; i < dim; ++i) {
        np[i] = points.empty() ? n : static_cast<int>(points.at(std::min<std::size_t>(i, points.size() - 1)));
        nl[i] = lengths.empty() ? length : lengths.at(std::min<std::size_t>(i, lengths.size() - 1));
    }
    if (!points.empty() && static_cast<int>(points.size()) != dim) {
        throw ValidationError("grid.points", "needs one entry per dimension");
    }
    if (!lengths.empty() && static_cast<int>(lengths.size()) != dim) {
        throw ValidationError("grid.lengths", "needs one entry per dimension");
    }
    s.grid = Grid(dim, np, nl);

    for (double w : wpoints) {
        if (w < 0.0 || w != std::floor(w)) throw ValidationError("experiment.wigner_points", "must be grid indices");
        s.wigner_points.push_back(static_cast<std::size_t>(w));
    }
    validate_config(c);
    return c;
}

RunConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(RunConfig const& c)
{
    auto const& s = c.setup;
    auto const& p = s.params;
    auto const& d = s.data;
    auto const& g = s.grid;
    std::ostringstream o;
    auto num = [](double v) { return format_number(v); };
    auto flag = [](bool b) { return b ? "true" : "false"; };

    o << "kind = \"" << to_string(c.kind) << "\"\n";
    o << "seed = " << c.seed << "\n\n";

    List points;
    List lengths;
    for (int i = 0; i < g.dim(); ++i) {
        points.push_back(g.points(i));
        lengths.push_back(g.length(i));
    }
    o << "[grid]\ndim = " << g.dim() << "\npoints = " << format_list(points) << "\nlengths = " << format_list(lengths)
      << "\n\n";

    o << "[params]\n";
    o << "epsilon = " << num(p.epsilon) << "\n";
    o << "epsilons = " << format_list(s.epsilons) << "\n";
    o << "dt = " << num(p.dt) << "\n";
    o << "t_final = " << num(p.t_final) << "\n";
    o << "s = " << num(p.s) << "\n";
    o << "mu = " << num(p.mu) << "\nmu1 = " << num(p.mu1) << "\nmu2 = " << num(p.mu2) << "\n";
    o << "sample_every = " << p.sample_every << "\n";
    o << "electric = " << flag(p.electric) << "\nmagnetic = " << flag(p.magnetic) << "\n";
    o << "refresh = \"" << (p.refresh == PotentialRefresh::lagged ? "lagged" : "predictor_corrector") << "\"\n";
    o << "solver_tolerance = " << num(p.screened.tolerance) << "\n";
    o << "solver_max_iters = " << p.screened.max_iters << "\n";
    o << "keep_snapshots = " << flag(p.keep_snapshots) << "\n\n";

    o << "[initial]\n";
    o << "family = \"" << to_string(d.family) << "\"\n";
    o << "amplitude = " << num(d.amplitude) << "\nwidth = " << num(d.width) << "\n";
    o << "center = " << format_list({d.center[0], d.center[1], d.center[2]}) << "\n";
    o << "phase_amplitude = " << num(d.phase_amplitude) << "\nphase_mode = " << d.phase_mode << "\n";
    o << "spin_angle = " << num(d.spin_angle) << "\n";
    o << "k = " << format_list({d.k[0], d.k[1], d.k[2]}) << "\n";
    o << "beta = " << num(d.beta) << "\nnoise = " << num(d.noise) << "\n";
    o << "normalize = " << flag(d.normalize) << "\n\n";

    o << "[output]\ndir = \"" << c.output_dir << "\"\nsnapshots = " << flag(c.write_snapshots) << "\n\n";

    o << "[thresholds]\n";
    o << "blowup_factor = " << num(s.options.thresholds.factor) << "\n";
    o << "tail = " << num(s.options.thresholds.tail) << "\n";
    o << "stop_on_blowup = " << flag(s.options.stop_on_blowup) << "\n";
    o << "envelope_C_max = " << num(s.envelope_C_max) << "\n";
    if (s.K_constant) o << "K_constant = " << num(*s.K_constant) << "\n";
    o << "\n[experiment]\n";
    o << "residuals = " << flag(s.options.residuals) << "\n";
    o << "preflight_factor = " << num(s.preflight_factor) << "\n";
    o << "spinor_rungs = " << flag(s.spinor_rungs) << "\n";
    List wp(s.wigner_points.begin(), s.wigner_points.end());
    o << "wigner_points = " << format_list(wp) << "\n";
    o << "wigner_half_width = " << s.wigner_half_width << "\n";
    o << "threads = " << s.threads << "\n";
    return o.str();
}

} // namespace poisswell
