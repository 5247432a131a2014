#include "fgqa/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fgqa/error.hpp"

namespace fgqa::cli {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so that
// anything left over can be reported as unknown.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail("", "expected an object");
    }

    bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }

    const json* take(const char* key) {
        seen_.insert(key);
        return has(key) ? &node_.at(key) : nullptr;
    }

    void number(const char* key, double& out) {
        if (const json* v = take(key)) out = as_number(*v, key);
    }
    void number(const char* key, std::optional<double>& out) {
        if (const json* v = take(key)) out = as_number(*v, key);
    }
    template <class Int>
    void integer(const char* key, Int& out) {
        if (const json* v = take(key)) out = as_integer<Int>(*v, key);
    }
    void boolean(const char* key, bool& out) {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) fail(key, "expected true or false");
            out = v->get<bool>();
        }
    }
    void text(const char* key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) fail(key, "expected a string");
            out = v->get<std::string>();
        }
    }
    void numbers(const char* key, std::vector<double>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array()) fail(key, "expected an array of numbers");
            out.clear();
            for (const auto& x : *v) out.push_back(as_number(x, key));
        }
    }
    void indices(const char* key, std::vector<std::size_t>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array()) fail(key, "expected an array of indices");
            out.clear();
            for (const auto& x : *v) out.push_back(as_integer<std::size_t>(x, key));
        }
    }

    Section child(const char* key) {
        seen_.insert(key);
        static const json empty = json::object();
        return Section(has(key) ? node_.at(key) : empty, field(key));
    }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) fail(key, "unknown key");
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(field(key) + ": " + what);
    }

    std::string field(const std::string& key) const {
        if (path_.empty()) return key;
        return key.empty() ? path_ : path_ + "." + key;
    }

    double as_number(const json& v, const std::string& key) const {
        if (!v.is_number()) fail(key, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
        return x;
    }

    template <class Int>
    Int as_integer(const json& v, const std::string& key) const {
        if constexpr (std::is_unsigned_v<Int>) {
            if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
            return static_cast<Int>(v.get<std::uint64_t>());
        } else {
            if (!v.is_number_integer()) fail(key, "expected an integer");
            return static_cast<Int>(v.get<std::int64_t>());
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

SweepParameter parse_sweep_parameter(const std::string& tag, const Section& s) {
    if (tag == "L") return SweepParameter::Length;
    if (tag == "d_ox") return SweepParameter::OxideThickness;
    if (tag == "Z_FG") return SweepParameter::Height;
    if (tag == "V_CG") return SweepParameter::GateVoltage;
    if (tag == "V_CG1_parabola") return SweepParameter::Parabola;
    s.fail("parameter", "expected one of L, d_ox, Z_FG, V_CG, V_CG1_parabola");
}

ProblemKind parse_problem(const std::string& tag, const Section& s) {
    if (tag == "maxcut") return ProblemKind::MaxCut;
    if (tag == "ising") return ProblemKind::Ising;
    if (tag == "fg_grid") return ProblemKind::FgGrid;
    s.fail("problem", "expected one of maxcut, ising, fg_grid");
}

void parse_geometry(Section s, GeometryConfig& g) {
    s.number("L_nm", g.length_nm);
    s.number("W_nm", g.width_nm);
    s.number("x_gap_nm", g.gap_nm);
    s.number("Z_FG_nm", g.height_nm);
    s.number("d_ox_nm", g.d_ox_nm);
    s.number("d_A_nm", g.d_a_nm);
    s.number("CR", g.coupling_ratio);
    s.finish();
}

void parse_materials(Section s, MaterialConfig& m) {
    s.number("eps_ox_rel", m.eps_ox_rel);
    s.number("eps_A_rel", m.eps_a_rel);
    s.number("V_ox_eV", m.barrier_ev);
    s.number("m_ox", m.m_ox);
    s.number("m_si", m.m_si);
    s.number("doping_cm3", m.doping_cm3);
    s.finish();
}

void parse_bias(Section s, BiasConfig& b) {
    s.numbers("V_CG_V", b.v_cg);
    s.number("V_sub_V", b.v_sub);
    s.numbers("V_node_V", b.v_node);
    s.finish();
}

void parse_tunneling(Section s, TunnelConfig& t) {
    s.number("V_CG_V", t.v_cg);
    std::string polarity(to_string(t.polarity));
    s.text("polarity", polarity);
    try {
        t.polarity = parse_polarity(polarity);
    } catch (const InputError&) {
        s.fail("polarity", "expected negative_raises or positive_raises");
    }
    s.number("threshold_Hz", t.threshold_hz);
    s.finish();
}

void parse_sweep(Section s, SweepConfig& w) {
    std::string param(to_string(w.parameter));
    s.text("parameter", param);
    w.parameter = parse_sweep_parameter(param, s);
    s.number("min", w.min);
    s.number("max", w.max);
    s.integer("points", w.points);
    s.integer("n_min", w.n_min);
    s.integer("n_max", w.n_max);
    s.integer("cell", w.cell);
    s.indices("tied_gates", w.tied_gates);
    s.boolean("tie_substrate", w.tie_substrate);
    s.finish();
}

void parse_anneal(Section s, AnnealConfig& a) {
    std::string problem(to_string(a.problem));
    s.text("problem", problem);
    a.problem = parse_problem(problem, s);
    s.integer("sites", a.sites);
    if (const json* edges = s.take("edges")) {
        if (!edges->is_array()) s.fail("edges", "expected an array of [u, v, weight]");
        a.edges.clear();
        for (const auto& e : *edges) {
            if (!e.is_array() || e.size() != 3) s.fail("edges", "each edge is [u, v, weight]");
            a.edges.push_back({s.as_integer<std::size_t>(e[0], "edges"), s.as_integer<std::size_t>(e[1], "edges"),
                               s.as_number(e[2], "edges")});
        }
    }
    s.numbers("h_eV", a.h);
    if (const json* cs = s.take("couplings")) {
        if (!cs->is_array()) s.fail("couplings", "expected an array of [i, j, J_eV]");
        a.couplings.clear();
        for (const auto& c : *cs) {
            if (!c.is_array() || c.size() != 3) s.fail("couplings", "each coupling is [i, j, J_eV]");
            a.couplings.push_back({s.as_integer<std::size_t>(c[0], "couplings"),
                                   s.as_integer<std::size_t>(c[1], "couplings"), s.as_number(c[2], "couplings")});
        }
    }
    s.integer("rows", a.rows);
    s.integer("cols", a.cols);
    s.numbers("n_G", a.n_g);
    s.number("V_CG_V", a.v_cg);
    s.number("delta0_eV", a.delta0_ev);
    std::string profile(to_string(a.profile));
    s.text("profile", profile);
    try {
        a.profile = parse_profile(profile);
    } catch (const InputError&) {
        s.fail("profile", "expected linear or exponential");
    }
    if (s.has("T_total") && s.has("T_total_s")) s.fail("T_total_s", "give either T_total or T_total_s");
    s.number("T_total", a.total_time);
    std::optional<double> seconds;
    s.number("T_total_s", seconds);
    if (seconds) a.total_time = Schedule::seconds_to_natural(*seconds);
    s.integer("steps", a.steps);
    s.integer("shots", a.shots);
    s.integer("trace_every", a.trace_every);
    s.finish();
}

void parse_decoherence(Section s, DecoherenceConfig& d) {
    s.number("gamma_eV", d.gamma_ev);
    s.number("sound_speed_m_s", d.sound_speed);
    s.number("density_kg_m3", d.density);
    s.number("debye_K", d.debye_temperature);
    s.number("nu", d.nu);
    s.number("d", d.d);
    s.number("alpha", d.alpha);
    s.number("delta_K", d.delta_kelvin);
    s.number("t_max_s", d.t_max_s);
    s.integer("points", d.points);
    s.finish();
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

void check(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field + ": " + what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

// Library validators throw InputError; report them against the section.
template <class F>
void rethrow_as(const std::string& section, F&& f) {
    try {
        f();
    } catch (const InputError& e) {
        throw ConfigError(section + ": " + e.what());
    }
}

}  // namespace

MaterialStack MaterialConfig::stack() const {
    MaterialStack m;
    m.eps_ox = eps_ox_rel * phys::kVacuumPermittivity;
    m.eps_a = eps_a_rel * phys::kVacuumPermittivity;
    m.barrier_ev = barrier_ev;
    m.m_ox = m_ox;
    m.m_si = m_si;
    m.doping_cm3 = doping_cm3;
    return m;
}

BiasSet BiasConfig::bias() const { return BiasSet(v_cg, v_sub, v_node); }

PhononEnvironment DecoherenceConfig::environment() const {
    PhononEnvironment env;
    env.gamma_ev = gamma_ev;
    env.sound_speed = sound_speed;
    env.density = density;
    env.debye_temperature = debye_temperature;
    env.nu = nu;
    env.d = d;
    env.alpha_override = alpha;
    return env;
}

CellGeometry resolve_geometry(const GeometryConfig& g, const MaterialConfig& m) {
    CellGeometry geom;
    geom.length_nm = g.length_nm;
    geom.width_nm = g.width_nm.value_or(g.length_nm);
    geom.gap_nm = g.gap_nm.value_or(g.length_nm);
    geom.height_nm = g.height_nm;
    geom.d_ox_nm = g.d_ox_nm;
    geom.d_a_nm = g.d_a_nm ? *g.d_a_nm
                           : d_a_from_coupling_ratio(g.coupling_ratio, g.d_ox_nm, m.eps_a_rel, m.eps_ox_rel);
    return geom;
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::Length: return "L";
        case SweepParameter::OxideThickness: return "d_ox";
        case SweepParameter::Height: return "Z_FG";
        case SweepParameter::GateVoltage: return "V_CG";
        case SweepParameter::Parabola: return "V_CG1_parabola";
    }
    return "?";
}

std::string_view to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::MaxCut: return "maxcut";
        case ProblemKind::Ising: return "ising";
        case ProblemKind::FgGrid: return "fg_grid";
    }
    return "?";
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig c;
    Section s(root, "");
    if (!s.has("schema_version")) s.fail("schema_version", "missing");
    s.integer("schema_version", c.schema_version);
    if (c.schema_version != kSchemaVersion) {
        s.fail("schema_version", "unsupported version " + std::to_string(c.schema_version) + " (expected " +
                                     std::to_string(kSchemaVersion) + ")");
    }
    s.integer("seed", c.seed);
    parse_geometry(s.child("geometry"), c.geometry);
    parse_materials(s.child("materials"), c.materials);
    parse_bias(s.child("bias"), c.bias);
    s.numbers("n_G", c.n_g);
    parse_tunneling(s.child("tunneling"), c.tunneling);
    {
        Section d = s.child("derive");
        d.numbers("L_nm", c.derive.lengths_nm);
        d.finish();
    }
    parse_sweep(s.child("sweep"), c.sweep);
    parse_anneal(s.child("anneal"), c.anneal);
    parse_decoherence(s.child("decoherence"), c.decoherence);
    s.finish();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string emit_config(const RunConfig& c) {
    json root;
    root["schema_version"] = c.schema_version;
    root["seed"] = c.seed;

    json& g = root["geometry"];
    g["L_nm"] = c.geometry.length_nm;
    put(g, "W_nm", c.geometry.width_nm);
    put(g, "x_gap_nm", c.geometry.gap_nm);
    g["Z_FG_nm"] = c.geometry.height_nm;
    g["d_ox_nm"] = c.geometry.d_ox_nm;
    put(g, "d_A_nm", c.geometry.d_a_nm);
    g["CR"] = c.geometry.coupling_ratio;

    root["materials"] = {{"eps_ox_rel", c.materials.eps_ox_rel}, {"eps_A_rel", c.materials.eps_a_rel},
                         {"V_ox_eV", c.materials.barrier_ev},    {"m_ox", c.materials.m_ox},
                         {"m_si", c.materials.m_si},             {"doping_cm3", c.materials.doping_cm3}};
    root["bias"] = {{"V_CG_V", c.bias.v_cg}, {"V_sub_V", c.bias.v_sub}, {"V_node_V", c.bias.v_node}};
    root["n_G"] = c.n_g;
    root["tunneling"] = {{"V_CG_V", c.tunneling.v_cg},
                         {"polarity", std::string(to_string(c.tunneling.polarity))},
                         {"threshold_Hz", c.tunneling.threshold_hz}};
    root["derive"] = {{"L_nm", c.derive.lengths_nm}};
    root["sweep"] = {{"parameter", std::string(to_string(c.sweep.parameter))},
                     {"min", c.sweep.min},
                     {"max", c.sweep.max},
                     {"points", c.sweep.points},
                     {"n_min", c.sweep.n_min},
                     {"n_max", c.sweep.n_max},
                     {"cell", c.sweep.cell},
                     {"tied_gates", c.sweep.tied_gates},
                     {"tie_substrate", c.sweep.tie_substrate}};

    json& a = root["anneal"];
    a["problem"] = std::string(to_string(c.anneal.problem));
    a["sites"] = c.anneal.sites;
    a["edges"] = json::array();
    for (const auto& e : c.anneal.edges) a["edges"].push_back({e.u, e.v, e.weight});
    a["h_eV"] = c.anneal.h;
    a["couplings"] = json::array();
    for (const auto& k : c.anneal.couplings) a["couplings"].push_back({k.i, k.j, k.j_ev});
    a["rows"] = c.anneal.rows;
    a["cols"] = c.anneal.cols;
    a["n_G"] = c.anneal.n_g;
    a["V_CG_V"] = c.anneal.v_cg;
    put(a, "delta0_eV", c.anneal.delta0_ev);
    a["profile"] = std::string(to_string(c.anneal.profile));
    a["T_total"] = c.anneal.total_time;
    a["steps"] = c.anneal.steps;
    a["shots"] = c.anneal.shots;
    a["trace_every"] = c.anneal.trace_every;

    json& d = root["decoherence"];
    d["gamma_eV"] = c.decoherence.gamma_ev;
    d["sound_speed_m_s"] = c.decoherence.sound_speed;
    d["density_kg_m3"] = c.decoherence.density;
    d["debye_K"] = c.decoherence.debye_temperature;
    put(d, "nu", c.decoherence.nu);
    put(d, "d", c.decoherence.d);
    d["alpha"] = c.decoherence.alpha;
    d["delta_K"] = c.decoherence.delta_kelvin;
    put(d, "t_max_s", c.decoherence.t_max_s);
    d["points"] = c.decoherence.points;

    return root.dump(2) + "\n";
}

void validate(const RunConfig& c) {
    const auto& g = c.geometry;
    check(positive(g.coupling_ratio) && g.coupling_ratio < 1.0, "geometry.CR", "must lie in (0, 1)");
    check(positive(g.length_nm), "geometry.L_nm", "must be positive");
    check(positive(g.d_ox_nm), "geometry.d_ox_nm", "must be positive");
    check(positive(g.height_nm), "geometry.Z_FG_nm", "must be positive");
    if (g.width_nm) check(positive(*g.width_nm), "geometry.W_nm", "must be positive");
    if (g.gap_nm) check(positive(*g.gap_nm), "geometry.x_gap_nm", "must be positive");
    if (g.d_a_nm) check(positive(*g.d_a_nm), "geometry.d_A_nm", "must be positive");
    check(positive(c.materials.eps_ox_rel), "materials.eps_ox_rel", "must be positive");
    check(positive(c.materials.eps_a_rel), "materials.eps_A_rel", "must be positive");
    rethrow_as("materials", [&] { c.materials.stack().validate(); });
    rethrow_as("geometry", [&] { resolve_geometry(g, c.materials).validate(); });

    const std::size_t cells = c.bias.v_cg.size();
    check(cells >= 2, "bias.V_CG_V", "need at least two cells");
    check(c.bias.v_node.size() == cells + 1, "bias.V_node_V",
          "need one more diffusion node than cells (" + std::to_string(cells + 1) + ")");
    check(c.n_g.size() == cells, "n_G", "need one entry per cell (" + std::to_string(cells) + ")");

    check(positive(c.tunneling.threshold_hz), "tunneling.threshold_Hz", "must be positive");

    for (double l : c.derive.lengths_nm) check(positive(l), "derive.L_nm", "lengths must be positive");

    const auto& w = c.sweep;
    check(w.points >= 1, "sweep.points", "need at least one point");
    check(w.min <= w.max, "sweep.min", "must not exceed sweep.max");
    if (w.parameter == SweepParameter::Parabola) {
        check(w.points >= 2, "sweep.points", "a parabola sweep needs at least two points");
        check(w.min < w.max, "sweep.min", "parabola range is empty");
        check(w.n_min <= w.n_max, "sweep.n_min", "must not exceed sweep.n_max");
        check(w.cell < cells, "sweep.cell", "out of range");
        for (auto t : w.tied_gates) check(t < cells, "sweep.tied_gates", "gate index out of range");
    } else if (w.parameter != SweepParameter::GateVoltage) {
        check(w.min > 0.0, "sweep.min", "geometric sweeps need positive values");
    }

    const auto& a = c.anneal;
    switch (a.problem) {
        case ProblemKind::MaxCut:
            check(a.sites >= 1 && a.sites <= kMaxSites, "anneal.sites", "must lie in 1..24");
            for (const auto& e : a.edges) {
                check(e.u < a.sites && e.v < a.sites, "anneal.edges", "vertex out of range");
                check(e.u != e.v, "anneal.edges", "self-loops are not allowed");
                check(positive(e.weight), "anneal.edges", "weights must be positive");
            }
            break;
        case ProblemKind::Ising:
            check(a.sites >= 1 && a.sites <= kMaxSites, "anneal.sites", "must lie in 1..24");
            check(a.h.empty() || a.h.size() == a.sites, "anneal.h_eV", "need one field per site");
            for (const auto& k : a.couplings) {
                check(k.i < a.sites && k.j < a.sites && k.i != k.j, "anneal.couplings", "bad site pair");
            }
            break;
        case ProblemKind::FgGrid:
            check(a.rows >= 1 && a.cols >= 1 && a.rows * a.cols <= kMaxSites, "anneal.rows",
                  "grid must have 1..24 cells");
            check(a.n_g.empty() || a.n_g.size() == a.rows * a.cols, "anneal.n_G", "need one entry per grid cell");
            check(cells == 3, "bias.V_CG_V", "fg_grid derives its couplings from a three-cell bias set");
            break;
    }
    if (a.delta0_ev) check(positive(*a.delta0_ev), "anneal.delta0_eV", "must be positive");
    check(positive(a.total_time), "anneal.T_total", "must be positive");
    check(a.steps >= 1, "anneal.steps", "must be at least 1");
    check(a.shots >= 1, "anneal.shots", "must be at least 1");
    check(a.trace_every >= 0, "anneal.trace_every", "must not be negative");

    const auto& d = c.decoherence;
    rethrow_as("decoherence", [&] { d.environment().validate(); });
    check(positive(d.delta_kelvin), "decoherence.delta_K", "must be positive");
    check(d.points >= 2, "decoherence.points", "need at least two points");
    if (d.t_max_s) check(positive(*d.t_max_s), "decoherence.t_max_s", "must be positive");
}

std::string config_hash(const RunConfig& config) {
    const std::string text = emit_config(config);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fgqa::cli
