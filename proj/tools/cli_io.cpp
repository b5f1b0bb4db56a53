#include "cli_io.hpp"

#include "ckwork/classical.hpp"
#include "ckwork/energetics.hpp"
#include "ckwork/ensembles.hpp"
#include "ckwork/errors.hpp"
#include "ckwork/oracles.hpp"
#include "ckwork/quantum.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef CKWORK_VERSION
#define CKWORK_VERSION "unknown"
#endif

namespace ckw::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& field, const std::string& v) {
    const auto s = lower(v);
    if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "off" || s == "no") return false;
    throw ConfigError(field, "expected on/off, got '" + v + "'");
}

const std::set<std::string> kEngines{"classical", "quantum", "alicki", "proposed", "liouville", "mu_state"};

const std::set<std::string> kKeys{"preset", "omega_over_lambda", "epsilon", "epsilon_delta", "theta", "E0",
                                  "mu", "grid", "engines", "oracle", "oracle_tolerance", "seed", "out",
                                  "k2_as_printed"};

std::vector<double> taus_of(const Scenario& s, const std::vector<double>& wt) {
    std::vector<double> t;
    t.reserve(wt.size());
    for (double v : wt) t.push_back(tau_from_omega_t(s, v));
    return t;
}

std::string file_stem(const std::string& kind, const RunConfig& c) {
    return kind + "_" + to_string(c.preset);
}

double rel(double a, double b) {
    const double d = std::max(std::abs(a), std::abs(b));
    return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

json dim_json(const DimensionlessParams& d, Model m) {
    json j;
    j["model"] = to_string(m);
    if (m == Model::damped) j["omega_over_lambda"] = d.omega_over_lambda;
    j["epsilon"] = d.epsilon;
    j["epsilon_delta"] = d.epsilon_delta;
    j["theta"] = d.theta;
    j["E0"] = d.E0;
    return j;
}

json asymptote_json(const Scenario& s) {
    const auto a = asymptotes(s);
    if (!a) return nullptr;
    json j;
    j["K_q"] = a->K_q;
    j["W_cl"] = a->W_cl;
    j["W_q"] = a->W_q;
    j["W_c"] = a->W_c;
    j["W_th"] = a->W_th;
    j["W_ak"] = a->W_ak;
    j["Q_ak"] = a->Q_ak;
    return j;
}

void write_meta(const std::string& path, const std::string& command, const RunConfig& c, const Scenario& s,
                const Table& t, json extra = json::object()) {
    json j;
    j["command"] = command;
    j["version"] = CKWORK_VERSION;
    j["preset"] = to_string(c.preset);
    j["parameters"] = dim_json(s.dim, s.model);
    j["units"] = {{"m0", s.phys.m0}, {"lambda", s.phys.lambda}, {"omega", s.phys.omega},
                  {"hbar", s.quantum ? json(s.phys.hbar) : json(nullptr)}};
    j["position_scale"] = position_scale(s) == PositionScale::x0 ? "x0" : "x_m";
    j["abscissa"] = s.model == Model::drag ? "lambda_t" : "omega_t";
    j["grid"] = {{"start", c.grid.start}, {"end", c.grid.end}, {"count", c.grid.count}};
    j["seed"] = c.seed;
    if (c.mu) j["mu"] = *c.mu;
    j["columns"] = t.columns;
    j["asymptotes"] = asymptote_json(s);
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write " + path);
    f << j.dump(2) << '\n';
}

Artifact emit(const std::string& stem, const std::string& command, const RunConfig& c, const Scenario& s,
              Table t, json extra = json::object()) {
    std::filesystem::create_directories(c.out);
    Artifact a;
    a.csv_path = (std::filesystem::path(c.out) / (stem + ".csv")).string();
    a.meta_path = (std::filesystem::path(c.out) / (stem + ".json")).string();
    write_csv_file(a.csv_path, t);
    write_meta(a.meta_path, command, c, s, t, std::move(extra));
    a.table = std::move(t);
    return a;
}

// Column-major helper for building tables.
struct Columns {
    std::vector<std::string> names;
    std::vector<std::vector<double>> data;
    void add(const std::string& n, std::vector<double> v) {
        names.push_back(n);
        data.push_back(std::move(v));
    }
    Table table() const {
        Table t;
        t.columns = names;
        const std::size_t n = data.empty() ? 0 : data.front().size();
        t.rows.assign(n, std::vector<double>(data.size()));
        for (std::size_t j = 0; j < data.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) t.rows[i][j] = data[j][i];
        return t;
    }
};

template <class F>
std::vector<double> map_taus(const std::vector<double>& taus, F f) {
    std::vector<double> out;
    out.reserve(taus.size());
    for (double t : taus) out.push_back(f(t));
    return out;
}

std::string position_column(const Scenario& s) {
    return position_scale(s) == PositionScale::x0 ? "x_over_x0" : "x_over_xm";
}

Scenario quantum_scenario(const RunConfig& c, const std::string& what) {
    if (!(c.dim.theta > 0.0)) throw ConfigError("theta", "must be > 0 for " + what);
    if (c.model == Model::drag) throw ConfigError("preset", what + " needs omega > 0 (not available for drag)");
    return scenario_for(c, true);
}

double mu_value(const RunConfig& c) { return c.mu.value_or(0.0); }

} // namespace

// ---------------------------------------------------------------------------

std::vector<double> TimeGrid::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = count == 1 ? start : start + (end - start) * i / (count - 1);
    return v;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open " + path);
    KeyValues kv;
    std::string line;
    int n = 0;
    while (std::getline(f, line)) {
        ++n;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", path + ":" + std::to_string(n) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues merge(const std::vector<KeyValues>& layers) {
    KeyValues out;
    for (const auto& l : layers)
        for (const auto& [k, v] : l) out[k] = v;
    return out;
}

Preset parse_preset(const std::string& s) {
    const auto p = lower(s);
    if (p == "uo") return Preset::uo;
    if (p == "oo") return Preset::oo;
    if (p == "harmonic") return Preset::harmonic;
    if (p == "drag") return Preset::drag;
    if (p == "custom") return Preset::custom;
    throw ConfigError("preset", "unknown preset '" + s + "' (UO, OO, harmonic, drag, custom)");
}

std::string to_string(Preset p) {
    switch (p) {
    case Preset::uo: return "UO";
    case Preset::oo: return "OO";
    case Preset::harmonic: return "harmonic";
    case Preset::drag: return "drag";
    case Preset::custom: return "custom";
    }
    return "?";
}

DimensionlessParams preset_params(Preset p) {
    switch (p) {
    case Preset::oo: return preset_oo();
    case Preset::harmonic:
    case Preset::drag: {
        auto d = preset_uo();
        d.omega_over_lambda = p == Preset::drag ? 0.0 : 1.0;
        return d;
    }
    default: return preset_uo();
    }
}

Model preset_model(Preset p) {
    if (p == Preset::harmonic) return Model::harmonic;
    if (p == Preset::drag) return Model::drag;
    return Model::damped;
}

TimeGrid parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw ConfigError("grid", "expected start:end:count, got '" + s + "'");
    TimeGrid g;
    g.start = parse_double("grid", parts[0]);
    g.end = parse_double("grid", parts[1]);
    const double n = parse_double("grid", parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7) throw ConfigError("grid", "count must be a positive integer");
    g.count = static_cast<int>(n);
    if (g.start < 0.0) throw ConfigError("grid", "start must be >= 0");
    if (g.end < g.start) throw ConfigError("grid", "end must be >= start");
    if (g.count > 1 && g.end == g.start) throw ConfigError("grid", "empty range with more than one point");
    return g;
}

RunConfig resolve(const KeyValues& kv) {
    for (const auto& [k, v] : kv)
        if (!kKeys.count(k)) throw ConfigError(k, "unknown setting");

    RunConfig c;
    if (auto it = kv.find("preset"); it != kv.end()) c.preset = parse_preset(it->second);
    c.dim = preset_params(c.preset);
    c.model = preset_model(c.preset);

    auto num = [&](const char* key, double& dst) {
        if (auto it = kv.find(key); it != kv.end()) dst = parse_double(key, it->second);
    };
    if (kv.count("omega_over_lambda") && c.model != Model::damped)
        throw ConfigError("omega_over_lambda", "not used by the " + to_string(c.preset) + " preset");
    num("omega_over_lambda", c.dim.omega_over_lambda);
    num("epsilon", c.dim.epsilon);
    num("epsilon_delta", c.dim.epsilon_delta);
    num("theta", c.dim.theta);
    num("E0", c.dim.E0);

    if (c.model == Model::damped && !(c.dim.omega_over_lambda > 0.0))
        throw ConfigError("omega_over_lambda", "must be > 0");
    if (!(c.dim.epsilon >= 0.0 && c.dim.epsilon < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
    if (!(c.dim.epsilon_delta > 0.0 && c.dim.epsilon_delta < 1.0))
        throw ConfigError("epsilon_delta", "must lie in (0, 1)");
    if (!(c.dim.theta >= 0.0)) throw ConfigError("theta", "must be >= 0");
    if (!(c.dim.E0 > 0.0)) throw ConfigError("E0", "must be > 0");
    if (c.model == Model::drag && c.dim.epsilon > 0.0)
        throw ConfigError("epsilon", "must be 0 without a restoring force");

    if (auto it = kv.find("mu"); it != kv.end()) {
        const double m = parse_double("mu", it->second);
        if (m < 0.0) throw ConfigError("mu", "must be >= 0");
        c.mu = m;
    }
    if (auto it = kv.find("grid"); it != kv.end()) c.grid = parse_grid(it->second);
    if (auto it = kv.find("engines"); it != kv.end()) {
        c.engines.clear();
        std::stringstream ss(it->second);
        std::string e;
        while (std::getline(ss, e, ',')) {
            e = lower(trim(e));
            if (e.empty()) continue;
            if (!kEngines.count(e)) throw ConfigError("engines", "unknown engine '" + e + "'");
            c.engines.insert(e);
        }
        if (c.engines.empty()) throw ConfigError("engines", "at least one engine is required");
    }
    if (auto it = kv.find("oracle"); it != kv.end()) c.oracle = parse_bool("oracle", it->second);
    num("oracle_tolerance", c.oracle_tolerance);
    if (!(c.oracle_tolerance > 0.0)) throw ConfigError("oracle_tolerance", "must be > 0");
    if (auto it = kv.find("k2_as_printed"); it != kv.end()) c.k2_as_printed = parse_bool("k2_as_printed", it->second);
    if (auto it = kv.find("seed"); it != kv.end()) {
        try {
            std::size_t pos = 0;
            if (it->second.empty() || !std::isdigit(static_cast<unsigned char>(it->second[0])))
                throw std::invalid_argument("");
            c.seed = std::stoull(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ConfigError("seed", "expected a non-negative integer");
        }
    }
    if (auto it = kv.find("out"); it != kv.end()) c.out = it->second;

    try {
        (void)materialize(c.dim, c.model);
    } catch (const RejectedParams& e) {
        throw ConfigError("parameters", e.what());
    }
    return c;
}

Scenario scenario_for(const RunConfig& c, bool want_quantum) {
    return materialize(c.dim, c.model, {}, want_quantum);
}

// ---- csv ------------------------------------------------------------------

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_number(r[j]);
        os << '\n';
    }
}

void write_csv_file(const std::string& path, const Table& t) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot write " + path);
    write_csv(f, t);
}

// ---- figures --------------------------------------------------------------

std::vector<std::string> figure_ids() { return {"4.2", "4.3", "4.4", "4.5", "4.6", "4.7", "4.8", "4.9"}; }

KeyValues figure_defaults(const std::string& id) {
    if (id == "4.2") return {{"preset", "UO"}};
    if (id == "4.3") return {{"preset", "OO"}};
    if (id == "4.4" || id == "4.5" || id == "4.7") return {{"preset", "UO"}};
    if (id == "4.6") return {{"preset", "UO"}, {"theta", "0"}};
    if (id == "4.8" || id == "4.9") return {{"preset", "UO"}, {"theta", "1"}};
    throw ConfigError("figure", "unknown figure '" + id + "'");
}

Table figure_table(const std::string& id, const RunConfig& c) {
    const std::vector<double> wt = c.grid.values();
    Columns cols;
    cols.add("omega_t", wt);

    if (id == "4.2" || id == "4.3") {
        const Scenario s = scenario_for(c, false);
        const auto taus = taus_of(s, wt);
        cols.add(position_column(s), map_taus(taus, [&](double t) { return classical_position(s, t); }));
        cols.add("W_cl", map_taus(taus, [&](double t) { return classical_work(s, t); }));
    } else if (id == "4.4" || id == "4.6") {
        const Scenario s = scenario_for(c, false);
        const auto taus = taus_of(s, wt);
        std::vector<double> q, w;
        for (double t : taus) {
            const auto a = alicki_work_heat(s, t);
            q.push_back(a.Q_ak);
            w.push_back(a.W_ak);
        }
        cols.add("Q_ak", q);
        cols.add("W_ak", w);
        cols.add("W_cl", map_taus(taus, [&](double t) { return classical_work(s, t); }));
    } else if (id == "4.5") {
        const Scenario s = scenario_for(c, false);
        const auto taus = taus_of(s, wt);
        std::vector<double> wc, wth, wq;
        for (double t : taus) {
            const auto w = quantum_work(s, t);
            wc.push_back(w.W_c);
            wth.push_back(w.W_th);
            wq.push_back(w.W_q);
        }
        cols.add("W_c", wc);
        cols.add("W_th", wth);
        cols.add("W_q", wq);
        cols.add("W_cl", map_taus(taus, [&](double t) { return classical_work(s, t); }));
    } else if (id == "4.7") {
        const Scenario s = quantum_scenario(c, "the Liouville ensembles");
        const auto taus = taus_of(s, wt);
        const auto g = matching_ensemble(s, false), mg = matching_ensemble(s, true);
        const double g0 = liouville_scaled(g, s, 0.0).v2, mg0 = liouville_scaled(mg, s, 0.0).v2;
        cols.add("W_q", map_taus(taus, [&](double t) { return quantum_work(s, t).W_q; }));
        cols.add("W_gcl", map_taus(taus, [&](double t) { return liouville_scaled(g, s, t).v2 - g0; }));
        cols.add("W_mgcl", map_taus(taus, [&](double t) { return liouville_scaled(mg, s, t).v2 - mg0; }));
    } else if (id == "4.8" || id == "4.9") {
        const Scenario s = quantum_scenario(c, "the superposition states");
        const auto taus = taus_of(s, wt);
        const auto mix = make_mu_state(s, 50.0), sup = make_mu_state(s, 0.0);
        if (id == "4.8") {
            cols.add("W_q_mixture", map_taus(taus, [&](double t) { return mu_work(mix, s, t).W_q; }));
            cols.add("W_q_superposition", map_taus(taus, [&](double t) { return mu_work(sup, s, t).W_q; }));
        } else {
            std::vector<double> wq, wc, wth;
            for (double t : taus) {
                const auto w = quantum_work(s, t);
                wq.push_back(w.W_q);
                wc.push_back(w.W_c);
                wth.push_back(w.W_th);
            }
            cols.add("W_q_gaussian", wq);
            cols.add("W_q_superposition", map_taus(taus, [&](double t) { return mu_work(sup, s, t).W_q; }));
            cols.add("W_c_gaussian", wc);
            cols.add("W_th_gaussian", wth);
            cols.add("W_th_superposition", map_taus(taus, [&](double t) { return mu_work(sup, s, t).W_th; }));
        }
    } else {
        throw ConfigError("figure", "unknown figure '" + id + "'");
    }
    return cols.table();
}

Artifact run_figure(const std::string& id, const RunConfig& c) {
    Table t = figure_table(id, c);
    const Scenario s = scenario_for(c, false);
    json extra;
    extra["figure"] = id;
    if (id == "4.8" || id == "4.9") {
        extra["mu_mixture"] = 50.0;
        extra["mu_superposition"] = 0.0;
        extra["theta_prime"] = theta_prime(s.dim);
        // W_q^mu at infinite time: minus the initial kinetic energy of the state
        extra["asymptote_W_q_superposition"] = -mu_kinetic_scaled(make_mu_state(s, 0.0), s, 0.0);
        extra["asymptote_W_q_mixture"] = -mu_kinetic_scaled(make_mu_state(s, 50.0), s, 0.0);
    }
    return emit("figure_" + id + "_" + to_string(c.preset), "figure " + id, c, s, std::move(t), extra);
}

// ---- simulate -------------------------------------------------------------

Table simulate_table(const RunConfig& c) {
    const auto& e = c.engines;
    const bool needs_quantum = e.count("liouville") || e.count("mu_state");
    const Scenario s = needs_quantum ? quantum_scenario(c, "the liouville and mu_state engines") : scenario_for(c, false);
    const std::vector<double> wt = c.grid.values();
    const auto taus = taus_of(s, wt);
    Columns cols;
    cols.add("omega_t", wt);

    if (e.count("classical")) {
        cols.add(position_column(s), map_taus(taus, [&](double t) { return classical_position(s, t); }));
        cols.add("K_cl", map_taus(taus, [&](double t) { return classical_kinetic(s, t); }));
        cols.add("W_cl", map_taus(taus, [&](double t) { return classical_work(s, t); }));
    }
    if (e.count("quantum")) cols.add("K_q", map_taus(taus, [&](double t) { return kinetic_energy(s, t); }));
    if (e.count("proposed")) {
        std::vector<double> wq, wc, wth;
        for (double t : taus) {
            const auto w = quantum_work(s, t);
            wq.push_back(w.W_q);
            wc.push_back(w.W_c);
            wth.push_back(w.W_th);
        }
        cols.add("W_q", wq);
        cols.add("W_c", wc);
        cols.add("W_th", wth);
    }
    if (e.count("alicki")) {
        std::vector<double> w, q;
        for (double t : taus) {
            const auto a = alicki_work_heat(s, t);
            w.push_back(a.W_ak);
            q.push_back(a.Q_ak);
        }
        cols.add("W_ak", w);
        cols.add("Q_ak", q);
    }
    if (e.count("liouville")) {
        const auto g = matching_ensemble(s, false), mg = matching_ensemble(s, true);
        const double g0 = liouville_scaled(g, s, 0.0).v2, mg0 = liouville_scaled(mg, s, 0.0).v2;
        cols.add("W_gcl", map_taus(taus, [&](double t) { return liouville_scaled(g, s, t).v2 - g0; }));
        cols.add("W_mgcl", map_taus(taus, [&](double t) { return liouville_scaled(mg, s, t).v2 - mg0; }));
    }
    if (e.count("mu_state")) {
        const auto st = make_mu_state(s, mu_value(c));
        cols.add("K_mu", map_taus(taus, [&](double t) { return mu_kinetic_scaled(st, s, t); }));
        cols.add("W_q_mu", map_taus(taus, [&](double t) { return mu_work(st, s, t).W_q; }));
    }
    return cols.table();
}

Artifact run_simulate(const RunConfig& c) {
    Table t = simulate_table(c);
    const Scenario s = scenario_for(c, false);
    json extra;
    extra["engines"] = std::vector<std::string>(c.engines.begin(), c.engines.end());
    Artifact a = emit(file_stem("simulate", c), "simulate", c, s, std::move(t), extra);
    if (c.oracle) {
        const auto rep = oracle_check(c);
        std::ofstream f(std::filesystem::path(c.out) / (file_stem("simulate", c) + ".oracle.json"), std::ios::binary);
        f << report_json(rep);
    }
    return a;
}

// ---- sweep ----------------------------------------------------------------

SweepSpec parse_sweep(const std::string& param, const std::string& range) {
    static const std::set<std::string> ok{"omega_over_lambda", "epsilon", "epsilon_delta", "theta", "mu"};
    std::string p = param;
    std::replace(p.begin(), p.end(), '-', '_');
    if (!ok.count(p)) throw ConfigError("param", "cannot sweep '" + param + "'");
    SweepSpec sw;
    sw.param = p;
    const TimeGrid g = [&] {
        try {
            return parse_grid(range);
        } catch (const ConfigError& e) {
            throw ConfigError("range", e.what());
        }
    }();
    sw.from = g.start;
    sw.to = g.end;
    sw.count = g.count;
    return sw;
}

Table sweep_table(const RunConfig& c, const SweepSpec& sw) {
    const bool mu = sw.param == "mu";
    Table t;
    t.columns = {sw.param, "omega_t_end", "W_cl", "W_q", "W_c", "W_th", "W_ak", "Q_ak"};
    if (mu) t.columns.push_back("W_q_mu");
    for (int i = 0; i < sw.count; ++i) {
        const double v = sw.count == 1 ? sw.from : sw.from + (sw.to - sw.from) * i / (sw.count - 1);
        RunConfig k = c;
        if (sw.param == "omega_over_lambda") k.dim.omega_over_lambda = v;
        if (sw.param == "epsilon") k.dim.epsilon = v;
        if (sw.param == "epsilon_delta") k.dim.epsilon_delta = v;
        if (sw.param == "theta") k.dim.theta = v;
        const Scenario s = mu ? quantum_scenario(k, "a mu sweep") : scenario_for(k, false);
        const double tau = tau_from_omega_t(s, c.grid.end);
        const auto w = quantum_work(s, tau);
        const auto a = alicki_work_heat(s, tau);
        std::vector<double> row{v, c.grid.end, classical_work(s, tau), w.W_q, w.W_c, w.W_th, a.W_ak, a.Q_ak};
        if (mu) row.push_back(mu_work(make_mu_state(s, v), s, tau).W_q);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Artifact run_sweep(const RunConfig& c, const SweepSpec& sw) {
    Table t = sweep_table(c, sw);
    const Scenario s = scenario_for(c, false);
    json extra;
    extra["sweep"] = {{"param", sw.param}, {"from", sw.from}, {"to", sw.to}, {"count", sw.count}};
    return emit("sweep_" + sw.param + "_" + to_string(c.preset), "sweep", c, s, std::move(t), extra);
}

// ---- oracle check ---------------------------------------------------------

bool OracleReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.skipped || r.passed; });
}

namespace {

CheckResult measured(std::string name, double dev, double tol, std::string note = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.deviation = dev;
    r.tolerance = tol;
    r.passed = std::isfinite(dev) && dev <= tol;
    r.note = std::move(note);
    return r;
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult r;
    r.name = std::move(name);
    r.skipped = true;
    r.note = std::move(why);
    return r;
}

std::vector<double> thin(const std::vector<double>& v, std::size_t max_n) {
    if (v.size() <= max_n) return v;
    std::vector<double> out;
    for (std::size_t i = 0; i < max_n; ++i) out.push_back(v[i * (v.size() - 1) / (max_n - 1)]);
    return out;
}

double rk4_deviation(const Scenario& s, double tau_end) {
    const double speed = s.model == Model::damped ? std::max(1.0, s.dim.omega_over_lambda) : 1.0;
    const double dt = 1e-3 / speed;
    const int stride = std::max(1, static_cast<int>(tau_end / dt / 200.0));
    const auto traj = rk4_classical(s, s.init.x0, s.init.p0, tau_end, dt, stride);
    const double w = s.phys.omega, scale = position_scale_value(s);
    double dev = 0.0;
    for (const auto& q : traj) {
        const auto c = classical_point(s, q.tau);
        const double xc = c.x_over_scale * scale;
        const double num = std::hypot(w * (q.x - xc), q.v - c.v);
        const double den = std::hypot(w * xc, c.v);
        dev = std::max(dev, den > 0.0 ? num / den : num);
        if (w == 0.0) dev = std::max(dev, std::abs(q.x - xc) / scale);
    }
    return dev;
}

} // namespace

OracleReport oracle_check(const RunConfig& c, const OracleOptions& o) {
    OracleReport rep;
    const Scenario s = scenario_for(c, false);
    const auto wt = c.grid.values();
    const auto taus = taus_of(s, wt);
    const double tau_end = taus.back();
    const auto sample = thin(taus, 101);

    rep.checks.push_back(measured("classical.rk4", rk4_deviation(s, std::min(tau_end, 10.0)), 1e-8,
                                  "energy-norm relative deviation over tau <= min(end, 10)"));

    {
        double dev = 0.0;
        const double k0 = kinetic_energy(s, 0.0);
        for (double t : sample) {
            const auto w = quantum_work(s, t);
            const auto a = alicki_work_heat(s, t);
            const double dk = kinetic_energy(s, t) - k0;
            dev = std::max({dev, std::abs(w.W_q - w.W_c - w.W_th), std::abs(w.W_q - dk),
                            std::abs(dk - a.W_ak - a.Q_ak), std::abs(w.W_c - classical_work(s, t))});
        }
        rep.checks.push_back(measured("energetics.identities", dev, 1e-10,
                                      "W_q = W_c + W_th = dK_q, dK_q = W_ak + Q_ak, W_c = W_cl"));
    }

    if (s.model == Model::harmonic) {
        rep.checks.push_back(skipped("alicki.quadrature", "W_ak vanishes identically for lambda = 0"));
    } else {
        double dev = 0.0;
        for (double t : thin(taus, 21)) {
            const double a = alicki_work_heat(s, t, AlickiMethod::closed_form).W_ak;
            const double b = alicki_work_heat(s, t, AlickiMethod::quadrature).W_ak;
            dev = std::max(dev, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
        rep.checks.push_back(measured("alicki.quadrature", dev, 1e-8));
    }

    if (!s.quantum) {
        const std::string why = s.model == Model::drag ? "no quantum state without a restoring force"
                                                       : "theta = 0: classical limit";
        for (const char* n : {"quantum.moment_consistency", "quantum.cn_self_convergence", "quantum.cn_norm",
                              "quantum.cn_equivalence", "liouville.correspondence", "liouville.monte_carlo",
                              "mu.limits"})
            rep.checks.push_back(skipped(n, why));
        return rep;
    }

    // Quantum closed forms are evaluated up to the tau cap only.
    std::vector<double> qsample;
    for (double t : sample)
        if (t <= kQuantumTauMax) qsample.push_back(t);
    const bool kforms = s.model == Model::damped;

    {
        double dev = 0.0;
        for (double t : qsample) {
            const auto g = evolved_gaussian(s, t);
            dev = std::max({dev, rel(g.mean_x2 - g.mean_x * g.mean_x, g.var_x),
                            rel(g.mean_p2 - g.mean_p * g.mean_p, g.var_p)});
            if (kforms)
                dev = std::max({dev, rel(mean_x2_kform(s, t), g.mean_x2), rel(mean_p2_kform(s, t), g.mean_p2)});
        }
        rep.checks.push_back(measured("quantum.moment_consistency", dev, 1e-10,
                                      kforms ? "k-constant and variance displays" : "variance displays"));
    }

    if (o.run_cn) {
        const double speed = s.model == Model::damped ? std::max(1.0, s.dim.omega_over_lambda) : 1.0;
        const std::vector<double> cn_taus{0.05, 0.1, 0.5};
        const auto grid = suggest_grid(s, 4096, 2e-3 / speed);
        try {
            const auto ref = crank_nicolson_referee(s, grid, cn_taus);
            rep.checks.push_back(measured("quantum.cn_self_convergence",
                                          std::max(ref.time_convergence, ref.space_convergence), 1e-6));
            rep.checks.push_back(measured("quantum.cn_norm", ref.norm_drift, 1e-10, "norm drift per unit tau"));
            const K2Variant v = c.k2_as_printed ? K2Variant::as_printed : K2Variant::consistent;
            double dev = 0.0;
            for (std::size_t k = 0; k < cn_taus.size(); ++k) {
                const auto g = evolved_gaussian(s, cn_taus[k]);
                CnObservables a;
                a.tau = cn_taus[k];
                a.norm = 1.0;
                a.mean_x = g.mean_x;
                a.mean_x2 = kforms ? mean_x2_kform(s, cn_taus[k]) : g.mean_x2;
                a.mean_p = g.mean_p;
                a.mean_p2 = kforms ? mean_p2_kform(s, cn_taus[k], v) : g.mean_p2;
                dev = std::max(dev, cn_relative_error(ref.obs[k], a));
            }
            rep.checks.push_back(measured("quantum.cn_equivalence", dev, c.oracle_tolerance,
                                          !kforms ? "explicit forms" : c.k2_as_printed ? "k2 as printed" : "k-constant route"));
        } catch (const Error& e) {
            rep.checks.push_back(measured("quantum.cn_equivalence", INFINITY, c.oracle_tolerance, e.what()));
        }
    } else {
        rep.checks.push_back(skipped("quantum.cn_equivalence", "disabled"));
    }

    {
        double dev = 0.0;
        try {
            const auto r = correspondence_check(s, qsample, 1e-10);
            dev = std::max({r.max_dev_v2, r.max_dev_v_sq, r.max_dev_var});
        } catch (const CorrespondenceViolation& e) {
            dev = INFINITY;
        }
        rep.checks.push_back(measured("liouville.correspondence", dev, 1e-10));
    }

    if (o.run_mc) {
        const std::vector<double> mc_taus{0.5, 1.0, 2.0};
        double worst = 0.0;
        for (bool mixed : {false, true}) {
            const auto ens = matching_ensemble(s, mixed);
            const SamplerEnsemble se{ens.x_center, ens.p_center, ens.sigma_x0, ens.sigma_p0, mixed};
            const double speed = s.model == Model::damped ? std::max(1.0, s.dim.omega_over_lambda) : 1.0;
            const auto est = monte_carlo_liouville(se, s, o.mc_samples, c.seed, mc_taus, 1e-3 / speed);
            for (std::size_t k = 0; k < mc_taus.size(); ++k) {
                const auto m = liouville_moments(ens, s, mc_taus[k]);
                worst = std::max({worst, std::abs(est[k].mean_v - m.mean_v) / est[k].se_mean_v,
                                  std::abs(est[k].mean_v2 - m.mean_v2) / est[k].se_mean_v2});
            }
        }
        rep.checks.push_back(measured("liouville.monte_carlo", worst, 5.0, "standard errors"));
    } else {
        rep.checks.push_back(skipped("liouville.monte_carlo", "disabled"));
    }

    {
        const auto inf = make_mu_state(s, 50.0), zero = make_mu_state(s, 0.0);
        double dev = 0.0;
        for (double t : sample)
            dev = std::max(dev, std::abs(mu_work(inf, s, t).W_q - quantum_work(s, t).W_q) / (std::exp(-50.0) + 1e-12));
        for (double t : qsample) {
            dev = std::max(dev, rel(mu_kinetic_scaled(zero, s, t), mu_kinetic_from_traces(zero, s, t)) / 1e-10);
        }
        rep.checks.push_back(measured("mu.limits", dev, 1.0, "deviation in units of the tolerance"));
    }
    return rep;
}

std::string report_json(const OracleReport& r) {
    json j;
    j["passed"] = r.passed();
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json e;
        e["name"] = c.name;
        e["status"] = c.skipped ? "skipped" : (c.passed ? "pass" : "fail");
        e["deviation"] = c.skipped || !std::isfinite(c.deviation) ? json(nullptr) : json(c.deviation);
        e["tolerance"] = c.skipped ? json(nullptr) : json(c.tolerance);
        if (!c.note.empty()) e["note"] = c.note;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

} // namespace ckw::cli
