#include "aximhd/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aximhd/error.hpp"

namespace aximhd {

using nlohmann::json;

Mode parse_mode(const std::string& s) {
    if (s == "ideal") return Mode::ideal;
    if (s == "resistive") return Mode::resistive;
    throw ConfigError("physics.mode: unknown value '" + s + "' (expected ideal or resistive)");
}

PiScheme parse_pi_scheme(const std::string& s) {
    if (s == "upwind1") return PiScheme::upwind1;
    if (s == "muscl-minmod") return PiScheme::muscl_minmod;
    throw ConfigError("schemes.pi_scheme: unknown value '" + s + "' (expected upwind1 or muscl-minmod)");
}

OmegaScheme parse_omega_scheme(const std::string& s) {
    if (s == "centered2") return OmegaScheme::centered2;
    throw ConfigError("schemes.omega_scheme: unknown value '" + s + "' (expected centered2)");
}

namespace {

const json& object_at(const json& doc, const std::string& path) {
    if (!doc.is_object()) throw ConfigError(path + ": expected an object");
    return doc;
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) throw ConfigError("unknown key '" + (path.empty() ? k : path + "." + k) + "'");
    }
}

double get_number(const json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& path, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& path, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

} // namespace

RunConfig parse_config(const json& doc) {
    object_at(doc, "config");
    only_keys(doc, "", {"grid", "physics", "schemes", "time", "initial", "output"});
    RunConfig cfg;

    if (doc.contains("grid")) {
        const json& g = object_at(doc["grid"], "grid");
        only_keys(g, "grid", {"n_r", "n_z", "r_max", "z_len"});
        cfg.grid.n_r = get_int(g, "n_r", "grid", cfg.grid.n_r);
        cfg.grid.n_z = get_int(g, "n_z", "grid", cfg.grid.n_z);
        cfg.grid.r_max = get_number(g, "r_max", "grid", cfg.grid.r_max);
        cfg.grid.z_len = get_number(g, "z_len", "grid", cfg.grid.z_len);
    }
    if (doc.contains("physics")) {
        const json& p = object_at(doc["physics"], "physics");
        only_keys(p, "physics", {"mode"});
        cfg.mode = parse_mode(get_string(p, "mode", "physics", "ideal"));
    }
    if (doc.contains("schemes")) {
        const json& s = object_at(doc["schemes"], "schemes");
        only_keys(s, "schemes", {"pi_scheme", "omega_scheme"});
        cfg.pi_scheme = parse_pi_scheme(get_string(s, "pi_scheme", "schemes", "upwind1"));
        cfg.omega_scheme = parse_omega_scheme(get_string(s, "omega_scheme", "schemes", "centered2"));
    }
    if (doc.contains("time")) {
        const json& t = object_at(doc["time"], "time");
        only_keys(t, "time", {"t_end", "cfl_adv", "cfl_diff", "dt_max", "output_every"});
        cfg.t_end = get_number(t, "t_end", "time", cfg.t_end);
        cfg.cfl_adv = get_number(t, "cfl_adv", "time", cfg.cfl_adv);
        cfg.cfl_diff = get_number(t, "cfl_diff", "time", cfg.cfl_diff);
        cfg.dt_max = get_number(t, "dt_max", "time", cfg.dt_max);
        cfg.output_every = get_int(t, "output_every", "time", cfg.output_every);
    }
    if (doc.contains("initial")) {
        const json& i = object_at(doc["initial"], "initial");
        only_keys(i, "initial", {"name", "params"});
        cfg.initial_name = get_string(i, "name", "initial", cfg.initial_name);
        if (i.contains("params")) {
            const json& p = object_at(i["params"], "initial.params");
            for (const auto& [k, v] : p.items()) {
                if (!v.is_number()) throw ConfigError("initial.params." + k + ": expected a number");
                cfg.initial_params[k] = v.get<double>();
            }
        }
    }
    if (doc.contains("output")) {
        const json& o = object_at(doc["output"], "output");
        only_keys(o, "output", {"dir", "snapshots"});
        cfg.output_dir = get_string(o, "dir", "output", cfg.output_dir);
        if (o.contains("snapshots")) {
            if (!o["snapshots"].is_boolean()) throw ConfigError("output.snapshots: expected true or false");
            cfg.snapshots = o["snapshots"].get<bool>();
        }
    }
    if (cfg.initial_name != "zero" && cfg.initial_name != "gaussian-ring" && cfg.initial_name != "opposing-pair") {
        throw ConfigError("initial.name: unknown value '" + cfg.initial_name +
                          "' (expected zero, gaussian-ring or opposing-pair)");
    }
    validate(cfg);
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const RunConfig& cfg) {
    json params = json::object();
    for (const auto& [k, v] : cfg.initial_params) params[k] = v;
    return json{
        {"grid", {{"n_r", cfg.grid.n_r}, {"n_z", cfg.grid.n_z}, {"r_max", cfg.grid.r_max}, {"z_len", cfg.grid.z_len}}},
        {"physics", {{"mode", to_string(cfg.mode)}}},
        {"schemes", {{"pi_scheme", to_string(cfg.pi_scheme)}, {"omega_scheme", to_string(cfg.omega_scheme)}}},
        {"time",
         {{"t_end", cfg.t_end},
          {"cfl_adv", cfg.cfl_adv},
          {"cfl_diff", cfg.cfl_diff},
          {"dt_max", cfg.dt_max},
          {"output_every", cfg.output_every}}},
        {"initial", {{"name", cfg.initial_name}, {"params", params}}},
        {"output", {{"dir", cfg.output_dir}, {"snapshots", cfg.snapshots}}},
    };
}

} // namespace aximhd
