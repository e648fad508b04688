#include "macsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace macsim {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& value, const std::string& where)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error("invalid number '" + value + "' for " + where);
    }
}

std::int64_t parse_int(const std::string& value, const std::string& where)
{
    const double v = parse_number(value, where);
    const auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v)
        throw config_error("expected integer for " + where + ", got '" + value + "'");
    return i;
}

bool is_technique_section(const std::string& s)
{
    return s == "defaults" || technique_from_string(s).has_value();
}

}  // namespace

double lambda_for_load(double G, const TechniqueParams& params)
{
    return G * params.C / (static_cast<double>(params.L) * static_cast<double>(params.N));
}

SimConfig HarnessConfig::make_sim_config(AccessTechnique tech, double load,
                                         std::uint64_t seed) const
{
    SimConfig cfg;
    cfg.technique = tech;
    cfg.params = params.at(tech);
    cfg.params.lambda = lambda_for_load(load, cfg.params);
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.backoff_window = backoff_window;
    cfg.retry_limit = retry_limit;
    cfg.csma = csma;
    return cfg;
}

HarnessConfig default_config()
{
    HarnessConfig cfg;
    for (AccessTechnique t : kAllTechniques) cfg.params[t] = default_params();
    return cfg;
}

HarnessConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");

    HarnessConfig cfg = default_config();
    std::string section = "defaults";
    std::string line;
    int lineno = 0;

    auto apply_param = [&cfg](const std::string& sec, const std::string& key, double value,
                              const std::string& where) {
        auto set = [&](TechniqueParams& p) {
            if (key == "N") p.N = static_cast<std::int64_t>(value);
            else if (key == "L") p.L = static_cast<std::int64_t>(value);
            else if (key == "C") p.C = value * 1000.0;   // kbit/s -> bits/s
            else if (key == "tau") p.tau = value / 1000.0;  // ms -> s
            else if (key == "P") p.P = value;
            else if (key == "lambda") p.lambda = value;
            else if (key == "K") p.K = value;
            else if (key == "a") p.a = value;
            else throw config_error("unknown key '" + key + "' in " + where);
        };
        if (sec == "defaults") {
            for (auto& [tech, p] : cfg.params) set(p);
        } else {
            set(cfg.params.at(*technique_from_string(sec)));
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw config_error("malformed section header at " + where);
            section = trim(s.substr(1, s.size() - 2));
            if (!is_technique_section(section) && section != "sweep" && section != "sim")
                throw config_error("unknown section '" + section + "' at " + where);
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key = value at " + where);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("expected key = value at " + where);

        if (is_technique_section(section)) {
            apply_param(section, key, parse_number(value, where), where);
        } else if (section == "sweep") {
            if (key == "start") cfg.sweep.start = parse_number(value, where);
            else if (key == "stop") cfg.sweep.stop = parse_number(value, where);
            else if (key == "points") cfg.sweep.points = static_cast<int>(parse_int(value, where));
            else if (key == "scale") {
                if (value == "lin" || value == "linear") cfg.sweep.scale = SweepScale::Linear;
                else if (value == "log" || value == "logarithmic")
                    cfg.sweep.scale = SweepScale::Logarithmic;
                else throw config_error("unknown sweep scale '" + value + "' at " + where);
            } else throw config_error("unknown key '" + key + "' in " + where);
        } else {  // [sim]
            if (key == "horizon") cfg.horizon = parse_number(value, where);
            else if (key == "seeds") {
                cfg.seeds.clear();
                std::istringstream ss(value);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(trim(tok), where)));
                if (cfg.seeds.empty()) throw config_error("empty seeds list at " + where);
            }
            else if (key == "backoff_window")
                cfg.backoff_window = static_cast<int>(parse_int(value, where));
            else if (key == "retry_limit")
                cfg.retry_limit = static_cast<int>(parse_int(value, where));
            else if (key == "sifs") cfg.csma.sifs = parse_number(value, where) / 1000.0;  // ms
            else if (key == "rts_bits") cfg.csma.rts_bits = parse_int(value, where);
            else if (key == "cts_bits") cfg.csma.cts_bits = parse_int(value, where);
            else if (key == "ack_bits") cfg.csma.ack_bits = parse_int(value, where);
            else if (key == "max_retries")
                cfg.csma.max_retries = static_cast<int>(parse_int(value, where));
            else throw config_error("unknown key '" + key + "' in " + where);
        }
        cfg.overrides.push_back(section + "." + key + "=" + value);
    }

    for (auto& [tech, p] : cfg.params) {
        try {
            p = validate_params(p);
        } catch (const validation_error& err) {
            throw config_error(std::string("[") + to_string(tech) + "] " + err.what());
        }
    }
    if (!(cfg.horizon > 0.0)) throw config_error("sim horizon > 0 violated");
    return cfg;
}

}  // namespace macsim
