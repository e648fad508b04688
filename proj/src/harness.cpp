#include "macsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace macsim {

namespace {

using nlohmann::json;

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Model-reading choices baked into the analytic module, echoed into every
// manifest so result files are self-describing.
json canonicalization_notes()
{
    return json::array({
        "csma_ca throughput uses the balanced 1-persistent carrier-sense form",
        "csma_ca delay_vs_load composes throughput_vs_load into delay_vs_throughput",
        "aloha-family delay constants: pure/csma 1+a, slotted 1.5+a",
        "tdma throughput_vs_load uses the additive three-term queue structure",
        "tdma/fdma delay_vs_load denominators are the channel rate C",
        "tdma/fdma values are native time-like units (seconds), not normalized",
        "throughput_from_delay returns 8*x/D with x treated as a bit count",
        "default a = 0.01 (propagation ratio; not fixed by the parameter tables)",
        "simulator propagation delay = a*(L/C); corruption probability P applies "
        "to fdma and slotted_aloha only",
    });
}

json params_to_json(const TechniqueParams& p)
{
    json j;
    j["N"] = p.N;
    j["L"] = p.L;
    j["C"] = p.C;
    j["tau"] = p.tau;
    j["P"] = p.P ? json(*p.P) : json();
    j["lambda"] = p.lambda ? json(*p.lambda) : json();
    j["K"] = p.K ? json(*p.K) : json();
    j["a"] = p.a;
    return j;
}

TechniqueParams params_from_json(const json& j)
{
    TechniqueParams p;
    p.N = j.at("N").get<std::int64_t>();
    p.L = j.at("L").get<std::int64_t>();
    p.C = j.at("C").get<double>();
    p.tau = j.at("tau").get<double>();
    if (!j.at("P").is_null()) p.P = j.at("P").get<double>();
    if (!j.at("lambda").is_null()) p.lambda = j.at("lambda").get<double>();
    if (!j.at("K").is_null()) p.K = j.at("K").get<double>();
    p.a = j.at("a").get<double>();
    return p;
}

json sweep_to_json(const SweepSpec& s)
{
    return json{{"start", s.start},
                {"stop", s.stop},
                {"points", s.points},
                {"scale", s.scale == SweepScale::Linear ? "linear" : "logarithmic"}};
}

SweepSpec sweep_from_json(const json& j)
{
    SweepSpec s;
    s.start = j.at("start").get<double>();
    s.stop = j.at("stop").get<double>();
    s.points = j.at("points").get<int>();
    s.scale = j.at("scale").get<std::string>() == "linear" ? SweepScale::Linear
                                                           : SweepScale::Logarithmic;
    return s;
}

json base_manifest(const char* command, const std::vector<AccessTechnique>& techniques,
                   const HarnessConfig& config, const std::string& output_name)
{
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["created_utc"] = utc_timestamp();
    j["command"] = command;
    json names = json::array();
    for (AccessTechnique t : techniques) names.push_back(to_string(t));
    j["techniques"] = names;
    j["sweep"] = sweep_to_json(config.sweep);
    json params;
    for (const auto& [tech, p] : config.params) params[to_string(tech)] = params_to_json(p);
    j["params"] = params;
    j["overrides"] = config.overrides;
    j["canonicalization"] = canonicalization_notes();
    j["output"] = output_name;
    return j;
}

json sim_settings_json(const HarnessConfig& config)
{
    const double sifs = config.csma.sifs.value_or(
        config.params.at(AccessTechnique::CsmaCa).tau / 50.0);
    return json{{"horizon", config.horizon},
                {"seeds", config.seeds},
                {"backoff_window", config.backoff_window},
                {"retry_limit", config.retry_limit},
                {"csma",
                 {{"sifs", sifs},
                  {"rts_bits", config.csma.rts_bits},
                  {"cts_bits", config.csma.cts_bits},
                  {"ack_bits", config.csma.ack_bits},
                  {"max_retries", config.csma.max_retries}}},
                {"load_mapping", "lambda_per_node = G*C/(L*N)"}};
}

std::vector<AccessTechnique> sorted_by_enum(std::vector<AccessTechnique> techniques)
{
    std::sort(techniques.begin(), techniques.end(),
              [](AccessTechnique a, AccessTechnique b) {
                  return static_cast<int>(a) < static_cast<int>(b);
              });
    techniques.erase(std::unique(techniques.begin(), techniques.end()), techniques.end());
    return techniques;
}

std::optional<double> oracle_throughput(AccessTechnique tech, double G)
{
    switch (tech) {
        case AccessTechnique::PureAloha: return G * std::exp(-2.0 * G);
        case AccessTechnique::SlottedAloha: return G * std::exp(-G);
        default: return std::nullopt;
    }
}

// Trial count for the binomial error band: slots for S-ALOHA, frame times
// otherwise.
double trial_count(AccessTechnique tech, double horizon, const TechniqueParams& p)
{
    return tech == AccessTechnique::SlottedAloha ? horizon / p.tau : horizon / p.frame_time();
}

}  // namespace

double agreement_tolerance(double oracle_T, double frames)
{
    const double rel = 0.05 * oracle_T;
    const double se = std::sqrt(std::max(oracle_T * (1.0 - oracle_T), 0.0) / frames);
    return std::max(rel, 3.0 * se);
}

AnalyticOutput run_analytic(ScenarioKind scenario, std::vector<AccessTechnique> techniques,
                            const HarnessConfig& config, const std::string& output_name)
{
    techniques = sorted_by_enum(std::move(techniques));
    std::ostringstream csv;
    csv << "technique,scenario,G,T,D,saturated\n";
    for (AccessTechnique tech : techniques) {
        const std::vector<CurvePoint> curve =
            generate_curve(tech, scenario, config.sweep, config.params.at(tech));
        for (const CurvePoint& pt : curve) {
            csv << to_string(tech) << ',' << to_string(scenario) << ',' << format_number(pt.G)
                << ',' << format_number(pt.T) << ',' << format_number(pt.D) << ','
                << (pt.saturated ? 1 : 0) << '\n';
        }
    }

    json manifest = base_manifest("analytic", techniques, config, output_name);
    manifest["scenario"] = to_string(scenario);
    return {csv.str(), manifest.dump(2) + "\n"};
}

SimulateOutput run_simulate(std::vector<AccessTechnique> techniques, const HarnessConfig& config,
                            const std::string& output_name)
{
    techniques = sorted_by_enum(std::move(techniques));
    const std::vector<double> loads = make_sweep(config.sweep);

    struct Cell {
        AccessTechnique tech;
        double load;
        std::uint64_t seed;
        SimStats stats;
    };
    std::vector<Cell> cells;
    for (AccessTechnique tech : techniques)
        for (double load : loads)
            for (std::uint64_t seed : config.seeds) cells.push_back({tech, load, seed, {}});

    // Runs are independent; dispatch in parallel, keep output order fixed.
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(cells.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            Cell& cell = cells[i];
            cell.stats = run(config.make_sim_config(cell.tech, cell.load, cell.seed)).stats;
        }
    };
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w + 1 < workers; ++w)
        futures.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : futures) f.get();

    std::ostringstream csv;
    csv << "technique,G,seed,horizon,generated,delivered,collided,dropped,in_flight,"
           "measured_G,measured_T,mean_delay,max_delay,mean_delay_norm\n";
    std::ostringstream summary;
    summary << "simulate summary (" << kToolName << " " << kToolVersion << ")\n";
    summary << "runs: " << cells.size() << "; horizon " << format_number(config.horizon)
            << " s; tolerance = max(5%, 3 binomial standard errors)\n";
    summary << "technique      G        seed  measured_T  oracle_T    deviation\n";
    bool any_oracle = false;
    for (const Cell& cell : cells) {
        const TechniqueParams& p = config.params.at(cell.tech);
        const SimStats& st = cell.stats;
        csv << to_string(cell.tech) << ',' << format_number(cell.load) << ',' << cell.seed << ','
            << format_number(config.horizon) << ',' << st.generated << ',' << st.delivered << ','
            << st.collided_transmissions << ',' << st.dropped << ',' << st.in_flight << ','
            << format_number(st.measured_G) << ',' << format_number(st.measured_T) << ',';
        csv << (st.mean_delay ? format_number(*st.mean_delay) : "") << ','
            << (st.max_delay ? format_number(*st.max_delay) : "") << ','
            << (st.mean_delay_normalized(p) ? format_number(*st.mean_delay_normalized(p)) : "")
            << '\n';

        if (const auto oracle = oracle_throughput(cell.tech, cell.load)) {
            any_oracle = true;
            const double dev = *oracle > 0.0 ? (st.measured_T - *oracle) / *oracle : 0.0;
            char line[160];
            std::snprintf(line, sizeof line, "%-14s %-8s %-5llu %-11s %-11s %+.2f%%\n",
                          to_string(cell.tech).c_str(), format_number(cell.load).c_str(),
                          static_cast<unsigned long long>(cell.seed),
                          format_number(st.measured_T).c_str(), format_number(*oracle).c_str(),
                          100.0 * dev);
            summary << line;
        }
    }
    if (!any_oracle)
        summary << "(no closed-form throughput oracle for the selected techniques)\n";

    json manifest = base_manifest("simulate", techniques, config, output_name);
    manifest["sim"] = sim_settings_json(config);
    return {csv.str(), summary.str(), manifest.dump(2) + "\n"};
}

std::string run_from_manifest(const std::string& manifest_text)
{
    json j;
    try {
        j = json::parse(manifest_text);
    } catch (const json::parse_error& err) {
        throw config_error(std::string("manifest parse error: ") + err.what());
    }
    HarnessConfig config = default_config();
    config.sweep = sweep_from_json(j.at("sweep"));
    for (auto& [name, pj] : j.at("params").items()) {
        const auto tech = technique_from_string(name);
        if (!tech) throw config_error("manifest names unknown technique '" + name + "'");
        config.params[*tech] = params_from_json(pj);
    }
    config.overrides = j.value("overrides", std::vector<std::string>{});
    std::vector<AccessTechnique> techniques;
    for (const auto& name : j.at("techniques")) {
        const auto tech = technique_from_string(name.get<std::string>());
        if (!tech)
            throw config_error("manifest names unknown technique '" + name.get<std::string>() +
                               "'");
        techniques.push_back(*tech);
    }
    const std::string command = j.at("command").get<std::string>();
    const std::string output_name = j.value("output", std::string("output.csv"));
    if (command == "analytic") {
        const auto scenario = scenario_from_string(j.at("scenario").get<std::string>());
        if (!scenario) throw config_error("manifest names unknown scenario");
        return run_analytic(*scenario, techniques, config, output_name).csv;
    }
    if (command == "simulate") {
        const json& sim = j.at("sim");
        config.horizon = sim.at("horizon").get<double>();
        config.seeds = sim.at("seeds").get<std::vector<std::uint64_t>>();
        config.backoff_window = sim.at("backoff_window").get<int>();
        config.retry_limit = sim.at("retry_limit").get<int>();
        const json& csma = sim.at("csma");
        config.csma.sifs = csma.at("sifs").get<double>();
        config.csma.rts_bits = csma.at("rts_bits").get<std::int64_t>();
        config.csma.cts_bits = csma.at("cts_bits").get<std::int64_t>();
        config.csma.ack_bits = csma.at("ack_bits").get<std::int64_t>();
        config.csma.max_retries = csma.at("max_retries").get<int>();
        return run_simulate(techniques, config, output_name).csv;
    }
    throw config_error("manifest command '" + command + "' is not re-runnable");
}

CompareOutput run_compare(const CsvTable& analytic, const CsvTable& sim,
                          const std::string& sim_manifest_text)
{
    const std::size_t a_tech = analytic.column("technique");
    const std::size_t a_g = analytic.column("G");
    const std::size_t a_t = analytic.column("T");
    const std::size_t a_d = analytic.column("D");
    const std::size_t s_tech = sim.column("technique");
    const std::size_t s_g = sim.column("G");
    const std::size_t s_T = sim.column("measured_T");
    const std::size_t s_h = sim.column("horizon");

    json manifest;
    try {
        manifest = json::parse(sim_manifest_text);
    } catch (const json::parse_error& err) {
        throw csv_error(std::string("simulation manifest parse error: ") + err.what());
    }

    // Sweep axis of an analytic row: G where present, else the throughput
    // coordinate (delay_vs_throughput scenario).
    auto axis_of = [&](const std::vector<std::string>& row) {
        const double g = parse_double(row[a_g]);
        return std::isnan(g) ? parse_double(row[a_t]) : g;
    };

    std::vector<double> a_grid, s_grid;
    for (const auto& row : analytic.rows) {
        const double x = axis_of(row);
        if (std::find(a_grid.begin(), a_grid.end(), x) == a_grid.end()) a_grid.push_back(x);
    }
    for (const auto& row : sim.rows) {
        const double x = parse_double(row[s_g]);
        if (std::find(s_grid.begin(), s_grid.end(), x) == s_grid.end()) s_grid.push_back(x);
    }
    std::sort(a_grid.begin(), a_grid.end());
    std::sort(s_grid.begin(), s_grid.end());
    if (a_grid.size() != s_grid.size())
        throw csv_error("sweep grids differ in size (" + std::to_string(a_grid.size()) + " vs " +
                        std::to_string(s_grid.size()) + ")");
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        if (std::abs(a_grid[i] - s_grid[i]) > 1e-9 * (1.0 + std::abs(a_grid[i])))
            throw csv_error("sweep grids mismatch at load " + format_number(s_grid[i]));

    std::ostringstream report;
    report << "comparison report (" << kToolName << " " << kToolVersion << ")\n";
    report << "a and model-reading notes: see the CSV manifests\n\n";

    // Oracle deviations per technique.
    report << "throughput deviation vs closed form, tolerance = max(5%, 3 binomial se)\n";
    bool all_pass = true;
    for (AccessTechnique tech :
         {AccessTechnique::PureAloha, AccessTechnique::SlottedAloha}) {
        const std::string name = to_string(tech);
        double worst_rel = 0.0, worst_load = 0.0;
        bool tech_pass = true, seen = false;
        const TechniqueParams p = params_from_json(manifest.at("params").at(name));
        for (const auto& row : sim.rows) {
            if (row[s_tech] != name) continue;
            seen = true;
            const double G = parse_double(row[s_g]);
            const double measured = parse_double(row[s_T]);
            const double horizon = parse_double(row[s_h]);
            const double oracle = tech == AccessTechnique::PureAloha ? G * std::exp(-2.0 * G)
                                                                     : G * std::exp(-G);
            const double tol = agreement_tolerance(oracle, trial_count(tech, horizon, p));
            const double dev = std::abs(measured - oracle);
            if (oracle > 0.0 && dev / oracle > worst_rel) {
                worst_rel = dev / oracle;
                worst_load = G;
            }
            if (dev > tol) tech_pass = false;
        }
        if (!seen) continue;
        char line[160];
        std::snprintf(line, sizeof line, "  %s: %s (max dev %.1f%% at G=%s)\n", name.c_str(),
                      tech_pass ? "PASS" : "FAIL", 100.0 * worst_rel,
                      format_number(worst_load).c_str());
        report << line;
        all_pass = all_pass && tech_pass;
    }

    // Delay ordering per load, from the analytic rows.
    report << "\ndelay ordering by sweep value (ascending analytic delay)\n";
    for (double x : a_grid) {
        std::vector<std::pair<double, std::string>> order;
        for (const auto& row : analytic.rows) {
            if (std::abs(axis_of(row) - x) > 1e-12) continue;
            const double d = parse_double(row[a_d]);
            if (std::isnan(d)) continue;
            order.emplace_back(d, row[a_tech]);
        }
        std::sort(order.begin(), order.end());
        report << "  " << format_number(x) << ": ";
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i) report << " < ";
            report << order[i].second;
        }
        if (order.empty()) report << "(no finite delays)";
        report << '\n';
    }

    report << "\nresult: " << (all_pass ? "PASS" : "FAIL") << '\n';
    return {report.str(), all_pass};
}

}  // namespace macsim
