#include "macsim/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "macsim/harness.hpp"

namespace macsim {

namespace {

std::vector<AccessTechnique> parse_techniques(const std::vector<std::string>& names)
{
    std::vector<AccessTechnique> techs;
    for (const std::string& entry : names) {
        std::istringstream ss(entry);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const auto tech = technique_from_string(tok);
            if (!tech) {
                std::cerr << "error: unknown technique '" << tok << "' (expected one of";
                for (AccessTechnique t : kAllTechniques) std::cerr << ' ' << to_string(t);
                std::cerr << ")\n";
                throw ExitCode(kUnknownTechnique);
            }
            techs.push_back(*tech);
        }
    }
    if (techs.empty()) {
        std::cerr << "error: empty technique list\n";
        throw ExitCode(kUsageError);
    }
    return techs;
}

SweepSpec parse_sweep(const std::string& text)
{
    std::vector<std::string> parts;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4) {
        std::cerr << "error: --sweep expects start:stop:points:lin|log\n";
        throw ExitCode(kInvalidSweep);
    }
    SweepSpec spec;
    try {
        spec.start = std::stod(parts[0]);
        spec.stop = std::stod(parts[1]);
        spec.points = std::stoi(parts[2]);
    } catch (const std::exception&) {
        std::cerr << "error: non-numeric sweep bounds in '" << text << "'\n";
        throw ExitCode(kInvalidSweep);
    }
    if (parts[3] == "lin")
        spec.scale = SweepScale::Linear;
    else if (parts[3] == "log")
        spec.scale = SweepScale::Logarithmic;
    else {
        std::cerr << "error: sweep scale must be lin or log\n";
        throw ExitCode(kInvalidSweep);
    }
    try {
        make_sweep(spec);
    } catch (const validation_error& err) {
        std::cerr << "error: invalid sweep: " << err.what() << '\n';
        throw ExitCode(kInvalidSweep);
    }
    return spec;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        throw ExitCode(kUnwritablePath);
    }
    out << content;
    if (!out.good()) {
        std::cerr << "error: short write to '" << path << "'\n";
        throw ExitCode(kUnwritablePath);
    }
}

HarnessConfig resolve_config(const std::string& config_path)
{
    if (config_path.empty()) return default_config();
    return load_config(config_path);
}

void ensure_sweep_valid(const SweepSpec& spec)
{
    try {
        make_sweep(spec);
    } catch (const validation_error& err) {
        std::cerr << "error: invalid sweep: " << err.what() << '\n';
        throw ExitCode(kInvalidSweep);
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw csv_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv)
{
    CLI::App app{"analytic models and discrete-event simulation of five medium-access "
                 "techniques (pure/slotted ALOHA, CSMA/CA, TDMA, FDMA)"};
    app.require_subcommand(1);

    std::string config_path, out_path, scenario_name, sweep_text;
    std::vector<std::string> technique_names{"pure_aloha,slotted_aloha,csma_ca,tdma,fdma"};
    std::uint64_t seed_override = 0;
    bool seed_given = false;

    CLI::App* analytic = app.add_subcommand("analytic", "evaluate closed-form curves to CSV");
    analytic->add_option("--scenario", scenario_name,
                         "delay_vs_throughput | delay_vs_load | throughput_vs_load")
        ->required();
    analytic->add_option("--techniques", technique_names, "comma-separated technique list");
    analytic->add_option("--sweep", sweep_text, "start:stop:points:lin|log");
    analytic->add_option("--config", config_path, "configuration file");
    analytic->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "run the event simulator over a load sweep");
    simulate->add_option("--techniques", technique_names, "comma-separated technique list");
    simulate->add_option("--sweep", sweep_text, "start:stop:points:lin|log");
    simulate->add_option("--config", config_path, "configuration file");
    simulate->add_option("--seed", seed_override, "single RNG seed (overrides config seeds)");
    simulate->add_option("--out", out_path, "output CSV path")->required();

    std::string analytic_csv_path, sim_csv_path;
    CLI::App* compare = app.add_subcommand("compare", "check simulated results against the models");
    compare->add_option("analytic_csv", analytic_csv_path, "CSV from `analytic`")->required();
    compare->add_option("sim_csv", sim_csv_path, "CSV from `simulate`")->required();
    compare->add_option("--out", out_path, "report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kUsageError;
    }

    try {
        if (analytic->parsed()) {
            const auto scenario = scenario_from_string(scenario_name);
            if (!scenario) {
                std::cerr << "error: unknown scenario '" << scenario_name << "'\n";
                return kUsageError;
            }
            const auto techniques = parse_techniques(technique_names);
            HarnessConfig config = resolve_config(config_path);
            if (!sweep_text.empty()) config.sweep = parse_sweep(sweep_text);
            ensure_sweep_valid(config.sweep);
            const AnalyticOutput result = run_analytic(*scenario, techniques, config, out_path);
            write_file(out_path, result.csv);
            write_file(out_path + ".manifest.json", result.manifest);
            return kOk;
        }
        if (simulate->parsed()) {
            seed_given = simulate->count("--seed") > 0;
            const auto techniques = parse_techniques(technique_names);
            HarnessConfig config = resolve_config(config_path);
            if (!sweep_text.empty()) config.sweep = parse_sweep(sweep_text);
            if (seed_given) config.seeds = {seed_override};
            ensure_sweep_valid(config.sweep);
            const SimulateOutput result = run_simulate(techniques, config, out_path);
            write_file(out_path, result.csv);
            write_file(out_path + ".summary.txt", result.summary);
            write_file(out_path + ".manifest.json", result.manifest);
            std::cout << result.summary;
            return kOk;
        }
        if (compare->parsed()) {
            const CsvTable analytic_table = read_csv(analytic_csv_path);
            const CsvTable sim_table = read_csv(sim_csv_path);
            const std::string manifest = read_file(sim_csv_path + ".manifest.json");
            const CompareOutput result = run_compare(analytic_table, sim_table, manifest);
            write_file(out_path, result.report);
            std::cout << result.report;
            return result.passed ? kOk : kCompareFailed;
        }
    } catch (ExitCode code) {
        return code;
    } catch (const saturation_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kInvalidSweep;
    } catch (const validation_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kConfigError;
    } catch (const config_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kConfigError;
    } catch (const csv_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kCsvError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kInternalError;
    }
    return kUsageError;
}

}  // namespace macsim
