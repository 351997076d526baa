#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fell/jobs.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fell::InputError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete saturated Fell bundles over finite groups: construction, "
                 "verification, classification, and crossed products"};
    app.require_subcommand(1);

    std::string config_path;
    std::int64_t modulus = 0;
    int samples = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = -1.0;
    int window = -1;
    bool oracle = false;

    const std::vector<std::string> commands = {
        "cohomology", "verify-fs",      "build",         "verify-axioms",
        "obstruction", "repair",        "classify",      "equiv",
        "crossed-verify", "crossed-build", "extract",    "demo-qtorus"};
    const std::vector<std::string> descriptions = {
        "second cohomology classes for a Picard homomorphism",
        "decide whether a twist is a factor system",
        "build the Fell bundle of a factor system",
        "run the F1-F7 axiom suite on a bundle",
        "the degree-3 obstruction cochain of a pre-factor system",
        "repair a pre-factor system when its characteristic class vanishes",
        "enumerate Ext classes via the simply transitive H^2 action",
        "decide equivalence of two factor systems",
        "check the twisted action conditions C1/C2",
        "build a crossed product bundle and verify the axioms",
        "find a unitary section and extract the twisted action",
        "lazy quantum-torus bundle over Z^d"};

    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("--config", config_path, "path to a JSON job configuration")
            ->check(CLI::ExistingFile);
        sub->add_option("--modulus", modulus, "coefficient modulus m (default |G|)");
        sub->add_option("--samples", samples, "samples per fiber (default 32)");
        sub->add_option("--seed", seed, "deterministic sampling seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--tol", tol, "comparison tolerance (default 1e-9)");
        sub->add_option("--window", window, "sampling window for Z^d (default 5)");
        sub->add_flag("--oracle", oracle, "cross-check with the brute-force enumeration oracle");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors share the input-error exit code
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        fell::JobConfig cfg = fell::parse_config(config_path.empty() ? "{}" : read_file(config_path));
        if (modulus > 0) cfg.modulus = modulus;
        if (samples > 0) cfg.samples = samples;
        if (seed_set) cfg.seed = seed;
        if (tol > 0) cfg.tol = tol;
        if (window > 0) cfg.window = window;
        cfg.oracle = oracle;

        const auto result = fell::run_job(command, cfg);
        std::cout << fell::emit_report(result.report);
        return result.exit_code;
    } catch (const fell::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const fell::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
