#include "hew/run.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Travelling-wave solver for a hydroelastic membrane in conformal variables"};

    hew::RunConfig rc;
    app.add_option("--command", rc.command, "solve | sweep | check | geometry | residuals")
        ->required();
    app.add_option("--config", rc.config_path, "JSON config path (defaults apply when omitted)");
    app.add_option("--out", rc.output_dir, "output directory")->capture_default_str();
    app.add_option("--set", rc.overrides,
                   "dotted-path override, e.g. --set physics.c2=1.6 (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return hew::run(rc);
}
